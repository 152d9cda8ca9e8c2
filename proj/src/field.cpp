#include "bw/field.hpp"

namespace bw {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec::FieldSpec(std::uint32_t p) : p_(p) {
    if (p > 65521 || !is_prime(p)) throw NotPrime(p);
}

elem_t FieldSpec::inv(elem_t a) const {
    a %= p_;
    if (a == 0) throw ZeroInverse();
    // extended Euclid on (a, p)
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    return reduce(t);
}

elem_t elem_inverse(elem_t a, const FieldSpec& spec) { return spec.inv(a); }

} // namespace bw
