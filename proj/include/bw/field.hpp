#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bw {

using elem_t = std::uint32_t;

struct NotPrime : std::invalid_argument {
    explicit NotPrime(std::uint32_t p)
        : std::invalid_argument("modulus " + std::to_string(p) + " is not a prime in [2, 65521]") {}
};

struct ZeroInverse : std::domain_error {
    ZeroInverse() : std::domain_error("zero has no multiplicative inverse") {}
};

// Prime field GF(p). Elements are plain integers in [0, p).
class FieldSpec {
public:
    explicit FieldSpec(std::uint32_t p = 2);

    std::uint32_t p() const { return p_; }
    bool is_gf2() const { return p_ == 2; }

    elem_t reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<elem_t>(r < 0 ? r + p_ : r);
    }
    elem_t add(elem_t a, elem_t b) const {
        elem_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    elem_t sub(elem_t a, elem_t b) const { return a >= b ? a - b : a + p_ - b; }
    elem_t neg(elem_t a) const { return a == 0 ? 0 : p_ - a; }
    elem_t mul(elem_t a, elem_t b) const {
        return static_cast<elem_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    elem_t inv(elem_t a) const;

    bool operator==(const FieldSpec& o) const { return p_ == o.p_; }
    bool operator!=(const FieldSpec& o) const { return p_ != o.p_; }

private:
    std::uint32_t p_;
};

bool is_prime(std::uint32_t n);

// Inverse of a nonzero element; throws ZeroInverse for a == 0.
elem_t elem_inverse(elem_t a, const FieldSpec& spec);

} // namespace bw
