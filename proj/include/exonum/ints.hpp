#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace exonum {

// Arbitrary-precision integer / rational used for every sequence value.
// A(N) grows like N^{log2 3} and leaves 64 bits near N ~ 2^40.
using Int = mpz_class;
using Rat = mpq_class;

inline int sign(const Int& z) { return mpz_sgn(z.get_mpz_t()); }
inline int sign(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }

// Exact bit length; bit_length(0) == 0.
inline long bit_length(const Int& z) {
    if (sign(z) == 0) return 0;
    return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

// floor(log2 n) for n >= 1.
inline long floor_log2(const Int& n) { return bit_length(n) - 1; }

inline Int pow2(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline Int pow_int(unsigned long base, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

inline bool fits_u64(const Int& z) {
    return sign(z) >= 0 && bit_length(z) <= 64;
}

inline std::uint64_t to_u64(const Int& z) {
    std::uint64_t lo = mpz_get_ui(z.get_mpz_t());
    if (bit_length(z) > 8 * static_cast<long>(sizeof(unsigned long))) {
        Int hi = z >> 32 >> 32;
        return (static_cast<std::uint64_t>(mpz_get_ui(hi.get_mpz_t())) << 32 << 32) | lo;
    }
    return lo;
}

inline std::string to_string(const Int& z) { return z.get_str(); }

}  // namespace exonum
