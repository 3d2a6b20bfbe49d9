#pragma once

#include <quadmath.h>

#include <string>

#include "exonum/ints.hpp"

namespace exonum {

// All transcendental arithmetic (3^x, beta^x, log2) runs in __float128:
// the fluctuation values sit near 1 and several checks need 1e-12..1e-30
// margins that double does not leave room for.
using real128 = __float128;

inline real128 rabs(real128 x) { return fabsq(x); }
inline real128 rfloor(real128 x) { return floorq(x); }
inline real128 rlog2(real128 x) { return log2q(x); }
inline real128 rlog(real128 x) { return logq(x); }
inline real128 rexp2(real128 x) { return exp2q(x); }
inline real128 rpow(real128 b, real128 e) { return powq(b, e); }
inline real128 rsqrt(real128 x) { return sqrtq(x); }
inline real128 rfrac(real128 x) { return x - floorq(x); }

inline real128 to_real128(const Int& z) {
    long bits = bit_length(z);
    if (bits <= 62) return static_cast<real128>(mpz_get_si(z.get_mpz_t()));
    // take the top <=120 bits exactly, then scale
    long shift = bits - 120;
    if (shift < 0) shift = 0;
    Int mag = abs(z) >> shift;
    Int hi = mag >> 64;
    Int lo = mag - (hi << 64);
    real128 r = static_cast<real128>(to_u64(hi)) * 0x1p64Q + static_cast<real128>(to_u64(lo));
    r = ldexpq(r, static_cast<int>(shift));
    return sign(z) < 0 ? -r : r;
}

inline real128 to_real128(const Rat& q) {
    return to_real128(q.get_num()) / to_real128(q.get_den());
}

inline std::string format_real128(real128 x, int significant = 12) {
    char buf[128];
    quadmath_snprintf(buf, sizeof buf, "%.*Qg", significant, x);
    return buf;
}

inline double to_double(real128 x) { return static_cast<double>(x); }

}  // namespace exonum
