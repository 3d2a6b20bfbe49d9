#pragma once

#include <cstdint>
#include <mutex>
#include <variant>
#include <vector>

#include "exonum/errors.hpp"
#include "exonum/ints.hpp"
#include "exonum/real128.hpp"

namespace exonum::realcoord {

// Exact element of Q(sqrt5): a + b*sqrt(5). Comparisons never round-trip
// through floats; the sign of a + b*sqrt5 is decided from the signs of a, b
// and a^2 vs 5 b^2.
class Q5 {
public:
    Q5() : a_(0), b_(0) {}
    Q5(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {}
    explicit Q5(const Rat& a) : a_(a), b_(0) {}
    explicit Q5(long v) : a_(v), b_(0) {}

    static Q5 sqrt5() { return Q5(Rat(0), Rat(1)); }
    static Q5 golden_ratio() { return Q5(Rat(1, 2), Rat(1, 2)); }      // (1+sqrt5)/2
    static Q5 inv_golden_ratio() { return Q5(Rat(-1, 2), Rat(1, 2)); } // (sqrt5-1)/2

    const Rat& rational_part() const { return a_; }
    const Rat& sqrt5_part() const { return b_; }

    Q5 operator+(const Q5& o) const { return Q5(a_ + o.a_, b_ + o.b_); }
    Q5 operator-(const Q5& o) const { return Q5(a_ - o.a_, b_ - o.b_); }
    Q5 operator-() const { return Q5(-a_, -b_); }
    Q5 operator*(const Q5& o) const {
        return Q5(a_ * o.a_ + 5 * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
    }
    Q5 operator*(const Int& z) const { return Q5(a_ * z, b_ * z); }
    Q5 operator-(const Int& z) const { return Q5(a_ - z, b_); }

    int sgn() const;
    bool operator<(const Q5& o) const { return (*this - o).sgn() < 0; }
    bool operator>=(const Q5& o) const { return (*this - o).sgn() >= 0; }
    bool is_zero() const { return sign(a_) == 0 && sign(b_) == 0; }
    bool is_rational() const { return sign(b_) == 0; }

    real128 to_real128() const {
        return exonum::to_real128(a_) + exonum::to_real128(b_) * rsqrt(5.0Q);
    }

private:
    Rat a_, b_;
};

// Declared-precision float backend. The precision is the certificate: a
// request for digits beyond prec - 32 guard bits raises PrecisionError, and
// greedy steps that land within the guard slack of a digit boundary do too.
struct BigFloat {
    mpf_class value;
    long prec_bits;
};

// A real alpha in [0,1) with its expansion machinery. Exact backends
// (rational, Q(sqrt5)) certify every digit; float backends carry declared
// precision. phi-expansion digits are discontinuous in alpha, so exactness
// is used wherever possible. Extracted digits are cached per system along
// with the greedy remainder, so deeper queries extend instead of restart;
// the cache is lock-guarded, sampling loops may share a coordinate.
class RealCoordinate {
public:
    static RealCoordinate rational(const Int& p, const Int& q);
    static RealCoordinate rational(const Rat& r);
    static RealCoordinate from_q5(const Q5& x);
    static RealCoordinate from_double(double x, long prec_bits = 128);
    static RealCoordinate from_bigfloat(mpf_class x, long prec_bits);
    // pi - 3 at the given precision (Machin formula)
    static RealCoordinate pi_minus_3(long prec_bits = 256);

    RealCoordinate(const RealCoordinate& o) : rep_(o.rep_) {}
    RealCoordinate& operator=(const RealCoordinate& o) {
        rep_ = o.rep_;
        return *this;
    }

    bool is_exact() const { return !std::holds_alternative<BigFloat>(rep_); }
    real128 to_real128() const;

    // floor(alpha * 2^n); exact for exact backends, certified for floats.
    Int floor_scale2(unsigned long n) const;

    // Greedy binary expansion d_1..d_depth (canonical: never ends in all 1s
    // for exact alpha; certified for floats).
    std::vector<std::uint8_t> binary_digits(std::size_t depth) const;

    // Greedy phi-expansion d_1..d_depth; no "11" factor, geometric tail
    // bound by construction.
    std::vector<std::uint8_t> golden_digits(std::size_t depth) const;

private:
    explicit RealCoordinate(std::variant<Rat, Q5, BigFloat> rep) : rep_(std::move(rep)) {}

    // digits extracted so far plus the greedy remainder to continue from
    struct ExpansionCache {
        std::vector<std::uint8_t> digits;
        std::variant<Rat, Q5, mpf_class> remainder;
        bool started = false;
    };
    std::vector<std::uint8_t> digits_up_to(ExpansionCache& cache, bool golden,
                                           std::size_t depth) const;

    std::variant<Rat, Q5, BigFloat> rep_;
    mutable std::mutex cache_mu_;
    mutable ExpansionCache binary_cache_;
    mutable ExpansionCache golden_cache_;
};

// depth digits of alpha in the requested system ("binary" or "golden").
enum class ExpansionSystem { Binary, Golden };
std::vector<std::uint8_t> real_expansion(const RealCoordinate& alpha, ExpansionSystem sys,
                                         std::size_t depth);

}  // namespace exonum::realcoord
