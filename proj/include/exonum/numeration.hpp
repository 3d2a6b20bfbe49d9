#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "exonum/errors.hpp"
#include "exonum/ints.hpp"
#include "exonum/real128.hpp"

namespace exonum::numeration {

// Positional numeration system descriptor.
//
// BaseK(k): ordinary base-k, basis k^n, language {1..k-1}{0..k-1}* u {eps}.
// BoundedRun(m): binary digit words avoiding a run of m+1 ones;
//   m=1 Fibonacci (basis 1,2,3,5,...), m=2 Tribonacci (1,2,4,7,13,...),
//   m=3 Quadribonacci (1,2,4,8,15,...).
//
// Immutable apart from the memoized basis, which grows append-only under a
// lock so a system can be shared across threads.
class NumerationSystem {
public:
    enum class Kind { BaseK, BoundedRun };

    Kind kind() const { return kind_; }
    int param() const { return param_; }  // k for BaseK, m for BoundedRun
    int alphabet_size() const { return kind_ == Kind::BaseK ? param_ : 2; }

    // n-th basis value (k^n, or the bounded-run recurrence).
    Int basis(std::size_t n) const;

    // index of the greatest basis value <= x (x >= 1)
    std::size_t basis_index_below(const Int& x) const;

    // Language of normal representations (digits msb-first). The empty
    // word is always in the language.
    bool in_language(std::span<const std::uint8_t> digits) const;

    std::string name() const;

    static const NumerationSystem& base_k(int k);       // k >= 2
    static const NumerationSystem& bounded_run(int m);  // m >= 1
    static const NumerationSystem& base2() { return base_k(2); }
    static const NumerationSystem& fibonacci() { return bounded_run(1); }
    static const NumerationSystem& tribonacci() { return bounded_run(2); }
    static const NumerationSystem& quadribonacci() { return bounded_run(3); }

    NumerationSystem(const NumerationSystem&) = delete;
    NumerationSystem& operator=(const NumerationSystem&) = delete;

protected:
    NumerationSystem(Kind kind, int param);

private:
    void grow_to(std::size_t n) const;

    Kind kind_;
    int param_;
    mutable std::deque<Int> basis_;  // deque: growth keeps references stable
    mutable std::mutex mu_;
};

// A finite digit string (msb-first) tied to its numeration system.
struct DigitWord {
    const NumerationSystem* system = nullptr;
    std::vector<std::uint8_t> digits;  // msb-first

    bool empty() const { return digits.empty(); }
    std::size_t size() const { return digits.size(); }
    bool is_normal() const { return system->in_language(digits); }

    // plain ASCII, msb-first; eps serializes as ""
    std::string str() const;
    static DigitWord parse(const std::string& s, const NumerationSystem& sys);
};

// Greedy (normal) representation; rep(sys, 0) = eps.
DigitWord rep(const NumerationSystem& sys, const Int& n);

// sum digit_j * basis(j); accepts non-normal words, rejects digits
// outside the alphabet.
Int val(const DigitWord& w);
Int val(const NumerationSystem& sys, std::span<const std::uint8_t> digits);

// relpos_2(x) = 2^{frac(log2 x)} - 1 for real x > 0.
real128 relpos2(real128 x);
// exact variant for integers: (n - 2^floor(log2 n)) / 2^floor(log2 n)
Rat relpos2_exact(const Int& n);

// relpos_F(n) for rep_F(n) = 10 r_1...r_k: sum r_i phi^{-i}.
// n = 2 (rep "10") gives 0; n = 1 (rep "1") and n = 0 are rejected: the
// quantity is only meaningful for the 10-prefixed form.
real128 relposF(const Int& n);
// log_F(n) = |rep_F(n)| - 1 + relpos_F(n)
real128 logF(const Int& n);

inline real128 golden_ratio() { return (1.0Q + rsqrt(5.0Q)) / 2.0Q; }

}  // namespace exonum::numeration
