#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <span>

#include "exonum/ints.hpp"
#include "exonum/numeration.hpp"

namespace exonum::subword {

using numeration::DigitWord;
using numeration::NumerationSystem;

inline constexpr std::size_t kDefaultOracleCap = 22;

// Number of occurrences of v as a scattered subword of u (binomial
// coefficient of words). binom(u, eps) = 1.
Int word_binomial(const DigitWord& u, const DigitWord& v);

// Cardinality of { v in rep_sys(N) : binom(u, v) > 0 }, i.e. distinct
// subsequences of u that are valid normal representations (eps counts).
// Exponential by design and gated: |u| > cap raises CapacityError.
Int distinct_subwords_in_language(const DigitWord& u, std::size_t cap = kDefaultOracleCap);
Int distinct_subwords_in_language(const NumerationSystem& sys,
                                  std::span<const std::uint8_t> digits,
                                  std::size_t cap = kDefaultOracleCap);

enum class Method { Oracle, Recurrence };

// Which representation a generalized sequence counts subwords of.
// Base-k systems mirror s and use rep(n-1); bounded-run systems mirror
// s_F and use rep(n). The right convention for bounded-run systems is
// not settled; conjecture experiments report under both.
enum class IndexConvention { RepOfN, RepOfNMinus1 };

// s(n): distinct base-2 subword count, s(0)=0, s(n)=#subwords(rep_2(n-1)).
// Recurrence path applies the two-case split on n = 2^l + r with memo.
// The sequence also appears as the Farey-tree denominators, OEIS A007306.
Int s(const Int& n, Method method = Method::Recurrence);

// s_F(n): Fibonacci analogue counting subwords of rep_F(n).
Int s_F(const Int& n, Method method = Method::Recurrence);

// Oracle-only generalized sequence for base-k / Tribonacci / Quadribonacci.
// Default convention mirrors the defining equations of s and s_F.
Int s_generalized(const NumerationSystem& sys, const Int& n,
                  std::size_t cap = kDefaultOracleCap);
Int s_generalized(const NumerationSystem& sys, const Int& n, IndexConvention conv,
                  std::size_t cap = kDefaultOracleCap);

// Counter with its own memo, for callers that want confinement instead of
// the shared lock-guarded tables behind s()/s_F().
class SubwordCounter {
public:
    SubwordCounter(const NumerationSystem& sys, Method method)
        : sys_(&sys), method_(method) {}

    Int operator()(const Int& n);

private:
    const NumerationSystem* sys_;
    Method method_;
    std::map<Int, Int> memo_;
};

namespace detail {
Int s_recurrence(const Int& n, std::map<Int, Int>& memo);
Int s_F_recurrence(const Int& n, std::map<Int, Int>& memo);
}  // namespace detail

}  // namespace exonum::subword
