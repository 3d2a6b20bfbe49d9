#pragma once

#include <utility>

#include "exonum/ints.hpp"
#include "exonum/real128.hpp"
#include "exonum/subword.hpp"

namespace exonum::summatory {

using subword::Method;

enum class SumMethod { Naive, Fast };

// A(N) = sum_{j=0}^{N} s(j). The fast path expands N = 2^l + r and applies
// the two-case recursion (memoized, shared, lock-guarded); naive sums the
// sequence directly.
Int A(const Int& N, SumMethod method = SumMethod::Fast);

// A_F(N) = sum_{j=0}^{N} s_F(j), fast path over N = F(l) + r with the
// B-sequence terms.
Int A_F(const Int& N, SumMethod method = SumMethod::Fast);

// B(0)=1, B(1)=3, B(2)=6, B(n+3) = 2B(n+2) + B(n+1) - B(n);
// satisfies A_F(F(n)-1) = B(n).
Int B(std::size_t n);

// g_0=2, g_1=-1, g_2=3, g_n = 2 g_{n-2} for n >= 3.
Int g(std::size_t n);

// Closed form (3-sqrt2)/4 * sqrt2^n + (3+sqrt2)/4 * (-sqrt2)^n, integral and
// equal to g(n) for all n >= 1. (g_0 = 2 is a seed the recurrence never
// revisits; no single exponential form covers it.)
Int g_closed_form(std::size_t n);

// Roots beta > |beta2| >= |beta3| of X^3 - 2X^2 - X + 1 and the coefficients
// of B(n) = c beta^n + c2 beta2^n + c3 beta3^n, solved against B(0..2).
struct SpectralData {
    real128 beta, beta2, beta3;
    real128 c, c2, c3;

    real128 reconstruct_B(int n) const {
        return c * rpow(beta, n) + c2 * rpow(beta2, n) + c3 * rpow(beta3, n);
    }
};

const SpectralData& spectral();

// Delange sanity experiment: A2(N) = sum_{j<N} s2(j) via the U-recursion
// U(0)=0, U(1)=1, U(n+2)=4U(n+1)-4U(n); G = A2(N)/N - (1/2) log2 N.
Int delange_U(std::size_t n);
Int delange_A2(const Int& N);
struct DelangeSample {
    Int A2;
    real128 G;
};
DelangeSample delange_suite(const Int& N);

// base-2 sum of digits (the sequence A2 sums)
Int digit_sum2(const Int& n);

}  // namespace exonum::summatory
