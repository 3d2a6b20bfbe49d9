#pragma once

#include <string>

#include "exonum/decomposition.hpp"
#include "exonum/ints.hpp"
#include "exonum/real128.hpp"
#include "exonum/real_coordinate.hpp"

namespace exonum::fluctuation {

using decomposition::CoordSystem;
using realcoord::RealCoordinate;

// One sampled point of a fluctuation function (CSV: alpha,value[,residual]).
struct FluctuationSample {
    double alpha = 0;
    double value = 0;
    unsigned depth = 0;  // 0 = exact / series
    bool has_residual = false;
    double residual = 0;
};

// phi_n(alpha) = A(e_n(alpha)) / 3^{log2 e_n(alpha)}, n >= 1.
real128 phi_step(unsigned n, const RealCoordinate& alpha);

// Exact Phi on dyadics: Phi(r/2^k) = A(2^k+r) / 3^{log2(2^k+r)}, k >= 1.
real128 phi_exact(const Int& r, unsigned k);

// Truncated series Phi(alpha) = prefactor * sum a_i(alpha)/3^i with the
// prefactor case split at 1/2; tail bound from |a_i| <= 10*2^i.
struct SeriesValue {
    real128 value;
    real128 tail_bound;
};
SeriesValue phi_series(const RealCoordinate& alpha, std::size_t depth);

// psi_n(alpha) = A_F(e_n(alpha)) / (c beta^{log_F e_n(alpha)}), n >= 3.
real128 psi_step(unsigned n, const RealCoordinate& alpha);

// Psi on the dense set D: word = r_1..r_k in {1,eps}{0,01}* (i.e. no "11"),
// alpha = sum r_i phi^{-i}; combines b_dec(val_F(10 r)) with the limit
// digits b_k(alpha), b_{k+1}(alpha). The empty word stands for alpha = 0.
real128 psi_dense(const std::string& word);

// Error term R(N) = A_F(N) - c beta^{log_F N} Psi(relpos_F N) of the
// asymptotic expansion, N >= 3, with Psi evaluated through psi_dense on
// the exact digit word of relpos_F(N).
struct Residual {
    real128 value;       // R(N)
    real128 normalized;  // R(N) / beta^{floor(log_F N)}
};
Residual residual_AF(const Int& N);

// H(x) = Phi(2^{frac x} - 1), the period-1 wrapper with
// A(N) = 3^{log2 N} H(log2 N); x >= 0.
real128 H(real128 x);

}  // namespace exonum::fluctuation
