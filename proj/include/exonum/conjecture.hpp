#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exonum/fluctuation.hpp"
#include "exonum/ints.hpp"
#include "exonum/numeration.hpp"
#include "exonum/real128.hpp"
#include "exonum/subword.hpp"

namespace exonum::conjecture {

using fluctuation::FluctuationSample;
using numeration::NumerationSystem;

// Minimal-order linear recurrence fitted to an integer value stream by
// exact rational Gaussian elimination; a fit is accepted only if it
// reproduces every observed value exactly.
struct RecurrenceFit {
    bool ok = false;
    int order = 0;
    std::vector<Rat> coeffs;  // v(n+d) = sum coeffs[i-1] * v(n+d-i)
    std::vector<Int> seeds;   // first `order` values
    std::size_t horizon = 0;  // number of values the fit reproduces
    std::string note;

    // X^d - q_1 X^{d-1} - ... - q_d, scaled to integer coefficients
    std::vector<Int> char_poly() const;
    real128 dominant_root() const;
};

RecurrenceFit fit_recurrence(const std::vector<Int>& values, int max_order = -1);

// Largest real root of an integer polynomial (msb-first coefficients,
// leading > 0), by downward grid scan inside the Cauchy bound + bisection.
real128 largest_real_root(const std::vector<Int>& poly);

// ----- base-k scaling: A_k(kn) = (2k-1) A_k(n) -----
struct ScalingReport {
    int k = 0;
    Int n_max;
    bool pass = false;
    std::optional<Int> first_counterexample;
    Int lhs, rhs;  // values at the counterexample, if any
};

ScalingReport check_base_k_scaling(int k, const Int& n_max,
                                   std::size_t cap = subword::kDefaultOracleCap);

// H_k samples (frac(log_k N), A_k(N) / (2k-1)^{log_k N}) over [from, to).
std::vector<FluctuationSample> sample_Hk(int k, const Int& from, const Int& to,
                                         std::size_t cap = subword::kDefaultOracleCap);

// ----- Tribonacci / Quadribonacci checkpoint experiments -----
struct CheckpointStream {
    std::string label;           // "A(T(n))" or "A(T(n)-1)"
    std::vector<Int> values;     // n = 0..n_max
    RecurrenceFit fit;
};

enum class PolyVerdict { Match, ReferenceDividesFit, FitDividesReference, Mismatch, NoFit };

struct CheckpointReport {
    std::string system;
    unsigned n_max = 0;
    CheckpointStream at_checkpoint;          // A(T(n))
    CheckpointStream at_checkpoint_minus_1;  // A(T(n)-1)
    std::string matching_convention;         // which stream matches the reference data
    bool seeds_match = false;
    bool recurrence_matches = false;  // Tribonacci only: the conjectured V recurrence
    real128 dominant_root = 0.0Q;     // of the matching fit, 0 if none
    PolyVerdict verdict = PolyVerdict::NoFit;  // vs the reference polynomial, if any
    std::string note;
};

// A_T at Tribonacci checkpoints under both index conventions; fits each
// stream and reports which one reproduces the conjectured V data
// (seeds 1,3,9,23,63; order-5 recurrence; dominant root near 2.703).
CheckpointReport tribonacci_V(unsigned n_max, std::size_t cap = subword::kDefaultOracleCap);

// Same for Quadribonacci, compared against the conjectured degree-7
// characteristic polynomial (the accompanying claim says "order 6"; the
// report carries the fitted order and the polynomial verdict side by side).
CheckpointReport quadribonacci_fit(unsigned n_max,
                                   std::size_t cap = subword::kDefaultOracleCap);

// G_T / G_Q samples: (frac(log_sys N), A(N) / (c_fit * rho^{log_sys N}))
// with rho the fitted dominant root and c_fit a least-squares scale.
std::vector<FluctuationSample> sample_G(const NumerationSystem& sys, unsigned n_max,
                                        std::size_t cap = subword::kDefaultOracleCap);

// relpos within [T(l), T(l+1)) generalized to any bounded-run system:
// (sum_{i>=1} d_i theta^{-i}) / (theta - 1) over the digits after the
// leading 1, theta the dominant root of the basis recurrence. Reduces to
// the Fibonacci relpos_F.
real128 relpos_linrec(const NumerationSystem& sys, const Int& n);
real128 log_linrec(const NumerationSystem& sys, const Int& n);

// Lazily extended summatory function over an oracle-backed sequence.
class OracleSummatory {
public:
    OracleSummatory(const NumerationSystem& sys, subword::IndexConvention conv,
                    std::size_t cap);
    explicit OracleSummatory(const NumerationSystem& sys,
                             std::size_t cap = subword::kDefaultOracleCap);

    // A(n) = sum_{j<=n} s(j). By value: the backing vector grows on demand.
    Int at(const Int& n);

private:
    const NumerationSystem* sys_;
    subword::IndexConvention conv_;
    std::size_t cap_;
    std::vector<Int> partial_;  // partial_[n] = A(n)
};

}  // namespace exonum::conjecture
