#pragma once

#include <cstdint>
#include <vector>

#include "exonum/ints.hpp"
#include "exonum/numeration.hpp"
#include "exonum/real_coordinate.hpp"

namespace exonum::decomposition {

using realcoord::RealCoordinate;

enum class DecompositionBasis { PowersOf3, BSequence };
enum class CoordSystem { Base2, Fibonacci };

// Signed coefficient expansion of A(n) over powers of 3 (or A_F(n) over the
// B sequence): value = sum_i coeffs[i] * basis(scale - i), coeffs[0] != 0.
struct Decomposition {
    DecompositionBasis basis;
    long scale = 0;
    std::vector<Int> coeffs;  // msb-first: coeffs[i] multiplies basis(scale-i)

    Int reconstruct() const;
};

// 3-decomposition of A(n), n >= 2: value-level recursion on the two-case
// split (r = 2^{l-1} goes to the first case), terminals A(0) -> 0*3^0,
// A(1) -> 1*3^0. The scale predicted from the case split of n is asserted
// against the leading accumulated exponent.
Decomposition three_dec(const Int& n);

// B-decomposition of A_F(n), n >= 3, terminals A_F(0)=1*B(0),
// A_F(1)=3*B(0), A_F(2)=6*B(0); scale = |rep_F(n)| - 1.
Decomposition b_dec(const Int& n);

// e_n(alpha): base2: 2^{n+1} + 2*floor(alpha 2^n) + 1 (odd, in
// [2^{n+1}+1, 2^{n+2}-1]); fibonacci: val_F of the length-n prefix of
// 10 rep_phi(alpha) (normal, in [F(n-1), F(n))).
Int e_n(const RealCoordinate& alpha, CoordSystem sys, unsigned n);

// Stabilized prefix of the limit coefficient sequence a(alpha) / b(alpha):
// decompose A(e_n(alpha)) at increasing depth until two consecutive depths
// agree on the first `count` coefficients.
struct LimitDigits {
    CoordSystem system;
    std::vector<Int> digits;
    std::size_t certified_len = 0;
    unsigned depth_used = 0;
};

LimitDigits limit_digits(const RealCoordinate& alpha, CoordSystem sys, std::size_t count);

}  // namespace exonum::decomposition
