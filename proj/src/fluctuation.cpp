#include "exonum/fluctuation.hpp"

#include "exonum/errors.hpp"
#include "exonum/numeration.hpp"
#include "exonum/summatory.hpp"

namespace exonum::fluctuation {

using decomposition::b_dec;
using decomposition::e_n;
using decomposition::limit_digits;
using numeration::NumerationSystem;
using realcoord::Q5;

real128 phi_step(unsigned n, const RealCoordinate& alpha) {
    if (n < 1) throw DomainError("phi_step: n must be >= 1");
    Int e = e_n(alpha, CoordSystem::Base2, n);
    return to_real128(summatory::A(e)) / rpow(3.0Q, rlog2(to_real128(e)));
}

real128 phi_exact(const Int& r, unsigned k) {
    if (k < 1) throw DomainError("phi_exact: k must be >= 1");
    if (sign(r) < 0 || r >= pow2(k)) throw DomainError("phi_exact: need 0 <= r < 2^k");
    Int m = pow2(k) + r;
    return to_real128(summatory::A(m)) / rpow(3.0Q, rlog2(to_real128(m)));
}

SeriesValue phi_series(const RealCoordinate& alpha, std::size_t depth) {
    if (depth < 4) throw DomainError("phi_series: depth must be >= 4");
    auto lim = limit_digits(alpha, CoordSystem::Base2, depth);
    real128 a = alpha.to_real128();
    real128 log_term = rlog2(a + 1.0Q);
    real128 pref = a < 0.5Q ? rpow(3.0Q, -(1.0Q + log_term)) : rpow(3.0Q, -log_term);
    real128 sum = 0.0Q;
    real128 p = 1.0Q;
    for (std::size_t i = 0; i < depth; ++i) {
        sum += to_real128(lim.digits[i]) * p;
        p /= 3.0Q;
    }
    // |a_i| <= 10*2^i gives tail <= 10 * sum_{i>depth} (2/3)^i = 30 (2/3)^{depth+1}
    SeriesValue out;
    out.value = pref * sum;
    out.tail_bound = 30.0Q * rpow(2.0Q / 3.0Q, static_cast<real128>(depth + 1));
    return out;
}

real128 psi_step(unsigned n, const RealCoordinate& alpha) {
    if (n < 3) throw DomainError("psi_step: n must be >= 3");
    Int e = e_n(alpha, CoordSystem::Fibonacci, n);
    const auto& sd = summatory::spectral();
    return to_real128(summatory::A_F(e)) / (sd.c * rpow(sd.beta, numeration::logF(e)));
}

namespace {

void validate_dense_word(const std::string& word) {
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] != '0' && word[i] != '1')
            throw DomainError("psi_dense: word must be over {0,1}");
        if (word[i] == '1' && i + 1 < word.size() && word[i + 1] == '1')
            throw DomainError("psi_dense: word must avoid the factor 11");
    }
}

}  // namespace

real128 psi_dense(const std::string& word_in) {
    std::string word = word_in.empty() ? "0" : word_in;
    validate_dense_word(word);
    std::size_t k = word.size();
    const auto& fib = NumerationSystem::fibonacci();
    const auto& sd = summatory::spectral();

    // alpha = sum r_i / phi^i, exact in Q(sqrt5)
    Q5 inv_phi = Q5::inv_golden_ratio();
    Q5 alpha_q5;
    Q5 p(Rat(1));
    for (std::size_t i = 0; i < k; ++i) {
        p = p * inv_phi;
        if (word[i] == '1') alpha_q5 = alpha_q5 + p;
    }
    RealCoordinate alpha = RealCoordinate::from_q5(alpha_q5);
    real128 a = alpha.to_real128();

    Int m = numeration::val(fib, [&] {
        std::vector<std::uint8_t> ds{1, 0};
        for (char ch : word) ds.push_back(static_cast<std::uint8_t>(ch - '0'));
        return ds;
    }());
    auto dm = b_dec(m);
    auto lim = limit_digits(alpha, CoordSystem::Fibonacci, k + 2);

    real128 acc = 0.0Q;
    for (std::size_t i = 0; i < k; ++i)
        acc += to_real128(dm.coeffs[i]) / rpow(sd.beta, static_cast<real128>(i) + a);
    acc += to_real128(lim.digits[k]) / rpow(sd.beta, static_cast<real128>(k) + a);
    acc += to_real128(lim.digits[k + 1]) / rpow(sd.beta, static_cast<real128>(k + 1) + a);
    return acc;
}

Residual residual_AF(const Int& N) {
    if (N < 3) throw DomainError("residual_AF: N must be >= 3");
    const auto& sd = summatory::spectral();
    auto w = numeration::rep(NumerationSystem::fibonacci(), N);
    std::string rword;
    for (std::size_t i = 2; i < w.size(); ++i)
        rword.push_back(static_cast<char>('0' + w.digits[i]));
    real128 psi = psi_dense(rword);
    Residual out;
    out.value = to_real128(summatory::A_F(N)) - sd.c * rpow(sd.beta, numeration::logF(N)) * psi;
    out.normalized = out.value / rpow(sd.beta, static_cast<real128>(w.size() - 1));
    return out;
}

real128 H(real128 x) {
    if (x < 0.0Q) throw DomainError("H: x must be >= 0");
    real128 a = rexp2(rfrac(x)) - 1.0Q;
    if (a < 0.0Q) a = 0.0Q;
    // recognize dyadic relpos and use the exact route A(2^k+r)/3^{log2(2^k+r)}
    real128 scaled = a;
    for (unsigned k = 0; k <= 48; ++k) {
        real128 r = rfloor(scaled + 0.5Q);
        if (rabs(scaled - r) < 0x1p-20Q) {
            if (k == 0) return 1.0Q;  // alpha ~ 0 (or ~1-: periodic limit is 1)
            Int ri(static_cast<unsigned long>(static_cast<std::uint64_t>(r)));
            if (ri >= pow2(k)) return 1.0Q;
            return phi_exact(ri, k);
        }
        scaled *= 2.0Q;
    }
    // non-dyadic fallback: series at a depth whose tail is < 5e-12
    double hi = to_double(a);
    real128 rest = a - static_cast<real128>(hi);
    mpf_class af(hi, 192);
    af += mpf_class(to_double(rest), 192);
    return phi_series(RealCoordinate::from_bigfloat(af, 160), 72).value;
}

}  // namespace exonum::fluctuation
