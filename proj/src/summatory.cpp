#include "exonum/summatory.hpp"

#include <cassert>
#include <map>
#include <mutex>
#include <vector>

#include "exonum/errors.hpp"
#include "exonum/numeration.hpp"

namespace exonum::summatory {

using numeration::NumerationSystem;

namespace {

std::mutex a_mu;
std::map<Int, Int>& a_memo() {
    static std::map<Int, Int> m;
    return m;
}

Int A_fast_rec(const Int& N, std::map<Int, Int>& memo) {
    if (N <= 1) return N;  // A(0)=0, A(1)=1
    auto it = memo.find(N);
    if (it != memo.end()) return it->second;
    long l = floor_log2(N);
    Int r = N - pow2(static_cast<unsigned long>(l));
    Int half = pow2(static_cast<unsigned long>(l - 1));
    Int res;
    if (r <= half) {
        res = 2 * pow_int(3, static_cast<unsigned long>(l - 1)) + A_fast_rec(half + r, memo) +
              A_fast_rec(r, memo);
    } else {
        Int rp = pow2(static_cast<unsigned long>(l)) - r;
        res = 4 * pow_int(3, static_cast<unsigned long>(l)) -
              2 * pow_int(3, static_cast<unsigned long>(l - 1)) - A_fast_rec(half + rp, memo) -
              A_fast_rec(rp, memo);
    }
    memo.emplace(N, res);
    return res;
}

std::mutex af_mu;
std::map<Int, Int>& af_memo() {
    static std::map<Int, Int> m;
    return m;
}

Int A_F_fast_rec(const Int& N, std::map<Int, Int>& memo) {
    if (N == 0) return 1;
    if (N == 1) return 3;
    if (N == 2) return 6;
    auto it = memo.find(N);
    if (it != memo.end()) return it->second;
    const auto& fib = NumerationSystem::fibonacci();
    std::size_t l = fib.basis_index_below(N);  // l >= 2 for N >= 3
    Int r = N - fib.basis(l);
    Int res;
    if (r < fib.basis(l - 2)) {
        res = B(l) - B(l - 1) + A_F_fast_rec(fib.basis(l - 1) + r, memo) +
              A_F_fast_rec(r, memo);
    } else {
        res = 2 * B(l) - B(l - 1) - B(l - 2) + 2 * A_F_fast_rec(r, memo);
    }
    memo.emplace(N, res);
    return res;
}

}  // namespace

Int A(const Int& N, SumMethod method) {
    if (sign(N) < 0) throw DomainError("A: N must be >= 0");
    if (method == SumMethod::Naive) {
        Int acc = 0;
        for (Int j = 0; j <= N; ++j) acc += subword::s(j);
        return acc;
    }
    std::lock_guard<std::mutex> lock(a_mu);
    return A_fast_rec(N, a_memo());
}

Int A_F(const Int& N, SumMethod method) {
    if (sign(N) < 0) throw DomainError("A_F: N must be >= 0");
    if (method == SumMethod::Naive) {
        Int acc = 0;
        for (Int j = 0; j <= N; ++j) acc += subword::s_F(j);
        return acc;
    }
    std::lock_guard<std::mutex> lock(af_mu);
    return A_F_fast_rec(N, af_memo());
}

namespace {
std::mutex b_mu;
std::vector<Int>& b_vals() {
    static std::vector<Int> v{1, 3, 6};
    return v;
}
std::mutex g_mu;
std::vector<Int>& g_vals() {
    static std::vector<Int> v{2, -1, 3};
    return v;
}
}  // namespace

Int B(std::size_t n) {
    std::lock_guard<std::mutex> lock(b_mu);
    auto& v = b_vals();
    while (v.size() <= n) {
        std::size_t k = v.size();
        v.push_back(2 * v[k - 1] + v[k - 2] - v[k - 3]);
    }
    return v[n];
}

Int g(std::size_t n) {
    std::lock_guard<std::mutex> lock(g_mu);
    auto& v = g_vals();
    while (v.size() <= n) v.push_back(2 * v[v.size() - 2]);
    return v[n];
}

Int g_closed_form(std::size_t n) {
    if (n == 0) throw DomainError("g_closed_form: defined for n >= 1 (g_0 = 2 is a bare seed)");
    // even n: 3 * 2^{(n-2)/2}; odd n: -2^{(n-1)/2}
    if (n % 2 == 0) return 3 * pow2(static_cast<unsigned long>((n - 2) / 2));
    return -pow2(static_cast<unsigned long>((n - 1) / 2));
}

namespace {

real128 cubic(real128 x) { return ((x - 2.0Q) * x - 1.0Q) * x + 1.0Q; }
real128 cubic_d(real128 x) { return (3.0Q * x - 4.0Q) * x - 1.0Q; }

real128 isolate_root(real128 lo, real128 hi) {
    // bracketed bisection, then Newton polish
    real128 flo = cubic(lo);
    for (int i = 0; i < 80; ++i) {
        real128 mid = (lo + hi) / 2;
        real128 fm = cubic(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    real128 x = (lo + hi) / 2;
    for (int i = 0; i < 6; ++i) x -= cubic(x) / cubic_d(x);
    return x;
}

SpectralData compute_spectral() {
    SpectralData sd{};
    sd.beta = isolate_root(2.0Q, 3.0Q);
    sd.beta2 = isolate_root(-1.0Q, 0.0Q);
    sd.beta3 = isolate_root(0.0Q, 1.0Q);
    assert(rabs(cubic(sd.beta)) < 1e-30Q);
    // Vandermonde solve for c, c2, c3 against B(0)=1, B(1)=3, B(2)=6
    real128 m[3][4] = {
        {1.0Q, 1.0Q, 1.0Q, 1.0Q},
        {sd.beta, sd.beta2, sd.beta3, 3.0Q},
        {sd.beta * sd.beta, sd.beta2 * sd.beta2, sd.beta3 * sd.beta3, 6.0Q},
    };
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int i = col + 1; i < 3; ++i)
            if (rabs(m[i][col]) > rabs(m[piv][col])) piv = i;
        for (int j = 0; j < 4; ++j) std::swap(m[col][j], m[piv][j]);
        for (int i = 0; i < 3; ++i) {
            if (i == col) continue;
            real128 f = m[i][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[i][j] -= f * m[col][j];
        }
    }
    sd.c = m[0][3] / m[0][0];
    sd.c2 = m[1][3] / m[1][1];
    sd.c3 = m[2][3] / m[2][2];
    return sd;
}

}  // namespace

const SpectralData& spectral() {
    static SpectralData sd = compute_spectral();
    return sd;
}

namespace {
std::mutex u_mu;
std::vector<Int>& u_vals() {
    static std::vector<Int> v{0, 1};
    return v;
}
}  // namespace

Int delange_U(std::size_t n) {
    std::lock_guard<std::mutex> lock(u_mu);
    auto& v = u_vals();
    while (v.size() <= n) {
        std::size_t k = v.size();
        v.push_back(4 * v[k - 1] - 4 * v[k - 2]);
    }
    return v[n];
}

Int delange_A2(const Int& N) {
    if (sign(N) < 0) throw DomainError("delange_A2: N must be >= 0");
    // A2(2^l + r) = U(l) + A2(r) + r * U(1); unrolled over the bits of N
    Int acc = 0;
    Int rest = N;
    while (sign(rest) > 0) {
        long l = floor_log2(rest);
        rest -= pow2(static_cast<unsigned long>(l));
        acc += delange_U(static_cast<std::size_t>(l)) + rest;
    }
    return acc;
}

Int digit_sum2(const Int& n) {
    return Int(static_cast<unsigned long>(mpz_popcount(n.get_mpz_t())));
}

DelangeSample delange_suite(const Int& N) {
    if (sign(N) <= 0) throw DomainError("delange_suite: N must be >= 1");
    DelangeSample out;
    out.A2 = delange_A2(N);
    real128 Nr = to_real128(N);
    out.G = to_real128(out.A2) / Nr - rlog2(Nr) / 2.0Q;
    return out;
}

}  // namespace exonum::summatory
