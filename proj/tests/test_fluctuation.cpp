#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "exonum/fluctuation.hpp"
#include "exonum/summatory.hpp"

using namespace exonum;
using decomposition::CoordSystem;
using realcoord::RealCoordinate;

TEST_CASE("phi_exact: anchor values") {
    CHECK(to_double(fluctuation::phi_exact(0, 5)) == doctest::Approx(1.0).epsilon(1e-15));
    // A(3)/3^{log2 3} and A(5)/3^{log2 5}
    CHECK(to_double(fluctuation::phi_exact(1, 1)) ==
          doctest::Approx(6.0 / std::pow(3.0, std::log2(3.0))).epsilon(1e-12));
    CHECK(to_double(fluctuation::phi_exact(1, 2)) ==
          doctest::Approx(13.0 / std::pow(3.0, std::log2(5.0))).epsilon(1e-12));
    CHECK_THROWS_AS(fluctuation::phi_exact(4, 2), DomainError);
}

TEST_CASE("phi_step: definition and convergence toward Phi") {
    // e_2(alpha) = 9 for alpha < 1/4: A(9)/3^{log2 9} = 32/3^{3.1699...}
    auto small = RealCoordinate::rational(Int(1), Int(8));
    CHECK(to_double(fluctuation::phi_step(2, small)) ==
          doctest::Approx(0.9833573863).epsilon(1e-9));
    auto third = RealCoordinate::rational(Int(1), Int(3));
    // e_2(1/3) = 8+2+1 = 11 -> A(11)/3^{log2 11}
    CHECK(to_double(fluctuation::phi_step(2, third)) ==
          doctest::Approx(to_double(to_real128(summatory::A(11)) /
                                    rpow(3.0Q, rlog2(11.0Q)))));
    // max-grid deviation |phi_{n+1} - phi_n| shrinks on 4 <= n <= 16
    real128 prev = 1.0Q;
    for (unsigned n = 4; n <= 16; ++n) {
        real128 worst = 0.0Q;
        for (int i = 0; i < 1024; ++i) {
            auto a = RealCoordinate::rational(Int(i), Int(1024));
            worst = std::max(worst,
                             rabs(fluctuation::phi_step(n + 1, a) - fluctuation::phi_step(n, a)));
        }
        if (n > 4) CHECK(worst < prev);
        prev = worst;
    }
}

TEST_CASE("phi_series: value, tail bound, agreement with phi_exact") {
    auto zero = RealCoordinate::rational(Int(0), Int(1));
    auto s0 = fluctuation::phi_series(zero, 40);
    CHECK(to_double(rabs(s0.value - 1.0Q)) < 1e-6);
    for (unsigned k = 1; k <= 8; ++k) {
        for (Int r = 1; r < pow2(k); r += 2) {
            auto alpha = RealCoordinate::rational(r, pow2(k));
            auto sv = fluctuation::phi_series(alpha, 40);
            real128 exact = fluctuation::phi_exact(r, k);
            CHECK(to_double(rabs(sv.value - exact)) <
                  to_double(sv.tail_bound) + 1e-8);
        }
    }
    // alpha -> 1^- probe
    auto near1 = RealCoordinate::rational(pow2(20) - 1, pow2(20));
    CHECK(to_double(rabs(fluctuation::phi_series(near1, 40).value - 1.0Q)) < 1e-3);
    // the prefactor case split at 1/2 follows the alpha >= 1/2 branch
    auto half = RealCoordinate::rational(Int(1), Int(2));
    CHECK(to_double(rabs(fluctuation::phi_series(half, 40).value -
                         fluctuation::phi_exact(1, 1))) < 1e-6);
}

TEST_CASE("exact identity A(N) = 3^{log2 N} Phi(relpos2 N)") {
    real128 worst = 0.0Q;
    for (Int N = 1; N <= 20000; ++N) {
        Int M = N;
        unsigned j = 0;
        while (M % 2 == 0) {
            M /= 2;
            ++j;
        }
        real128 phi_val;
        if (M == 1) {
            phi_val = 1.0Q;
        } else {
            unsigned k = static_cast<unsigned>(floor_log2(M));
            phi_val = fluctuation::phi_exact(M - pow2(k), k);
        }
        real128 lhs = to_real128(summatory::A(N));
        real128 rhs = rpow(3.0Q, rlog2(to_real128(N))) * phi_val;
        worst = std::max(worst, rabs(lhs - rhs) / lhs);
    }
    CHECK(to_double(worst) < 1e-9);
}

TEST_CASE("psi_step: Psi(0) limit and step structure") {
    auto zero = RealCoordinate::rational(Int(0), Int(1));
    CHECK(to_double(rabs(fluctuation::psi_step(25, zero) - 1.0Q)) < 1e-5);
    CHECK_THROWS_AS(fluctuation::psi_step(2, zero), DomainError);
    // w_n(alpha) takes F(n-2) distinct values at depth n
    const auto& fib = numeration::NumerationSystem::fibonacci();
    for (unsigned n = 3; n <= 10; ++n) {
        std::set<Int> seen;
        for (int i = 0; i < 2048; ++i) {
            auto a = RealCoordinate::rational(Int(i), Int(2048));
            seen.insert(decomposition::e_n(a, CoordSystem::Fibonacci, n));
        }
        CHECK(seen.size() == to_u64(fib.basis(n - 2)));
    }
}

TEST_CASE("psi convergence proxy: max-grid steps shrink") {
    real128 prev = 1.0Q;
    for (unsigned n = 4; n <= 16; ++n) {
        real128 worst = 0.0Q;
        for (int i = 0; i < 1024; ++i) {
            auto a = RealCoordinate::rational(Int(i), Int(1024));
            worst = std::max(worst,
                             rabs(fluctuation::psi_step(n + 1, a) - fluctuation::psi_step(n, a)));
        }
        if (n > 4) CHECK(worst < prev);
        prev = worst;
    }
}

TEST_CASE("psi_dense: anchors and consistency with psi_step") {
    CHECK(to_double(rabs(fluctuation::psi_dense("") - 1.0Q)) < 1e-4);
    CHECK(to_double(rabs(fluctuation::psi_dense("0") - 1.0Q)) < 1e-4);
    // alpha -> 1^- through (10)^15
    std::string w15;
    for (int i = 0; i < 15; ++i) w15 += "10";
    CHECK(to_double(rabs(fluctuation::psi_dense(w15) - 1.0Q)) < 1e-2);
    // alpha = 1/phi (the (01)^m limit point) sits near 1.063
    std::string w01;
    for (int i = 0; i < 15; ++i) w01 += "01";
    CHECK(to_double(fluctuation::psi_dense(w01)) == doctest::Approx(1.0629).epsilon(1e-3));
    CHECK_THROWS_AS(fluctuation::psi_dense("110"), DomainError);
    CHECK_THROWS_AS(fluctuation::psi_dense("102"), DomainError);

    // dense-set words vs the step function at depth 25
    std::vector<std::string> words{"0",      "1",     "10",    "01",     "001",
                                   "010010", "10101", "00101", "100100", "0100101"};
    for (const auto& w : words) {
        realcoord::Q5 alpha;
        realcoord::Q5 p(Rat(1));
        realcoord::Q5 inv_phi = realcoord::Q5::inv_golden_ratio();
        for (char ch : w) {
            p = p * inv_phi;
            if (ch == '1') alpha = alpha + p;
        }
        auto a = RealCoordinate::from_q5(alpha);
        CHECK(to_double(rabs(fluctuation::psi_dense(w) - fluctuation::psi_step(25, a))) < 1e-3);
    }
}

TEST_CASE("residual_AF: decay across Fibonacci blocks") {
    const auto& fib = numeration::NumerationSystem::fibonacci();
    // N = F(n): relpos 0; N = F(n)-1: driven by B(n); both stay small
    for (std::size_t n = 6; n <= 16; ++n) {
        auto r = fluctuation::residual_AF(fib.basis(n));
        CHECK(to_double(rabs(r.normalized)) < 0.5);
        auto rm = fluctuation::residual_AF(fib.basis(n) - 1);
        CHECK(to_double(rabs(rm.normalized)) < 0.5);
    }
    // block maxima decay (sampled blocks; acceptance runs the full scan)
    std::vector<real128> blocks;
    for (std::size_t n = 8; n <= 14; ++n) {
        real128 mx = 0.0Q;
        for (Int N = fib.basis(n); N < fib.basis(n + 1); ++N)
            mx = std::max(mx, rabs(fluctuation::residual_AF(N).normalized));
        blocks.push_back(mx);
    }
    for (std::size_t i = 0; i + 4 < blocks.size(); ++i) CHECK(blocks[i] / blocks[i + 4] >= 1.2Q);
}

TEST_CASE("H: period-1 wrapper of Phi") {
    CHECK(to_double(fluctuation::H(0.0Q)) == doctest::Approx(1.0));
    CHECK(to_double(fluctuation::H(7.0Q)) == doctest::Approx(1.0));
    // exact by construction: for representable x+1, frac(x+1) == frac(x)
    // bit for bit, so the values coincide exactly
    for (int i = 0; i < 40; ++i) {
        real128 x = static_cast<real128>(13 * i + 7) / 1024.0Q;
        CHECK(fluctuation::H(x + 1.0Q) == fluctuation::H(x));
        CHECK(fluctuation::H(x + 5.0Q) == fluctuation::H(x));
    }
    // A(N) = 3^{log2 N} H(log2 N)
    real128 worst = 0.0Q;
    for (Int N = 1; N <= 10000; ++N) {
        real128 lg = rlog2(to_real128(N));
        real128 rhs = rpow(3.0Q, lg) * fluctuation::H(lg);
        real128 lhs = to_real128(summatory::A(N));
        worst = std::max(worst, rabs(lhs - rhs) / lhs);
    }
    CHECK(to_double(worst) < 1e-9);
}
