#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <random>
#include <thread>

#include "exonum/numeration.hpp"
#include "exonum/real_coordinate.hpp"
#include "exonum/serialize.hpp"

using namespace exonum;
using numeration::DigitWord;
using numeration::NumerationSystem;
using realcoord::ExpansionSystem;
using realcoord::Q5;
using realcoord::RealCoordinate;

namespace {
std::string digits_str(const std::vector<std::uint8_t>& ds) {
    std::string s;
    for (auto d : ds) s.push_back(static_cast<char>('0' + d));
    return s;
}
}  // namespace

TEST_CASE("basis sequences") {
    const auto& fib = NumerationSystem::fibonacci();
    CHECK(fib.basis(0) == 1);
    CHECK(fib.basis(1) == 2);
    CHECK(fib.basis(5) == 13);
    const auto& b2 = NumerationSystem::base2();
    CHECK(b2.basis(10) == 1024);
    const auto& trib = NumerationSystem::tribonacci();
    CHECK(trib.basis(0) == 1);
    CHECK(trib.basis(1) == 2);
    CHECK(trib.basis(2) == 4);
    CHECK(trib.basis(3) == 7);
    CHECK(trib.basis(4) == 13);
    const auto& quad = NumerationSystem::quadribonacci();
    CHECK(quad.basis(4) == 15);
    CHECK(quad.basis(5) == 29);
    // strictly increasing
    for (std::size_t n = 0; n < 40; ++n) {
        CHECK(fib.basis(n + 1) > fib.basis(n));
        CHECK(trib.basis(n + 1) > trib.basis(n));
        CHECK(quad.basis(n + 1) > quad.basis(n));
    }
}

TEST_CASE("rep: greedy representations") {
    const auto& b2 = NumerationSystem::base2();
    const auto& fib = NumerationSystem::fibonacci();
    CHECK(numeration::rep(b2, 0).str() == "");
    CHECK(numeration::rep(b2, 42).str() == "101010");
    CHECK(numeration::rep(fib, 163).str() == "10000101001");
    CHECK(numeration::rep(fib, 0).str() == "");
    CHECK(numeration::rep(NumerationSystem::base_k(3), 4).str() == "11");
}

TEST_CASE("val: valuation, also of non-normal words") {
    const auto& fib = NumerationSystem::fibonacci();
    CHECK(numeration::val(DigitWord::parse("10000101001", fib)) == 163);
    CHECK(numeration::val(DigitWord::parse("", fib)) == 0);
    // non-normal: positions 1 and 0 set
    CHECK(numeration::val(DigitWord::parse("0011", fib)) == 3);
    CHECK_THROWS_AS(numeration::val(DigitWord::parse("102", fib)), DomainError);
}

TEST_CASE("round trip and language membership across systems") {
    std::vector<const NumerationSystem*> systems{
        &NumerationSystem::base2(), &NumerationSystem::base_k(3),
        &NumerationSystem::fibonacci(), &NumerationSystem::tribonacci(),
        &NumerationSystem::quadribonacci()};
    for (const auto* sys : systems) {
        for (Int n = 0; n <= 1000000; ++n) {
            DigitWord w = numeration::rep(*sys, n);
            bool ok = w.is_normal() && numeration::val(w) == n;
            if (!ok) {
                CHECK_MESSAGE(ok, "round trip failed in ", sys->name(), " at n=", n.get_str());
                break;
            }
        }
    }
    // spot-check the language predicates
    const auto& fib = NumerationSystem::fibonacci();
    CHECK(fib.in_language(DigitWord::parse("10010", fib).digits));
    CHECK_FALSE(fib.in_language(DigitWord::parse("110", fib).digits));
    CHECK_FALSE(fib.in_language(DigitWord::parse("010", fib).digits));
    const auto& trib = NumerationSystem::tribonacci();
    CHECK(trib.in_language(DigitWord::parse("110", trib).digits));
    CHECK_FALSE(trib.in_language(DigitWord::parse("1110", trib).digits));
}

TEST_CASE("greedy dominance: stripping the leading digit of rep_F") {
    const auto& fib = NumerationSystem::fibonacci();
    for (Int n = 1; n <= 3000; ++n) {
        DigitWord w = numeration::rep(fib, n);
        Int stripped = n - fib.basis(w.size() - 1);
        if (w.size() >= 2) CHECK(stripped < fib.basis(w.size() - 2));
    }
}

TEST_CASE("real_expansion: golden digits of pi - 3") {
    auto alpha = RealCoordinate::pi_minus_3(256);
    auto golden = realcoord::real_expansion(alpha, ExpansionSystem::Golden, 20);
    CHECK(digits_str(golden) == "00001010100100010101");
    auto binary = realcoord::real_expansion(alpha, ExpansionSystem::Binary, 19);
    CHECK(digits_str(binary) == "0010010000111111011");
}

TEST_CASE("real_expansion: exact backends and edge values") {
    auto zero = RealCoordinate::rational(Int(0), Int(1));
    CHECK(digits_str(zero.golden_digits(5)) == "00000");
    // 1/2 = 0.1000... canonical (never all-1s tail)
    auto half = RealCoordinate::rational(Int(1), Int(2));
    CHECK(digits_str(half.binary_digits(6)) == "100000");
    // phi^{-2} = (3-sqrt5)/2: golden expansion is 01 000...
    auto invphi2 = RealCoordinate::from_q5(Q5(Rat(3, 2), Rat(-1, 2)));
    CHECK(digits_str(invphi2.golden_digits(6)) == "010000");
}

TEST_CASE("golden expansion: no 11 factor and the tail bound") {
    std::mt19937 rng(7);
    realcoord::Q5 phi = realcoord::Q5::golden_ratio();
    for (int t = 0; t < 50; ++t) {
        Int den = 1 + (rng() % 4096);
        Int num = rng() % to_u64(den);
        auto alpha = RealCoordinate::rational(num, den);
        auto ds = alpha.golden_digits(40);
        for (std::size_t i = 0; i + 1 < ds.size(); ++i) CHECK(!(ds[i] == 1 && ds[i + 1] == 1));
        // finite-prefix form of the tail bound: sum_{i>=j} d_i phi^{-i} < phi^{-j+1}
        realcoord::Q5 inv_phi = realcoord::Q5::inv_golden_ratio();
        for (std::size_t j = 1; j <= ds.size(); ++j) {
            realcoord::Q5 tail;
            realcoord::Q5 p(Rat(1));
            for (std::size_t i = 1; i <= ds.size(); ++i) {
                p = p * inv_phi;
                if (i >= j && ds[i - 1]) tail = tail + p;
            }
            realcoord::Q5 bound(Rat(1));  // phi^{-(j-1)}
            for (std::size_t i = 0; i + 1 < j; ++i) bound = bound * inv_phi;
            CHECK((bound - tail).sgn() > 0);
        }
    }
}

TEST_CASE("precision: float-backed alpha refuses uncertifiable digits") {
    auto alpha = RealCoordinate::from_double(0.3333333, 64);
    CHECK_THROWS_AS(alpha.binary_digits(60), PrecisionError);
    CHECK_NOTHROW(alpha.binary_digits(20));
    CHECK_THROWS_AS(alpha.golden_digits(60), PrecisionError);
}

TEST_CASE("expansion cache: deepening queries extend consistently") {
    auto alpha = RealCoordinate::pi_minus_3(512);
    auto b40 = alpha.binary_digits(40);
    auto b10 = alpha.binary_digits(10);  // shorter after longer
    auto b80 = alpha.binary_digits(80);
    CHECK(std::equal(b10.begin(), b10.end(), b40.begin()));
    CHECK(std::equal(b40.begin(), b40.end(), b80.begin()));
    auto g30 = alpha.golden_digits(30);
    auto g60 = alpha.golden_digits(60);
    CHECK(std::equal(g30.begin(), g30.end(), g60.begin()));
    // a fresh coordinate reproduces the same digits from scratch
    auto fresh = RealCoordinate::pi_minus_3(512);
    CHECK(fresh.binary_digits(80) == b80);
    CHECK(fresh.golden_digits(60) == g60);
    // shared coordinate, concurrent mixed-depth queries
    auto third = RealCoordinate::rational(Int(1), Int(3));
    auto expect = third.golden_digits(64);
    std::atomic<bool> ok{true};
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&, t] {
            for (int rep = 0; rep < 50; ++rep) {
                std::size_t depth = 1 + ((t * 31 + rep * 7) % 64);
                auto ds = third.golden_digits(depth);
                if (!std::equal(ds.begin(), ds.end(), expect.begin())) ok = false;
            }
        });
    }
    for (auto& th : threads) th.join();
    CHECK(ok);
}

TEST_CASE("relpos2") {
    CHECK(to_double(numeration::relpos2(32.0Q)) == doctest::Approx(0.0));
    CHECK(to_double(numeration::relpos2(5.0Q)) == doctest::Approx(0.25));
    CHECK_THROWS_AS(numeration::relpos2(0.0Q), DomainError);
    CHECK(numeration::relpos2_exact(Int(5)) == Rat(1, 4));
    // relpos_2(e_n(alpha)) = floor(alpha 2^n)/2^n + 2^{-(n+1)}
    auto alpha = RealCoordinate::rational(Int(2), Int(7));
    for (unsigned n = 1; n <= 30; ++n) {
        Int fl = alpha.floor_scale2(n);
        Int en = pow2(n + 1) + 2 * fl + 1;
        Rat expect = Rat(fl, pow2(n)) + Rat(1, pow2(n + 1));
        expect.canonicalize();
        CHECK(numeration::relpos2_exact(en) == expect);
    }
}

TEST_CASE("relpos2 approaches alpha along e_n") {
    // |relpos_2(e_n(alpha)) - alpha| <= 2^-n + 2^-(n+1)
    for (int i = 0; i < 64; ++i) {
        auto alpha = RealCoordinate::rational(Int(i), Int(64));
        real128 a = alpha.to_real128();
        for (unsigned n = 1; n <= 40; ++n) {
            Int en = pow2(n + 1) + 2 * alpha.floor_scale2(n) + 1;
            real128 rp = to_real128(numeration::relpos2_exact(en));
            real128 bound = rpow(2.0Q, -static_cast<real128>(n)) * 1.5Q;
            CHECK(rabs(rp - a) <= bound);
        }
    }
}

TEST_CASE("relposF / logF") {
    const auto& fib = NumerationSystem::fibonacci();
    // n = F(k): relpos 0
    for (std::size_t k = 1; k <= 20; ++k)
        CHECK(to_double(numeration::relposF(fib.basis(k))) == doctest::Approx(0.0));
    CHECK(to_double(numeration::relposF(3)) == doctest::Approx(0.0));  // rep "100"
    // 163: digits after "10" are 000101001 -> phi^-4 + phi^-6 + phi^-9
    double phi = (1 + std::sqrt(5.0)) / 2;
    double expect = std::pow(phi, -4) + std::pow(phi, -6) + std::pow(phi, -9);
    CHECK(to_double(numeration::relposF(163)) == doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS_AS(numeration::relposF(1), DomainError);
    CHECK_THROWS_AS(numeration::relposF(0), DomainError);
    // floor(log_F n) = |rep_F(n)| - 1
    for (Int n = 2; n <= 500; ++n) {
        auto w = numeration::rep(fib, n);
        CHECK(static_cast<long>(to_double(rfloor(numeration::logF(n)))) ==
              static_cast<long>(w.size()) - 1);
    }
}

TEST_CASE("word serialization") {
    const auto& b2 = NumerationSystem::base2();
    DigitWord w = numeration::rep(b2, 18);
    CHECK(w.str() == "10010");
    CHECK(numeration::val(DigitWord::parse(w.str(), b2)) == 18);
    CHECK(numeration::rep(b2, 0).str() == "");
}

TEST_CASE("word JSON form") {
    const auto& fib = NumerationSystem::fibonacci();
    auto j = exonum::word_to_json(numeration::rep(fib, 163));
    CHECK(j["system"] == "fibonacci");
    CHECK(j["digits"] == "10000101001");
    CHECK(j["value"] == 163);
    auto back = exonum::word_from_json(j);
    CHECK(back.str() == "10000101001");
    CHECK(numeration::val(back) == 163);
    // eps round-trips as the empty string
    auto je = exonum::word_to_json(numeration::rep(fib, 0));
    CHECK(je["digits"] == "");
    CHECK(je["value"] == 0);
    // round trip across systems and sizes
    std::mt19937 rng(23);
    for (int t = 0; t < 100; ++t) {
        const auto& sys = t % 2 ? NumerationSystem::base_k(2 + t % 7)
                                : NumerationSystem::bounded_run(1 + t % 3);
        Int n = rng() % 100000;
        auto w = numeration::rep(sys, n);
        CHECK(numeration::val(exonum::word_from_json(exonum::word_to_json(w))) == n);
    }
}

TEST_CASE("shared systems are safe across threads") {
    const auto& fib = NumerationSystem::fibonacci();
    std::atomic<bool> ok{true};
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&, t] {
            for (Int n = 1 + t; n <= 4000; n += 7) {
                auto w = numeration::rep(fib, n);
                if (numeration::val(w) != n || !w.is_normal()) ok = false;
            }
        });
    }
    for (auto& th : threads) th.join();
    CHECK(ok);
}
