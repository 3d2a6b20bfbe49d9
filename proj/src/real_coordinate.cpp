#include "exonum/real_coordinate.hpp"

#include <utility>

namespace exonum::realcoord {

int Q5::sgn() const {
    int sa = sign(a_), sb = sign(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa > 0 && sb > 0) return 1;
    if (sa < 0 && sb < 0) return -1;
    // mixed signs: compare a^2 with 5 b^2
    Rat d = a_ * a_ - 5 * b_ * b_;
    int sd = sign(d);
    return sa > 0 ? sd : -sd;
}

RealCoordinate RealCoordinate::rational(const Int& p, const Int& q) {
    if (sign(q) == 0) throw DomainError("RealCoordinate: zero denominator");
    Rat r(p, q);
    r.canonicalize();
    return rational(r);
}

RealCoordinate RealCoordinate::rational(const Rat& r) {
    if (sign(r) < 0 || r >= 1) throw DomainError("RealCoordinate: alpha must be in [0,1)");
    return RealCoordinate(std::variant<Rat, Q5, BigFloat>(r));
}

RealCoordinate RealCoordinate::from_q5(const Q5& x) {
    if (x.sgn() < 0 || (x - Int(1)).sgn() >= 0)
        throw DomainError("RealCoordinate: alpha must be in [0,1)");
    if (x.is_rational()) return rational(x.rational_part());
    return RealCoordinate(std::variant<Rat, Q5, BigFloat>(x));
}

RealCoordinate RealCoordinate::from_double(double x, long prec_bits) {
    return from_bigfloat(mpf_class(x, static_cast<unsigned long>(prec_bits)), prec_bits);
}

RealCoordinate RealCoordinate::from_bigfloat(mpf_class x, long prec_bits) {
    if (x < 0 || x >= 1) throw DomainError("RealCoordinate: alpha must be in [0,1)");
    x.set_prec(static_cast<unsigned long>(prec_bits));
    return RealCoordinate(std::variant<Rat, Q5, BigFloat>(BigFloat{std::move(x), prec_bits}));
}

namespace {
// arctan(1/x) for integer x by Taylor series at the working precision
mpf_class atan_inv(unsigned long x, unsigned long prec) {
    mpf_class sum(0, prec), term(0, prec);
    mpf_class inv_x2(1, prec);
    inv_x2 /= x;
    inv_x2 /= x;
    mpf_class p(1, prec);
    p /= x;
    unsigned long k = 0;
    mpf_class eps(1, prec);
    eps >>= (prec + 8);
    while (true) {
        term = p / (2 * k + 1);
        if (term < eps) break;
        if (k % 2 == 0)
            sum += term;
        else
            sum -= term;
        p *= inv_x2;
        ++k;
    }
    return sum;
}
}  // namespace

RealCoordinate RealCoordinate::pi_minus_3(long prec_bits) {
    unsigned long work = static_cast<unsigned long>(prec_bits) + 64;
    mpf_class pi = 16 * atan_inv(5, work) - 4 * atan_inv(239, work);
    mpf_class a = pi - 3;
    a.set_prec(static_cast<unsigned long>(prec_bits));
    return from_bigfloat(a, prec_bits);
}

real128 RealCoordinate::to_real128() const {
    if (const Rat* r = std::get_if<Rat>(&rep_)) return exonum::to_real128(*r);
    if (const Q5* q = std::get_if<Q5>(&rep_)) return q->to_real128();
    const BigFloat& f = std::get<BigFloat>(rep_);
    double hi = f.value.get_d();
    mpf_class rest = f.value - hi;
    return static_cast<real128>(hi) + static_cast<real128>(rest.get_d());
}

Int RealCoordinate::floor_scale2(unsigned long n) const {
    if (const Rat* r = std::get_if<Rat>(&rep_)) {
        Int num = r->get_num() << n;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), r->get_den().get_mpz_t());
        return q;
    }
    // walking the binary digits handles both remaining backends
    auto ds = binary_digits(n);
    Int acc = 0;
    for (auto d : ds) acc = (acc << 1) + static_cast<int>(d);
    return acc;
}

std::vector<std::uint8_t> RealCoordinate::digits_up_to(ExpansionCache& cache, bool golden,
                                                       std::size_t depth) const {
    std::lock_guard<std::mutex> lock(cache_mu_);
    const BigFloat* f = std::get_if<BigFloat>(&rep_);
    const char* what = golden ? "golden_digits" : "binary_digits";
    if (f && f->prec_bits < static_cast<long>(depth) + 32)
        throw PrecisionError(std::string(what) + ": need at least depth+32 bits of precision");

    if (!cache.started) {
        if (f) {
            unsigned long prec = static_cast<unsigned long>(f->prec_bits) + 32;
            cache.remainder = mpf_class(f->value, prec);
        } else if (golden) {
            // phi steps leave Q, promote rationals once
            cache.remainder = std::holds_alternative<Rat>(rep_) ? Q5(std::get<Rat>(rep_))
                                                                : std::get<Q5>(rep_);
        } else if (const Rat* r = std::get_if<Rat>(&rep_)) {
            cache.remainder = *r;
        } else {
            cache.remainder = std::get<Q5>(rep_);
        }
        cache.started = true;
    }

    while (cache.digits.size() < depth) {
        std::size_t i = cache.digits.size();
        std::uint8_t d = 0;
        if (Rat* x = std::get_if<Rat>(&cache.remainder)) {
            Rat y = *x * 2;
            if (y >= 1) {
                d = 1;
                y -= 1;
            }
            *x = std::move(y);
        } else if (Q5* x = std::get_if<Q5>(&cache.remainder)) {
            Q5 y = golden ? *x * Q5::golden_ratio() : *x + *x;
            Q5 one(Rat(1), Rat(0));
            if ((y - one).sgn() >= 0) {
                d = 1;
                y = y - one;
            }
            *x = y;
        } else {
            mpf_class& xf = std::get<mpf_class>(cache.remainder);
            mpf_class y(0, xf.get_prec());
            if (golden) {
                mpf_class phi(0, xf.get_prec());
                mpf_sqrt_ui(phi.get_mpf_t(), 5);
                phi = (phi + 1) / 2;
                y = xf * phi;
            } else {
                y = xf * 2;
            }
            // refuse digits whose greedy step lands inside the guard slack
            mpf_class slack(1, xf.get_prec());
            slack >>= static_cast<unsigned long>(f->prec_bits - static_cast<long>(i) - 16);
            if (abs(y - 1) < slack)
                throw PrecisionError(std::string(what) +
                                     ": digit boundary within precision slack");
            if (y >= 1) {
                d = 1;
                y -= 1;
            }
            xf = std::move(y);
        }
        cache.digits.push_back(d);
    }
    return std::vector<std::uint8_t>(cache.digits.begin(),
                                     cache.digits.begin() + static_cast<long>(depth));
}

std::vector<std::uint8_t> RealCoordinate::binary_digits(std::size_t depth) const {
    return digits_up_to(binary_cache_, false, depth);
}

std::vector<std::uint8_t> RealCoordinate::golden_digits(std::size_t depth) const {
    return digits_up_to(golden_cache_, true, depth);
}

std::vector<std::uint8_t> real_expansion(const RealCoordinate& alpha, ExpansionSystem sys,
                                         std::size_t depth) {
    if (depth < 1) throw DomainError("real_expansion: depth must be >= 1");
    return sys == ExpansionSystem::Binary ? alpha.binary_digits(depth)
                                          : alpha.golden_digits(depth);
}

}  // namespace exonum::realcoord
