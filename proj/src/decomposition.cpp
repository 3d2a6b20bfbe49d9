#include "exonum/decomposition.hpp"

#include <map>
#include <stdexcept>

#include "exonum/errors.hpp"
#include "exonum/summatory.hpp"

namespace exonum::decomposition {

using numeration::NumerationSystem;

namespace {

// exponent -> coefficient, absolute exponents
using Contrib = std::map<long, Int>;

void merge(Contrib& into, const Contrib& from, int scale) {
    for (const auto& [e, c] : from) {
        Int& slot = into[e];
        slot += scale * c;
        if (sign(slot) == 0) into.erase(e);
    }
}

// A(n) as a power-of-3 combination. The reachable subproblems from one n
// stay few (suffix-shaped words), so a per-call memo is enough and keeps
// bulk sweeps memory-flat.
const Contrib& three_contrib(const Int& n, std::map<Int, Contrib>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Contrib res;
    if (n == 1) {
        res[0] = 1;
    } else if (n >= 2) {
        long l = floor_log2(n);
        Int r = n - pow2(static_cast<unsigned long>(l));
        Int half = pow2(static_cast<unsigned long>(l - 1));
        if (r <= half) {
            res[l - 1] += 2;
            merge(res, three_contrib(half + r, memo), 1);
            merge(res, three_contrib(r, memo), 1);
        } else {
            Int rp = pow2(static_cast<unsigned long>(l)) - r;
            res[l] += 4;
            res[l - 1] -= 2;
            merge(res, three_contrib(half + rp, memo), -1);
            merge(res, three_contrib(rp, memo), -1);
        }
        for (auto e = res.begin(); e != res.end();)
            e = sign(e->second) == 0 ? res.erase(e) : std::next(e);
    }
    return memo.emplace(n, std::move(res)).first->second;
}

const Contrib& b_contrib(const Int& n, std::map<Int, Contrib>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Contrib res;
    if (n <= 2) {
        res[0] = n == 0 ? 1 : (n == 1 ? 3 : 6);
    } else {
        const auto& fib = NumerationSystem::fibonacci();
        long l = static_cast<long>(fib.basis_index_below(n));
        Int r = n - fib.basis(static_cast<std::size_t>(l));
        if (r < fib.basis(static_cast<std::size_t>(l - 2))) {
            res[l] += 1;
            res[l - 1] -= 1;
            merge(res, b_contrib(fib.basis(static_cast<std::size_t>(l - 1)) + r, memo), 1);
            merge(res, b_contrib(r, memo), 1);
        } else {
            res[l] += 2;
            res[l - 1] -= 1;
            res[l - 2] -= 1;
            merge(res, b_contrib(r, memo), 2);
        }
        for (auto e = res.begin(); e != res.end();)
            e = sign(e->second) == 0 ? res.erase(e) : std::next(e);
    }
    return memo.emplace(n, std::move(res)).first->second;
}

long ell2(const Int& n) {
    long l = floor_log2(n);
    Int r = n - pow2(static_cast<unsigned long>(l));
    return r > pow2(static_cast<unsigned long>(l - 1)) ? l : l - 1;
}

Decomposition assemble(DecompositionBasis basis, const Contrib& con, long scale) {
    Decomposition d;
    d.basis = basis;
    d.scale = scale;
    long lead = con.empty() ? 0 : con.rbegin()->first;
    if (lead != scale)
        throw std::logic_error("decomposition: leading exponent " + std::to_string(lead) +
                               " disagrees with predicted scale " + std::to_string(scale));
    d.coeffs.assign(static_cast<std::size_t>(scale) + 1, Int(0));
    for (const auto& [e, c] : con) d.coeffs[static_cast<std::size_t>(scale - e)] = c;
    return d;
}

}  // namespace

Int Decomposition::reconstruct() const {
    Int acc = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::size_t e = static_cast<std::size_t>(scale) - i;
        if (basis == DecompositionBasis::PowersOf3)
            acc += coeffs[i] * pow_int(3, e);
        else
            acc += coeffs[i] * summatory::B(e);
    }
    return acc;
}

Decomposition three_dec(const Int& n) {
    if (n < 2) throw DomainError("three_dec: n must be >= 2");
    std::map<Int, Contrib> memo;
    const Contrib& con = three_contrib(n, memo);
    return assemble(DecompositionBasis::PowersOf3, con, ell2(n));
}

Decomposition b_dec(const Int& n) {
    if (n < 3) throw DomainError("b_dec: n must be >= 3");
    std::map<Int, Contrib> memo;
    const Contrib& con = b_contrib(n, memo);
    long scale =
        static_cast<long>(numeration::rep(NumerationSystem::fibonacci(), n).size()) - 1;
    return assemble(DecompositionBasis::BSequence, con, scale);
}

Int e_n(const RealCoordinate& alpha, CoordSystem sys, unsigned n) {
    if (n < 1) throw DomainError("e_n: n must be >= 1");
    if (sys == CoordSystem::Base2) {
        return pow2(n + 1) + 2 * alpha.floor_scale2(n) + 1;
    }
    // val_F of the length-n prefix of 10 rep_phi(alpha)
    const auto& fib = NumerationSystem::fibonacci();
    Int acc = fib.basis(n - 1);
    if (n >= 3) {
        auto ds = alpha.golden_digits(n - 2);
        for (unsigned i = 1; i <= n - 2; ++i)
            if (ds[i - 1]) acc += fib.basis(n - 2 - i);
    }
    return acc;
}

LimitDigits limit_digits(const RealCoordinate& alpha, CoordSystem sys, std::size_t count) {
    if (count < 1) throw DomainError("limit_digits: count must be >= 1");
    auto decompose = [&](unsigned n) {
        Int e = e_n(alpha, sys, n);
        return sys == CoordSystem::Base2 ? three_dec(e) : b_dec(e);
    };
    unsigned n = static_cast<unsigned>(count) + 1;
    if (sys == CoordSystem::Fibonacci && n < 3) n = 3;
    unsigned n_limit = n + 96;  // agreement comes within a few depths
    Decomposition cur = decompose(n);
    while (true) {
        if (n > n_limit)
            throw std::logic_error("limit_digits: no prefix agreement within depth budget");
        Decomposition next = decompose(n + 1);
        bool agree = cur.coeffs.size() >= count && next.coeffs.size() >= count;
        for (std::size_t i = 0; agree && i < count; ++i)
            agree = cur.coeffs[i] == next.coeffs[i];
        if (agree) {
            LimitDigits out;
            out.system = sys;
            out.digits.assign(cur.coeffs.begin(), cur.coeffs.begin() + static_cast<long>(count));
            out.certified_len = count;
            out.depth_used = n;
            return out;
        }
        cur = std::move(next);
        ++n;
    }
}

}  // namespace exonum::decomposition
