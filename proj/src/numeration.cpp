#include "exonum/numeration.hpp"

#include <map>
#include <memory>

namespace exonum::numeration {

NumerationSystem::NumerationSystem(Kind kind, int param) : kind_(kind), param_(param) {
    if (kind == Kind::BaseK) {
        basis_.emplace_back(1);
    } else {
        // b(0)=1, b(i)=2^i for i<=m, then b(n) = sum of previous m+1 terms
        for (int i = 0; i <= param; ++i) basis_.emplace_back(Int(1) << i);
    }
}

void NumerationSystem::grow_to(std::size_t n) const {
    while (basis_.size() <= n) {
        if (kind_ == Kind::BaseK) {
            basis_.push_back(basis_.back() * param_);
        } else {
            Int next = 0;
            std::size_t sz = basis_.size();
            for (int j = 1; j <= param_ + 1; ++j) next += basis_[sz - j];
            basis_.push_back(next);
        }
    }
}

Int NumerationSystem::basis(std::size_t n) const {
    std::lock_guard<std::mutex> lock(mu_);
    grow_to(n);
    return basis_[n];
}

std::size_t NumerationSystem::basis_index_below(const Int& x) const {
    std::lock_guard<std::mutex> lock(mu_);
    std::size_t i = 0;
    grow_to(1);
    while (true) {
        grow_to(i + 1);
        if (basis_[i + 1] > x) return i;
        ++i;
    }
}

bool NumerationSystem::in_language(std::span<const std::uint8_t> digits) const {
    if (digits.empty()) return true;
    if (kind_ == Kind::BaseK) {
        if (digits[0] == 0) return false;
        for (auto d : digits)
            if (d >= param_) return false;
        return true;
    }
    if (digits[0] != 1) return false;
    int run = 0;
    for (auto d : digits) {
        if (d > 1) return false;
        run = (d == 1) ? run + 1 : 0;
        if (run > param_) return false;
    }
    return true;
}

std::string NumerationSystem::name() const {
    if (kind_ == Kind::BaseK) return "base" + std::to_string(param_);
    switch (param_) {
        case 1: return "fibonacci";
        case 2: return "tribonacci";
        case 3: return "quadribonacci";
        default: return "boundedrun" + std::to_string(param_);
    }
}

namespace {
std::mutex registry_mu;
std::map<std::pair<int, int>, std::unique_ptr<NumerationSystem>>& registry() {
    static std::map<std::pair<int, int>, std::unique_ptr<NumerationSystem>> reg;
    return reg;
}

const NumerationSystem& get_system(NumerationSystem::Kind kind, int param) {
    std::lock_guard<std::mutex> lock(registry_mu);
    auto key = std::make_pair(static_cast<int>(kind), param);
    auto& reg = registry();
    auto it = reg.find(key);
    if (it == reg.end()) {
        struct Make : NumerationSystem {
            Make(Kind k, int p) : NumerationSystem(k, p) {}
        };
        it = reg.emplace(key, std::make_unique<Make>(kind, param)).first;
    }
    return *it->second;
}
}  // namespace

const NumerationSystem& NumerationSystem::base_k(int k) {
    if (k < 2) throw DomainError("base_k: k must be >= 2");
    return get_system(Kind::BaseK, k);
}

const NumerationSystem& NumerationSystem::bounded_run(int m) {
    if (m < 1) throw DomainError("bounded_run: m must be >= 1");
    return get_system(Kind::BoundedRun, m);
}

std::string DigitWord::str() const {
    std::string s;
    s.reserve(digits.size());
    for (auto d : digits) s.push_back(static_cast<char>('0' + d));
    return s;
}

DigitWord DigitWord::parse(const std::string& s, const NumerationSystem& sys) {
    DigitWord w;
    w.system = &sys;
    w.digits.reserve(s.size());
    for (char c : s) {
        if (c < '0' || c > '9') throw DomainError("digit word: invalid character");
        w.digits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return w;
}

DigitWord rep(const NumerationSystem& sys, const Int& n) {
    if (sign(n) < 0) throw DomainError("rep: n must be >= 0");
    DigitWord w;
    w.system = &sys;
    if (sign(n) == 0) return w;
    std::size_t top = sys.basis_index_below(n);
    Int rest = n;
    w.digits.resize(top + 1, 0);
    if (sys.kind() == NumerationSystem::Kind::BaseK) {
        for (std::size_t j = 0; j <= top; ++j) {
            Int b = sys.basis(top - j);
            Int d = rest / b;
            rest -= d * b;
            w.digits[j] = static_cast<std::uint8_t>(d.get_ui());
        }
    } else {
        for (std::size_t j = 0; j <= top; ++j) {
            Int b = sys.basis(top - j);
            if (rest >= b) {
                w.digits[j] = 1;
                rest -= b;
            }
        }
    }
    return w;
}

Int val(const NumerationSystem& sys, std::span<const std::uint8_t> digits) {
    Int total = 0;
    std::size_t len = digits.size();
    for (std::size_t j = 0; j < len; ++j) {
        std::uint8_t d = digits[j];
        if (d >= sys.alphabet_size())
            throw DomainError("val: digit " + std::to_string(int(d)) + " outside alphabet of " +
                              sys.name());
        if (d) total += Int(static_cast<unsigned long>(d)) * sys.basis(len - 1 - j);
    }
    return total;
}

Int val(const DigitWord& w) { return val(*w.system, w.digits); }

real128 relpos2(real128 x) {
    if (!(x > 0.0Q)) throw DomainError("relpos2: x must be > 0");
    return rexp2(rfrac(rlog2(x))) - 1.0Q;
}

Rat relpos2_exact(const Int& n) {
    if (sign(n) <= 0) throw DomainError("relpos2: n must be > 0");
    Int p = pow2(static_cast<unsigned long>(floor_log2(n)));
    Rat r(n - p, p);
    r.canonicalize();
    return r;
}

real128 relposF(const Int& n) {
    DigitWord w = rep(NumerationSystem::fibonacci(), n);
    if (w.size() < 2)
        throw DomainError("relposF: rep_F(n) must start with \"10\" (n >= 2)");
    // rep_F(n) = 1 0 r_1 ... r_k  (second digit is always 0: no "11")
    real128 phi = golden_ratio();
    real128 acc = 0.0Q;
    real128 p = 1.0Q;
    for (std::size_t i = 2; i < w.size(); ++i) {
        p /= phi;
        if (w.digits[i]) acc += p;
    }
    return acc;
}

real128 logF(const Int& n) {
    DigitWord w = rep(NumerationSystem::fibonacci(), n);
    if (w.size() < 2)
        throw DomainError("logF: rep_F(n) must start with \"10\" (n >= 2)");
    return static_cast<real128>(w.size() - 1) + relposF(n);
}

}  // namespace exonum::numeration
