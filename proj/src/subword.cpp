#include "exonum/subword.hpp"

#include <array>
#include <vector>

#include "exonum/errors.hpp"

namespace exonum::subword {

Int word_binomial(const DigitWord& u, const DigitWord& v) {
    if (u.system->alphabet_size() != v.system->alphabet_size())
        throw DomainError("word_binomial: words over different alphabets");
    // dp[j] = #occurrences of v[0..j) in the processed prefix of u
    std::vector<Int> dp(v.size() + 1, 0);
    dp[0] = 1;
    for (std::uint8_t c : u.digits) {
        for (std::size_t j = v.size(); j >= 1; --j) {
            if (v.digits[j - 1] == c) dp[j] += dp[j - 1];
        }
    }
    return dp[v.size()];
}

namespace {

// Distinct in-language subsequences, enumerated once each: extend the
// canonical (leftmost) embedding by the first occurrence of each alphabet
// letter. Non-language prefixes are pruned -- a word that left the language
// (leading zero, or an overlong 1-run) never re-enters it.
struct DistinctCounter {
    std::span<const std::uint8_t> u;
    const NumerationSystem* sys;
    int k;                            // alphabet size
    int max_run;                      // for bounded-run systems, else -1
    std::vector<std::uint32_t> next;  // (len+1) x k first-occurrence table
    std::uint64_t count = 0;

    std::uint32_t first_at(std::size_t pos, int c) const {
        return next[pos * k + static_cast<std::size_t>(c)];
    }

    void build_next() {
        std::size_t n = u.size();
        next.assign((n + 1) * k, static_cast<std::uint32_t>(n));
        for (std::size_t i = n; i-- > 0;) {
            for (int c = 0; c < k; ++c) next[i * k + c] = next[(i + 1) * k + c];
            next[i * k + u[i]] = static_cast<std::uint32_t>(i);
        }
    }

    // pos: first position allowed for the next letter; run: current 1-run
    void walk(std::size_t pos, int run) {
        ++count;
        for (int c = 0; c < k; ++c) {
            std::uint32_t j = first_at(pos, c);
            if (j >= u.size()) continue;
            if (max_run >= 0) {
                int nrun = (c == 1) ? run + 1 : 0;
                if (nrun > max_run) continue;
                walk(j + 1, nrun);
            } else {
                walk(j + 1, 0);
            }
        }
    }

    std::uint64_t run_count() {
        build_next();
        count = 1;  // eps
        // first letter must keep the word in the language: nonzero
        for (int c = 1; c < k; ++c) {
            std::uint32_t j = first_at(0, c);
            if (j < u.size()) walk(j + 1, max_run >= 0 && c == 1 ? 1 : 0);
        }
        return count;
    }
};

}  // namespace

Int distinct_subwords_in_language(const NumerationSystem& sys,
                                  std::span<const std::uint8_t> digits, std::size_t cap) {
    if (digits.size() > cap)
        throw CapacityError("distinct_subwords_in_language: |u| = " +
                            std::to_string(digits.size()) + " exceeds oracle cap " +
                            std::to_string(cap));
    for (auto d : digits)
        if (d >= sys.alphabet_size())
            throw DomainError("distinct_subwords_in_language: digit outside alphabet");
    DistinctCounter ctr;
    ctr.u = digits;
    ctr.sys = &sys;
    ctr.k = sys.alphabet_size();
    ctr.max_run = sys.kind() == NumerationSystem::Kind::BoundedRun ? sys.param() : -1;
    return Int(static_cast<unsigned long>(ctr.run_count()));
}

Int distinct_subwords_in_language(const DigitWord& u, std::size_t cap) {
    return distinct_subwords_in_language(*u.system, u.digits, cap);
}

namespace detail {

Int s_recurrence(const Int& n, std::map<Int, Int>& memo) {
    if (n <= 2) return n;  // s(0)=0, s(1)=1, s(2)=2
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    // n = 2^l + r with 1 <= r <= 2^l
    long l = bit_length(n - 1) - 1;
    Int r = n - pow2(static_cast<unsigned long>(l));
    Int half = pow2(static_cast<unsigned long>(l - 1));
    Int res;
    if (r <= half) {
        res = s_recurrence(half + r, memo) + s_recurrence(r, memo);
    } else {
        res = s_recurrence(pow2(static_cast<unsigned long>(l + 1)) - r + 1, memo);
    }
    memo.emplace(n, res);
    return res;
}

Int s_F_recurrence(const Int& n, std::map<Int, Int>& memo) {
    if (n == 0) return 1;
    if (n == 1) return 2;
    if (n == 2) return 3;  // = s_F(1) + s_F(0), the l=1 edge of the split
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    const auto& fib = NumerationSystem::fibonacci();
    std::size_t l = fib.basis_index_below(n);
    Int r = n - fib.basis(l);
    Int res;
    if (r < fib.basis(l - 2)) {
        res = s_F_recurrence(fib.basis(l - 1) + r, memo) + s_F_recurrence(r, memo);
    } else {
        res = 2 * s_F_recurrence(r, memo);
    }
    memo.emplace(n, res);
    return res;
}

}  // namespace detail

namespace {
std::mutex s_mu;
std::map<Int, Int>& s_memo() {
    static std::map<Int, Int> m;
    return m;
}
std::mutex sF_mu;
std::map<Int, Int>& sF_memo() {
    static std::map<Int, Int> m;
    return m;
}
}  // namespace

Int s(const Int& n, Method method) {
    if (sign(n) < 0) throw DomainError("s: n must be >= 0");
    if (method == Method::Oracle) {
        if (sign(n) == 0) return 0;
        return distinct_subwords_in_language(
            numeration::rep(NumerationSystem::base2(), n - 1));
    }
    std::lock_guard<std::mutex> lock(s_mu);
    return detail::s_recurrence(n, s_memo());
}

Int s_F(const Int& n, Method method) {
    if (sign(n) < 0) throw DomainError("s_F: n must be >= 0");
    if (method == Method::Oracle) {
        return distinct_subwords_in_language(
            numeration::rep(NumerationSystem::fibonacci(), n));
    }
    std::lock_guard<std::mutex> lock(sF_mu);
    return detail::s_F_recurrence(n, sF_memo());
}

Int s_generalized(const NumerationSystem& sys, const Int& n, IndexConvention conv,
                  std::size_t cap) {
    if (sign(n) < 0) throw DomainError("s_generalized: n must be >= 0");
    if (conv == IndexConvention::RepOfNMinus1) {
        if (sign(n) == 0) return 0;
        return distinct_subwords_in_language(sys, numeration::rep(sys, n - 1).digits, cap);
    }
    return distinct_subwords_in_language(sys, numeration::rep(sys, n).digits, cap);
}

Int s_generalized(const NumerationSystem& sys, const Int& n, std::size_t cap) {
    IndexConvention conv = sys.kind() == NumerationSystem::Kind::BaseK
                               ? IndexConvention::RepOfNMinus1
                               : IndexConvention::RepOfN;
    return s_generalized(sys, n, conv, cap);
}

Int SubwordCounter::operator()(const Int& n) {
    if (method_ == Method::Oracle) return s_generalized(*sys_, n);
    if (sys_->kind() == NumerationSystem::Kind::BaseK && sys_->param() == 2)
        return detail::s_recurrence(n, memo_);
    if (sys_->kind() == NumerationSystem::Kind::BoundedRun && sys_->param() == 1)
        return detail::s_F_recurrence(n, memo_);
    throw DomainError("SubwordCounter: no proven recurrence for " + sys_->name());
}

}  // namespace exonum::subword
