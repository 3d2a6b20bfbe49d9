// exonum: digital sequences over exotic numeration systems.
//
// Subcommands: seq (sequence dumps), decomp (3-/B-decompositions),
// fluct (fluctuation-function datasets), conjecture (experiment reports).
// stdout carries data only, stderr diagnostics. Exit codes: 0 success,
// 2 domain/usage error, 3 capacity, 4 precision failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "exonum/conjecture.hpp"
#include "exonum/decomposition.hpp"
#include "exonum/errors.hpp"
#include "exonum/fluctuation.hpp"
#include "exonum/numeration.hpp"
#include "exonum/serialize.hpp"
#include "exonum/subword.hpp"
#include "exonum/summatory.hpp"

using json = nlohmann::ordered_json;
using namespace exonum;
using decomposition::CoordSystem;
using numeration::NumerationSystem;
using realcoord::RealCoordinate;

namespace {

struct RunConfig {
    long precision_bits = 256;
    long grid = 1024;
    long depth = 22;
    std::string format = "csv";
    std::string out_path;
    long oracle_cap = 22;
    double residual_threshold = 1.2;
};

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// JSON numbers stay lossless: integers above 2^53 are emitted as strings
json json_int(const Int& z) {
    if (bit_length(z) <= 53) return json(z.get_si());
    return json(z.get_str());
}

json json_coeffs(const std::vector<Int>& cs) {
    json arr = json::array();
    for (const auto& c : cs) arr.push_back(json_int(c));
    return arr;
}

class Output {
public:
    explicit Output(const RunConfig& cfg) {
        if (!cfg.out_path.empty()) {
            file_.open(cfg.out_path);
            if (!file_) throw DomainError("cannot open output file: " + cfg.out_path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// ---------- seq ----------

int cmd_seq(const RunConfig& cfg, const std::string& name, long from, long to,
            const std::string& method, int k) {
    if (from > to) throw DomainError("seq: need from <= to");
    subword::Method m =
        method == "oracle" ? subword::Method::Oracle : subword::Method::Recurrence;
    summatory::SumMethod sm =
        method == "naive" ? summatory::SumMethod::Naive : summatory::SumMethod::Fast;
    if ((name == "A" || name == "AF") && (method == "oracle"))
        throw DomainError("seq: summatory functions take --method naive|fast");
    std::vector<Int> values;
    for (long n = from; n <= to; ++n) {
        if (name == "s")
            values.push_back(subword::s(n, m));
        else if (name == "sF")
            values.push_back(subword::s_F(n, m));
        else if (name == "sk")
            values.push_back(subword::s_generalized(NumerationSystem::base_k(k), n,
                                                    static_cast<std::size_t>(cfg.oracle_cap)));
        else if (name == "s2digitsum")
            values.push_back(summatory::digit_sum2(n));
        else if (name == "A")
            values.push_back(summatory::A(n, sm));
        else if (name == "AF")
            values.push_back(summatory::A_F(n, sm));
        else
            throw DomainError("seq: unknown sequence name " + name);
    }
    Output out(cfg);
    auto& os = out.stream();
    if (cfg.format == "csv") {
        os << "n,value\n";
        for (std::size_t i = 0; i < values.size(); ++i)
            os << from + static_cast<long>(i) << "," << values[i].get_str() << "\n";
    } else {
        json rows = json::array();
        for (std::size_t i = 0; i < values.size(); ++i)
            rows.push_back(
                json{{"n", from + static_cast<long>(i)}, {"value", json_int(values[i])}});
        os << rows.dump(2) << "\n";
    }
    return 0;
}

// ---------- decomp ----------

json decomp_json(const Int& n, const decomposition::Decomposition& d) {
    return json{{"n", json_int(n)},
                {"basis", d.basis == decomposition::DecompositionBasis::PowersOf3 ? "3" : "B"},
                {"scale", d.scale},
                {"coeffs", json_coeffs(d.coeffs)}};
}

int cmd_decomp(const RunConfig& cfg, const std::string& kind, long n_single, long from, long to,
               bool table) {
    bool is3 = kind == "3dec";
    if (!is3 && kind != "bdec") throw DomainError("decomp: kind must be 3dec or bdec");
    if (n_single < 0 && from < 0) throw DomainError("decomp: give n or --from/--to");
    long lo = n_single >= 0 ? n_single : from;
    long hi = n_single >= 0 ? n_single : to;
    if (lo < 0 || hi < lo) throw DomainError("decomp: bad range");
    std::vector<decomposition::Decomposition> decs;
    for (long n = lo; n <= hi; ++n)
        decs.push_back(is3 ? decomposition::three_dec(n) : decomposition::b_dec(n));
    Output out(cfg);
    auto& os = out.stream();
    if (table) {
        std::size_t width = 0;
        for (const auto& d : decs) width = std::max(width, d.coeffs.size());
        os << "n";
        for (std::size_t i = 0; i < width; ++i) os << "," << (is3 ? "a" : "b") << i;
        os << "," << (is3 ? "A(n)" : "A_F(n)") << "\n";
        for (std::size_t j = 0; j < decs.size(); ++j) {
            const auto& d = decs[j];
            os << lo + static_cast<long>(j);
            for (std::size_t i = 0; i < width; ++i)
                os << "," << (i < d.coeffs.size() ? d.coeffs[i].get_str() : "");
            os << "," << d.reconstruct().get_str() << "\n";
        }
        return 0;
    }
    if (cfg.format == "csv") {
        os << "n,i,coeff\n";
        for (std::size_t j = 0; j < decs.size(); ++j)
            for (std::size_t i = 0; i < decs[j].coeffs.size(); ++i)
                os << lo + static_cast<long>(j) << "," << i << ","
                   << decs[j].coeffs[i].get_str() << "\n";
    } else {
        json arr = json::array();
        for (std::size_t j = 0; j < decs.size(); ++j)
            arr.push_back(decomp_json(lo + static_cast<long>(j), decs[j]));
        os << (arr.size() == 1 ? arr[0].dump(2) : arr.dump(2)) << "\n";
    }
    return 0;
}

// ---------- fluct ----------

void emit_samples(std::ostream& os, const RunConfig& cfg,
                  const std::vector<fluctuation::FluctuationSample>& samples,
                  const char* xname = "alpha") {
    bool residuals = false;
    for (const auto& s : samples) residuals = residuals || s.has_residual;
    if (cfg.format == "csv") {
        os << xname << ",value" << (residuals ? ",residual" : "") << "\n";
        for (const auto& s : samples) {
            os << fmt_double(s.alpha) << "," << fmt_double(s.value);
            if (residuals) os << "," << (s.has_residual ? fmt_double(s.residual) : "");
            os << "\n";
        }
    } else {
        json arr = json::array();
        for (const auto& s : samples) {
            json row{{xname, s.alpha}, {"value", s.value}};
            if (s.has_residual) row["residual"] = s.residual;
            arr.push_back(row);
        }
        os << arr.dump(2) << "\n";
    }
}

// "pi-3", "p/q", or a decimal parsed at the configured precision
RealCoordinate parse_alpha(const RunConfig& cfg, const std::string& s) {
    if (s == "pi-3") return RealCoordinate::pi_minus_3(cfg.precision_bits);
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int p(s.substr(0, slash)), q(s.substr(slash + 1));
        return RealCoordinate::rational(p, q);
    }
    mpf_class x(0, static_cast<unsigned long>(cfg.precision_bits));
    if (x.set_str(s, 10) != 0) throw DomainError("fluct: cannot parse --alpha " + s);
    return RealCoordinate::from_bigfloat(x, cfg.precision_bits);
}

int cmd_fluct(const RunConfig& cfg, const std::string& which, long n_param, int k, long from,
              long to, long nmax, const std::string& alpha_str) {
    Output out(cfg);
    auto& os = out.stream();
    std::vector<fluctuation::FluctuationSample> samples;
    auto grid_alpha = [&](long i) {
        return RealCoordinate::rational(Int(i), Int(cfg.grid));
    };

    if (which == "phi" || which == "phin" || which == "psi" || which == "psin") {
        unsigned depth = static_cast<unsigned>(cfg.depth);
        if (which == "phin" || which == "psin") {
            if (n_param < 1) throw DomainError("fluct: --n required for phin/psin");
            depth = static_cast<unsigned>(n_param);
        }
        bool is_phi = which == "phi" || which == "phin";
        if (!is_phi && depth < 3) throw DomainError("fluct: psi needs depth >= 3");
        if (!alpha_str.empty()) {
            RealCoordinate a = parse_alpha(cfg, alpha_str);
            fluctuation::FluctuationSample s;
            s.alpha = to_double(a.to_real128());
            s.depth = depth;
            s.value = to_double(is_phi ? fluctuation::phi_step(depth, a)
                                       : fluctuation::psi_step(depth, a));
            samples.push_back(s);
            emit_samples(os, cfg, samples);
            return 0;
        }
        if (which == "psi" && from >= 0 && to > from) {
            // Figure-6 style: direct samples A_F(N)/(c beta^{log_F N}) over [from, to)
            const auto& sd = summatory::spectral();
            std::map<std::size_t, double> block_max;
            const auto& fib = NumerationSystem::fibonacci();
            for (long N = std::max(from, 3L); N < to; ++N) {
                fluctuation::FluctuationSample s;
                s.alpha = to_double(numeration::relposF(N));
                s.value = to_double(to_real128(summatory::A_F(N)) /
                                    (sd.c * rpow(sd.beta, numeration::logF(N))));
                auto r = fluctuation::residual_AF(N);
                s.has_residual = true;
                s.residual = to_double(r.normalized);
                samples.push_back(s);
                std::size_t blk = fib.basis_index_below(N);
                block_max[blk] = std::max(block_max[blk], std::abs(s.residual));
            }
            // diagnostics only: flag blocks whose residual decays slower than
            // the configured factor per 4 blocks
            for (const auto& [blk, mx] : block_max) {
                auto later = block_max.find(blk + 4);
                if (later != block_max.end() && later->second > 0 &&
                    mx / later->second < cfg.residual_threshold)
                    std::cerr << "note: residual decay below threshold between blocks "
                              << blk << " and " << blk + 4 << "\n";
            }
        } else {
            for (long i = 0; i < cfg.grid; ++i) {
                auto a = grid_alpha(i);
                fluctuation::FluctuationSample s;
                s.alpha = static_cast<double>(i) / static_cast<double>(cfg.grid);
                s.depth = depth;
                s.value = to_double(is_phi ? fluctuation::phi_step(depth, a)
                                           : fluctuation::psi_step(depth, a));
                samples.push_back(s);
            }
        }
        emit_samples(os, cfg, samples);
        return 0;
    }
    if (which == "H") {
        // two periods of x
        for (long i = 0; i < cfg.grid; ++i) {
            double x = 2.0 * static_cast<double>(i) / static_cast<double>(cfg.grid);
            fluctuation::FluctuationSample s;
            s.alpha = x;
            s.value = to_double(fluctuation::H(static_cast<real128>(x)));
            samples.push_back(s);
        }
        emit_samples(os, cfg, samples, "x");
        return 0;
    }
    if (which == "Hk") {
        if (k < 3) throw DomainError("fluct Hk: --k (>= 3) required");
        Int lo = from >= 1 ? Int(from) : pow_int(static_cast<unsigned long>(k), 3);
        Int hi = to > 0 ? Int(to) : pow_int(static_cast<unsigned long>(k), 5);
        samples = conjecture::sample_Hk(k, lo, hi, static_cast<std::size_t>(cfg.oracle_cap));
        emit_samples(os, cfg, samples);
        return 0;
    }
    if (which == "GT" || which == "GQ") {
        bool is_gt = which == "GT";
        const auto& sys =
            is_gt ? NumerationSystem::tribonacci() : NumerationSystem::quadribonacci();
        // the fit needs enough checkpoints for the minimal order (5 resp. 7)
        unsigned m = nmax > 0 ? static_cast<unsigned>(nmax) : (is_gt ? 12u : 15u);
        samples = conjecture::sample_G(sys, m, static_cast<std::size_t>(cfg.oracle_cap));
        emit_samples(os, cfg, samples);
        return 0;
    }
    if (which == "delangeG") {
        long lo = from >= 1 ? from : 4;
        long hi = to > 0 ? to : 4096;
        for (long N = lo; N <= hi; ++N) {
            auto d = summatory::delange_suite(N);
            fluctuation::FluctuationSample s;
            s.alpha = to_double(rlog2(static_cast<real128>(N)));
            s.value = to_double(d.G);
            samples.push_back(s);
        }
        emit_samples(os, cfg, samples, "log2N");
        return 0;
    }
    throw DomainError("fluct: unknown function " + which);
}

// ---------- conjecture ----------

json fit_json(const conjecture::RecurrenceFit& fit) {
    json j{{"ok", fit.ok}};
    if (fit.ok) {
        j["order"] = fit.order;
        json coeffs = json::array();
        for (const auto& q : fit.coeffs) {
            if (q.get_den() == 1)
                coeffs.push_back(json_int(q.get_num()));
            else
                coeffs.push_back(q.get_str());
        }
        j["coefficients"] = coeffs;
        j["seeds"] = json_coeffs(fit.seeds);
        j["char_poly"] = json_coeffs(fit.char_poly());
        j["dominant_root"] = to_double(fit.dominant_root());
    } else {
        j["note"] = fit.note;
    }
    j["horizon"] = fit.horizon;
    return j;
}

const char* verdict_str(conjecture::PolyVerdict v) {
    switch (v) {
        case conjecture::PolyVerdict::Match: return "match";
        case conjecture::PolyVerdict::ReferenceDividesFit: return "reference-divides-fit";
        case conjecture::PolyVerdict::FitDividesReference: return "fit-divides-reference";
        case conjecture::PolyVerdict::Mismatch: return "mismatch";
        default: return "no-fit";
    }
}

json checkpoint_json(const conjecture::CheckpointReport& rep) {
    json ev;
    ev["matching_convention"] = rep.matching_convention;
    ev["seeds_match"] = rep.seeds_match;
    ev["recurrence_matches"] = rep.recurrence_matches;
    ev["reference_poly_verdict"] = verdict_str(rep.verdict);
    if (rep.dominant_root != 0.0Q) ev["dominant_root"] = to_double(rep.dominant_root);
    for (const auto* st : {&rep.at_checkpoint, &rep.at_checkpoint_minus_1}) {
        json s{{"values", json_coeffs(st->values)}, {"fit", fit_json(st->fit)}};
        ev[st->label] = s;
    }
    ev["note"] = rep.note;
    return json{{"conjecture", rep.system + " checkpoint recurrence"},
                {"range", json{{"n_max", rep.n_max}}},
                {"result", rep.seeds_match || rep.verdict == conjecture::PolyVerdict::Match
                               ? "pass"
                               : "report"},
                {"evidence", ev}};
}

int cmd_conjecture(const RunConfig& cfg, const std::string& name, int k, long nmax) {
    Output out(cfg);
    auto& os = out.stream();
    json report;
    if (name == "basek") {
        if (k < 3) throw DomainError("conjecture basek: --k (>= 3) required");
        long n_max = nmax > 0 ? nmax : 200;
        auto rep = conjecture::check_base_k_scaling(k, n_max,
                                                    static_cast<std::size_t>(cfg.oracle_cap));
        json ev{{"checked_n", n_max}};
        if (rep.first_counterexample) {
            ev["counterexample"] = json{{"n", json_int(*rep.first_counterexample)},
                                        {"A(kn)", json_int(rep.lhs)},
                                        {"(2k-1)A(n)", json_int(rep.rhs)}};
        } else {
            ev["counterexample"] = nullptr;
        }
        report = json{{"conjecture", "A_k(kn) = (2k-1) A_k(n)"},
                      {"range", json{{"k", k}, {"n_max", n_max}}},
                      {"result", rep.pass ? "pass" : "fail"},
                      {"evidence", ev}};
    } else if (name == "trib") {
        unsigned m = nmax > 0 ? static_cast<unsigned>(nmax) : 14u;
        report = checkpoint_json(
            conjecture::tribonacci_V(m, static_cast<std::size_t>(cfg.oracle_cap)));
    } else if (name == "quad") {
        unsigned m = nmax > 0 ? static_cast<unsigned>(nmax) : 15u;
        report = checkpoint_json(
            conjecture::quadribonacci_fit(m, static_cast<std::size_t>(cfg.oracle_cap)));
    } else {
        throw DomainError("conjecture: unknown name " + name);
    }
    os << report.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"digital sequences, exotic decompositions and fluctuation functions"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--precision-bits", cfg.precision_bits, "float precision for real inputs")
        ->envname("EXONUM_PRECISION_BITS")
        ->check(CLI::PositiveNumber);
    app.add_option("--grid", cfg.grid, "grid size for sampled functions")
        ->envname("EXONUM_GRID")
        ->check(CLI::PositiveNumber);
    app.add_option("--depth", cfg.depth, "approximation depth")
        ->envname("EXONUM_DEPTH")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "output format")
        ->envname("EXONUM_FORMAT")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out_path, "output path (default stdout)")
        ->envname("EXONUM_OUT");
    app.add_option("--oracle-cap", cfg.oracle_cap, "subword oracle length cap")
        ->envname("EXONUM_ORACLE_CAP")
        ->check(CLI::PositiveNumber);
    app.add_option("--residual-threshold", cfg.residual_threshold,
                   "residual decay factor per 4 blocks")
        ->envname("EXONUM_RESIDUAL_THRESHOLD")
        ->check(CLI::PositiveNumber);
    app.set_config("--config");

    // seq
    auto* seq = app.add_subcommand("seq", "dump a sequence as n,value rows");
    seq->fallthrough();
    std::string seq_name, seq_method = "recurrence";
    long seq_from = 0, seq_to = 0;
    int seq_k = 3;
    seq->add_option("--name", seq_name, "s | sF | sk | s2digitsum | A | AF")->required();
    seq->add_option("--from", seq_from)->required();
    seq->add_option("--to", seq_to)->required();
    seq->add_option("--method", seq_method)
        ->check(CLI::IsMember({"recurrence", "oracle", "naive", "fast"}));
    seq->add_option("--k", seq_k, "base for sk");

    // decomp
    auto* dec = app.add_subcommand("decomp", "3-decomposition / B-decomposition");
    dec->fallthrough();
    std::string dec_kind;
    long dec_n = -1, dec_from = -1, dec_to = -1;
    bool dec_table = false;
    dec->add_option("kind", dec_kind, "3dec | bdec")->required();
    dec->add_option("n", dec_n, "single argument");
    dec->add_option("--from", dec_from);
    dec->add_option("--to", dec_to);
    dec->add_flag("--table", dec_table, "aligned table layout");

    // fluct
    auto* flu = app.add_subcommand("fluct", "fluctuation-function datasets");
    flu->fallthrough();
    std::string flu_which;
    long flu_n = -1, flu_from = -1, flu_to = -1, flu_nmax = -1;
    int flu_k = 0;
    flu->add_option("which", flu_which, "phi|psi|H|Hk|GT|GQ|phin|psin|delangeG")->required();
    flu->add_option("--n", flu_n, "step-function index for phin/psin");
    flu->add_option("--k", flu_k, "base for Hk");
    flu->add_option("--from", flu_from);
    flu->add_option("--to", flu_to);
    flu->add_option("--nmax", flu_nmax, "basis horizon for GT/GQ");
    std::string flu_alpha;
    flu->add_option("--alpha", flu_alpha, "single-point mode: pi-3 | p/q | decimal");

    // spectral
    auto* spec_cmd = app.add_subcommand("spectral", "dump the B-sequence spectral data as JSON");
    spec_cmd->fallthrough();

    // conjecture
    auto* con = app.add_subcommand("conjecture", "experiment reports as JSON");
    con->fallthrough();
    std::string con_name;
    long con_nmax = -1;
    int con_k = 0;
    con->add_option("name", con_name, "basek | trib | quad")->required();
    con->add_option("--k", con_k);
    con->add_option("--nmax", con_nmax);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (seq->parsed()) return cmd_seq(cfg, seq_name, seq_from, seq_to, seq_method, seq_k);
        if (dec->parsed()) return cmd_decomp(cfg, dec_kind, dec_n, dec_from, dec_to, dec_table);
        if (flu->parsed())
            return cmd_fluct(cfg, flu_which, flu_n, flu_k, flu_from, flu_to, flu_nmax, flu_alpha);
        if (con->parsed()) return cmd_conjecture(cfg, con_name, con_k, con_nmax);
        if (spec_cmd->parsed()) {
            Output out(cfg);
            out.stream() << spectral_to_json(summatory::spectral()).dump(2) << "\n";
            return 0;
        }
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const PrecisionError& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 4;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
