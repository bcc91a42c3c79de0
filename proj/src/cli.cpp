#include "ffstat/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "ffstat/error.hpp"
#include "ffstat/field.hpp"
#include "ffstat/mpoly.hpp"
#include "ffstat/sets.hpp"
#include "ffstat/stats.hpp"
#include "ffstat/unipoly.hpp"

namespace ffstat::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Options {
    std::uint64_t p = 0;
    int k = 1;
    std::string modulus;
    std::string poly;
    std::size_t n = 0;
    std::string set = "full";
    std::string group = "symmetric";
    std::string type;
    std::string point;
    std::string b;
    std::string primes;
    unsigned threads = 1;
    std::uint64_t seed = 0x5eed;
    std::uint64_t budget = std::uint64_t{1} << 26;
    unsigned trials = 40;
    std::string format = "json";
    std::string out;
    bool no_run_info = false;
    bool quiet = false;
    bool allow_inadmissible = false;
    // demo parameters
    std::uint64_t h = 0;
    std::int64_t beta = 0;
    unsigned exp = 3;
    unsigned d = 3;
    std::string f = "t^3 - 3*t";
    std::string shifts = "0";
};

class Timings {
public:
    template <typename Fn>
    auto time(const std::string& phase, Fn&& fn) {
        const auto start = Clock::now();
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            record(phase, start);
        } else {
            auto result = fn();
            record(phase, start);
            return result;
        }
    }
    Json to_json() const {
        Json j = Json::object();
        for (const auto& [name, ms] : phases_) j[name] = ms;
        return j;
    }

private:
    void record(const std::string& phase, Clock::time_point start) {
        phases_.emplace_back(phase, std::chrono::duration<double, std::milli>(Clock::now() - start).count());
    }
    std::vector<std::pair<std::string, double>> phases_;
};

struct Report {
    std::string command;
    Json config = Json::object();
    Json result = Json::object();
    std::string csv;
};

class Logger {
public:
    Logger(std::ostream& err, bool quiet) : err_(err), quiet_(quiet) {}
    void info(const std::string& msg) const {
        if (!quiet_) err_ << "[ffstat] " << msg << '\n';
    }

private:
    std::ostream& err_;
    bool quiet_;
};

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<std::int64_t> out;
    std::string s = text;
    for (char& c : s)
        if (c == '[' || c == ']' || c == ',') c = ' ';
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw Error(ErrorCode::InvalidArgument, "bad integer '" + tok + "' in " + what);
        out.push_back(v);
    }
    return out;
}

FieldPtr make_field(const Options& o) {
    if (o.p == 0) throw Error(ErrorCode::InvalidArgument, "--p is required");
    std::optional<std::vector<std::int64_t>> modulus;
    if (!o.modulus.empty()) modulus = parse_int_list(o.modulus, "--modulus");
    return FieldCtx::create(o.p, o.k, modulus, o.seed);
}

Json field_config(const Options& o, const FieldCtx& ctx) {
    Json j;
    j["p"] = ctx.p();
    j["k"] = ctx.k();
    j["q"] = ctx.q();
    Json mod = Json::array();
    for (auto c : ctx.modulus()) mod.push_back(c);
    j["modulus"] = mod;
    j["seed"] = o.seed;
    j["budget"] = o.budget;
    return j;
}

StatsOptions stats_options(const Options& o) {
    StatsOptions s;
    s.run.threads = o.threads;
    s.run.budget = o.budget;
    s.require_admissible = !o.allow_inadmissible;
    s.admissibility_trials = o.trials;
    s.seed = o.seed;
    return s;
}

std::size_t resolve_n(const Options& o) { return o.n != 0 ? o.n : infer_variable_count(o.poly); }

MultiPoly require_poly(const Options& o, const FieldPtr& ctx, std::size_t n) {
    if (o.poly.empty()) throw Error(ErrorCode::InvalidArgument, "--poly is required");
    return parse_poly(o.poly, n, ctx);
}

std::string outcome_name(const SpecializationOutcome& s) {
    switch (s.kind) {
        case SpecializationOutcome::Kind::Type: return "type";
        case SpecializationOutcome::Kind::NonSquarefree: return "non_squarefree";
        case SpecializationOutcome::Kind::DegreeDrop: return "degree_drop";
    }
    return "";
}

Json admissibility_json(const AdmissibilityReport& a) {
    Json j;
    j["deg_t"] = a.deg_t;
    j["total_degree"] = a.total_deg;
    j["p_gt_d"] = a.p_gt_d;
    j["disc_nonzero"] = a.disc_nonzero;
    j["trials_used"] = a.trials_used;
    j["admissible"] = a.admissible();
    return j;
}

Json irreg_json(const IrregularityReport& r) {
    Json j;
    j["irreg"] = r.irreg;
    j["method"] = std::string(to_string(r.method));
    if (r.bound_9plogp) j["bound_9plogp"] = *r.bound_9plogp;
    return j;
}

Json distribution_json(const ClassDistribution& d) {
    Json counts = Json::object();
    for (const auto& [t, c] : d.counts) counts[t.to_string()] = c;
    Json j;
    j["counts"] = counts;
    j["non_squarefree"] = d.non_squarefree;
    j["degree_drop"] = d.degree_drop;
    j["total"] = d.total;
    return j;
}

Json comparison_json(const ComparisonReport& r) {
    Json j = distribution_json(r.distribution);
    Json per = Json::object();
    for (const auto& [t, row] : r.per_type) {
        Json e;
        e["count"] = row.count;
        e["frequency"] = row.frequency;
        e["prediction"] = row.prediction;
        e["deviation"] = row.deviation;
        per[t.to_string()] = e;
    }
    j["per_type"] = per;
    j["non_squarefree_frequency"] = r.non_squarefree_frequency;
    j["degree_drop_frequency"] = r.degree_drop_frequency;
    j["exceptional_policy"] = "counted_as_deviation";
    j["tv_distance"] = r.tv_distance;
    j["irreg"] = irreg_json(r.irreg);
    j["normalized_error"] = r.normalized_error;
    return j;
}

std::string fmt_double(double x) {
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

std::string types_csv(const ClassDistribution& d, const ComparisonReport* cmp) {
    std::string out = "type,count,frequency,prediction,deviation\n";
    const double total = static_cast<double>(d.total);
    auto row = [&](const std::string& name, std::uint64_t count, const std::string& pred, const std::string& dev) {
        const double freq = total > 0 ? static_cast<double>(count) / total : 0.0;
        out += "\"" + name + "\"," + std::to_string(count) + "," + fmt_double(freq) + "," + pred + "," + dev + "\n";
    };
    if (cmp) {
        for (const auto& [t, r] : cmp->per_type)
            row(t.to_string(), r.count, fmt_double(r.prediction), fmt_double(r.deviation));
        row("non_squarefree", d.non_squarefree, "0", fmt_double(cmp->non_squarefree_frequency));
        row("degree_drop", d.degree_drop, "0", fmt_double(cmp->degree_drop_frequency));
    } else {
        for (const auto& [t, c] : d.counts) row(t.to_string(), c, "", "");
        row("non_squarefree", d.non_squarefree, "", "");
        row("degree_drop", d.degree_drop, "", "");
    }
    return out;
}

std::string kv_csv(const Json& flat) {
    std::string out = "key,value\n";
    for (const auto& [k, v] : flat.items()) {
        if (v.is_structured()) continue;
        out += k + "," + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
    return out;
}

GroupSpec make_group(const std::string& spec, unsigned d) {
    if (spec == "symmetric") return GroupSpec::symmetric(d);
    if (spec == "cyclic") return GroupSpec::cyclic(d);
    return GroupSpec::load(spec);
}

std::uint64_t default_h(std::uint64_t p, double exponent) {
    auto h = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(p), exponent)));
    return std::clamp<std::uint64_t>(h, 1, p);
}

double sqrtp_logp(std::uint64_t p) {
    const double x = static_cast<double>(p);
    return std::sqrt(x) * std::log(x);
}

std::string interval_text(std::int64_t beta, std::uint64_t h) {
    return "grid:int(" + std::to_string(beta) + "," + std::to_string(h) + ")";
}

// ---- subcommands ----------------------------------------------------------

Report cmd_factor_type(const Options& o, Timings& tm, const Logger&) {
    auto ctx = make_field(o);
    const std::size_t n = resolve_n(o);
    const MultiPoly f = require_poly(o, ctx, n);
    const auto a = parse_point(*ctx, o.point, n);
    Report r;
    r.config = field_config(o, *ctx);
    r.config["poly"] = to_string(f);
    r.config["n"] = n;
    r.config["point"] = o.point;
    tm.time("classify", [&] {
        const UniPoly g = specialize(f, a);
        const auto outcome = classify_specialization(f, a);
        r.result["specialization"] = to_string(g);
        r.result["outcome"] = outcome_name(outcome);
        if (outcome.is_type()) r.result["type"] = outcome.type.to_string();
    });
    r.csv = "outcome,type\n" + r.result["outcome"].get<std::string>() + "," +
            (r.result.contains("type") ? "\"" + r.result["type"].get<std::string>() + "\"" : std::string()) + "\n";
    return r;
}

Report cmd_irreg(const Options& o, Timings& tm, const Logger& log) {
    auto ctx = make_field(o);
    const SetDescriptor s = parse_set(o.set, ctx, o.n != 0 ? o.n : (o.set == "full" || o.set == "tracezero" ? 1 : 0));
    Report r;
    r.config = field_config(o, *ctx);
    r.config["set"] = s.describe();
    r.config["n"] = s.n();
    log.info("irregularity of " + s.describe() + " (|S| = " + std::to_string(s.cardinality()) + ")");
    RunOptions run{o.threads, o.budget};
    const auto rep = tm.time("irreg", [&] { return irregularity(s, run); });
    r.result["cardinality"] = s.cardinality();
    r.result.update(irreg_json(rep));
    r.csv = kv_csv(r.result);
    return r;
}

Report cmd_dist(const Options& o, Timings& tm, const Logger& log) {
    auto ctx = make_field(o);
    const std::size_t n = resolve_n(o);
    const MultiPoly f = require_poly(o, ctx, n);
    const SetDescriptor s = parse_set(o.set, ctx, n);
    const auto opts = stats_options(o);
    Report r;
    r.config = field_config(o, *ctx);
    r.config["poly"] = to_string(f);
    r.config["n"] = n;
    r.config["set"] = s.describe();
    r.config["allow_inadmissible"] = o.allow_inadmissible;
    r.result["admissibility"] =
        admissibility_json(tm.time("admissibility", [&] { return admissibility(f, o.trials, o.seed); }));
    log.info("classifying " + std::to_string(s.cardinality()) + " specializations");
    const auto dist = tm.time("classify", [&] { return empirical_distribution(f, s, opts); });
    r.result.update(distribution_json(dist));
    r.csv = types_csv(dist, nullptr);
    return r;
}

Report cmd_compare(const Options& o, Timings& tm, const Logger& log) {
    auto ctx = make_field(o);
    const std::size_t n = resolve_n(o);
    const MultiPoly f = require_poly(o, ctx, n);
    const SetDescriptor s = parse_set(o.set, ctx, n);
    const GroupSpec g = make_group(o.group, f.deg_t());
    const auto opts = stats_options(o);
    Report r;
    r.config = field_config(o, *ctx);
    r.config["poly"] = to_string(f);
    r.config["n"] = n;
    r.config["set"] = s.describe();
    r.config["group"] = g.describe();
    r.config["allow_inadmissible"] = o.allow_inadmissible;
    if (g.d() != f.deg_t())
        throw Error(ErrorCode::InvalidGroup, "group degree " + std::to_string(g.d()) + " differs from deg_t F = " +
                                                 std::to_string(f.deg_t()));
    r.result["admissibility"] =
        admissibility_json(tm.time("admissibility", [&] { return admissibility(f, o.trials, o.seed); }));
    log.info("comparing " + std::to_string(s.cardinality()) + " specializations against " + g.describe());
    const auto dist = tm.time("classify", [&] { return empirical_distribution(f, s, opts); });
    const auto irreg = tm.time("irreg", [&] { return irregularity(s, opts.run); });
    const auto cmp = compare_distribution(dist, prediction_from_group(g), irreg, ctx->q());
    r.result.update(comparison_json(cmp));
    r.csv = types_csv(dist, &cmp);
    return r;
}

Json sweep_json(const WeilSweep& sw) {
    Json rows = Json::array();
    for (const auto& row : sw.rows) {
        Json e;
        e["q"] = row.q;
        e["b"] = row.b;
        e["magnitude"] = row.magnitude;
        e["ratio"] = row.ratio;
        rows.push_back(e);
    }
    Json j;
    j["frequencies"] = sw.rows.size();
    j["max_ratio"] = sw.max_ratio;
    j["max_magnitude"] = sw.max_magnitude;
    j["rows"] = rows;
    return j;
}

std::string sweep_csv(const WeilSweep& sw) {
    std::string out = "q,b,magnitude,ratio\n";
    for (const auto& row : sw.rows)
        out += std::to_string(row.q) + ",\"" + row.b + "\"," + fmt_double(row.magnitude) + "," + fmt_double(row.ratio) + "\n";
    return out;
}

Report cmd_charsum(const Options& o, Timings& tm, const Logger& log) {
    if (o.type.empty()) throw Error(ErrorCode::InvalidArgument, "--type is required");
    const auto lambda = FactorizationType::parse(o.type);
    const std::size_t n = resolve_n(o);
    const auto opts = stats_options(o);
    Report r;
    if (!o.primes.empty()) {
        std::vector<std::uint64_t> primes;
        for (auto v : parse_int_list(o.primes, "--primes")) {
            if (v < 2) throw Error(ErrorCode::NotPrime, std::to_string(v) + " is not prime");
            primes.push_back(static_cast<std::uint64_t>(v));
        }
        r.config["primes"] = primes;
        r.config["poly"] = o.poly;
        r.config["n"] = n;
        r.config["type"] = lambda.to_string();
        r.config["seed"] = o.seed;
        r.config["budget"] = o.budget;
        log.info("sweeping " + std::to_string(primes.size()) + " primes");
        const auto sw = tm.time("sweep", [&] { return weil_sweep_primes(o.poly, n, lambda, primes, opts); });
        r.result = sweep_json(sw);
        r.csv = sweep_csv(sw);
        return r;
    }
    auto ctx = make_field(o);
    const MultiPoly f = require_poly(o, ctx, n);
    r.config = field_config(o, *ctx);
    r.config["poly"] = to_string(f);
    r.config["n"] = n;
    r.config["type"] = lambda.to_string();
    if (!o.b.empty()) {
        const auto b = parse_point(*ctx, o.b, n);
        r.config["b"] = o.b;
        const auto res = tm.time("charsum", [&] { return restricted_charsum(f, lambda, b, opts); });
        Json counts = Json::array();
        for (auto c : res.sum.counts()) counts.push_back(c);
        r.result["cyclotomic_counts"] = counts;
        r.result["magnitude"] = res.magnitude;
        r.result["weil_ratio"] = res.weil_ratio;
        r.csv = kv_csv(r.result);
        return r;
    }
    log.info("sweeping all nonzero frequencies");
    const auto sw = tm.time("sweep", [&] { return weil_sweep(f, lambda, std::nullopt, opts); });
    r.result = sweep_json(sw);
    r.csv = sweep_csv(sw);
    return r;
}

// ---- demos ------------------------------------------------------------------

Report demo_pv(const Options& o, Timings& tm, const Logger& log) {
    auto ctx = make_field(o);
    if (ctx->k() != 1) throw Error(ErrorCode::InvalidArgument, "demo pv needs a prime field");
    const std::uint64_t h = o.h ? o.h : default_h(o.p, 0.75);
    const MultiPoly f = parse_poly("t^2 - A1", 1, ctx);
    const SetDescriptor s = parse_set(interval_text(o.beta, h), ctx, 1);
    const auto opts = stats_options(o);
    Report r;
    r.config = field_config(o, *ctx);
    r.config["poly"] = to_string(f);
    r.config["set"] = s.describe();
    r.config["H"] = h;
    log.info("quadratic residues in an interval of length " + std::to_string(h));
    const auto dist = tm.time("classify", [&] { return empirical_distribution(f, s, opts); });
    const auto irreg = tm.time("irreg", [&] { return irregularity(s, opts.run); });
    const auto residues = dist.count(FactorizationType({1, 1}));
    const double expected = static_cast<double>(h) / 2.0;
    const double dev = std::abs(static_cast<double>(residues) - expected);
    r.result["residues"] = residues;
    r.result["nonresidues"] = dist.count(FactorizationType({2}));
    r.result["zero"] = dist.non_squarefree;
    r.result["expected"] = expected;
    r.result["deviation"] = dev;
    r.result["sqrtp_logp"] = sqrtp_logp(o.p);
    r.result["normalized_deviation"] = dev / sqrtp_logp(o.p);
    r.result["irreg"] = irreg_json(irreg);
    r.csv = types_csv(dist, nullptr);
    return r;
}

Report demo_power_residues(const Options& o, Timings& tm, const Logger& log) {
    auto ctx = make_field(o);
    if (ctx->k() != 1) throw Error(ErrorCode::InvalidArgument, "demo power-residues needs a prime field");
    if (o.exp < 1) throw Error(ErrorCode::InvalidArgument, "--exp must be at least 1");
    const std::uint64_t h = o.h ? o.h : default_h(o.p, 0.75);
    if (h > o.p) throw Error(ErrorCode::InvalidArgument, "H must not exceed p");
    const MultiPoly f = parse_poly("t^" + std::to_string(o.exp) + " - A1", 1, ctx);
    Report r;
    r.config = field_config(o, *ctx);
    r.config["poly"] = to_string(f);
    r.config["set"] = interval_text(o.beta, h);
    r.config["H"] = h;
    r.config["exp"] = o.exp;
    log.info("k-th power residues in an interval of length " + std::to_string(h));
    const unsigned threads = resolve_threads(o.threads);
    std::vector<std::uint64_t> hits(threads, 0);
    tm.time("roots", [&] {
        for_each_shard(h, threads, [&](unsigned shard, std::uint64_t begin, std::uint64_t end) {
            std::vector<FieldElement> a(1);
            for (std::uint64_t i = begin; i < end; ++i) {
                a[0] = ctx->from_int(o.beta + static_cast<std::int64_t>(i));
                if (has_root(specialize(f, a))) ++hits[shard];
            }
        });
    });
    const std::uint64_t count = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
    const std::uint64_t g = std::gcd(o.p - 1, std::uint64_t{o.exp});
    const double expected = static_cast<double>(h) / static_cast<double>(g);
    const double dev = std::abs(static_cast<double>(count) - expected);
    r.result["with_root"] = count;
    r.result["gcd"] = g;
    r.result["expected"] = expected;
    r.result["deviation"] = dev;
    r.result["sqrtp_logp"] = sqrtp_logp(o.p);
    r.result["normalized_deviation"] = dev / sqrtp_logp(o.p);
    r.csv = kv_csv(r.result);
    return r;
}

Report demo_trinomial(const Options& o, Timings& tm, const Logger& log) {
    auto ctx = make_field(o);
    if (ctx->k() != 1) throw Error(ErrorCode::InvalidArgument, "demo trinomial needs a prime field");
    const std::uint64_t h = o.h ? o.h : default_h(o.p, 0.8);
    const MultiPoly f = parse_poly("t^" + std::to_string(o.d) + " + A1*t + A2", 2, ctx);
    const GroupSpec g = GroupSpec::symmetric(o.d);
    const auto opts = stats_options(o);
    const SetDescriptor full = SetDescriptor::full_space(ctx, 2);
    const SetDescriptor box = parse_set("grid:int(0," + std::to_string(h) + "),int(0," + std::to_string(h) + ")", ctx, 2);
    Report r;
    r.config = field_config(o, *ctx);
    r.config["poly"] = to_string(f);
    r.config["group"] = g.describe();
    r.config["H"] = h;
    r.result["admissibility"] =
        admissibility_json(tm.time("admissibility", [&] { return admissibility(f, o.trials, o.seed); }));
    const auto pred = prediction_from_group(g);
    log.info("trinomial family over the full plane");
    const auto full_cmp = tm.time("full", [&] {
        return compare_distribution(empirical_distribution(f, full, opts), pred, irregularity(full, opts.run), ctx->q());
    });
    log.info("trinomial family over an " + std::to_string(h) + "x" + std::to_string(h) + " box");
    const auto box_cmp = tm.time("restricted", [&] {
        return compare_distribution(empirical_distribution(f, box, opts), pred, irregularity(box, opts.run), ctx->q());
    });
    r.result["full"] = comparison_json(full_cmp);
    r.result["full"]["set"] = full.describe();
    r.result["full"]["tv_sqrt_p"] = full_cmp.tv_distance * std::sqrt(static_cast<double>(o.p));
    r.result["restricted"] = comparison_json(box_cmp);
    r.result["restricted"]["set"] = box.describe();
    r.csv = types_csv(full_cmp.distribution, &full_cmp);
    return r;
}

Report demo_morse(const Options& o, Timings& tm, const Logger& log) {
    auto ctx = make_field(o);
    if (ctx->k() != 1) throw Error(ErrorCode::InvalidArgument, "demo morse needs a prime field");
    const MultiPoly fm = parse_poly(o.f, 1, ctx);
    for (const auto& [e, c] : fm.terms())
        if (e[1] != 0) throw Error(ErrorCode::InvalidArgument, "--f must be a polynomial in t alone");
    const UniPoly f = specialize(fm, std::vector<FieldElement>{ctx->zero()});
    if (!is_morse(f)) throw Error(ErrorCode::InvalidArgument, "--f = " + to_string(f) + " is not a Morse polynomial");
    auto shift_vals = parse_int_list(o.shifts, "--shifts");
    if (shift_vals.empty()) throw Error(ErrorCode::InvalidArgument, "--shifts must list at least one element");
    std::vector<FieldElement> shifts;
    for (auto v : shift_vals) {
        auto e = ctx->from_int(v);
        if (std::find(shifts.begin(), shifts.end(), e) != shifts.end())
            throw Error(ErrorCode::InvalidArgument, "--shifts must be distinct mod p");
        shifts.push_back(e);
    }
    const std::uint64_t h = o.h ? o.h : default_h(o.p, 0.75);
    if (h > o.p) throw Error(ErrorCode::InvalidArgument, "H must not exceed p");
    Report r;
    r.config = field_config(o, *ctx);
    r.config["f"] = to_string(f);
    r.config["shifts"] = shift_vals;
    r.config["set"] = interval_text(o.beta, h);
    r.config["H"] = h;
    r.result["is_morse"] = true;
    log.info("irreducible shifts of " + to_string(f) + " over an interval of length " + std::to_string(h));
    const unsigned threads = resolve_threads(o.threads);
    std::vector<std::uint64_t> hits(threads, 0);
    tm.time("irreducibility", [&] {
        for_each_shard(h, threads, [&](unsigned shard, std::uint64_t begin, std::uint64_t end) {
            for (std::uint64_t i = begin; i < end; ++i) {
                const auto a = ctx->from_int(o.beta + static_cast<std::int64_t>(i));
                bool all = true;
                for (const auto& s : shifts) {
                    const UniPoly g = f + UniPoly::constant(*ctx, ctx->add(a, s));
                    if (!is_irreducible(g)) {
                        all = false;
                        break;
                    }
                }
                if (all) ++hits[shard];
            }
        });
    });
    const std::uint64_t count = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
    const double expected = static_cast<double>(h) / std::pow(static_cast<double>(f.degree()), double(shifts.size()));
    const double dev = std::abs(static_cast<double>(count) - expected);
    r.result["all_irreducible"] = count;
    r.result["expected"] = expected;
    r.result["deviation"] = dev;
    r.result["sqrtp_logp"] = sqrtp_logp(o.p);
    r.result["normalized_deviation"] = dev / sqrtp_logp(o.p);
    r.csv = kv_csv(r.result);
    return r;
}

Report demo_artin_schreier(const Options& o, Timings& tm, const Logger& log) {
    auto ctx = make_field(o);
    const MultiPoly f = parse_poly("t^" + std::to_string(ctx->p()) + " - t - A1", 1, ctx);
    const SetDescriptor s = SetDescriptor::trace_zero(ctx);
    auto opts = stats_options(o);
    opts.require_admissible = false;
    Report r;
    r.config = field_config(o, *ctx);
    r.config["poly"] = to_string(f);
    r.config["set"] = s.describe();
    r.result["admissibility"] =
        admissibility_json(tm.time("admissibility", [&] { return admissibility(f, o.trials, o.seed); }));
    log.info("Artin-Schreier family over the trace-zero hyperplane");
    const auto dist = tm.time("classify", [&] { return empirical_distribution(f, s, opts); });
    const auto irreg = tm.time("irreg", [&] { return irregularity(s, opts.run); });
    const FactorizationType split(std::vector<unsigned>(ctx->p(), 1));
    const auto n_split = dist.count(split);
    r.result["cardinality"] = s.cardinality();
    r.result["split_completely"] = n_split;
    r.result["fraction_split"] = static_cast<double>(n_split) / static_cast<double>(dist.total);
    r.result["irreg"] = irreg_json(irreg);
    const auto cyc = compare_distribution(dist, prediction_from_group(GroupSpec::cyclic(ctx->p())), irreg, ctx->q());
    const auto sym = compare_distribution(dist, prediction_from_group(GroupSpec::symmetric(ctx->p())), irreg, ctx->q());
    r.result["vs_cyclic"] = comparison_json(cyc);
    r.result["vs_symmetric"] = comparison_json(sym);
    r.csv = types_csv(dist, &cyc);
    return r;
}

void add_field_options(CLI::App* app, Options& o) {
    app->add_option("--p", o.p, "characteristic p (prime)");
    app->add_option("--k", o.k, "extension degree, q = p^k")->check(CLI::Range(1, kMaxExtensionDegree));
    app->add_option("--modulus", o.modulus, "monic irreducible modulus, coefficients from the constant term up");
}

void add_run_options(CLI::App* app, Options& o) {
    app->add_option("--threads", o.threads, "worker threads (0 = hardware concurrency)");
    app->add_option("--seed", o.seed, "seed for modulus selection and admissibility sampling");
    app->add_option("--budget", o.budget, "maximum number of enumerated points");
    app->add_option("--trials", o.trials, "random points for the discriminant check");
    app->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--out", o.out, "write the report to this path instead of standard output");
    app->add_flag("--no-run-info", o.no_run_info, "omit the run block (threads, timings) from JSON reports");
    app->add_flag("--quiet", o.quiet, "suppress log lines on standard error");
}

void add_poly_options(CLI::App* app, Options& o) {
    app->add_option("--poly", o.poly, "polynomial in t, A1..An");
    app->add_option("--n", o.n, "number of A-variables (default: highest index used)");
}

int exit_code_for(ErrorCode c) { return c == ErrorCode::BudgetExceeded ? kBudgetError : kInputError; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Factorization statistics of polynomial specializations over finite fields", kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    using Handler = std::function<Report(const Options&, Timings&, const Logger&)>;
    std::vector<std::pair<CLI::App*, Handler>> handlers;
    auto add = [&](CLI::App* parent, const std::string& name, const std::string& desc, Handler h) {
        CLI::App* sub = parent->add_subcommand(name, desc);
        add_field_options(sub, o);
        add_run_options(sub, o);
        handlers.emplace_back(sub, std::move(h));
        return sub;
    };

    auto* ft = add(&app, "factor-type", "factorization type of one specialization F(t,a)", cmd_factor_type);
    add_poly_options(ft, o);
    ft->add_option("--point", o.point, "comma-separated a1,...,an")->required();

    auto* ir = add(&app, "irreg", "irregularity of a specialization set", cmd_irreg);
    ir->add_option("--set", o.set, "set descriptor");
    ir->add_option("--n", o.n, "dimension for `full`");

    auto* di = add(&app, "dist", "empirical factorization-type distribution over S", cmd_dist);
    add_poly_options(di, o);
    di->add_option("--set", o.set, "set descriptor");
    di->add_flag("--allow-inadmissible", o.allow_inadmissible, "skip the admissibility precondition");

    auto* co = add(&app, "compare", "empirical distribution against a group prediction", cmd_compare);
    add_poly_options(co, o);
    co->add_option("--set", o.set, "set descriptor");
    co->add_option("--group", o.group, "`symmetric`, `cyclic`, or a group file");
    co->add_flag("--allow-inadmissible", o.allow_inadmissible, "skip the admissibility precondition");

    auto* cs = add(&app, "charsum", "character sums over the locus of one factorization type", cmd_charsum);
    add_poly_options(cs, o);
    cs->add_option("--type", o.type, "factorization type, e.g. [2,1]");
    cs->add_option("--b", o.b, "single frequency b1,...,bn (default: sweep all b != 0)");
    cs->add_option("--primes", o.primes, "sweep the expression over each of these primes");
    cs->add_flag("--allow-inadmissible", o.allow_inadmissible, "skip the admissibility precondition");

    CLI::App* demo = app.add_subcommand("demo", "preset experiments");
    demo->require_subcommand(1);
    auto* pv = add(demo, "pv", "quadratic residues in an interval", demo_pv);
    auto* pr = add(demo, "power-residues", "t^k - a having a root, a in an interval", demo_power_residues);
    auto* tri = add(demo, "trinomial", "t^d + A1 t + A2 against the symmetric group", demo_trinomial);
    auto* mo = add(demo, "morse", "irreducible shifts f + a + h_i of a Morse polynomial", demo_morse);
    add(demo, "artin-schreier", "t^p - t - A over the trace-zero hyperplane", demo_artin_schreier);
    for (auto* sub : {pv, pr, mo}) {
        sub->add_option("--H", o.h, "interval length (default ceil(p^{3/4}))");
        sub->add_option("--beta", o.beta, "interval start");
    }
    pr->add_option("--exp", o.exp, "exponent k in t^k - a");
    tri->add_option("--d", o.d, "degree in t")->check(CLI::Range(2u, 12u));
    tri->add_option("--H", o.h, "side of the restricted box (default ceil(p^{0.8}))");
    mo->add_option("--f", o.f, "Morse polynomial in t");
    mo->add_option("--shifts", o.shifts, "distinct shifts h_1,...,h_m");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kInputError;
    }

    const Logger log(err, o.quiet);
    try {
        for (auto& [sub, handler] : handlers) {
            if (!sub->parsed()) continue;
            Timings tm;
            const auto start = Clock::now();
            Report rep = handler(o, tm, log);
            std::string name = sub->get_name();
            if (sub->get_parent() == demo) name = "demo " + name;
            std::string text;
            if (o.format == "csv") {
                text = rep.csv;
            } else {
                Json j;
                j["tool"] = kToolName;
                j["version"] = kVersion;
                j["command"] = name;
                j["config"] = rep.config;
                j["result"] = rep.result;
                if (!o.no_run_info) {
                    Json run;
                    run["threads"] = resolve_threads(o.threads);
                    run["timings_ms"] = tm.to_json();
                    run["total_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
                    j["run"] = run;
                }
                text = j.dump(2) + "\n";
            }
            if (o.out.empty()) {
                out << text;
            } else {
                std::ofstream file(o.out, std::ios::binary);
                if (!file) throw Error(ErrorCode::Io, "cannot write '" + o.out + "'");
                file << text;
                log.info("report written to " + o.out);
            }
            return kOk;
        }
    } catch (const Error& e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    err << "error: no command given\n";
    return kInputError;
}

}  // namespace ffstat::cli
