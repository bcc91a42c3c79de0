// Acceptance suite: one PASS/FAIL line per criterion.
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "ffstat/cli.hpp"
#include "ffstat/stats.hpp"
#include "oracles.hpp"

using namespace ffstat;
using Json = nlohmann::ordered_json;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
    Json report;  // deterministic record of every computed quantity

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail = what;
            pass = false;
        }
    }
};

Json cli_report(std::vector<std::string> args, unsigned threads) {
    args.insert(args.end(), {"--no-run-info", "--quiet", "--threads", std::to_string(threads)});
    std::ostringstream out, err;
    if (cli::run(args, out, err) != 0) throw std::runtime_error("ffstat failed: " + err.str());
    return Json::parse(out.str());
}

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = lo; p <= hi; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

double sqrtp_logp(double p) { return std::sqrt(p) * std::log(p); }

std::uint64_t ceil_pow(std::uint64_t p, double e) {
    return static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(p), e)));
}

Verdict quadratic_residues_in_interval(unsigned threads) {
    Verdict v;
    for (std::uint64_t p : {101ull, 1009ull, 10007ull}) {
        const auto h = ceil_pow(p, 0.75);
        const auto j = cli_report({"demo", "pv", "--p", std::to_string(p), "--H", std::to_string(h)}, threads);
        const double dev = std::abs(j["result"]["residues"].get<double>() - static_cast<double>(h) / 2.0);
        const double limit = 5.0 * sqrtp_logp(static_cast<double>(p));
        v.require(dev <= limit, "p=" + std::to_string(p) + " deviation " + std::to_string(dev));
        v.report.push_back(j);
    }
    if (v.pass) v.detail = "p in {101, 1009, 10007}, H = ceil(p^{3/4})";
    return v;
}

Verdict power_residues(unsigned threads) {
    Verdict v;
    const std::uint64_t p = 1009;
    const auto h = ceil_pow(p, 0.75);
    for (unsigned k : {2u, 3u, 4u, 6u}) {
        const auto j = cli_report(
            {"demo", "power-residues", "--p", std::to_string(p), "--exp", std::to_string(k), "--H", std::to_string(h)}, threads);
        const double expected = static_cast<double>(h) / static_cast<double>(std::gcd(p - 1, std::uint64_t{k}));
        const double dev = std::abs(j["result"]["with_root"].get<double>() - expected);
        v.require(dev <= 5.0 * sqrtp_logp(static_cast<double>(p)), "k=" + std::to_string(k));
        v.report.push_back(j);
    }
    if (v.pass) v.detail = "p=1009, k in {2,3,4,6}";
    return v;
}

Verdict exact_quadratic_law(unsigned threads) {
    Verdict v;
    StatsOptions opts;
    opts.run.threads = threads;
    const auto primes = primes_between(5, 499);
    for (auto p : primes) {
        auto ctx = FieldCtx::create(p);
        const auto d = empirical_distribution(parse_poly("t^2 - A1", 1, ctx), SetDescriptor::full_space(ctx, 1), opts);
        const auto half = (p - 1) / 2;
        v.require(d.count(FactorizationType({1, 1})) == half && d.count(FactorizationType({2})) == half &&
                      d.non_squarefree == 1 && d.degree_drop == 0,
                  "p=" + std::to_string(p));
        v.report.push_back({p, d.count(FactorizationType({1, 1})), d.count(FactorizationType({2})), d.non_squarefree});
    }
    if (v.pass) v.detail = std::to_string(primes.size()) + " primes, exact";
    return v;
}

Verdict gamma_oracle(unsigned) {
    Verdict v;
    std::int64_t factorial = 1;
    std::size_t checked = 0;
    for (unsigned d = 1; d <= 7; ++d) {
        factorial *= d;
        const auto counts = oracle::symmetric_cycle_counts(d);
        for (const auto& lambda : partitions(d)) {
            const auto it = counts.find(lambda.parts());
            const std::int64_t c = it == counts.end() ? 0 : static_cast<std::int64_t>(it->second);
            const Rational g = gamma_symmetric(d, lambda);
            v.require(g == Rational(c, factorial), "d=" + std::to_string(d) + " " + lambda.to_string());
            v.report.push_back({lambda.to_string(), g.numerator(), g.denominator()});
            ++checked;
        }
    }
    if (v.pass) v.detail = std::to_string(checked) + " partitions, exact";
    return v;
}

Verdict trinomial(unsigned threads) {
    Verdict v;
    std::ostringstream d;
    for (std::uint64_t p : {53ull, 101ull, 211ull}) {
        const auto j = cli_report({"demo", "trinomial", "--p", std::to_string(p), "--d", "3"}, threads);
        const double tv = j["result"]["full"]["tv_distance"].get<double>();
        const double limit = 5.0 / std::sqrt(static_cast<double>(p));
        const auto& ne = j["result"]["restricted"]["normalized_error"];
        v.require(tv <= limit, "p=" + std::to_string(p) + " tv " + std::to_string(tv));
        v.require(ne.is_number() && std::isfinite(ne.get<double>()), "p=" + std::to_string(p) + " normalized_error");
        d << "p=" << p << " tv=" << tv << " restricted_normalized_error=" << (ne.is_number() ? ne.get<double>() : NAN) << "; ";
        v.report.push_back(j);
    }
    if (v.pass) v.detail = d.str();
    return v;
}

Verdict irregularity_suite(unsigned threads) {
    Verdict v;
    RunOptions run{threads, 1u << 24};
    Json& r = v.report;

    for (auto [p, k, n] : {std::tuple{7u, 1u, 2u}, {3u, 2u, 2u}, {101u, 1u, 1u}, {2u, 4u, 3u}}) {
        auto ctx = FieldCtx::create(p, k, std::nullopt, 1);
        const double full = irregularity(SetDescriptor::full_space(ctx, n), run).irreg;
        std::vector<FieldElement> pt(n, ctx->one());
        const double single = irregularity(SetDescriptor::explicit_points(ctx, n, {pt}), run).irreg;
        const double qn = std::pow(static_cast<double>(ctx->q()), n);
        v.require(full == 1.0, "full space");
        v.require(single == qn, "singleton");
        r["full_and_singleton"].push_back({full, single});
    }

    std::mt19937_64 rng(2024);
    auto subset = [&](std::int64_t p) {
        std::vector<std::int64_t> t;
        std::bernoulli_distribution keep(0.35);
        for (std::int64_t a = 0; a < p; ++a)
            if (keep(rng)) t.push_back(a);
        if (t.empty()) t.push_back(0);
        return t;
    };
    const std::vector<std::int64_t> small{5, 7, 11, 13, 17};
    for (int i = 0; i < 100; ++i) {
        const std::int64_t p = small[rng() % small.size()];
        auto ctx = FieldCtx::create(static_cast<std::uint64_t>(p));
        const auto t1 = subset(p), t2 = subset(p);
        std::vector<std::vector<FieldElement>> prod, first, second;
        for (auto a : t1) first.push_back({ctx->from_int(a)});
        for (auto b : t2) second.push_back({ctx->from_int(b)});
        for (auto a : t1)
            for (auto b : t2) prod.push_back({ctx->from_int(a), ctx->from_int(b)});
        const double joint = irregularity(SetDescriptor::explicit_points(ctx, 2, prod), run).irreg;
        const double split = irregularity(SetDescriptor::explicit_points(ctx, 1, first), run).irreg *
                             irregularity(SetDescriptor::explicit_points(ctx, 1, second), run).irreg;
        v.require(std::abs(joint - split) <= 1e-9, "product rule");
        r["product"].push_back(joint);
    }

    for (int i = 0; i < 100; ++i) {
        const std::int64_t p = small[rng() % small.size()];
        auto ctx = FieldCtx::create(static_cast<std::uint64_t>(p));
        const auto t = subset(p);
        const std::int64_t alpha = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p - 1));
        const std::int64_t beta = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
        std::vector<std::vector<FieldElement>> base, image;
        for (auto a : t) {
            base.push_back({ctx->from_int(a)});
            image.push_back({ctx->from_int(alpha * a + beta)});
        }
        const double x = irregularity(SetDescriptor::explicit_points(ctx, 1, base), run).irreg;
        const double y = irregularity(SetDescriptor::explicit_points(ctx, 1, image), run).irreg;
        v.require(std::abs(x - y) <= 1e-9, "affine invariance");
        r["affine"].push_back(x);
    }

    std::size_t intervals = 0;
    double worst = 0.0;
    for (auto p : primes_between(2, 200)) {
        auto ctx = FieldCtx::create(p);
        for (std::uint64_t h = 1; h <= p; ++h) {
            const std::uint64_t beta = (7 * h) % p;
            std::vector<std::vector<FieldElement>> pts;
            for (std::uint64_t i = 0; i < h; ++i) pts.push_back({ctx->from_int(static_cast<std::int64_t>(beta + i))});
            const double exact = irregularity(SetDescriptor::explicit_points(ctx, 1, pts), run).irreg;
            const double bound = 9.0 * static_cast<double>(p) * std::log(static_cast<double>(p)) / static_cast<double>(h);
            v.require(exact <= bound, "interval bound p=" + std::to_string(p) + " H=" + std::to_string(h));
            worst = std::max(worst, exact / bound);
            ++intervals;
        }
    }
    r["interval_bound_worst_ratio"] = worst;

    std::size_t pointwise = 0;
    for (auto p : primes_between(2, 97))
        for (std::uint64_t h = 1; h <= p; ++h) {
            const auto mags = interval_spectrum_magnitudes(p, h);
            for (std::uint64_t b = 1; b < p; ++b) {
                const double bound = 2.0 / (static_cast<double>(p) * std::abs(std::sin(std::numbers::pi * b / p)));
                v.require(mags[b] <= bound * (1 + 1e-12), "pointwise bound p=" + std::to_string(p));
                ++pointwise;
            }
        }
    r["pointwise_checks"] = pointwise;
    if (v.pass) {
        std::ostringstream d;
        d << intervals << " intervals (worst irreg/bound " << worst << "), " << pointwise << " pointwise checks";
        v.detail = d.str();
    }
    return v;
}

Verdict trace_zero_counterexample(unsigned threads) {
    Verdict v;
    auto ctx = FieldCtx::create(3, 3, std::nullopt, 1);
    StatsOptions opts;
    opts.run.threads = threads;
    opts.require_admissible = false;
    const auto f = parse_poly("t^3 - t - A1", 1, ctx);
    const auto s = SetDescriptor::trace_zero(ctx);
    const auto dist = empirical_distribution(f, s, opts);
    const auto irreg = irregularity(s, opts.run);
    const auto cmp = compare_distribution(dist, prediction_from_group(GroupSpec::cyclic(3)), irreg, ctx->q());
    const FactorizationType split({1, 1, 1});
    v.require(dist.total == 9 && dist.count(split) == 9, "not all 9 points split");
    v.require(irreg.irreg == 3.0, "irreg " + std::to_string(irreg.irreg));
    v.require(cmp.per_type.at(split).frequency == 1.0, "mass outside (1,1,1)");
    v.report = {dist.count(split), irreg.irreg, cmp.tv_distance, cmp.normalized_error};
    if (v.pass) v.detail = "9/9 split completely, irreg = 3, cyclic tv = " + std::to_string(cmp.tv_distance);
    return v;
}

Verdict character_sums(unsigned threads) {
    Verdict v;
    StatsOptions opts;
    opts.run.threads = threads;
    const auto primes = primes_between(3, 499);
    double worst = 0.0;
    for (auto p : primes) {
        const std::vector<std::uint64_t> one{p};
        for (const auto& lambda : {FactorizationType({1, 1}), FactorizationType({2})}) {
            const auto sw = weil_sweep_primes("t^2 - A1", 1, lambda, one, opts);
            const double limit = (std::sqrt(static_cast<double>(p)) + 1) / 2;
            v.require(sw.max_magnitude <= limit + 1e-9, "quadratic p=" + std::to_string(p));
            worst = std::max(worst, sw.max_magnitude / limit);
            v.report["quadratic"].push_back({p, lambda.to_string(), sw.max_magnitude});
        }
    }
    auto f13 = FieldCtx::create(13);
    const auto tri = weil_sweep(parse_poly("t^3 + A1*t + A2", 2, f13), FactorizationType({3}), std::nullopt, opts);
    v.require(tri.max_ratio <= 3.0, "trinomial ratio " + std::to_string(tri.max_ratio));
    v.report["trinomial"] = tri.max_ratio;
    auto f5 = FieldCtx::create(5);
    const auto gauss =
        restricted_charsum(parse_poly("t^2 - A1", 1, f5), FactorizationType({2}), std::vector<FieldElement>{f5->one()}, opts);
    v.require(std::abs(gauss.magnitude - (1 + std::sqrt(5.0)) / 2) <= 1e-9, "Gauss case");
    v.report["gauss"] = gauss.magnitude;
    if (v.pass) {
        std::ostringstream d;
        d << primes.size() << " primes (worst magnitude/limit " << worst << "), trinomial max ratio " << tri.max_ratio;
        v.detail = d.str();
    }
    return v;
}

Verdict plancherel(unsigned threads) {
    Verdict v;
    RunOptions run{threads, 1u << 24};
    std::mt19937_64 rng(77);
    const std::vector<std::uint64_t> primes{2, 3, 5, 7, 11, 13};
    auto random_set = [&](const FieldPtr& ctx, std::size_t n) {
        const std::uint64_t space = checked_space_size(*ctx, n, 1u << 20);
        std::set<std::uint64_t> idx;
        const std::uint64_t size = 1 + rng() % space;
        while (idx.size() < size) idx.insert(rng() % space);
        std::vector<std::vector<FieldElement>> pts;
        for (auto i : idx) {
            std::vector<FieldElement> a(n, ctx->zero());
            point_from_index(*ctx, i, a);
            pts.push_back(a);
        }
        return SetDescriptor::explicit_points(ctx, n, pts);
    };
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        auto ctx = FieldCtx::create(primes[rng() % primes.size()]);
        const std::size_t n = 1 + rng() % 2;
        const auto chk = verify_plancherel_decomposition(random_set(ctx, n), random_set(ctx, n), run);
        v.require(chk.residual < 1e-6, "instance " + std::to_string(i));
        worst = std::max(worst, chk.residual);
        v.report.push_back({chk.lhs, chk.residual});
    }
    if (v.pass) {
        std::ostringstream d;
        d << "50 instances, max residual " << worst;
        v.detail = d.str();
    }
    return v;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Verdict(unsigned)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "quadratic residues in an interval", quadratic_residues_in_interval},
        {2, "k-th power residues in an interval", power_residues},
        {3, "exact full-space law for t^2 - A1", exact_quadratic_law},
        {4, "cycle-type densities vs S_d enumeration", gamma_oracle},
        {5, "trinomial total variation", trinomial},
        {6, "irregularity suite", irregularity_suite},
        {7, "trace-zero counterexample", trace_zero_counterexample},
        {8, "character-sum bounds", character_sums},
        {9, "Plancherel identity", plancherel},
    };

    bool all = true;
    bool identical = true;
    std::string mismatch;
    for (const auto& c : criteria) {
        Verdict base;
        try {
            base = c.run(1);
            const std::string text = base.report.dump();
            for (unsigned threads : {4u, 8u}) {
                if (c.run(threads).report.dump() != text) {
                    identical = false;
                    if (mismatch.empty()) mismatch = "criterion " + std::to_string(c.id) + " at " + std::to_string(threads) + " threads";
                }
            }
        } catch (const std::exception& e) {
            base.pass = false;
            base.detail = std::string("exception: ") + e.what();
        }
        all = all && base.pass;
        std::cout << (base.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << base.detail << "\n" << std::flush;
    }
    all = all && identical;
    std::cout << (identical ? "PASS" : "FAIL") << " 10 determinism across 1, 4, 8 threads: "
              << (identical ? "criteria 1-9 reports byte-identical" : mismatch) << "\n";
    return all ? 0 : 1;
}
