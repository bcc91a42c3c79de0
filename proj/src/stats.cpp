#include "ffstat/stats.hpp"

#include <cmath>

namespace ffstat {

double to_double(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

void ClassDistribution::record(const SpecializationOutcome& outcome) {
    ++total;
    switch (outcome.kind) {
        case SpecializationOutcome::Kind::Type: ++counts[outcome.type]; break;
        case SpecializationOutcome::Kind::NonSquarefree: ++non_squarefree; break;
        case SpecializationOutcome::Kind::DegreeDrop: ++degree_drop; break;
    }
}

void ClassDistribution::merge(const ClassDistribution& other) {
    for (const auto& [t, c] : other.counts) counts[t] += c;
    non_squarefree += other.non_squarefree;
    degree_drop += other.degree_drop;
    total += other.total;
}

std::uint64_t ClassDistribution::count(const FactorizationType& t) const {
    auto it = counts.find(t);
    return it == counts.end() ? 0 : it->second;
}

namespace {

void require_admissible(const MultiPoly& f, const StatsOptions& opts) {
    if (!opts.require_admissible) return;
    const auto report = admissibility(f, opts.admissibility_trials, opts.seed);
    if (!report.admissible()) {
        std::string why;
        if (report.deg_t < 1) why = "deg_t F < 1";
        else if (!report.p_gt_d) why = "p <= deg_t F";
        else why = "Disc_t F vanishes identically";
        throw Error(ErrorCode::NotAdmissible, "polynomial is not admissible: " + why);
    }
}

}  // namespace

ClassDistribution empirical_distribution(const MultiPoly& f, const SetDescriptor& s, const StatsOptions& opts) {
    if (f.n() != s.n()) throw Error(ErrorCode::ArityMismatch, "polynomial and set have different dimensions");
    require_admissible(f, opts);
    if (s.cardinality() > opts.run.budget)
        throw Error(ErrorCode::BudgetExceeded,
                    "|S| = " + std::to_string(s.cardinality()) + " exceeds the budget " + std::to_string(opts.run.budget));
    const unsigned threads = resolve_threads(opts.run.threads);
    std::vector<ClassDistribution> partial(threads);
    for_each_shard(s.cardinality(), threads, [&](unsigned shard, std::uint64_t begin, std::uint64_t end) {
        std::vector<FieldElement> a(s.n(), f.ctx().zero());
        for (std::uint64_t i = begin; i < end; ++i) {
            s.point(i, a);
            partial[shard].record(classify_specialization(f, a));
        }
    });
    ClassDistribution dist;
    for (const auto& part : partial) dist.merge(part);
    return dist;
}

Rational gamma_symmetric(unsigned d, const FactorizationType& lambda) {
    if (lambda.degree() != d)
        throw Error(ErrorCode::PartitionMismatch, lambda.to_string() + " is not a partition of " + std::to_string(d));
    std::int64_t denom = 1;
    for (unsigned j = 1; j <= d; ++j) {
        const unsigned m = lambda.multiplicity(j);
        for (unsigned i = 1; i <= m; ++i) denom *= static_cast<std::int64_t>(j) * i;
    }
    return Rational(1, denom);
}

FactorizationType cycle_type(std::span<const unsigned> perm) {
    std::vector<bool> seen(perm.size(), false);
    std::vector<unsigned> parts;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        unsigned len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        parts.push_back(len);
    }
    return FactorizationType(std::move(parts));
}

double Prediction::prob(const FactorizationType& t) const {
    auto it = exact.find(t);
    return it == exact.end() ? 0.0 : to_double(it->second);
}

Rational Prediction::total() const {
    Rational sum(0);
    for (const auto& [t, r] : exact) sum += r;
    return sum;
}

Prediction prediction_from_group(const GroupSpec& g) {
    Prediction pred;
    if (g.is_symmetric()) {
        for (const auto& lambda : partitions(g.d())) pred.exact[lambda] = gamma_symmetric(g.d(), lambda);
        return pred;
    }
    const std::uint64_t frob = 1 % g.nu();
    const auto order = static_cast<std::int64_t>(g.elements().size());
    std::map<FactorizationType, std::int64_t> hits;
    for (const auto& el : g.elements())
        if (el.label == frob) ++hits[cycle_type(el.perm)];
    for (const auto& [t, c] : hits) pred.exact[t] = Rational(static_cast<std::int64_t>(g.nu()) * c, order);
    return pred;
}

ComparisonReport compare_distribution(const ClassDistribution& dist, const Prediction& prediction,
                                      const IrregularityReport& irreg, std::uint64_t q) {
    ComparisonReport report;
    report.distribution = dist;
    report.irreg = irreg;
    const double total = static_cast<double>(dist.total);
    for (const auto& [t, c] : dist.counts) report.per_type[t].count = c;
    for (const auto& [t, r] : prediction.exact)
        if (r.numerator() != 0) report.per_type[t].prediction = to_double(r);
    double l1 = 0.0;
    for (auto& [t, row] : report.per_type) {
        row.frequency = total > 0 ? static_cast<double>(row.count) / total : 0.0;
        row.deviation = std::abs(row.frequency - row.prediction);
        l1 += row.deviation;
    }
    report.non_squarefree_frequency = total > 0 ? static_cast<double>(dist.non_squarefree) / total : 0.0;
    report.degree_drop_frequency = total > 0 ? static_cast<double>(dist.degree_drop) / total : 0.0;
    l1 += report.non_squarefree_frequency + report.degree_drop_frequency;
    report.tv_distance = 0.5 * l1;
    report.normalized_error = report.tv_distance * std::sqrt(static_cast<double>(q)) / irreg.irreg;
    return report;
}

ComparisonReport compare(const MultiPoly& f, const SetDescriptor& s, const GroupSpec& g, const StatsOptions& opts) {
    if (g.d() != f.deg_t())
        throw Error(ErrorCode::InvalidGroup, "group acts on " + std::to_string(g.d()) + " letters but deg_t F = " +
                                                 std::to_string(f.deg_t()));
    const ClassDistribution dist = empirical_distribution(f, s, opts);
    const Prediction pred = prediction_from_group(g);
    const IrregularityReport irreg = irregularity(s, opts.run);
    return compare_distribution(dist, pred, irreg, f.ctx().q());
}

std::vector<std::vector<FieldElement>> type_locus(const MultiPoly& f, const FactorizationType& lambda,
                                                  const StatsOptions& opts) {
    require_admissible(f, opts);
    const auto& ctx = f.ctx();
    const std::uint64_t space = checked_space_size(ctx, f.n(), opts.run.budget);
    const unsigned threads = resolve_threads(opts.run.threads);
    std::vector<std::vector<std::vector<FieldElement>>> partial(threads);
    for_each_shard(space, threads, [&](unsigned shard, std::uint64_t begin, std::uint64_t end) {
        std::vector<FieldElement> a(f.n(), ctx.zero());
        for (std::uint64_t i = begin; i < end; ++i) {
            point_from_index(ctx, i, a);
            auto outcome = classify_specialization(f, a);
            if (outcome.is_type() && outcome.type == lambda) partial[shard].push_back(a);
        }
    });
    std::vector<std::vector<FieldElement>> out;
    for (auto& part : partial)
        for (auto& a : part) out.push_back(std::move(a));
    return out;
}

namespace {

double weil_scale(std::uint64_t q, std::size_t n) {
    return std::pow(static_cast<double>(q), static_cast<double>(n) - 0.5);
}

PackedPoints pack_points(const FieldCtx& ctx, std::size_t n, const std::vector<std::vector<FieldElement>>& pts) {
    PackedPoints packed(ctx, n);
    for (const auto& a : pts) packed.push(a);
    return packed;
}

std::string format_point(const FieldCtx& ctx, std::span<const FieldElement> b) {
    std::string out;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) out += ',';
        out += format_element(ctx, b[i]);
    }
    return out;
}

}  // namespace

CharsumResult restricted_charsum(const MultiPoly& f, const FactorizationType& lambda, std::span<const FieldElement> b,
                                 const StatsOptions& opts) {
    if (b.size() != f.n()) throw Error(ErrorCode::ArityMismatch, "frequency has the wrong dimension");
    bool all_zero = true;
    for (const auto& x : b) all_zero = all_zero && x.is_zero();
    if (all_zero) throw Error(ErrorCode::ZeroFrequency, "character sums need a nonzero frequency");
    const auto& ctx = f.ctx();
    const auto locus = type_locus(f, lambda, opts);
    const PackedPoints packed = pack_points(ctx, f.n(), locus);
    CharsumResult result;
    result.sum = character_sum(ctx, packed, dual_weights(ctx, b), true);
    result.magnitude = result.sum.magnitude(Twiddles(ctx.p()));
    result.weil_ratio = result.magnitude / weil_scale(ctx.q(), f.n());
    return result;
}

WeilSweep weil_sweep(const MultiPoly& f, const FactorizationType& lambda,
                     std::optional<std::vector<std::vector<FieldElement>>> frequencies, const StatsOptions& opts) {
    const auto& ctx = f.ctx();
    const std::uint64_t space = checked_space_size(ctx, f.n(), opts.run.budget);
    std::vector<std::vector<FieldElement>> bs;
    if (frequencies) {
        bs = std::move(*frequencies);
        for (const auto& b : bs) {
            if (b.size() != f.n()) throw Error(ErrorCode::ArityMismatch, "frequency has the wrong dimension");
            bool zero = true;
            for (const auto& x : b) zero = zero && x.is_zero();
            if (zero) throw Error(ErrorCode::ZeroFrequency, "character sums need a nonzero frequency");
        }
    } else {
        for (std::uint64_t i = 1; i < space; ++i) {
            std::vector<FieldElement> b(f.n(), ctx.zero());
            point_from_index(ctx, i, b);
            bs.push_back(std::move(b));
        }
    }
    WeilSweep sweep;
    if (bs.empty()) return sweep;

    const auto locus = type_locus(f, lambda, opts);
    const PackedPoints packed = pack_points(ctx, f.n(), locus);
    const Twiddles tw(ctx.p());
    const double scale = weil_scale(ctx.q(), f.n());
    sweep.rows.resize(bs.size());
    for_each_shard(bs.size(), resolve_threads(opts.run.threads), [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const double mag = character_sum(ctx, packed, dual_weights(ctx, bs[i]), true).magnitude(tw);
            sweep.rows[i] = {ctx.q(), format_point(ctx, bs[i]), mag, mag / scale};
        }
    });
    for (const auto& row : sweep.rows) {
        sweep.max_ratio = std::max(sweep.max_ratio, row.ratio);
        sweep.max_magnitude = std::max(sweep.max_magnitude, row.magnitude);
    }
    return sweep;
}

WeilSweep weil_sweep_primes(std::string_view expr, std::size_t n, const FactorizationType& lambda,
                            std::span<const std::uint64_t> primes, const StatsOptions& opts) {
    WeilSweep all;
    for (auto p : primes) {
        auto ctx = FieldCtx::create(p);
        auto part = weil_sweep(parse_poly(expr, n, ctx), lambda, std::nullopt, opts);
        for (auto& row : part.rows) all.rows.push_back(std::move(row));
        all.max_ratio = std::max(all.max_ratio, part.max_ratio);
        all.max_magnitude = std::max(all.max_magnitude, part.max_magnitude);
    }
    return all;
}

}  // namespace ffstat
