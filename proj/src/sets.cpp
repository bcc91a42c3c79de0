#include "ffstat/sets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>

namespace ffstat {

namespace {

constexpr std::uint64_t kSumBlock = 4096;
// Above this many (point, frequency) pairs the separable transform is used.
constexpr std::uint64_t kDirectWorkLimit = std::uint64_t{1} << 28;

std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

}  // namespace

std::uint64_t checked_space_size(const FieldCtx& ctx, std::size_t n, std::uint64_t budget) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < n; ++i) size = mul_checked(size, ctx.q());
    if (size > budget)
        throw Error(ErrorCode::BudgetExceeded, "q^n = " + (size == UINT64_MAX ? std::string("overflow") : std::to_string(size)) +
                                                   " exceeds the budget " + std::to_string(budget));
    return size;
}

std::uint64_t point_index(const FieldCtx& ctx, std::span<const FieldElement> a) {
    std::uint64_t idx = 0;
    for (const auto& x : a) idx = idx * ctx.q() + ctx.index(x);
    return idx;
}

void point_from_index(const FieldCtx& ctx, std::uint64_t index, std::span<FieldElement> out) {
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = ctx.element(index % ctx.q());
        index /= ctx.q();
    }
}

SetDescriptor SetDescriptor::full_space(FieldPtr ctx, std::size_t n) {
    SetDescriptor s(std::move(ctx), Kind::FullSpace, n);
    s.cardinality_ = 1;
    for (std::size_t i = 0; i < n; ++i) s.cardinality_ = mul_checked(s.cardinality_, s.ctx_->q());
    return s;
}

SetDescriptor SetDescriptor::grid(FieldPtr ctx, std::vector<ApSpec> aps) {
    if (ctx->k() != 1) throw Error(ErrorCode::InvalidArgument, "grid sets require a prime field");
    const auto p = static_cast<std::int64_t>(ctx->p());
    SetDescriptor s(std::move(ctx), Kind::GridProduct, aps.size());
    s.cardinality_ = 1;
    for (auto& ap : aps) {
        ap.alpha = ((ap.alpha % p) + p) % p;
        ap.beta = ((ap.beta % p) + p) % p;
        if (ap.alpha == 0) throw Error(ErrorCode::InvalidArgument, "progression step must be nonzero mod p");
        if (ap.length < 1 || ap.length > static_cast<std::uint64_t>(p))
            throw Error(ErrorCode::InvalidArgument, "progression length must lie in [1, p]");
        s.cardinality_ = mul_checked(s.cardinality_, ap.length);
    }
    s.aps_ = std::move(aps);
    return s;
}

SetDescriptor SetDescriptor::explicit_points(FieldPtr ctx, std::size_t n, std::vector<std::vector<FieldElement>> points) {
    SetDescriptor s(std::move(ctx), Kind::Explicit, n);
    std::vector<std::pair<std::uint64_t, std::size_t>> order;
    order.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != n) throw Error(ErrorCode::ArityMismatch, "point has the wrong number of coordinates");
        for (const auto& x : points[i])
            if (x.degree() != s.ctx_->k()) throw Error(ErrorCode::DegreeMismatch, "point coordinate from another field");
        order.emplace_back(point_index(*s.ctx_, points[i]), i);
    }
    std::sort(order.begin(), order.end());
    for (std::size_t i = 1; i < order.size(); ++i)
        if (order[i].first == order[i - 1].first) throw Error(ErrorCode::InvalidArgument, "explicit set has duplicate points");
    s.points_.reserve(points.size());
    for (const auto& [idx, i] : order) s.points_.push_back(std::move(points[i]));
    s.cardinality_ = s.points_.size();
    return s;
}

SetDescriptor SetDescriptor::trace_zero(FieldPtr ctx) {
    if (ctx->k() < 2) throw Error(ErrorCode::InvalidArgument, "trace-zero sets need an extension field (k > 1)");
    SetDescriptor s(std::move(ctx), Kind::TraceZero, 1);
    const auto& c = *s.ctx_;
    s.trace_pivot_ = -1;
    std::uint64_t pj = 1;
    for (int j = 0; j < c.k(); ++j, pj *= c.p()) {
        if (c.trace(c.element(pj)) != 0) {
            s.trace_pivot_ = j;
            break;
        }
    }
    if (s.trace_pivot_ < 0) throw Error(ErrorCode::InvalidArgument, "trace map vanishes identically");
    s.cardinality_ = c.q() / c.p();
    return s;
}

void SetDescriptor::point(std::uint64_t i, std::span<FieldElement> out) const {
    const auto& c = *ctx_;
    switch (kind_) {
        case Kind::FullSpace:
            point_from_index(c, i, out);
            return;
        case Kind::GridProduct:
            for (std::size_t j = aps_.size(); j-- > 0;) {
                const auto& ap = aps_[j];
                const std::uint64_t step = i % ap.length;
                i /= ap.length;
                out[j] = c.from_int(static_cast<std::int64_t>((static_cast<std::uint64_t>(ap.alpha) * step +
                                                               static_cast<std::uint64_t>(ap.beta)) % c.p()));
            }
            return;
        case Kind::Explicit:
            std::copy(points_[i].begin(), points_[i].end(), out.begin());
            return;
        case Kind::TraceZero: {
            // Free coordinates are every j except the pivot, in index order; the pivot
            // coordinate is solved from the linear trace condition.
            std::vector<std::int64_t> coords(static_cast<std::size_t>(c.k()), 0);
            for (int j = 0; j < c.k(); ++j) {
                if (j == trace_pivot_) continue;
                coords[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(i % c.p());
                i /= c.p();
            }
            FieldElement partial = c.from_coords(coords);
            const Residue rest = c.trace(partial);
            std::uint64_t pj = 1;
            for (int j = 0; j < trace_pivot_; ++j) pj *= c.p();
            const Residue pivot_weight = c.trace(c.element(pj));
            const FieldElement solved = c.mul(c.from_int(-static_cast<std::int64_t>(rest)), c.inv(c.from_int(pivot_weight)));
            coords[static_cast<std::size_t>(trace_pivot_)] = solved.coord(0);
            out[0] = c.from_coords(coords);
            return;
        }
    }
}

std::vector<std::vector<FieldElement>> SetDescriptor::enumerate(std::uint64_t budget) const {
    if (cardinality_ > budget)
        throw Error(ErrorCode::BudgetExceeded,
                    "|S| = " + std::to_string(cardinality_) + " exceeds the budget " + std::to_string(budget));
    std::vector<std::vector<FieldElement>> out(cardinality_, std::vector<FieldElement>(n_, ctx_->zero()));
    for (std::uint64_t i = 0; i < cardinality_; ++i) point(i, out[i]);
    return out;
}

std::string SetDescriptor::describe() const {
    switch (kind_) {
        case Kind::FullSpace: return "full";
        case Kind::TraceZero: return "tracezero";
        case Kind::Explicit: return "explicit[" + std::to_string(points_.size()) + "]";
        case Kind::GridProduct: {
            std::string out = "grid:";
            for (std::size_t i = 0; i < aps_.size(); ++i) {
                if (i) out += ',';
                const auto& ap = aps_[i];
                if (ap.alpha == 1)
                    out += "int(" + std::to_string(ap.beta) + "," + std::to_string(ap.length) + ")";
                else
                    out += "ap(" + std::to_string(ap.alpha) + "," + std::to_string(ap.beta) + "," + std::to_string(ap.length) + ")";
            }
            return out;
        }
    }
    return "";
}

namespace {

std::string_view strip(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Splits on commas that are not nested inside () or [].
std::vector<std::string_view> split_top_level(std::string_view s) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(strip(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(strip(s.substr(start)));
    return out;
}

std::int64_t parse_signed(std::string_view s) {
    s = strip(s);
    bool negative = !s.empty() && s.front() == '-';
    if (negative) s.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw Error(ErrorCode::InvalidArgument, "bad integer '" + std::string(s) + "' in set descriptor");
    return negative ? -v : v;
}

ApSpec parse_ap(std::string_view spec) {
    auto open = spec.find('(');
    if (open == std::string_view::npos || spec.back() != ')')
        throw Error(ErrorCode::InvalidArgument, "expected int(beta,H) or ap(alpha,beta,H), got '" + std::string(spec) + "'");
    auto name = strip(spec.substr(0, open));
    auto args = split_top_level(spec.substr(open + 1, spec.size() - open - 2));
    ApSpec ap;
    if (name == "int" && args.size() == 2) {
        ap.beta = parse_signed(args[0]);
        ap.length = static_cast<std::uint64_t>(std::max<std::int64_t>(0, parse_signed(args[1])));
    } else if (name == "ap" && args.size() == 3) {
        ap.alpha = parse_signed(args[0]);
        ap.beta = parse_signed(args[1]);
        ap.length = static_cast<std::uint64_t>(std::max<std::int64_t>(0, parse_signed(args[2])));
    } else {
        throw Error(ErrorCode::InvalidArgument, "bad progression spec '" + std::string(spec) + "'");
    }
    return ap;
}

}  // namespace

SetDescriptor parse_set(std::string_view text, FieldPtr ctx, std::size_t n) {
    text = strip(text);
    if (text == "full") return SetDescriptor::full_space(std::move(ctx), n);
    if (text == "tracezero") {
        if (n > 1) throw Error(ErrorCode::ArityMismatch, "trace-zero sets are one-dimensional");
        return SetDescriptor::trace_zero(std::move(ctx));
    }
    if (text.starts_with("grid:")) {
        std::vector<ApSpec> aps;
        for (auto spec : split_top_level(text.substr(5))) aps.push_back(parse_ap(spec));
        if (n != 0 && aps.size() != n)
            throw Error(ErrorCode::ArityMismatch,
                        "grid has " + std::to_string(aps.size()) + " factors but n = " + std::to_string(n));
        return SetDescriptor::grid(std::move(ctx), std::move(aps));
    }
    if (text.starts_with("file:")) {
        const std::string path(strip(text.substr(5)));
        std::ifstream in(path);
        if (!in) throw Error(ErrorCode::Io, "cannot open point file '" + path + "'");
        std::vector<std::vector<FieldElement>> points;
        std::string line;
        std::size_t dim = n;
        while (std::getline(in, line)) {
            auto body = strip(line);
            if (body.empty() || body.front() == '#') continue;
            std::vector<FieldElement> pt;
            for (auto lit : split_top_level(body)) pt.push_back(parse_element(*ctx, lit));
            if (dim == 0) dim = pt.size();
            if (pt.size() != dim)
                throw Error(ErrorCode::ArityMismatch, "point '" + std::string(body) + "' has the wrong dimension");
            points.push_back(std::move(pt));
        }
        return SetDescriptor::explicit_points(std::move(ctx), dim, std::move(points));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown set descriptor '" + std::string(text) + "'");
}

void PackedPoints::push(std::span<const FieldElement> a) {
    for (const auto& x : a)
        for (auto c : x.coords()) data_.push_back(c);
}

std::vector<Residue> dual_weights(const FieldCtx& ctx, std::span<const FieldElement> b) {
    std::vector<Residue> w;
    w.reserve(b.size() * static_cast<std::size_t>(ctx.k()));
    const FieldElement x = ctx.generator();
    for (const auto& bi : b) {
        FieldElement xj_b = bi;
        for (int j = 0; j < ctx.k(); ++j) {
            w.push_back(ctx.trace(xj_b));
            xj_b = ctx.mul(xj_b, x);
        }
    }
    return w;
}

CyclotomicSum character_sum(const FieldCtx& ctx, const PackedPoints& points, std::span<const Residue> weights,
                            bool negate) {
    const std::uint64_t p = ctx.p();
    CyclotomicSum sum(p);
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto row = points.row(i);
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < row.size(); ++j) acc = (acc + std::uint64_t{row[j]} * weights[j]) % p;
        if (negate && acc != 0) acc = p - acc;
        sum.add(static_cast<Residue>(acc));
    }
    return sum;
}

std::string_view to_string(IrregMethod m) {
    switch (m) {
        case IrregMethod::ExactDft: return "exact_dft";
        case IrregMethod::Product1d: return "product_1d";
        case IrregMethod::ClosedFormInterval: return "closed_form_interval";
    }
    return "";
}

namespace {

PackedPoints pack(const SetDescriptor& s, std::uint64_t budget) {
    PackedPoints packed(s.ctx(), s.n());
    std::vector<FieldElement> a(s.n(), s.ctx().zero());
    if (s.cardinality() > budget)
        throw Error(ErrorCode::BudgetExceeded, "|S| exceeds the budget " + std::to_string(budget));
    for (std::uint64_t i = 0; i < s.cardinality(); ++i) {
        s.point(i, a);
        packed.push(a);
    }
    return packed;
}

// Unnormalized transform sum_{a in S} e^{-2 pi i tr(a.b)/p} for every b, via one
// length-p DFT per coordinate axis of F_p^{nk}.
std::vector<std::complex<double>> separable_transform(const SetDescriptor& s, std::uint64_t space, unsigned threads) {
    const auto& ctx = s.ctx();
    const std::uint64_t p = ctx.p();
    const std::size_t axes = s.n() * static_cast<std::size_t>(ctx.k());
    const Twiddles tw(p);
    std::vector<std::complex<double>> grid(space, {0.0, 0.0});
    std::vector<FieldElement> a(s.n(), ctx.zero());
    for (std::uint64_t i = 0; i < s.cardinality(); ++i) {
        s.point(i, a);
        grid[point_index(ctx, a)] = {1.0, 0.0};
    }
    std::uint64_t stride = 1;
    for (std::size_t axis = 0; axis < axes; ++axis, stride *= p) {
        const std::uint64_t lines = space / p;
        for_each_shard(lines, threads, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
            std::vector<std::complex<double>> in(p);
            for (std::uint64_t line = begin; line < end; ++line) {
                const std::uint64_t base = (line / stride) * stride * p + line % stride;
                for (std::uint64_t c = 0; c < p; ++c) in[c] = grid[base + c * stride];
                for (std::uint64_t w = 0; w < p; ++w) {
                    std::complex<double> acc{0.0, 0.0};
                    for (std::uint64_t c = 0; c < p; ++c) {
                        if (in[c] == std::complex<double>{0.0, 0.0}) continue;
                        const std::uint64_t e = (c * w) % p;
                        acc += in[c] * std::conj(tw[e]);
                    }
                    grid[base + w * stride] = acc;
                }
            }
        });
    }
    return grid;
}

// Flat separable-grid index of the dual weights of b: digit (n-1-i)*k + j holds w_{i,j}.
std::uint64_t weights_index(const FieldCtx& ctx, std::span<const Residue> w, std::size_t n) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (int j = ctx.k() - 1; j >= 0; --j) idx = idx * ctx.p() + w[i * static_cast<std::size_t>(ctx.k()) + static_cast<std::size_t>(j)];
    return idx;
}

bool use_direct(const SetDescriptor& s, std::uint64_t space, TransformRoute route) {
    if (route != TransformRoute::Auto) return route == TransformRoute::Direct;
    return mul_checked(s.cardinality(), space) <= kDirectWorkLimit;
}

// sum_b |sum_{a in S} psi(-a.b)| in fixed block order.
double transform_l1(const SetDescriptor& s, const RunOptions& opts) {
    const auto& ctx = s.ctx();
    const std::uint64_t space = checked_space_size(ctx, s.n(), opts.budget);
    const unsigned threads = resolve_threads(opts.threads);
    const std::uint64_t blocks = (space + kSumBlock - 1) / kSumBlock;
    std::vector<double> block_sums(blocks, 0.0);

    if (use_direct(s, space, opts.route)) {
        const PackedPoints packed = pack(s, opts.budget);
        const Twiddles tw(ctx.p());
        for_each_shard(blocks, threads, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
            std::vector<FieldElement> b(s.n(), ctx.zero());
            std::vector<double> mags;
            for (std::uint64_t blk = begin; blk < end; ++blk) {
                mags.clear();
                for (std::uint64_t bi = blk * kSumBlock; bi < std::min(space, (blk + 1) * kSumBlock); ++bi) {
                    point_from_index(ctx, bi, b);
                    mags.push_back(character_sum(ctx, packed, dual_weights(ctx, b), true).magnitude(tw));
                }
                block_sums[blk] = pairwise_sum(mags.data(), mags.size());
            }
        });
    } else {
        const auto grid = separable_transform(s, space, threads);
        for_each_shard(blocks, threads, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
            std::vector<FieldElement> b(s.n(), ctx.zero());
            std::vector<double> mags;
            for (std::uint64_t blk = begin; blk < end; ++blk) {
                mags.clear();
                for (std::uint64_t bi = blk * kSumBlock; bi < std::min(space, (blk + 1) * kSumBlock); ++bi) {
                    point_from_index(ctx, bi, b);
                    mags.push_back(std::abs(grid[weights_index(ctx, dual_weights(ctx, b), s.n())]));
                }
                block_sums[blk] = pairwise_sum(mags.data(), mags.size());
            }
        });
    }
    return pairwise_sum(block_sums.data(), block_sums.size());
}

}  // namespace

FourierSpectrum indicator_fourier(const SetDescriptor& s, const RunOptions& opts) {
    const auto& ctx = s.ctx();
    const std::uint64_t space = checked_space_size(ctx, s.n(), opts.budget);
    const unsigned threads = resolve_threads(opts.threads);
    FourierSpectrum spec{ctx.q(), s.n(), std::vector<std::complex<double>>(space)};
    const double scale = 1.0 / static_cast<double>(space);

    if (use_direct(s, space, opts.route)) {
        const PackedPoints packed = pack(s, opts.budget);
        const Twiddles tw(ctx.p());
        for_each_shard(space, threads, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
            std::vector<FieldElement> b(s.n(), ctx.zero());
            for (std::uint64_t bi = begin; bi < end; ++bi) {
                point_from_index(ctx, bi, b);
                spec.values[bi] = character_sum(ctx, packed, dual_weights(ctx, b), true).value(tw) * scale;
            }
        });
    } else {
        const auto grid = separable_transform(s, space, threads);
        std::vector<FieldElement> b(s.n(), ctx.zero());
        for (std::uint64_t bi = 0; bi < space; ++bi) {
            point_from_index(ctx, bi, b);
            spec.values[bi] = grid[weights_index(ctx, dual_weights(ctx, b), s.n())] * scale;
        }
    }
    return spec;
}

double interval_irreg_bound(std::uint64_t p, std::uint64_t h) {
    return 9.0 * static_cast<double>(p) * std::log(static_cast<double>(p)) / static_cast<double>(h);
}

namespace {

// |sum_{k<H} e^{-2 pi i k b/p}| for every b, unnormalized.
std::vector<double> interval_transform_abs(std::uint64_t p, std::uint64_t h) {
    if (h < 1 || h > p) throw Error(ErrorCode::InvalidArgument, "interval length must lie in [1, p]");
    const Twiddles tw(p);
    std::vector<double> mags(p, 0.0);
    mags[0] = static_cast<double>(h);
    if (h == p) return mags;
    // For b != 0 the full-line sum vanishes, so the complement has the same magnitude.
    const bool complement = 2 * h > p;
    const std::uint64_t lo = complement ? h : 0;
    const std::uint64_t hi = complement ? p : h;
    for (std::uint64_t b = 1; b < p; ++b) {
        if (hi - lo == 1) {
            mags[b] = 1.0;
            continue;
        }
        std::complex<double> acc{0.0, 0.0};
        for (std::uint64_t k = lo; k < hi; ++k) acc += std::conj(tw[(k * b) % p]);
        mags[b] = std::abs(acc);
    }
    return mags;
}

}  // namespace

std::vector<double> interval_spectrum_magnitudes(std::uint64_t p, std::uint64_t h) {
    auto mags = interval_transform_abs(p, h);
    for (auto& m : mags) m /= static_cast<double>(p);
    return mags;
}

double interval_irregularity(std::uint64_t p, std::uint64_t h) {
    const auto mags = interval_transform_abs(p, h);
    return pairwise_sum(mags.data(), mags.size()) / static_cast<double>(h);
}

IrregularityReport interval_irregularity_closed_form(std::uint64_t p, std::uint64_t h) {
    if (h < 1 || h > p) throw Error(ErrorCode::InvalidArgument, "interval length must lie in [1, p]");
    std::vector<double> terms(p);
    terms[0] = static_cast<double>(h);
    const double pd = static_cast<double>(p);
    for (std::uint64_t b = 1; b < p; ++b) {
        const double bd = static_cast<double>(b);
        terms[b] = std::abs(std::sin(std::numbers::pi * bd * static_cast<double>(h) / pd) / std::sin(std::numbers::pi * bd / pd));
    }
    return {pairwise_sum(terms.data(), terms.size()) / static_cast<double>(h), IrregMethod::ClosedFormInterval,
            interval_irreg_bound(p, h)};
}

IrregularityReport irregularity(const SetDescriptor& s, const RunOptions& opts) {
    const auto& ctx = s.ctx();
    if (s.cardinality() == 0) throw Error(ErrorCode::InvalidArgument, "irregularity of the empty set");
    switch (s.kind()) {
        case SetDescriptor::Kind::GridProduct: {
            // Each progression has the irregularity of {0..H-1}; the product splits coordinatewise.
            std::map<std::uint64_t, double> cache;
            double irreg = 1.0;
            double bound = 1.0;
            for (const auto& ap : s.aps()) {
                auto it = cache.find(ap.length);
                if (it == cache.end()) it = cache.emplace(ap.length, interval_irregularity(ctx.p(), ap.length)).first;
                irreg *= it->second;
                bound *= interval_irreg_bound(ctx.p(), ap.length);
            }
            return {irreg, IrregMethod::Product1d, bound};
        }
        case SetDescriptor::Kind::FullSpace: {
            const auto line = SetDescriptor::full_space(s.ctx_ptr(), 1);
            const double one_d = transform_l1(line, opts) / static_cast<double>(ctx.q());
            double irreg = 1.0;
            for (std::size_t i = 0; i < s.n(); ++i) irreg *= one_d;
            return {irreg, IrregMethod::Product1d, std::nullopt};
        }
        case SetDescriptor::Kind::Explicit:
        case SetDescriptor::Kind::TraceZero:
            return {transform_l1(s, opts) / static_cast<double>(s.cardinality()), IrregMethod::ExactDft, std::nullopt};
    }
    return {};
}

PlancherelCheck verify_plancherel_decomposition(const SetDescriptor& s, const SetDescriptor& d, const RunOptions& opts) {
    const auto& ctx = s.ctx();
    if (s.n() != d.n()) throw Error(ErrorCode::ArityMismatch, "S and D live in different dimensions");
    const std::uint64_t space = checked_space_size(ctx, s.n(), opts.budget);

    std::vector<bool> in_s(space, false);
    std::vector<FieldElement> a(s.n(), ctx.zero());
    for (std::uint64_t i = 0; i < s.cardinality(); ++i) {
        s.point(i, a);
        in_s[point_index(ctx, a)] = true;
    }
    std::uint64_t overlap = 0;
    for (std::uint64_t i = 0; i < d.cardinality(); ++i) {
        d.point(i, a);
        if (in_s[point_index(ctx, a)]) ++overlap;
    }

    const FourierSpectrum spec = indicator_fourier(s, opts);
    const PackedPoints packed_d = pack(d, opts.budget);
    const Twiddles tw(ctx.p());
    std::complex<double> correlation{0.0, 0.0};
    std::vector<FieldElement> b(s.n(), ctx.zero());
    for (std::uint64_t bi = 1; bi < space; ++bi) {
        point_from_index(ctx, bi, b);
        correlation += spec.values[bi] * character_sum(ctx, packed_d, dual_weights(ctx, b), false).value(tw);
    }

    PlancherelCheck check;
    check.lhs = static_cast<double>(overlap);
    check.main_term = static_cast<double>(s.cardinality()) * static_cast<double>(d.cardinality()) / static_cast<double>(space);
    check.correlation = correlation;
    check.residual = std::abs(std::complex<double>(check.lhs - check.main_term, 0.0) - correlation);
    return check;
}

std::vector<FieldElement> parse_point(const FieldCtx& ctx, std::string_view text, std::size_t n) {
    std::vector<FieldElement> out;
    if (!strip(text).empty())
        for (auto lit : split_top_level(text)) out.push_back(parse_element(ctx, lit));
    if (n > 0 && out.size() != n)
        throw Error(ErrorCode::ArityMismatch,
                    "expected " + std::to_string(n) + " coordinates, got " + std::to_string(out.size()));
    return out;
}

}  // namespace ffstat
