#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffstat/field.hpp"
#include "ffstat/parallel.hpp"

namespace ffstat {

/// Arithmetic progression {alpha*k + beta : 0 <= k < length} in F_p.
struct ApSpec {
    std::int64_t alpha = 1;
    std::int64_t beta = 0;
    std::uint64_t length = 1;
};

/// A specialization set S in F_q^n.
class SetDescriptor {
public:
    enum class Kind { FullSpace, GridProduct, Explicit, TraceZero };

    static SetDescriptor full_space(FieldPtr ctx, std::size_t n);
    /// Product of progressions; prime fields only.
    static SetDescriptor grid(FieldPtr ctx, std::vector<ApSpec> aps);
    /// Points are sorted into lexicographic order; duplicates are rejected.
    static SetDescriptor explicit_points(FieldPtr ctx, std::size_t n, std::vector<std::vector<FieldElement>> points);
    /// {a in F_q : tr(a) = 0}; requires k > 1.
    static SetDescriptor trace_zero(FieldPtr ctx);

    Kind kind() const noexcept { return kind_; }
    std::size_t n() const noexcept { return n_; }
    const FieldCtx& ctx() const noexcept { return *ctx_; }
    const FieldPtr& ctx_ptr() const noexcept { return ctx_; }
    const std::vector<ApSpec>& aps() const noexcept { return aps_; }
    std::uint64_t cardinality() const noexcept { return cardinality_; }

    /// The i-th point in enumeration order, i < cardinality().
    void point(std::uint64_t i, std::span<FieldElement> out) const;
    /// All points in order; throws BudgetExceeded if |S| > budget.
    std::vector<std::vector<FieldElement>> enumerate(std::uint64_t budget) const;
    /// Grammar form (`full`, `grid:...`, `tracezero`, `explicit[N]`).
    std::string describe() const;

private:
    SetDescriptor(FieldPtr ctx, Kind kind, std::size_t n) : ctx_(std::move(ctx)), kind_(kind), n_(n) {}

    FieldPtr ctx_;
    Kind kind_;
    std::size_t n_;
    std::uint64_t cardinality_ = 0;
    std::vector<ApSpec> aps_;
    std::vector<std::vector<FieldElement>> points_;
    int trace_pivot_ = 0;
};

/// `full` | `grid:int(beta,H),ap(alpha,beta,H),...` | `tracezero` | `file:PATH`.
/// For `full` the dimension is `n`; grids must list exactly n specs unless n == 0.
SetDescriptor parse_set(std::string_view text, FieldPtr ctx, std::size_t n);

/// Index of a point in F_q^n with a_1 most significant.
std::uint64_t point_index(const FieldCtx& ctx, std::span<const FieldElement> a);
void point_from_index(const FieldCtx& ctx, std::uint64_t index, std::span<FieldElement> out);
/// Comma-separated field elements, e.g. `3,-1` or `[1,0],[0,1]`; checks the length when n > 0.
std::vector<FieldElement> parse_point(const FieldCtx& ctx, std::string_view text, std::size_t n = 0);
std::uint64_t checked_space_size(const FieldCtx& ctx, std::size_t n, std::uint64_t budget);

/// Points stored as rows of n*k prime-field coordinates.
class PackedPoints {
public:
    PackedPoints(const FieldCtx& ctx, std::size_t n) : width_(n * static_cast<std::size_t>(ctx.k())) {}

    void push(std::span<const FieldElement> a);
    std::size_t size() const noexcept { return width_ == 0 ? 0 : data_.size() / width_; }
    std::size_t width() const noexcept { return width_; }
    std::span<const Residue> row(std::size_t i) const noexcept { return {data_.data() + i * width_, width_}; }

private:
    std::size_t width_;
    std::vector<Residue> data_;
};

/// w with tr(a.b) = <coords(a), w> over F_p, namely w_{i,j} = tr(x^j b_i).
std::vector<Residue> dual_weights(const FieldCtx& ctx, std::span<const FieldElement> b);
/// Sum over rows a of zeta_p^{+-tr(a.b)}, with sign -1 when `negate` is set.
CyclotomicSum character_sum(const FieldCtx& ctx, const PackedPoints& points, std::span<const Residue> weights,
                            bool negate);

/// Dense indicator transform, values[point_index(b)] = q^-n sum_{a in S} e^{-2 pi i tr(a.b)/p}.
struct FourierSpectrum {
    std::uint64_t q = 0;
    std::size_t n = 0;
    std::vector<std::complex<double>> values;
};

FourierSpectrum indicator_fourier(const SetDescriptor& s, const RunOptions& opts = {});

enum class IrregMethod { ExactDft, Product1d, ClosedFormInterval };
std::string_view to_string(IrregMethod m);

struct IrregularityReport {
    double irreg = 0.0;
    IrregMethod method = IrregMethod::ExactDft;
    /// prod_i 9 p ln p / H_i, attached for grids.
    std::optional<double> bound_9plogp;
};

IrregularityReport irregularity(const SetDescriptor& s, const RunOptions& opts = {});

/// 9 p ln(p) / H.
double interval_irreg_bound(std::uint64_t p, std::uint64_t h);
/// |1_I^(b)| for I = {0..H-1} in F_p and every b in [0, p), by exact 1-D transform.
std::vector<double> interval_spectrum_magnitudes(std::uint64_t p, std::uint64_t h);
/// irreg({0..H-1}) by exact 1-D transform.
double interval_irregularity(std::uint64_t p, std::uint64_t h);
/// irreg({0..H-1}) from |sin(pi b H/p) / sin(pi b/p)|.
IrregularityReport interval_irregularity_closed_form(std::uint64_t p, std::uint64_t h);

/// Both sides of the indicator-correlation decomposition
///   |S n D| = |S||D|/q^n + sum_{b != 0} 1_S^(b) * sum_{a in D} psi(a.b).
struct PlancherelCheck {
    double lhs = 0.0;
    double main_term = 0.0;
    std::complex<double> correlation{};
    double residual = 0.0;
};

PlancherelCheck verify_plancherel_decomposition(const SetDescriptor& s, const SetDescriptor& d,
                                                const RunOptions& opts = {});

}  // namespace ffstat
