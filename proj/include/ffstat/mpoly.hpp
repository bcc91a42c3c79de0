#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffstat/field.hpp"
#include "ffstat/unipoly.hpp"

namespace ffstat {

/// Exponent vector (e_t, e_1, ..., e_n).
using Exponents = std::vector<std::uint32_t>;

/// Sparse F(t, A1, ..., An) over F_q. No zero coefficients are stored.
class MultiPoly {
public:
    MultiPoly(FieldPtr ctx, std::size_t n);

    static MultiPoly constant(FieldPtr ctx, std::size_t n, const FieldElement& c);
    /// Variable 0 is t, variable i >= 1 is A_i.
    static MultiPoly variable(FieldPtr ctx, std::size_t n, std::size_t var);

    const FieldCtx& ctx() const noexcept { return *ctx_; }
    const FieldPtr& ctx_ptr() const noexcept { return ctx_; }
    std::size_t n() const noexcept { return n_; }
    const std::map<Exponents, FieldElement>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const Exponents& e, const FieldElement& c);

    unsigned deg_t() const noexcept;
    unsigned total_degree() const noexcept;

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
    MultiPoly neg() const;
    MultiPoly pow(std::uint64_t e) const;

    /// Same polynomial with every coefficient sent through `embed` into `target`.
    template <typename Embed>
    MultiPoly mapped(FieldPtr target, Embed&& embed) const {
        MultiPoly out(std::move(target), n_);
        for (const auto& [e, c] : terms_) out.add_term(e, embed(c));
        return out;
    }

private:
    FieldPtr ctx_;
    std::size_t n_;
    std::map<Exponents, FieldElement> terms_;
};

/// Grammar: integer or `[c0,c1,...]` literals, variables t and A1..An,
/// binary + - *, unary minus, `^` with a nonnegative integer literal, and
/// parentheses. Juxtaposition is not multiplication.
MultiPoly parse_poly(std::string_view expr, std::size_t n, FieldPtr ctx);
/// Largest i such that `Ai` occurs in the expression (0 if none).
std::size_t infer_variable_count(std::string_view expr);
/// Canonical text: descending t-degree, then descending A-exponents.
std::string to_string(const MultiPoly& f);

/// F(t, a). The result may have lower degree than deg_t F.
UniPoly specialize(const MultiPoly& f, std::span<const FieldElement> a);
SpecializationOutcome classify_specialization(const MultiPoly& f, std::span<const FieldElement> a);

struct DiscriminantCheck {
    bool nonzero = false;
    unsigned trials_used = 0;
    /// Extension degree m of the sampling field F_{q^m}.
    unsigned sample_extension = 1;
};

/// One-sided test that Disc_t F is not identically zero. A `true` verdict is
/// always correct; `false` is wrong with probability at most 2^-trials.
DiscriminantCheck disc_nonzero_probabilistic(const MultiPoly& f, unsigned trials, std::uint64_t seed);

struct AdmissibilityReport {
    unsigned deg_t = 0;
    unsigned total_deg = 0;
    bool disc_nonzero = false;
    bool p_gt_d = false;
    unsigned trials_used = 0;

    bool admissible() const noexcept { return disc_nonzero && p_gt_d && deg_t >= 1; }
};

AdmissibilityReport admissibility(const MultiPoly& f, unsigned trials = 40, std::uint64_t seed = 0x5eed);

}  // namespace ffstat
