#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffstat/field.hpp"

namespace ffstat {

/// Univariate polynomial over F_q. Coefficients are indexed by degree and carry
/// no trailing zeros; the zero polynomial is the empty vector. The context is
/// not owned and must outlive the polynomial.
class UniPoly {
public:
    explicit UniPoly(const FieldCtx& ctx) : ctx_(&ctx) {}
    UniPoly(const FieldCtx& ctx, std::vector<FieldElement> coeffs);

    static UniPoly constant(const FieldCtx& ctx, const FieldElement& c);
    static UniPoly monomial(const FieldCtx& ctx, const FieldElement& c, std::size_t degree);
    static UniPoly variable(const FieldCtx& ctx);
    /// Prime-field shorthand: coefficients low to high, reduced mod p.
    static UniPoly from_ints(const FieldCtx& ctx, std::initializer_list<std::int64_t> coeffs);

    const FieldCtx& ctx() const noexcept { return *ctx_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<FieldElement>& coeffs() const noexcept { return coeffs_; }
    FieldElement coeff(std::size_t i) const;
    const FieldElement& leading() const;

    FieldElement evaluate(const FieldElement& x) const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

    UniPoly scaled(const FieldElement& c) const;

private:
    void trim();

    const FieldCtx* ctx_;
    std::vector<FieldElement> coeffs_;
};

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly rem(const UniPoly& a, const UniPoly& b);
UniPoly monic(const UniPoly& f);
UniPoly derivative(const UniPoly& f);
/// Monic gcd; throws BothZero when f = g = 0.
UniPoly gcd(const UniPoly& f, const UniPoly& g);
UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& modulus);
UniPoly powmod(const UniPoly& base, std::uint64_t e, const UniPoly& modulus);
/// t^{q^i} mod f by repeated q-th powering.
UniPoly frobenius_power_of_t(const UniPoly& f, unsigned i);

/// Multiset of irreducible-factor degrees, sorted descending.
class FactorizationType {
public:
    FactorizationType() = default;
    explicit FactorizationType(std::vector<unsigned> parts);

    const std::vector<unsigned>& parts() const noexcept { return parts_; }
    unsigned degree() const noexcept;
    unsigned multiplicity(unsigned part) const noexcept;
    bool empty() const noexcept { return parts_.empty(); }

    /// Bracketed form, e.g. "[2,1,1]".
    std::string to_string() const;
    /// Accepts "[2,1,1]" or "2,1,1" in any order.
    static FactorizationType parse(std::string_view text);

    friend auto operator<=>(const FactorizationType&, const FactorizationType&) = default;
    friend bool operator==(const FactorizationType&, const FactorizationType&) = default;

private:
    std::vector<unsigned> parts_;
};

/// All partitions of d, each sorted descending, in descending lexicographic order.
std::vector<FactorizationType> partitions(unsigned d);

struct SpecializationOutcome {
    enum class Kind { Type, NonSquarefree, DegreeDrop };
    Kind kind = Kind::Type;
    FactorizationType type;  // meaningful only for Kind::Type

    static SpecializationOutcome of_type(FactorizationType t) { return {Kind::Type, std::move(t)}; }
    static SpecializationOutcome non_squarefree() { return {Kind::NonSquarefree, {}}; }
    static SpecializationOutcome degree_drop() { return {Kind::DegreeDrop, {}}; }

    bool is_type() const noexcept { return kind == Kind::Type; }
    friend bool operator==(const SpecializationOutcome&, const SpecializationOutcome&) = default;
};

bool is_squarefree(const UniPoly& f);
/// Distinct-degree factorization; only the degrees are recovered.
FactorizationType factorization_type(const UniPoly& f);
/// Same as factorization_type but skips the squarefree check.
FactorizationType factorization_type_unchecked(const UniPoly& f);
bool is_irreducible(const UniPoly& f);
bool has_root(const UniPoly& f);

/// Res(f, g) using the actual degrees of f and g.
FieldElement resultant(const UniPoly& f, const UniPoly& g);
/// (-1)^{d(d-1)/2} Res(f, f') / lc(f), with f' taken at formal degree d-1.
FieldElement discriminant(const UniPoly& f);

/// Derivative has simple roots and the critical values are pairwise distinct.
bool is_morse(const UniPoly& f);
/// Res_t(f'(t), X - f(t)) as a polynomial in X, by evaluation and interpolation.
UniPoly critical_value_polynomial(const UniPoly& f);
/// Lagrange interpolation through (xs[i], ys[i]); xs pairwise distinct.
UniPoly interpolate(const FieldCtx& ctx, const std::vector<FieldElement>& xs, const std::vector<FieldElement>& ys);

std::string to_string(const UniPoly& f, std::string_view var = "t");

}  // namespace ffstat
