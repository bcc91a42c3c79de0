#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffstat/error.hpp"

namespace ffstat {

using Residue = std::uint32_t;

/// Largest supported extension degree k for F_{p^k}.
inline constexpr int kMaxExtensionDegree = 12;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Element of F_{p^k}: coordinates in the basis 1, x, ..., x^{k-1} modulo the
/// context's modulus. Unused trailing slots are always zero, so equality is
/// plain array equality.
class FieldElement {
public:
    FieldElement() = default;

    int degree() const noexcept { return k_; }
    Residue coord(int j) const noexcept { return c_[static_cast<std::size_t>(j)]; }
    std::span<const Residue> coords() const noexcept { return {c_.data(), static_cast<std::size_t>(k_)}; }

    bool is_zero() const noexcept {
        for (int j = 0; j < k_; ++j)
            if (c_[static_cast<std::size_t>(j)] != 0) return false;
        return true;
    }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;

private:
    friend class FieldCtx;
    std::array<Residue, kMaxExtensionDegree> c_{};
    std::uint8_t k_ = 1;
};

/// The field F_q, q = p^k. Immutable after construction; share through
/// std::shared_ptr<const FieldCtx>.
class FieldCtx {
public:
    /// Builds F_{p^k}. Without a modulus (k > 1) a monic irreducible of degree k
    /// is drawn by seeded rejection sampling. Modulus coefficients are listed
    /// low to high and include the leading 1.
    static std::shared_ptr<const FieldCtx> create(std::uint64_t p, int k = 1,
                                                  std::optional<std::vector<std::int64_t>> modulus = std::nullopt,
                                                  std::uint64_t seed = 0);

    std::uint64_t p() const noexcept { return p_; }
    int k() const noexcept { return k_; }
    std::uint64_t q() const noexcept { return q_; }
    /// Monic modulus, low to high, length k+1. Empty for prime fields.
    const std::vector<Residue>& modulus() const noexcept { return modulus_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(std::int64_t v) const;
    FieldElement from_coords(std::span<const std::int64_t> coords) const;
    /// The power-basis element x (k > 1); 1 for prime fields.
    FieldElement generator() const;

    /// Bijection F_q <-> [0, q): index = sum_j coord_j * p^j.
    FieldElement element(std::uint64_t index) const;
    std::uint64_t index(const FieldElement& e) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement pow(const FieldElement& a, std::uint64_t e) const;
    FieldElement scale(const FieldElement& a, Residue s) const;
    bool in_prime_field(const FieldElement& a) const;

    /// tr_{F_q/F_p}(u) = u + u^p + ... + u^{p^{k-1}} as a residue in [0, p).
    Residue trace(const FieldElement& u) const;
    /// Index j with psi(u) = zeta_p^j for the standard additive character.
    Residue psi_index(const FieldElement& u) const { return trace(u); }

    FieldElement random(std::mt19937_64& rng) const;

    Residue add_res(Residue a, Residue b) const noexcept {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Residue>(s >= p_ ? s - p_ : s);
    }
    Residue mul_res(Residue a, Residue b) const noexcept {
        return static_cast<Residue>((std::uint64_t{a} * b) % p_);
    }
    Residue reduce(std::int64_t v) const noexcept {
        auto m = static_cast<std::int64_t>(p_);
        auto r = v % m;
        return static_cast<Residue>(r < 0 ? r + m : r);
    }

private:
    FieldCtx() = default;

    std::uint64_t p_ = 2;
    int k_ = 1;
    std::uint64_t q_ = 2;
    std::vector<Residue> modulus_;
    // x^{k+i} reduced mod modulus, for i in [0, k-1).
    std::vector<std::array<Residue, kMaxExtensionDegree>> high_powers_;
    std::array<Residue, kMaxExtensionDegree> trace_basis_{};
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

/// Modular exponentiation on residues; shared with unipoly for prime fields.
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m);

/// Text literal for an element: integer for prime-subfield values (signed
/// representative when signed=true), otherwise `[c0,c1,...]`.
std::string format_element(const FieldCtx& ctx, const FieldElement& e, bool signed_repr = false);
/// Parses an integer literal (optionally negative) or a bracketed coordinate list.
FieldElement parse_element(const FieldCtx& ctx, std::string_view text);

/// Table of zeta_p^j = exp(2*pi*i*j/p).
class Twiddles {
public:
    explicit Twiddles(std::uint64_t p);
    std::uint64_t p() const noexcept { return table_.size(); }
    const std::complex<double>& operator[](std::size_t j) const noexcept { return table_[j]; }

private:
    std::vector<std::complex<double>> table_;
};

/// An exact element of Z[zeta_p]: sum_j counts[j] * zeta_p^j.
class CyclotomicSum {
public:
    explicit CyclotomicSum(std::uint64_t p) : counts_(p, 0) {}

    std::uint64_t p() const noexcept { return counts_.size(); }
    std::span<const std::int64_t> counts() const noexcept { return counts_; }

    void add(Residue j, std::int64_t c = 1) { counts_[j] += c; }
    void merge(const CyclotomicSum& other);

    std::complex<double> value(const Twiddles& tw) const;
    std::complex<double> value() const { return value(Twiddles(p())); }
    /// |value|. Exact when the counts differ from a constant in at most one slot.
    double magnitude(const Twiddles& tw) const;
    double magnitude() const { return magnitude(Twiddles(p())); }

    friend bool operator==(const CyclotomicSum&, const CyclotomicSum&) = default;

private:
    std::vector<std::int64_t> counts_;
};

}  // namespace ffstat
