#include "ffstat/mpoly.hpp"

#include <algorithm>

namespace ffstat {

MultiPoly::MultiPoly(FieldPtr ctx, std::size_t n) : ctx_(std::move(ctx)), n_(n) {}

MultiPoly MultiPoly::constant(FieldPtr ctx, std::size_t n, const FieldElement& c) {
    MultiPoly f(std::move(ctx), n);
    f.add_term(Exponents(n + 1, 0), c);
    return f;
}

MultiPoly MultiPoly::variable(FieldPtr ctx, std::size_t n, std::size_t var) {
    if (var > n) throw Error(ErrorCode::UnknownVariable, "variable index out of range");
    MultiPoly f(ctx, n);
    Exponents e(n + 1, 0);
    e[var] = 1;
    f.add_term(e, ctx->one());
    return f;
}

void MultiPoly::add_term(const Exponents& e, const FieldElement& c) {
    if (e.size() != n_ + 1) throw Error(ErrorCode::ArityMismatch, "exponent vector has wrong length");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second = ctx_->add(it->second, c);
    if (it->second.is_zero()) terms_.erase(it);
}

unsigned MultiPoly::deg_t() const noexcept {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0]);
    return d;
}

unsigned MultiPoly::total_degree() const noexcept {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned s = 0;
        for (auto x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
}

MultiPoly MultiPoly::neg() const {
    MultiPoly out(ctx_, n_);
    for (const auto& [e, c] : terms_) out.add_term(e, ctx_->neg(c));
    return out;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + b.neg(); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.n_ != b.n_) throw Error(ErrorCode::ArityMismatch, "multiplying polynomials in different variable counts");
    MultiPoly out(a.ctx_, a.n_);
    Exponents e(a.n_ + 1);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i <= a.n_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, a.ctx_->mul(ca, cb));
        }
    }
    return out;
}

MultiPoly MultiPoly::pow(std::uint64_t e) const {
    MultiPoly result = constant(ctx_, n_, ctx_->one());
    MultiPoly base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::string to_string(const MultiPoly& f) {
    const auto& ctx = f.ctx();
    if (f.is_zero()) return "0";
    std::string out;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        std::string lit = format_element(ctx, c, true);
        const bool negative = lit.front() == '-';
        if (negative) lit.erase(0, 1);
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";

        std::string mono;
        auto append = [&mono](const std::string& var, std::uint32_t power) {
            if (power == 0) return;
            if (!mono.empty()) mono += '*';
            mono += var;
            if (power > 1) mono += "^" + std::to_string(power);
        };
        for (std::size_t i = 1; i < e.size(); ++i) append("A" + std::to_string(i), e[i]);
        append("t", e[0]);

        if (mono.empty())
            out += lit;
        else if (lit == "1")
            out += mono;
        else
            out += lit + "*" + mono;
    }
    return out;
}

UniPoly specialize(const MultiPoly& f, std::span<const FieldElement> a) {
    const auto& ctx = f.ctx();
    if (a.size() != f.n())
        throw Error(ErrorCode::ArityMismatch,
                    "expected " + std::to_string(f.n()) + " coordinates, got " + std::to_string(a.size()));
    std::vector<std::uint32_t> max_exp(f.n() + 1, 0);
    for (const auto& [e, c] : f.terms())
        for (std::size_t i = 1; i <= f.n(); ++i) max_exp[i] = std::max(max_exp[i], e[i]);
    std::vector<std::vector<FieldElement>> powers(f.n() + 1);
    for (std::size_t i = 1; i <= f.n(); ++i) {
        powers[i].push_back(ctx.one());
        for (std::uint32_t j = 1; j <= max_exp[i]; ++j) powers[i].push_back(ctx.mul(powers[i].back(), a[i - 1]));
    }
    std::vector<FieldElement> coeffs(f.deg_t() + 1, ctx.zero());
    for (const auto& [e, c] : f.terms()) {
        FieldElement v = c;
        for (std::size_t i = 1; i <= f.n(); ++i)
            if (e[i]) v = ctx.mul(v, powers[i][e[i]]);
        coeffs[e[0]] = ctx.add(coeffs[e[0]], v);
    }
    return UniPoly(ctx, std::move(coeffs));
}

SpecializationOutcome classify_specialization(const MultiPoly& f, std::span<const FieldElement> a) {
    UniPoly g = specialize(f, a);
    if (g.degree() < static_cast<int>(f.deg_t())) return SpecializationOutcome::degree_drop();
    if (!is_squarefree(g)) return SpecializationOutcome::non_squarefree();
    return SpecializationOutcome::of_type(factorization_type_unchecked(g));
}

DiscriminantCheck disc_nonzero_probabilistic(const MultiPoly& f, unsigned trials, std::uint64_t seed) {
    const auto& ctx = f.ctx();
    const unsigned d = f.deg_t();
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "discriminant test needs deg_t F >= 1");

    // lc_t(F) * Disc_t(F) has degree at most (2d-1) * deg F in the A-variables;
    // a sampling field of size >= 2 * that bound makes each miss at most 1/2 likely.
    const std::uint64_t bound = std::uint64_t{2 * d - 1} * std::max(1u, f.total_degree());
    unsigned m = 1;
    std::uint64_t size = ctx.q();
    while (size < 2 * bound && ctx.k() * static_cast<int>(m + 1) <= kMaxExtensionDegree) {
        ++m;
        size *= ctx.q();
    }

    MultiPoly sampled = f;
    FieldPtr big = f.ctx_ptr();
    if (m > 1) {
        big = FieldCtx::create(ctx.p(), ctx.k() * static_cast<int>(m), std::nullopt, seed);
        if (ctx.k() == 1) {
            sampled = f.mapped(big, [&](const FieldElement& c) { return big->from_int(c.coord(0)); });
        } else {
            // Embed F_q into F_{q^m} through a root of the defining modulus.
            std::vector<FieldElement> mod_coeffs;
            for (auto c : ctx.modulus()) mod_coeffs.push_back(big->from_int(c));
            UniPoly modulus(*big, mod_coeffs);
            FieldElement root = big->zero();
            bool found = false;
            for (std::uint64_t i = 0; i < big->q() && !found; ++i) {
                FieldElement cand = big->element(i);
                if (modulus.evaluate(cand).is_zero()) {
                    root = cand;
                    found = true;
                }
            }
            if (!found) throw Error(ErrorCode::InvalidArgument, "no root of the modulus in the sampling field");
            std::vector<FieldElement> root_powers{big->one()};
            for (int j = 1; j < ctx.k(); ++j) root_powers.push_back(big->mul(root_powers.back(), root));
            sampled = f.mapped(big, [&](const FieldElement& c) {
                FieldElement acc = big->zero();
                for (int j = 0; j < ctx.k(); ++j)
                    acc = big->add(acc, big->scale(root_powers[static_cast<std::size_t>(j)], c.coord(j)));
                return acc;
            });
        }
    }

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<FieldElement> point(f.n(), big->zero());
    for (unsigned trial = 0; trial < trials; ++trial) {
        for (auto& x : point) x = big->random(rng);
        UniPoly g = specialize(sampled, point);
        if (g.degree() == static_cast<int>(d) && !discriminant(g).is_zero()) return {true, trial + 1, m};
    }
    return {false, trials, m};
}

AdmissibilityReport admissibility(const MultiPoly& f, unsigned trials, std::uint64_t seed) {
    AdmissibilityReport report;
    report.deg_t = f.deg_t();
    report.total_deg = f.total_degree();
    report.p_gt_d = f.ctx().p() > report.deg_t;
    if (report.deg_t >= 1) {
        auto check = disc_nonzero_probabilistic(f, trials, seed);
        report.disc_nonzero = check.nonzero;
        report.trials_used = check.trials_used;
    }
    return report;
}

}  // namespace ffstat
