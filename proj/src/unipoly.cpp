#include "ffstat/unipoly.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace ffstat {

UniPoly::UniPoly(const FieldCtx& ctx, std::vector<FieldElement> coeffs) : ctx_(&ctx), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_)
        if (c.degree() != ctx.k()) throw Error(ErrorCode::DegreeMismatch, "coefficient from a different field");
    trim();
}

UniPoly UniPoly::constant(const FieldCtx& ctx, const FieldElement& c) { return UniPoly(ctx, {c}); }

UniPoly UniPoly::monomial(const FieldCtx& ctx, const FieldElement& c, std::size_t degree) {
    std::vector<FieldElement> coeffs(degree + 1, ctx.zero());
    coeffs[degree] = c;
    return UniPoly(ctx, std::move(coeffs));
}

UniPoly UniPoly::variable(const FieldCtx& ctx) { return monomial(ctx, ctx.one(), 1); }

UniPoly UniPoly::from_ints(const FieldCtx& ctx, std::initializer_list<std::int64_t> coeffs) {
    std::vector<FieldElement> out;
    for (auto c : coeffs) out.push_back(ctx.from_int(c));
    return UniPoly(ctx, std::move(out));
}

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement UniPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : ctx_->zero(); }

const FieldElement& UniPoly::leading() const {
    if (coeffs_.empty()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no leading coefficient");
    return coeffs_.back();
}

FieldElement UniPoly::evaluate(const FieldElement& x) const {
    FieldElement acc = ctx_->zero();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = ctx_->add(ctx_->mul(acc, x), *it);
    return acc;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    const auto& ctx = a.ctx();
    std::vector<FieldElement> out(std::max(a.coeffs_.size(), b.coeffs_.size()), ctx.zero());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ctx.add(a.coeff(i), b.coeff(i));
    return UniPoly(ctx, std::move(out));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    const auto& ctx = a.ctx();
    std::vector<FieldElement> out(std::max(a.coeffs_.size(), b.coeffs_.size()), ctx.zero());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ctx.sub(a.coeff(i), b.coeff(i));
    return UniPoly(ctx, std::move(out));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    const auto& ctx = a.ctx();
    if (a.is_zero() || b.is_zero()) return UniPoly(ctx);
    std::vector<FieldElement> out(a.coeffs_.size() + b.coeffs_.size() - 1, ctx.zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            out[i + j] = ctx.add(out[i + j], ctx.mul(a.coeffs_[i], b.coeffs_[j]));
    }
    return UniPoly(ctx, std::move(out));
}

UniPoly UniPoly::scaled(const FieldElement& c) const {
    std::vector<FieldElement> out;
    out.reserve(coeffs_.size());
    for (const auto& x : coeffs_) out.push_back(ctx_->mul(x, c));
    return UniPoly(*ctx_, std::move(out));
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    const auto& ctx = a.ctx();
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    if (a.degree() < b.degree()) return {UniPoly(ctx), a};
    std::vector<FieldElement> r = a.coeffs();
    const auto db = static_cast<std::size_t>(b.degree());
    std::vector<FieldElement> quot(r.size() - db, ctx.zero());
    const FieldElement inv_lead = ctx.inv(b.leading());
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i].is_zero()) continue;
        FieldElement factor = ctx.mul(r[i], inv_lead);
        quot[i - db] = factor;
        for (std::size_t j = 0; j <= db; ++j)
            r[i - db + j] = ctx.sub(r[i - db + j], ctx.mul(factor, b.coeffs()[j]));
    }
    r.resize(db);
    return {UniPoly(ctx, std::move(quot)), UniPoly(ctx, std::move(r))};
}

UniPoly rem(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

UniPoly monic(const UniPoly& f) {
    if (f.is_zero()) return f;
    return f.scaled(f.ctx().inv(f.leading()));
}

UniPoly derivative(const UniPoly& f) {
    const auto& ctx = f.ctx();
    if (f.degree() < 1) return UniPoly(ctx);
    std::vector<FieldElement> out;
    for (std::size_t i = 1; i < f.coeffs().size(); ++i)
        out.push_back(ctx.scale(f.coeffs()[i], static_cast<Residue>(i % ctx.p())));
    return UniPoly(ctx, std::move(out));
}

UniPoly gcd(const UniPoly& f, const UniPoly& g) {
    if (f.is_zero() && g.is_zero()) throw Error(ErrorCode::BothZero, "gcd(0, 0) is undefined");
    UniPoly a = f;
    UniPoly b = g;
    while (!b.is_zero()) {
        UniPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& modulus) { return rem(a * b, modulus); }

UniPoly powmod(const UniPoly& base, std::uint64_t e, const UniPoly& modulus) {
    const auto& ctx = base.ctx();
    UniPoly result = rem(UniPoly::constant(ctx, ctx.one()), modulus);
    UniPoly b = rem(base, modulus);
    while (e) {
        if (e & 1) result = mulmod(result, b, modulus);
        e >>= 1;
        if (e) b = mulmod(b, b, modulus);
    }
    return result;
}

UniPoly frobenius_power_of_t(const UniPoly& f, unsigned i) {
    const auto& ctx = f.ctx();
    UniPoly h = rem(UniPoly::variable(ctx), f);
    for (unsigned s = 0; s < i; ++s) h = powmod(h, ctx.q(), f);
    return h;
}

FactorizationType::FactorizationType(std::vector<unsigned> parts) : parts_(std::move(parts)) {
    for (auto part : parts_)
        if (part == 0) throw Error(ErrorCode::PartitionMismatch, "factorization parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

unsigned FactorizationType::degree() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0u); }

unsigned FactorizationType::multiplicity(unsigned part) const noexcept {
    return static_cast<unsigned>(std::count(parts_.begin(), parts_.end(), part));
}

std::string FactorizationType::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts_[i]);
    }
    return out + "]";
}

FactorizationType FactorizationType::parse(std::string_view text) {
    auto strip = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        return s;
    };
    text = strip(text);
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') throw Error(ErrorCode::InvalidArgument, "unterminated factorization type");
        text = text.substr(1, text.size() - 2);
    }
    std::vector<unsigned> parts;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto tok = strip(text.substr(0, comma));
        unsigned v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || v == 0)
            throw Error(ErrorCode::InvalidArgument, "bad factorization part '" + std::string(tok) + "'");
        parts.push_back(v);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "empty factorization type");
    return FactorizationType(std::move(parts));
}

namespace {

void partitions_rec(unsigned remaining, unsigned max_part, std::vector<unsigned>& cur, std::vector<FactorizationType>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions_rec(remaining - part, part, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<FactorizationType> partitions(unsigned d) {
    std::vector<FactorizationType> out;
    std::vector<unsigned> cur;
    partitions_rec(d, d, cur, out);
    return out;
}

bool is_squarefree(const UniPoly& f) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "squarefreeness of the zero polynomial");
    if (f.degree() < 1) return true;
    return gcd(f, derivative(f)).degree() == 0;
}

FactorizationType factorization_type_unchecked(const UniPoly& input) {
    const auto& ctx = input.ctx();
    UniPoly f = monic(input);
    std::vector<unsigned> parts;
    const UniPoly t = UniPoly::variable(ctx);
    UniPoly h = rem(t, f);
    for (unsigned i = 1; f.degree() >= static_cast<int>(2 * i); ++i) {
        h = powmod(h, ctx.q(), f);
        UniPoly g = gcd(f, h - t);
        if (g.degree() > 0) {
            for (int c = 0; c < g.degree() / static_cast<int>(i); ++c) parts.push_back(i);
            f = divmod(f, g).first;
            h = rem(h, f);
        }
    }
    if (f.degree() > 0) parts.push_back(static_cast<unsigned>(f.degree()));
    return FactorizationType(std::move(parts));
}

FactorizationType factorization_type(const UniPoly& f) {
    if (!is_squarefree(f)) throw Error(ErrorCode::NotSquarefree, "factorization type needs a squarefree input");
    if (f.degree() < 1) return {};
    return factorization_type_unchecked(f);
}

bool is_irreducible(const UniPoly& input) {
    if (input.degree() < 1) return false;
    const auto& ctx = input.ctx();
    const UniPoly f = monic(input);
    const auto d = static_cast<unsigned>(f.degree());
    if (d == 1) return true;
    const UniPoly t = UniPoly::variable(ctx);
    const UniPoly td = rem(t, f);
    if (frobenius_power_of_t(f, d) != td) return false;
    unsigned m = d;
    for (unsigned l = 2; l <= m; ++l) {
        if (m % l != 0) continue;
        while (m % l == 0) m /= l;
        if (gcd(f, frobenius_power_of_t(f, d / l) - t).degree() != 0) return false;
    }
    return true;
}

bool has_root(const UniPoly& f) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "every element is a root of zero");
    if (f.degree() < 1) return false;
    const UniPoly t = UniPoly::variable(f.ctx());
    return gcd(f, frobenius_power_of_t(f, 1) - t).degree() > 0;
}

FieldElement resultant(const UniPoly& f, const UniPoly& g) {
    const auto& ctx = f.ctx();
    if (f.is_zero() || g.is_zero()) return ctx.zero();
    UniPoly a = f;
    UniPoly b = g;
    FieldElement acc = ctx.one();
    while (true) {
        const auto m = static_cast<std::uint64_t>(a.degree());
        const auto n = static_cast<std::uint64_t>(b.degree());
        if (n == 0) return ctx.mul(acc, ctx.pow(b.leading(), m));
        UniPoly r = rem(a, b);
        if (r.is_zero()) return ctx.zero();
        const auto s = static_cast<std::uint64_t>(r.degree());
        // Res(a,b) = (-1)^{mn} lc(b)^{m-s} Res(b, a mod b)
        if ((m * n) % 2 == 1) acc = ctx.neg(acc);
        acc = ctx.mul(acc, ctx.pow(b.leading(), m - s));
        a = std::move(b);
        b = std::move(r);
    }
}

FieldElement discriminant(const UniPoly& f) {
    const auto& ctx = f.ctx();
    if (f.degree() < 1) throw Error(ErrorCode::InvalidArgument, "discriminant needs degree >= 1");
    const auto d = static_cast<std::uint64_t>(f.degree());
    const UniPoly df = derivative(f);
    if (df.is_zero()) return ctx.zero();
    const auto formal_gap = (d - 1) - static_cast<std::uint64_t>(df.degree());
    FieldElement res = ctx.mul(ctx.pow(f.leading(), formal_gap), resultant(f, df));
    if ((d * (d - 1) / 2) % 2 == 1) res = ctx.neg(res);
    return ctx.mul(res, ctx.inv(f.leading()));
}

UniPoly interpolate(const FieldCtx& ctx, const std::vector<FieldElement>& xs, const std::vector<FieldElement>& ys) {
    if (xs.size() != ys.size()) throw Error(ErrorCode::ArityMismatch, "interpolation needs matching point lists");
    UniPoly result(ctx);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        UniPoly basis = UniPoly::constant(ctx, ctx.one());
        FieldElement denom = ctx.one();
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = basis * UniPoly(ctx, {ctx.neg(xs[j]), ctx.one()});
            denom = ctx.mul(denom, ctx.sub(xs[i], xs[j]));
        }
        result = result + basis.scaled(ctx.mul(ys[i], ctx.inv(denom)));
    }
    return result;
}

UniPoly critical_value_polynomial(const UniPoly& f) {
    const auto& ctx = f.ctx();
    const auto d = static_cast<std::uint64_t>(f.degree());
    if (ctx.p() <= d) throw Error(ErrorCode::PrecedenceViolation, "critical values need p > deg f");
    const UniPoly df = derivative(f);
    std::vector<FieldElement> xs;
    std::vector<FieldElement> ys;
    // deg_X Res_t(f', X - f) = deg f' = d - 1, so d nodes suffice; p > d keeps them distinct.
    for (std::uint64_t i = 0; i < d; ++i) {
        FieldElement x0 = ctx.from_int(static_cast<std::int64_t>(i));
        xs.push_back(x0);
        ys.push_back(resultant(df, UniPoly::constant(ctx, x0) - f));
    }
    return interpolate(ctx, xs, ys);
}

bool is_morse(const UniPoly& f) {
    if (f.degree() < 2) throw Error(ErrorCode::InvalidArgument, "Morse test needs degree >= 2");
    if (f.ctx().p() <= static_cast<std::uint64_t>(f.degree()))
        throw Error(ErrorCode::PrecedenceViolation, "Morse test needs p > deg f");
    if (!is_squarefree(derivative(f))) return false;
    return is_squarefree(critical_value_polynomial(f));
}

std::string to_string(const UniPoly& f, std::string_view var) {
    const auto& ctx = f.ctx();
    if (f.is_zero()) return "0";
    std::string out;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        const FieldElement& c = f.coeffs()[i];
        if (c.is_zero()) continue;
        std::string lit = format_element(ctx, c, true);
        bool negative = lit.front() == '-';
        if (negative) lit.erase(0, 1);
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string mono;
        if (i >= 1) mono = std::string(var) + (i > 1 ? "^" + std::to_string(i) : "");
        if (mono.empty())
            out += lit;
        else if (lit == "1")
            out += mono;
        else
            out += lit + "*" + mono;
    }
    return out;
}

}  // namespace ffstat
