#include "ffstat/field.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "ffstat/unipoly.hpp"

namespace ffstat {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::ReducibleModulus: return "ReducibleModulus";
        case ErrorCode::DegreeMismatch: return "DegreeMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::BothZero: return "BothZero";
        case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorCode::NotSquarefree: return "NotSquarefree";
        case ErrorCode::PrecedenceViolation: return "PrecedenceViolation";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::NegativeExponent: return "NegativeExponent";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::PartitionMismatch: return "PartitionMismatch";
        case ErrorCode::InvalidGroup: return "InvalidGroup";
        case ErrorCode::ZeroFrequency: return "ZeroFrequency";
        case ErrorCode::NotAdmissible: return "NotAdmissible";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

namespace {

std::uint64_t mul_mod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mul_mod64(r, b, m);
        b = mul_mod64(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % small == 0) return n == small;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases are a deterministic witness set below 3.3e24.
    for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        std::uint64_t x = pow_mod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) { return pow_mod64(base, e, m); }

std::shared_ptr<const FieldCtx> FieldCtx::create(std::uint64_t p, int k, std::optional<std::vector<std::int64_t>> modulus,
                                                 std::uint64_t seed) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 31)) throw Error(ErrorCode::InvalidArgument, "p must be below 2^31");
    if (k < 1 || k > kMaxExtensionDegree)
        throw Error(ErrorCode::InvalidArgument, "extension degree must lie in [1, " +
                                                    std::to_string(kMaxExtensionDegree) + "]");
    std::uint64_t q = 1;
    for (int i = 0; i < k; ++i) {
        if (q > (std::uint64_t{1} << 62) / p) throw Error(ErrorCode::InvalidArgument, "q = p^k exceeds 2^62");
        q *= p;
    }

    std::shared_ptr<FieldCtx> ctx(new FieldCtx());
    ctx->p_ = p;
    ctx->k_ = k;
    ctx->q_ = q;
    ctx->trace_basis_[0] = static_cast<Residue>(1 % p);
    if (k == 1) {
        if (modulus && modulus->size() != 2)
            throw Error(ErrorCode::DegreeMismatch, "modulus degree must equal k");
        return ctx;
    }

    auto prime = create(p, 1);
    std::vector<Residue> mod;
    if (modulus) {
        if (modulus->size() != static_cast<std::size_t>(k) + 1)
            throw Error(ErrorCode::DegreeMismatch, "modulus degree must equal k = " + std::to_string(k));
        for (auto c : *modulus) mod.push_back(prime->reduce(c));
        if (mod.back() != 1) throw Error(ErrorCode::InvalidArgument, "modulus must be monic");
        std::vector<FieldElement> coeffs;
        for (auto c : mod) coeffs.push_back(prime->from_int(c));
        if (!is_irreducible(UniPoly(*prime, coeffs)))
            throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over F_" + std::to_string(p));
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
        while (true) {
            mod.assign(static_cast<std::size_t>(k) + 1, 0);
            for (int i = 0; i < k; ++i) mod[static_cast<std::size_t>(i)] = static_cast<Residue>(dist(rng));
            mod[static_cast<std::size_t>(k)] = 1;
            std::vector<FieldElement> coeffs;
            for (auto c : mod) coeffs.push_back(prime->from_int(c));
            if (is_irreducible(UniPoly(*prime, coeffs))) break;
        }
    }
    ctx->modulus_ = mod;

    // x^k = -(m_0 + ... + m_{k-1} x^{k-1}); higher powers by shifting.
    std::array<Residue, kMaxExtensionDegree> cur{};
    for (int j = 0; j < k; ++j)
        cur[static_cast<std::size_t>(j)] = static_cast<Residue>((p - mod[static_cast<std::size_t>(j)]) % p);
    ctx->high_powers_.push_back(cur);
    for (int i = 1; i < k - 1; ++i) {
        std::array<Residue, kMaxExtensionDegree> next{};
        Residue top = cur[static_cast<std::size_t>(k - 1)];
        for (int j = k - 1; j >= 1; --j) next[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)];
        for (int j = 0; j < k; ++j)
            next[static_cast<std::size_t>(j)] =
                ctx->add_res(next[static_cast<std::size_t>(j)], ctx->mul_res(top, ctx->high_powers_[0][static_cast<std::size_t>(j)]));
        ctx->high_powers_.push_back(next);
        cur = next;
    }

    // tr(x^j) from the definition, once; trace() is linear in the coordinates.
    FieldElement xj = ctx->one();
    const FieldElement x = ctx->generator();
    for (int j = 0; j < k; ++j) {
        FieldElement acc = ctx->zero();
        FieldElement conj = xj;
        for (int i = 0; i < k; ++i) {
            acc = ctx->add(acc, conj);
            conj = ctx->pow(conj, p);
        }
        if (!ctx->in_prime_field(acc)) throw Error(ErrorCode::InvalidArgument, "trace left the prime field");
        ctx->trace_basis_[static_cast<std::size_t>(j)] = acc.c_[0];
        xj = ctx->mul(xj, x);
    }
    return ctx;
}

FieldElement FieldCtx::zero() const {
    FieldElement e;
    e.k_ = static_cast<std::uint8_t>(k_);
    return e;
}

FieldElement FieldCtx::one() const {
    FieldElement e = zero();
    e.c_[0] = 1;
    return e;
}

FieldElement FieldCtx::from_int(std::int64_t v) const {
    FieldElement e = zero();
    e.c_[0] = reduce(v);
    return e;
}

FieldElement FieldCtx::from_coords(std::span<const std::int64_t> coords) const {
    if (coords.size() > static_cast<std::size_t>(k_))
        throw Error(ErrorCode::DegreeMismatch, "element has more than k coordinates");
    FieldElement e = zero();
    for (std::size_t j = 0; j < coords.size(); ++j) e.c_[j] = reduce(coords[j]);
    return e;
}

FieldElement FieldCtx::generator() const {
    FieldElement e = zero();
    if (k_ == 1)
        e.c_[0] = 1;
    else
        e.c_[1] = 1;
    return e;
}

FieldElement FieldCtx::element(std::uint64_t index) const {
    FieldElement e = zero();
    for (int j = 0; j < k_; ++j) {
        e.c_[static_cast<std::size_t>(j)] = static_cast<Residue>(index % p_);
        index /= p_;
    }
    return e;
}

std::uint64_t FieldCtx::index(const FieldElement& e) const {
    std::uint64_t idx = 0;
    for (int j = k_ - 1; j >= 0; --j) idx = idx * p_ + e.c_[static_cast<std::size_t>(j)];
    return idx;
}

FieldElement FieldCtx::add(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = zero();
    for (int j = 0; j < k_; ++j) {
        auto s = static_cast<std::size_t>(j);
        r.c_[s] = add_res(a.c_[s], b.c_[s]);
    }
    return r;
}

FieldElement FieldCtx::sub(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = zero();
    for (int j = 0; j < k_; ++j) {
        auto s = static_cast<std::size_t>(j);
        r.c_[s] = a.c_[s] >= b.c_[s] ? a.c_[s] - b.c_[s] : static_cast<Residue>(a.c_[s] + p_ - b.c_[s]);
    }
    return r;
}

FieldElement FieldCtx::neg(const FieldElement& a) const { return sub(zero(), a); }

FieldElement FieldCtx::scale(const FieldElement& a, Residue s) const {
    FieldElement r = zero();
    for (int j = 0; j < k_; ++j) r.c_[static_cast<std::size_t>(j)] = mul_res(a.c_[static_cast<std::size_t>(j)], s);
    return r;
}

FieldElement FieldCtx::mul(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = zero();
    if (k_ == 1) {
        r.c_[0] = mul_res(a.c_[0], b.c_[0]);
        return r;
    }
    std::array<std::uint64_t, 2 * kMaxExtensionDegree> prod{};
    for (int i = 0; i < k_; ++i) {
        if (a.c_[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < k_; ++j) {
            auto& slot = prod[static_cast<std::size_t>(i + j)];
            slot = (slot + std::uint64_t{a.c_[static_cast<std::size_t>(i)]} * b.c_[static_cast<std::size_t>(j)]) % p_;
        }
    }
    for (int j = 0; j < k_; ++j) r.c_[static_cast<std::size_t>(j)] = static_cast<Residue>(prod[static_cast<std::size_t>(j)]);
    for (int i = 0; i + k_ <= 2 * k_ - 2; ++i) {
        auto top = static_cast<Residue>(prod[static_cast<std::size_t>(k_ + i)]);
        if (top == 0) continue;
        const auto& row = high_powers_[static_cast<std::size_t>(i)];
        for (int j = 0; j < k_; ++j) {
            auto s = static_cast<std::size_t>(j);
            r.c_[s] = add_res(r.c_[s], mul_res(top, row[s]));
        }
    }
    return r;
}

FieldElement FieldCtx::pow(const FieldElement& a, std::uint64_t e) const {
    FieldElement result = one();
    FieldElement base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return result;
}

FieldElement FieldCtx::inv(const FieldElement& a) const {
    if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    return pow(a, q_ - 2);
}

bool FieldCtx::in_prime_field(const FieldElement& a) const {
    for (int j = 1; j < k_; ++j)
        if (a.c_[static_cast<std::size_t>(j)] != 0) return false;
    return true;
}

Residue FieldCtx::trace(const FieldElement& u) const {
    std::uint64_t acc = 0;
    for (int j = 0; j < k_; ++j) {
        auto s = static_cast<std::size_t>(j);
        acc += std::uint64_t{u.c_[s]} * trace_basis_[s] % p_;
    }
    return static_cast<Residue>(acc % p_);
}

FieldElement FieldCtx::random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint64_t> dist(0, p_ - 1);
    FieldElement e = zero();
    for (int j = 0; j < k_; ++j) e.c_[static_cast<std::size_t>(j)] = static_cast<Residue>(dist(rng));
    return e;
}

std::string format_element(const FieldCtx& ctx, const FieldElement& e, bool signed_repr) {
    if (ctx.in_prime_field(e)) {
        std::uint64_t v = e.coord(0);
        if (signed_repr && v > ctx.p() / 2) return "-" + std::to_string(ctx.p() - v);
        return std::to_string(v);
    }
    std::string out = "[";
    for (int j = 0; j < ctx.k(); ++j) {
        if (j) out += ',';
        out += std::to_string(e.coord(j));
    }
    return out + "]";
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::int64_t parse_int(std::string_view s) {
    s = trim(s);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw Error(ErrorCode::InvalidArgument, "bad integer literal '" + std::string(s) + "'");
    return negative ? -v : v;
}

}  // namespace

FieldElement parse_element(const FieldCtx& ctx, std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') throw Error(ErrorCode::InvalidArgument, "unterminated coordinate list");
        text = text.substr(1, text.size() - 2);
        std::vector<std::int64_t> coords;
        while (true) {
            auto comma = text.find(',');
            coords.push_back(parse_int(text.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            text.remove_prefix(comma + 1);
        }
        return ctx.from_coords(coords);
    }
    return ctx.from_int(parse_int(text));
}

Twiddles::Twiddles(std::uint64_t p) : table_(p) {
    for (std::uint64_t j = 0; j < p; ++j) {
        double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(p);
        table_[j] = {std::cos(angle), std::sin(angle)};
    }
}

void CyclotomicSum::merge(const CyclotomicSum& other) {
    if (other.counts_.size() != counts_.size()) throw Error(ErrorCode::InvalidArgument, "merging sums over different p");
    for (std::size_t j = 0; j < counts_.size(); ++j) counts_[j] += other.counts_[j];
}

namespace {

// A constant added to every slot leaves the represented value unchanged; pick
// the most plausible majority value so that outliers are few.
std::int64_t baseline(std::span<const std::int64_t> c) {
    if (c.size() <= 2) return c[0];
    if (c[0] == c[1] || c[0] == c[2]) return c[0];
    return c[1];
}

}  // namespace

std::complex<double> CyclotomicSum::value(const Twiddles& tw) const {
    const std::int64_t base = baseline(counts_);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < counts_.size(); ++j) {
        auto c = counts_[j] - base;
        if (c != 0) acc += static_cast<double>(c) * tw[j];
    }
    return acc;
}

double CyclotomicSum::magnitude(const Twiddles& tw) const {
    const std::int64_t base = baseline(counts_);
    std::size_t outliers = 0;
    std::int64_t last = 0;
    for (auto c : counts_) {
        if (c != base) {
            ++outliers;
            last = c - base;
        }
    }
    if (outliers == 0) return 0.0;
    if (outliers == 1) return static_cast<double>(last < 0 ? -last : last);
    return std::abs(value(tw));
}

}  // namespace ffstat
