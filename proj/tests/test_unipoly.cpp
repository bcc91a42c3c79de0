#include <doctest.h>

#include <random>

#include "ffstat/stats.hpp"
#include "ffstat/unipoly.hpp"
#include "oracles.hpp"

using namespace ffstat;

namespace {

UniPoly from_oracle(const FieldCtx& ctx, const oracle::Poly& f) {
    std::vector<FieldElement> c;
    for (auto v : f) c.push_back(ctx.from_int(v));
    return UniPoly(ctx, c);
}

FactorizationType type_of(std::vector<unsigned> parts) { return FactorizationType(std::move(parts)); }

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Io;  // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("gcd examples") {
    auto f5 = FieldCtx::create(5);
    const auto f = UniPoly::from_ints(*f5, {-1, 0, 1});
    CHECK(gcd(f.scaled(f5->from_int(3)), UniPoly(*f5)) == f);
    CHECK(gcd(f, UniPoly::from_ints(*f5, {-1, 1})) == UniPoly::from_ints(*f5, {-1, 1}));

    auto f2 = FieldCtx::create(2);
    CHECK(gcd(UniPoly::from_ints(*f2, {0, 1, 1}), UniPoly::from_ints(*f2, {1, 0, 1})) == UniPoly::from_ints(*f2, {1, 1}));
    CHECK(code_of([&] { gcd(UniPoly(*f2), UniPoly(*f2)); }) == ErrorCode::BothZero);
}

TEST_CASE("squarefree examples") {
    auto f5 = FieldCtx::create(5);
    CHECK_FALSE(is_squarefree(UniPoly::from_ints(*f5, {0, 0, 1})));
    CHECK(is_squarefree(UniPoly::from_ints(*f5, {-1, 0, 1})));
    auto f3 = FieldCtx::create(3);
    CHECK(is_squarefree(UniPoly::from_ints(*f3, {-1, -1, 0, 1})));
    CHECK(code_of([&] { is_squarefree(UniPoly(*f3)); }) == ErrorCode::ZeroPolynomial);
}

TEST_CASE("factorization type examples") {
    auto f5 = FieldCtx::create(5);
    CHECK(factorization_type(UniPoly::from_ints(*f5, {-1, 0, 1})) == type_of({1, 1}));
    CHECK(factorization_type(UniPoly::from_ints(*f5, {-2, 0, 1})) == type_of({2}));
    auto f2 = FieldCtx::create(2);
    CHECK(factorization_type(UniPoly::from_ints(*f2, {1, 1, 0, 1})) == type_of({3}));
    CHECK(code_of([&] { factorization_type(UniPoly::from_ints(*f5, {0, 0, 1})); }) == ErrorCode::NotSquarefree);
}

TEST_CASE("irreducibility examples") {
    auto f2 = FieldCtx::create(2);
    auto f3 = FieldCtx::create(3);
    auto f5 = FieldCtx::create(5);
    CHECK(is_irreducible(UniPoly::from_ints(*f2, {1, 1, 0, 1})));
    CHECK_FALSE(is_irreducible(UniPoly::from_ints(*f5, {-1, 0, 1})));
    CHECK(is_irreducible(UniPoly::from_ints(*f3, {1, 0, 1})));
}

TEST_CASE("discriminant examples") {
    auto f5 = FieldCtx::create(5);
    CHECK(discriminant(UniPoly::from_ints(*f5, {-1, 0, 1})) == f5->from_int(4));
    CHECK(discriminant(UniPoly::from_ints(*f5, {0, 0, 1})) == f5->zero());
    auto f7 = FieldCtx::create(7);
    CHECK(discriminant(UniPoly::from_ints(*f7, {1, 1, 0, 1})) == f7->from_int(4));
}

TEST_CASE("discriminant matches textbook quadratic and cubic formulas") {
    auto ctx = FieldCtx::create(7);
    for (std::int64_t a = 1; a < 7; ++a)
        for (std::int64_t b = 0; b < 7; ++b)
            for (std::int64_t c = 0; c < 7; ++c)
                CHECK(discriminant(UniPoly::from_ints(*ctx, {c, b, a})) == ctx->from_int(b * b - 4 * a * c));
    for (std::int64_t b = 0; b < 7; ++b)
        for (std::int64_t c = 0; c < 7; ++c)
            for (std::int64_t d = 0; d < 7; ++d) {
                const std::int64_t expected = b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
                CHECK(discriminant(UniPoly::from_ints(*ctx, {d, c, b, 1})) == ctx->from_int(expected));
            }
}

TEST_CASE("resultant of linear factors") {
    // Res(t - r, g) = g(r).
    auto ctx = FieldCtx::create(11);
    const auto g = UniPoly::from_ints(*ctx, {3, 0, 5, 1});
    for (std::int64_t r = 0; r < 11; ++r)
        CHECK(resultant(UniPoly::from_ints(*ctx, {-r, 1}), g) == g.evaluate(ctx->from_int(r)));
}

TEST_CASE("Morse test examples") {
    auto f7 = FieldCtx::create(7);
    CHECK(is_morse(UniPoly::from_ints(*f7, {0, 0, 1})));
    CHECK(is_morse(UniPoly::from_ints(*f7, {0, -3, 0, 1})));
    auto f5 = FieldCtx::create(5);
    CHECK_FALSE(is_morse(UniPoly::from_ints(*f5, {0, 0, 0, 1})));
    auto f3 = FieldCtx::create(3);
    CHECK(code_of([&] { is_morse(UniPoly::from_ints(*f3, {0, 1, 0, 1})); }) == ErrorCode::PrecedenceViolation);
}

TEST_CASE("Morse test agrees with counting critical values") {
    // Over F_p with p large, compare with: f' has deg-1 distinct roots in the algebraic closure and the
    // critical values are distinct. Restrict to f whose f' splits over F_p so values can be enumerated.
    auto ctx = FieldCtx::create(13);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> coef(0, 12);
    int checked = 0;
    for (int trial = 0; trial < 3000 && checked < 200; ++trial) {
        const oracle::Poly f = {coef(rng), coef(rng), coef(rng), coef(rng), 1};
        const UniPoly g = from_oracle(*ctx, f);
        const UniPoly df = derivative(g);
        std::vector<FieldElement> roots;
        for (std::int64_t x = 0; x < 13; ++x)
            if (df.evaluate(ctx->from_int(x)).is_zero()) roots.push_back(ctx->from_int(x));
        if (static_cast<int>(roots.size()) != df.degree()) continue;  // f' must split with distinct roots
        ++checked;
        std::vector<FieldElement> values;
        for (const auto& r : roots) values.push_back(g.evaluate(r));
        bool distinct = true;
        for (std::size_t i = 0; i < values.size(); ++i)
            for (std::size_t j = i + 1; j < values.size(); ++j) distinct = distinct && !(values[i] == values[j]);
        CHECK(is_morse(g) == distinct);
    }
    CHECK(checked > 20);
}

TEST_CASE("factorization type matches trial division, exhaustive over F_2 and F_3") {
    for (auto [p, max_deg] : {std::pair{2, 6}, {3, 6}}) {
        auto ctx = FieldCtx::create(static_cast<std::uint64_t>(p));
        const auto irr = oracle::monic_irreducibles(static_cast<unsigned>(max_deg), p);
        for (unsigned d = 1; d <= static_cast<unsigned>(max_deg); ++d)
            for (const auto& f : oracle::monic_of_degree(d, p)) {
                const UniPoly g = from_oracle(*ctx, f);
                const bool sf = oracle::squarefree(f, irr, p);
                REQUIRE(is_squarefree(g) == sf);
                if (!sf) continue;
                CHECK(factorization_type(g).parts() == oracle::factor_degrees(f, irr, p));
            }
    }
}

TEST_CASE("factorization type matches trial division, sampled over larger primes") {
    for (std::int64_t p : {5, 7, 11, 13}) {
        auto ctx = FieldCtx::create(static_cast<std::uint64_t>(p));
        const auto irr = oracle::monic_irreducibles(3, p);  // enough to factor degree <= 6 completely
        std::mt19937_64 rng(static_cast<std::uint64_t>(p));
        std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
        for (int trial = 0; trial < 300; ++trial) {
            const unsigned d = 1 + static_cast<unsigned>(trial % 6);
            oracle::Poly f(d + 1);
            for (unsigned i = 0; i < d; ++i) f[i] = coef(rng);
            f[d] = 1;
            const UniPoly g = from_oracle(*ctx, f);
            if (!is_squarefree(g)) continue;
            // Any leftover of degree <= 6 after removing factors of degree <= 3 is irreducible.
            const auto parts = factorization_type(g).parts();
            CHECK(parts == oracle::factor_degrees(f, irr, p));
            unsigned sum = 0;
            for (auto x : parts) sum += x;
            CHECK(sum == d);
        }
    }
}

TEST_CASE("squarefree iff nonzero discriminant") {
    for (std::int64_t p : {5, 7}) {
        auto ctx = FieldCtx::create(static_cast<std::uint64_t>(p));
        for (unsigned d = 2; d <= 4 && static_cast<std::int64_t>(d) < p; ++d)
            for (const auto& f : oracle::monic_of_degree(d, p))
                for (std::int64_t lead = 1; lead < p; lead += 2) {
                    oracle::Poly g = f;
                    for (auto& c : g) c = oracle::mod(c * lead, p);
                    const UniPoly u = from_oracle(*ctx, g);
                    CHECK(is_squarefree(u) == !discriminant(u).is_zero());
                }
    }
}

TEST_CASE("monic squarefree type frequencies approach the symmetric-group law") {
    for (std::int64_t p : {13, 31}) {
        auto ctx = FieldCtx::create(static_cast<std::uint64_t>(p));
        std::map<FactorizationType, double> freq;
        double total = 0;
        for (const auto& f : oracle::monic_of_degree(3, p)) {
            const UniPoly g = from_oracle(*ctx, f);
            if (!is_squarefree(g)) continue;
            freq[factorization_type(g)] += 1;
            total += 1;
        }
        for (const auto& lambda : partitions(3))
            CHECK(std::abs(freq[lambda] / total - to_double(gamma_symmetric(3, lambda))) <= 1.0 / static_cast<double>(p));
    }
}

TEST_CASE("factorization type text form") {
    CHECK(type_of({1, 2, 1}).to_string() == "[2,1,1]");
    CHECK(FactorizationType::parse("[2,1]") == type_of({1, 2}));
    CHECK(FactorizationType::parse("3,1") == type_of({3, 1}));
    CHECK(code_of([] { type_of({2, 0}); }) == ErrorCode::PartitionMismatch);
    const std::vector<std::size_t> counts = {1, 2, 3, 5, 7, 11, 15, 22};
    for (unsigned d = 1; d <= 8; ++d) {
        const auto parts = partitions(d);
        CHECK(parts.size() == counts[d - 1]);
        for (const auto& l : parts) CHECK(l.degree() == d);
    }
}

TEST_CASE("polynomial ring identities") {
    auto ctx = FieldCtx::create(3, 2, std::nullopt, 4);
    std::mt19937_64 rng(8);
    auto random_poly = [&](int deg) {
        std::vector<FieldElement> c;
        for (int i = 0; i <= deg; ++i) c.push_back(ctx->random(rng));
        return UniPoly(*ctx, c);
    };
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_poly(5), b = random_poly(3);
        if (b.is_zero()) continue;
        const auto [q, r] = divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
        const auto x = ctx->random(rng);
        CHECK((a * b).evaluate(x) == ctx->mul(a.evaluate(x), b.evaluate(x)));
    }
}
