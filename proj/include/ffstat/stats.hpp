#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffstat/field.hpp"
#include "ffstat/mpoly.hpp"
#include "ffstat/parallel.hpp"
#include "ffstat/sets.hpp"
#include "ffstat/unipoly.hpp"

namespace ffstat {

using Rational = boost::rational<std::int64_t>;

struct StatsOptions {
    RunOptions run;
    /// Reject F that fails the admissibility check (p > d, Disc_t F != 0).
    bool require_admissible = true;
    unsigned admissibility_trials = 40;
    std::uint64_t seed = 0x5eed;
};

/// Counts of factorization classes over S, with the exceptional buckets kept apart.
struct ClassDistribution {
    std::map<FactorizationType, std::uint64_t> counts;
    std::uint64_t non_squarefree = 0;
    std::uint64_t degree_drop = 0;
    std::uint64_t total = 0;

    void record(const SpecializationOutcome& outcome);
    void merge(const ClassDistribution& other);
    std::uint64_t count(const FactorizationType& t) const;
    std::uint64_t typed() const noexcept { return total - non_squarefree - degree_drop; }
};

/// Classifies every a in S. The result does not depend on the thread count.
ClassDistribution empirical_distribution(const MultiPoly& f, const SetDescriptor& s, const StatsOptions& opts = {});

/// Probability that a uniform permutation of S_d has cycle type lambda.
Rational gamma_symmetric(unsigned d, const FactorizationType& lambda);

FactorizationType cycle_type(std::span<const unsigned> perm);

struct GroupElement {
    std::vector<unsigned> perm;  // 0-based one-line notation
    std::uint64_t label = 0;     // image under pi in Z/nu
};

/// The Galois group G <= S_d together with pi : G -> Z/nu. Frobenius of F_q is label 1.
class GroupSpec {
public:
    static GroupSpec symmetric(unsigned d);
    /// Validates permutations, identity, closure, and that labels form a homomorphism.
    static GroupSpec explicit_group(unsigned d, std::uint64_t nu, std::vector<GroupElement> elements);
    /// Cyclic group generated by the d-cycle (1 2 ... d), nu = 1.
    static GroupSpec cyclic(unsigned d);
    /// Header `d=<int> nu=<int>`, then `<images of 1..d> | <label>` per element.
    static GroupSpec parse(std::string_view text);
    static GroupSpec load(const std::string& path);

    bool is_symmetric() const noexcept { return symmetric_; }
    unsigned d() const noexcept { return d_; }
    std::uint64_t nu() const noexcept { return nu_; }
    const std::vector<GroupElement>& elements() const noexcept { return elements_; }
    std::string to_text() const;
    std::string describe() const;

private:
    unsigned d_ = 1;
    std::uint64_t nu_ = 1;
    bool symmetric_ = true;
    std::vector<GroupElement> elements_;
};

struct Prediction {
    std::map<FactorizationType, Rational> exact;

    double prob(const FactorizationType& t) const;
    Rational total() const;
};

/// prob(lambda) = nu * #{g : pi(g) = Frob, cycle type lambda} / |G|.
Prediction prediction_from_group(const GroupSpec& g);

struct TypeComparison {
    std::uint64_t count = 0;
    double frequency = 0.0;
    double prediction = 0.0;
    double deviation = 0.0;
};

struct ComparisonReport {
    ClassDistribution distribution;
    std::map<FactorizationType, TypeComparison> per_type;
    double non_squarefree_frequency = 0.0;
    double degree_drop_frequency = 0.0;
    double tv_distance = 0.0;
    IrregularityReport irreg;
    /// tv_distance / (q^{-1/2} irreg(S)).
    double normalized_error = 0.0;
};

/// Exceptional buckets have prediction 0 and count fully as deviation.
ComparisonReport compare_distribution(const ClassDistribution& dist, const Prediction& prediction,
                                      const IrregularityReport& irreg, std::uint64_t q);
ComparisonReport compare(const MultiPoly& f, const SetDescriptor& s, const GroupSpec& g, const StatsOptions& opts = {});

/// {a in F_q^n : F(t,a) is squarefree of full degree with type lambda}, in index order.
std::vector<std::vector<FieldElement>> type_locus(const MultiPoly& f, const FactorizationType& lambda,
                                                  const StatsOptions& opts = {});

struct CharsumResult {
    CyclotomicSum sum{2};
    double magnitude = 0.0;
    /// magnitude / q^{n - 1/2}
    double weil_ratio = 0.0;
};

/// Exact sum of psi(-a.b) over the type locus of lambda; b must be nonzero.
CharsumResult restricted_charsum(const MultiPoly& f, const FactorizationType& lambda, std::span<const FieldElement> b,
                                 const StatsOptions& opts = {});

struct WeilRow {
    std::uint64_t q = 0;
    std::string b;
    double magnitude = 0.0;
    double ratio = 0.0;
};

struct WeilSweep {
    std::vector<WeilRow> rows;
    double max_ratio = 0.0;
    double max_magnitude = 0.0;
};

/// Restricted sums for the listed frequencies, or for every b != 0 when `frequencies` is empty.
WeilSweep weil_sweep(const MultiPoly& f, const FactorizationType& lambda,
                     std::optional<std::vector<std::vector<FieldElement>>> frequencies, const StatsOptions& opts = {});
/// The same expression re-read over each F_p in `primes`, all b != 0.
WeilSweep weil_sweep_primes(std::string_view expr, std::size_t n, const FactorizationType& lambda,
                            std::span<const std::uint64_t> primes, const StatsOptions& opts = {});

double to_double(const Rational& r);

}  // namespace ffstat
