#pragma once

#include "sumprod/budget.hpp"
#include "sumprod/elem_set.hpp"
#include "sumprod/families.hpp"
#include "sumprod/regularize.hpp"
#include "sumprod/report.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace sumprod {

struct VerifyConfig {
    /// K = slack_c · log2³|A| for the "≲" conclusions.
    double slack_c = 64;
    double kmps_ceiling = 16;
    double sdz_ceiling = 16;
    double main_floor = 0.25;
    Budget budget;
    PopularityParams popularity;
    /// popular-sums (false) or popular-differences (true) refinement in the
    /// proposition pipeline.
    bool popular_differences = false;
};

/// |kA - lA| <= |A+A|^{k+l} / |A|^{k+l-1}, compared exactly.
VerificationReport check_pluennecke(const ElemSet& a, unsigned k, unsigned l, const Budget& budget = Budget{});

/// Collisions of x(y+z) against (|X||Y||Z|)^{3/2} + max{|X|, min{|Y|,|Z|}}|X||Y||Z|.
/// In prime mode |X||Y||Z| <= p²/4 is required, else constraint-failed.
VerificationReport check_kmps(const ElemSet& x, const ElemSet& y, const ElemSet& z, const VerifyConfig& cfg = {});

/// Solutions of c = ab + d against (|A||B||C|)^{3/4}|D|^{1/2} + |A||D| + |B||C|,
/// requiring |A||B||C||D|² <= p⁴/16 in prime mode.
VerificationReport check_sdz(const ElemSet& a, const ElemSet& b, const ElemSet& c, const ElemSet& d,
                             const VerifyConfig& cfg = {});

enum class MixedVariant { e4add_e2mul, e4mul_e2add, e4mul_e4add, e4add_e4mul };
std::string_view mixed_name(MixedVariant v) noexcept;
MixedVariant parse_mixed(std::string_view text);

/// Regularizes A (0 removed) and checks the mixed energy product against
/// |A|^7|U|^3 (E2 variants) or |A|^7|U|^2 (E4 variants) within K.
VerificationReport check_mixed_energy(const ElemSet& a, const ElemSet& u, MixedVariant variant,
                                      const VerifyConfig& cfg = {});

struct RssReports {
    /// Clause (a): |D| t ⌈θ|B|⌉² <= tautological count over pairs in C².
    VerificationReport count;
    /// Clause (b): E_{4/3}(B)³ <= K |A∘A|^8 E_4(A)² E_4(A,E) μ⁴ν⁴ / |A|^24.
    VerificationReport inequality;
    /// The E and F sets of this variant, for p_constraint_check.
    std::optional<ElemSet> e_set;
    std::optional<ElemSet> f_set;
};

/// The popular-sums pipeline for the additive variant (multiplicative swaps
/// every operation). Throws std::invalid_argument for |A| < 16.
RssReports check_rss_proposition(const ElemSet& a, bool multiplicative, const VerifyConfig& cfg = {});

struct ConstraintAux {
    std::optional<ElemSet> e1, e2, f1, f2;
};

/// Constraints (i)-(iv) for the aux sets supplied, plus the two sufficient
/// conditions in terms of |A+A| and |AA|. "≪" is 4·product <= budget. In
/// characteristic zero every check passes with budget 0.
std::vector<ConstraintCheck> p_constraint_check(const ElemSet& a, const ConstraintAux& aux,
                                                const Budget& budget = Budget{});

/// One set of the main-theorem probe: n^{5/4} <= (1/floor)·min over the four
/// operator pairs of max{|A±A|, |A∗A|}. Skipped when 4|A|² > p.
VerificationReport main_probe(const ElemSet& a, double floor = 0.25);

struct ProbeSweep {
    GroundField field = GroundField::prime(2147483647);
    std::vector<FamilyKind> families{FamilyKind::ap, FamilyKind::gp, FamilyKind::random, FamilyKind::subgroup};
    std::vector<std::uint64_t> sizes{16, 64, 256, 1024};
    std::uint64_t seed = 1;
    double floor = 0.25;
};

/// The family spec the sweeps use for (kind, n): gp ratio 7 in prime mode,
/// the largest subgroup of order <= n.
FamilySpec sweep_family(FamilyKind kind, std::uint64_t n, const GroundField& field, std::uint64_t seed);

struct ProbeSummary {
    VerificationReport summary;
    std::vector<VerificationReport> cells;
};

ProbeSummary main_theorem_probe(const ProbeSweep& sweep);

}  // namespace sumprod
