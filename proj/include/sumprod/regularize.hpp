#pragma once

#include "sumprod/big_count.hpp"
#include "sumprod/elem_set.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/op.hpp"
#include "sumprod/report.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace sumprod {

/// An exact nonnegative rational num/den used for thresholds, so membership
/// tests never round.
struct Ratio {
    BigCount num = 0;
    BigCount den = 1;

    /// The exact binary value of x (a dyadic rational). x must be finite and >= 0.
    static Ratio from_double(double x);
    /// "p/q", an integer, or a decimal such as "0.25".
    static Ratio parse(std::string_view text);
    double to_double() const;
    std::string str() const;
    /// 0 < r < 1
    bool in_open_unit() const { return num > 0 && num < den; }
};

struct PopularityParams {
    Ratio epsilon{1, 2};
    Ratio theta{2, 3};
    Ratio c1{1, 2};
    /// regu_iterate stops at the first candidate X with E_s(R(X)) >= target·E_s(X).
    double drop_target = 0.5;

    /// Throws std::invalid_argument unless every parameter lies in (0,1).
    void validate() const;
};

/// {x ∈ A∘A : r_{A∘A}(x)·|A∘A| >= ε|A|²}. P_A for op = add; the popular
/// differences, products and ratios for sub, mul, div.
ElemSet popular_set(const ElemSet& a, const Ratio& epsilon, Op op);
inline ElemSet popular_sums(const ElemSet& a, const Ratio& epsilon) { return popular_set(a, epsilon, Op::add); }

/// |{b ∈ A : a∘b ∈ P}| for every a ∈ A, in the order of A.
std::vector<std::uint64_t> good_partner_counts(const ElemSet& a, const ElemSet& popular, Op op);

/// R_ε(A) = {a ∈ A : |{b ∈ A : a∘b ∈ P_A}| >= θ|A|}.
ElemSet popularity_rule(const ElemSet& a, const Ratio& epsilon, const Ratio& theta = Ratio{2, 3}, Op op = Op::add);

struct ReguRound {
    std::uint64_t candidate_size = 0;
    std::uint64_t refined_size = 0;
    double energy = 0;
    double refined_energy = 0;
    double ratio = 0;
};

struct ReguCertificate {
    double s = 4.0 / 3.0;
    Op rule = Op::add;
    Ratio epsilon;
    double c1 = 0.5;
    std::uint64_t input_size = 0;
    std::uint64_t size = 0;            ///< |B|
    std::uint64_t refined_size = 0;    ///< |R_ε(B)|
    double c2 = 0;                     ///< E_s(R_ε(B)) / E_s(B)
    std::size_t chosen_round = 0;
    bool reached_target = false;
    std::vector<ReguRound> rounds;

    /// |B| >= (1 - c1)|A| and c2 > 0.
    bool holds() const;
};

struct ReguResult {
    ElemSet b;
    ElemSet refined;  ///< C = R_ε(B)
    ElemSet popular;  ///< P_B, the popular set defining C
    ReguCertificate certificate;
};

/// ε = c1 / ln|A| (the epsilon in params is ignored). Rounds replace the
/// candidate X by R_ε(X) while E_s(R_ε(X)) < target·E_s(X), for at most
/// ⌈ln|A|⌉ rounds, never leaving |X| >= (1 - c1)|A|; otherwise the
/// best-ratio candidate seen is returned. `rule` is the op of the popular set
/// (add: popular sums, sub: popular differences, mul/div for the
/// multiplicative analogue). Throws std::invalid_argument for |A| < 16.
ReguResult regu_iterate(const ElemSet& a, double s, const PopularityParams& params, Op rule = Op::add);

struct RegularDecomposition {
    Op op = Op::add;
    double k = 4;
    ElemSet b;
    ElemSet c;
    ElemSet s_tau;
    std::uint64_t tau = 1;
    std::uint64_t source_size = 0;  ///< |A| after removing 0 in mul mode
    double energy_ratio = 0;        ///< E_k(B) / (|S_τ|τ^k)
    double min_shift_ratio = 0;     ///< min over C of r_{S_τ∘B}(c)|A| / (|S_τ|τ)
    double max_shift_ratio = 0;
    std::size_t rounds = 0;
    bool degenerate = false;
};

/// r_{S∘B}(c) for each c in `targets`, where ∘ is + or ·.
std::vector<std::uint64_t> shifted_counts(const ElemSet& s, const ElemSet& b, const ElemSet& targets, Op group);

/// The regular decomposition C ⊆ B ⊆ A with level set S_τ of B-B (B/B).
/// |A| < 4 gives the degenerate decomposition B = C = A, S_τ = {identity},
/// τ = |A|. Throws std::invalid_argument if A (minus 0 in mul mode) is empty.
RegularDecomposition xue_regularize(const ElemSet& a, double k, Op op);

/// Default slack 64·log2³|A|, at least 1.
double default_slack(std::uint64_t n, double c = 64);

/// Recomputes every quantity from d and A. Throws std::invalid_argument when
/// C ⊆ B ⊆ A fails.
VerificationReport check_regular(const RegularDecomposition& d, const ElemSet& a, double k, double slack);

}  // namespace sumprod
