#pragma once

#include "sumprod/big_count.hpp"
#include "sumprod/elem_set.hpp"
#include "sumprod/op.hpp"
#include "sumprod/rep_fn.hpp"
#include "sumprod/report.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sumprod {

/// Count of counts: how many values have each multiplicity. E_k depends on a
/// representation function only through this.
struct MultiplicityHistogram {
    /// values_with[c] = |{x : r(x) = c}|; index 0 unused.
    std::vector<std::uint64_t> values_with;
    std::uint64_t support = 0;
    std::uint64_t mass = 0;
    std::uint64_t excluded = 0;

    void add(std::uint64_t count);
    std::uint64_t max_multiplicity() const noexcept;
};

MultiplicityHistogram multiplicity_histogram(const ElemSet& a, const ElemSet& b, Op op);
MultiplicityHistogram multiplicity_histogram(const RepFn& r);

/// E_k or E_k^× with its numeric pedigree.
struct Moment {
    double k = 2;
    Op op = Op::add;  ///< add or mul
    std::optional<BigCount> exact;  ///< present exactly when k is a positive integer
    double value = 0;
    /// Relative error bound of `value`; 0 for exact moments.
    double rel_error = 0;
    std::uint64_t support = 0;
};

bool is_integer_exponent(double k) noexcept;

/// Σ_c values_with[c]·c^k, summed in descending c for fractional k.
Moment moment_of(const MultiplicityHistogram& h, double k, Op op);

/// E_k(A,B) = Σ_x r_{A-B}(x)^k for op = add, Σ_x r_{A/B}(x)^k for op = mul.
/// Any k > 0 is accepted. Throws std::invalid_argument on k <= 0, an empty
/// operand, or an op other than add/mul.
Moment energy(const ElemSet& a, const ElemSet& b, double k, Op op);

/// Dyadic pigeonhole slice: D = {x : r(x) ∈ [t, 2t)}, t = 2^bucket.
struct DyadicSlice {
    ElemSet support;
    std::uint64_t level = 1;
    unsigned bucket = 0;
    double k = 2;
    double product = 0;  ///< |D| t^k
    std::uint64_t max_multiplicity = 1;
    std::uint64_t bucket_bound = 1;  ///< ceil(log2 M) + 1
    Moment energy;

    /// bucket_bound·|D|·t^k >= E_k, exact for integer k.
    bool certificate_holds() const;
    /// bucket_bound·2^k·|D|·t^k >= E_k. Always true: each bucket's mass is
    /// below |D_i|(2t_i)^k.
    bool scaled_certificate_holds() const;

    DyadicRecord record(std::string name) const;
};

/// Index of the bucket maximizing |D_i|·2^{ik}, ties toward larger i.
unsigned dominant_bucket(const MultiplicityHistogram& h, double k);

/// Throws std::invalid_argument on an empty representation function.
DyadicSlice dyadic_extract(const RepFn& r, double k);

/// Streaming variant over r_{A∘B}: two passes, memory proportional to the
/// chosen bucket only.
DyadicSlice dyadic_extract(const ElemSet& a, const ElemSet& b, Op op, double k);

/// |A|^4 <= E(A)|A+A| (add) or |A'|^4 <= E^×(A')|A'A'| with A' = A \ {0} (mul).
VerificationReport cauchy_schwarz_check(const ElemSet& a, Op op);

}  // namespace sumprod
