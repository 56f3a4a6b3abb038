#pragma once

#include "sumprod/elem_set.hpp"
#include "sumprod/op.hpp"

#include <cstdint>
#include <functional>

namespace sumprod {

struct PairTally {
    std::uint64_t pairs = 0;     ///< pairs that produced a value
    std::uint64_t excluded = 0;  ///< div pairs dropped for a zero denominator
};

using ValueCountSink = std::function<void(const Elem& value, std::uint64_t count)>;
using CountSink = std::function<void(std::uint64_t count)>;

/// Visits every distinct value of a ∘ b (a ∈ A, b ∈ B) once, with its
/// multiplicity, in increasing canonical order.
///
/// Large inputs are streamed in value-range chunks with periodic
/// sort-and-merge deduplication, so peak memory tracks the number of
/// distinct values per chunk rather than |A||B|. Throws on field mismatch.
PairTally stream_multiplicities(const ElemSet& a, const ElemSet& b, Op op, const ValueCountSink& sink);

/// Same traversal, reporting multiplicities only.
PairTally stream_counts(const ElemSet& a, const ElemSet& b, Op op, const CountSink& sink);

/// Requires a and b to share a field.
void require_same_field(const ElemSet& a, const ElemSet& b);

}  // namespace sumprod
