#pragma once

#include "sumprod/elem_set.hpp"
#include "sumprod/op.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sumprod {

/// r_{A∘B}: exact multiplicity of every value of a ∘ b.
class RepFn {
public:
    struct Entry {
        Elem value;
        std::uint64_t count;
    };

    const GroundField& field() const noexcept { return field_; }
    Op op() const noexcept { return op_; }
    std::size_t lhs_size() const noexcept { return lhs_size_; }
    std::size_t rhs_size() const noexcept { return rhs_size_; }
    /// Pairs dropped because the denominator was zero (div only).
    std::uint64_t excluded() const noexcept { return excluded_; }

    std::span<const Entry> entries() const noexcept { return entries_; }
    std::size_t support_size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::uint64_t mass() const noexcept;
    std::uint64_t max_multiplicity() const noexcept;
    /// r(x); zero off the support.
    std::uint64_t at(const Elem& x) const noexcept;
    ElemSet support() const;

private:
    friend RepFn rep_function(const ElemSet&, const ElemSet&, Op);
    GroundField field_;
    Op op_ = Op::add;
    std::size_t lhs_size_ = 0;
    std::size_t rhs_size_ = 0;
    std::uint64_t excluded_ = 0;
    std::vector<Entry> entries_;
};

RepFn rep_function(const ElemSet& a, const ElemSet& b, Op op);

}  // namespace sumprod
