#pragma once

#include "sumprod/field.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sumprod {

/// A finite subset of a ground field: sorted, duplicate-free, canonical.
class ElemSet {
public:
    explicit ElemSet(GroundField field = GroundField::char_zero()) : field_(field) {}
    /// Canonicalizes, sorts and deduplicates `elems`.
    ElemSet(GroundField field, std::vector<Elem> elems);

    static ElemSet of(GroundField field, std::initializer_list<long long> values);
    static ElemSet of(GroundField field, std::span<const long long> values);

    const GroundField& field() const noexcept { return field_; }
    std::span<const Elem> elems() const noexcept { return elems_; }
    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    const Elem& operator[](std::size_t i) const { return elems_[i]; }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }
    const Elem& min() const { return elems_.front(); }
    const Elem& max() const { return elems_.back(); }

    bool contains(const Elem& e) const noexcept;
    std::optional<std::size_t> index_of(const Elem& e) const noexcept;
    bool is_subset_of(const ElemSet& other) const;

    ElemSet without_zero() const;
    bool contains_zero() const noexcept { return contains(field_.zero()); }

    friend bool operator==(const ElemSet&, const ElemSet&) = default;

private:
    struct Sorted {};
    ElemSet(GroundField field, std::vector<Elem> elems, Sorted) : field_(field), elems_(std::move(elems)) {}
    friend ElemSet adopt_sorted(GroundField field, std::vector<Elem> elems);

    GroundField field_;
    std::vector<Elem> elems_;
};

/// Wraps elements the caller guarantees are canonical, strictly increasing.
ElemSet adopt_sorted(GroundField field, std::vector<Elem> elems);

struct ParsedSet {
    ElemSet set;
    std::size_t duplicates = 0;
};

/// One element per line. Blank lines and lines starting with '#' are skipped.
/// Throws std::invalid_argument on a malformed token.
ParsedSet parse_set(std::string_view text, const GroundField& field);

/// Reads a set file. The optional "# field prime <p>" / "# field char0"
/// header selects the field; `field_override` must agree with it if both
/// are present. Without either, characteristic zero is assumed.
ParsedSet parse_set_file(std::string_view text, std::optional<GroundField> field_override = {});

/// Header line followed by one element per line.
std::string render_set(const ElemSet& set);

ParsedSet read_set_file(const std::string& path, std::optional<GroundField> field_override = {});
void write_set_file(const std::string& path, const ElemSet& set);

}  // namespace sumprod
