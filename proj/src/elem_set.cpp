#include "sumprod/elem_set.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sumprod {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view line = trim(text.substr(0, nl));
        ++line_no;
        fn(line, line_no);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
}

// "# field prime <p>" or "# field char0"; nullopt for other lines.
std::optional<GroundField> header_field(std::string_view line) {
    if (!line.starts_with('#')) return std::nullopt;
    std::istringstream in{std::string(line.substr(1))};
    std::string key, kind, modulus;
    in >> key >> kind;
    if (key != "field") return std::nullopt;
    if (kind == "char0") return GroundField::char_zero();
    if (kind == "prime" && (in >> modulus)) return GroundField::parse("prime:" + modulus);
    throw std::invalid_argument("malformed field header: " + std::string(line));
}

}  // namespace

ElemSet::ElemSet(GroundField field, std::vector<Elem> elems) : field_(field), elems_(std::move(elems)) {
    for (auto& e : elems_) e = field_.canonical(e);
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

ElemSet ElemSet::of(GroundField field, std::initializer_list<long long> values) {
    return of(field, std::span<const long long>(values.begin(), values.size()));
}

ElemSet ElemSet::of(GroundField field, std::span<const long long> values) {
    std::vector<Elem> elems;
    elems.reserve(values.size());
    for (long long v : values) elems.push_back(field.from_int(v));
    return ElemSet(field, std::move(elems));
}

ElemSet adopt_sorted(GroundField field, std::vector<Elem> elems) {
    return ElemSet(field, std::move(elems), ElemSet::Sorted{});
}

bool ElemSet::contains(const Elem& e) const noexcept { return std::binary_search(elems_.begin(), elems_.end(), e); }

std::optional<std::size_t> ElemSet::index_of(const Elem& e) const noexcept {
    const auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
    if (it == elems_.end() || !(*it == e)) return std::nullopt;
    return static_cast<std::size_t>(it - elems_.begin());
}

bool ElemSet::is_subset_of(const ElemSet& other) const {
    return field_ == other.field_ && std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

ElemSet ElemSet::without_zero() const {
    std::vector<Elem> out;
    out.reserve(elems_.size());
    for (const auto& e : elems_)
        if (e.num != 0) out.push_back(e);
    return adopt_sorted(field_, std::move(out));
}

ParsedSet parse_set(std::string_view text, const GroundField& field) {
    std::vector<Elem> elems;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        if (line.empty() || line.starts_with('#')) return;
        try {
            elems.push_back(field.parse_elem(line));
        } catch (const std::exception& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    });
    const std::size_t raw = elems.size();
    ElemSet set(field, std::move(elems));
    const std::size_t duplicates = raw - set.size();
    return ParsedSet{std::move(set), duplicates};
}

ParsedSet parse_set_file(std::string_view text, std::optional<GroundField> field_override) {
    std::optional<GroundField> declared;
    for_each_line(text, [&](std::string_view line, std::size_t) {
        if (declared) return;
        declared = header_field(line);
    });
    if (declared && field_override && !(*declared == *field_override))
        throw std::invalid_argument("set file declares " + declared->name() + " but " + field_override->name() +
                                    " was requested");
    const GroundField field = declared ? *declared : field_override.value_or(GroundField::char_zero());
    return parse_set(text, field);
}

std::string render_set(const ElemSet& set) {
    std::string out;
    const auto& f = set.field();
    out += f.is_prime() ? "# field prime " + std::to_string(f.modulus()) + "\n" : "# field char0\n";
    for (const auto& e : set) {
        out += f.format(e);
        out += '\n';
    }
    return out;
}

ParsedSet read_set_file(const std::string& path, std::optional<GroundField> field_override) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open set file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_set_file(buf.str(), field_override);
}

void write_set_file(const std::string& path, const ElemSet& set) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write set file " + path);
    out << render_set(set);
}

}  // namespace sumprod
