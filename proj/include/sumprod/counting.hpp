#pragma once

#include "sumprod/big_count.hpp"
#include "sumprod/budget.hpp"
#include "sumprod/elem_set.hpp"
#include "sumprod/op.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace sumprod {

struct CountReport {
    std::string equation;  ///< kmps, sdz, taut, energy
    std::vector<std::uint64_t> sizes;
    BigCount count = 0;
    double elapsed_ms = 0;
};

void to_json(nlohmann::json& j, const CountReport& r);

/// |{(x1,x2,y1,y2,z1,z2) : x1(y1+z1) = x2(y2+z2)}| = Σ_v m(v)², m the
/// multiplicity of x(y+z) over X×Y×Z. Inputs must avoid 0; |X||Y+Z| value
/// insertions are charged to budget.table_insertions.
BigCount f_collision_count(const ElemSet& x, const ElemSet& y, const ElemSet& z, const Budget& budget = Budget{});

/// |{(a,b,c,d) ∈ A×B×C×D : c = ab + d}| = Σ_v m_{AB}(v) r_{C-D}(v).
BigCount bilinear_count(const ElemSet& a, const ElemSet& b, const ElemSet& c, const ElemSet& d,
                        const Budget& budget = Budget{});

/// Σ over (a,b) ∈ pairs² with a⊖b ∈ D of g(a,b)², where
/// g(a,b) = |{c ∈ witnesses : a∘c ∈ P and b∘c ∈ P}|; ∘ is + (group add) or ·
/// (group mul) and ⊖ its inverse.
BigCount tautological_count(const ElemSet& pairs, const ElemSet& witnesses, const ElemSet& d, const ElemSet& p,
                            Op group);

/// |{(a,b,c,d) ∈ B⁴ : a-b ∈ D; a+c, b+c, a+d, b+d ∈ P}|.
inline BigCount tautological_count(const ElemSet& b, const ElemSet& d, const ElemSet& p) {
    return tautological_count(b, b, d, p, Op::add);
}

/// Brute-force E_k(A) for k ∈ {2, 4} straight from the defining equation
/// a + b' = a' + b (a·b' = a'·b with b, b' ≠ 0 for mul). O(|A|⁴); refuses
/// |A| > budget.oracle_size.
BigCount count_energy_equiv(const ElemSet& a, Op op, int k, const Budget& budget = Budget{});

}  // namespace sumprod
