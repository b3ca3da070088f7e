#pragma once

#include <cstdint>
#include <vector>

#include "pds/gf_tower.hpp"

namespace pds {

/// Names the cyclotomic class C_i of index N inside the multiplicative group
/// of the subfield of the given order: the coset gamma^i <gamma^N> for gamma
/// the generator of that subfield's units.
struct CycIndex {
    std::int64_t modulus = 0;  // N
    std::int64_t i = 0;        // class index in [0, N)
    std::int64_t ambient = 0;  // subfield order, q^m or q^{2m}
};

/// Subset of Z/N recorded as a sorted member list with O(1) membership.
struct IndexSet {
    std::int64_t modulus = 0;
    std::vector<std::int64_t> members;      // sorted, unique, in [0, modulus)
    std::vector<std::uint8_t> mask;         // mask[i] != 0 iff i is a member

    static IndexSet of(std::int64_t modulus, std::vector<std::int64_t> members);
    bool contains(std::int64_t i) const;
};

/// An F_q-subspace of F_{q^m} given by an independent basis.
struct SubspaceR {
    std::vector<FieldElem> basis;  // F_q-linearly independent elements of F_{q^m}
    int r() const { return int(basis.size()); }
};

/// N = (q^m - 1) / (q - 1), the index of both cyclotomic class families.
std::int64_t denniston_modulus(const FieldTable& tab);

/// All members of the class, sorted by dlog.
std::vector<FieldElem> class_members(const FieldTable& tab, const CycIndex& c);

/// I = { i in [0, N) : Tr_{q^m/q}(omega^i) = 0 }, omega = alpha^{q^m+1}.
/// Well defined because the trace of omega^i scales by q-th powers within a class.
IndexSet trace_zero_index_set(const FieldTable& tab);

/// The span of `sub` (q^r elements, ZERO included), sorted by dlog with ZERO first.
std::vector<FieldElem> subspace_span(const FieldTable& tab, const SubspaceR& sub);

/// Deterministic default choice: scan 1, omega, omega^2, ... greedily keeping
/// each power that extends the independent set, until r basis elements are
/// found. Since omega is primitive for F_{q^m} this yields 1, ..., omega^{r-1}.
SubspaceR default_subspace(const FieldTable& tab, int r);

/// Reproducible random r-dimensional F_q-subspace of F_{q^m} drawn from the seed.
SubspaceR random_subspace(const FieldTable& tab, int r, std::uint64_t seed);

/// Build a subspace from explicit dlogs of basis elements; validates
/// membership in F_{q^m} and F_q-linear independence.
SubspaceR subspace_from_dlogs(const FieldTable& tab, const std::vector<std::int64_t>& dlogs);

/// T = { t in [0, N) : omega^t in span(sub) }; one t per nonzero class
/// intersected, |T| = (q^r - 1)/(q - 1) for an r-dimensional subspace.
IndexSet subspace_index_set(const FieldTable& tab, const SubspaceR& sub);

/// |(T + u) mod N  intersect  I| for a shift u of the class indices.
std::int64_t intersection_profile(const FieldTable& tab, const IndexSet& T,
                                  const IndexSet& I, std::int64_t u);

}  // namespace pds
