#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pds/cyclotomy.hpp"
#include "pds/gf_tower.hpp"

namespace pds {

/// Full parameter record for a putative (v, k, lambda, mu) partial difference
/// set, together with everything its spectrum determines.
///
/// disc = (mu - lambda)^2 + 4(k - mu) is the discriminant of the character
/// equation; theta_pos/theta_neg are its roots when they are integers
/// (integral_spectrum true), in which case f and g are the forced eigenvalue
/// multiplicities. k2_ok records whether k^2 = mu*v + (lambda - mu)*k + (k - mu)
/// holds — a counting identity every regular PDS satisfies, so its failure
/// proves no such set exists.
struct ParamSet {
    std::int64_t v = 0, k = 0, lambda = 0, mu = 0;
    std::int64_t disc = 0;
    bool k2_ok = false;
    bool integral_spectrum = false;
    std::int64_t theta_pos = 0, theta_neg = 0;  // valid when integral_spectrum
    std::int64_t f = 0, g = 0;                  // multiplicities, when integral
    bool multiplicities_ok = false;             // f, g nonnegative integers
};

ParamSet derive_params(std::int64_t v, std::int64_t k, std::int64_t lambda, std::int64_t mu);

/// Largest group order a PdsSet will materialize a dense indicator for.
constexpr std::int64_t kGroupOrderCap = std::int64_t(1) << 28;

/// The ambient abelian group of a set: either the product
/// F_{q^m} x F_{q^{2m}} (additive) or a single subfield (additive).
struct GroupDesc {
    enum class Kind { product, single };
    Kind kind = Kind::product;
    std::int64_t sub_order = 0;  // single only: the subfield order

    std::int64_t group_order(const FieldTable& tab) const;
    std::string to_string() const;
};

/// One group element; `y` is unused (ZERO) for single-field groups.
struct GroupElem {
    FieldElem x, y;
    friend constexpr bool operator==(const GroupElem&, const GroupElem&) = default;
};

/// A candidate partial difference set: explicit members, a dense indicator
/// over canonical group indices, and the parameters it claims to realize.
/// Non-owning view onto the FieldTable that produced it.
class PdsSet {
  public:
    PdsSet(const FieldTable& tab, GroupDesc group, std::vector<GroupElem> members,
           ParamSet claimed, std::string family);

    /// Rebuild a set from exported canonical indices.
    static PdsSet from_indices(const FieldTable& tab, GroupDesc group,
                               const std::vector<std::int64_t>& indices, ParamSet claimed,
                               std::string family);

    const FieldTable& table() const { return *tab_; }
    const GroupDesc& group() const { return group_; }
    const std::vector<GroupElem>& members() const { return members_; }  // sorted by index
    const ParamSet& claimed() const { return claimed_; }
    const std::string& family() const { return family_; }

    /// Construction provenance carried for exports: the subspace dimension and
    /// basis dlogs when the set came from the product construction.
    int r() const { return r_; }
    const std::vector<std::int64_t>& subspace_dlogs() const { return subspace_dlogs_; }
    void set_provenance(int r, std::vector<std::int64_t> dlogs) {
        r_ = r;
        subspace_dlogs_ = std::move(dlogs);
    }

    std::int64_t v() const { return std::int64_t(indicator_.size()); }
    std::int64_t size() const { return std::int64_t(members_.size()); }

    std::int64_t index_of(const GroupElem& g) const;
    GroupElem element_at(std::int64_t index) const;
    bool contains_index(std::int64_t index) const { return indicator_[std::size_t(index)] != 0; }
    const std::vector<std::uint8_t>& indicator() const { return indicator_; }

    /// Copy with membership of one group element flipped (test fixtures).
    PdsSet toggled(std::int64_t index) const;

  private:
    const FieldTable* tab_;
    GroupDesc group_;
    std::vector<GroupElem> members_;
    std::vector<std::uint8_t> indicator_;
    ParamSet claimed_;
    std::string family_;
    int r_ = -1;
    std::vector<std::int64_t> subspace_dlogs_;
};

/// Parameters the product construction targets for given (q, m, r):
///   v = q^{3m},  k = (q^{m+r} - q^m + q^r)(q^m - 1),
///   lambda = q^m - q^r + k1*(q^r - 2),  mu = k1*(q^r - 1),  k1 = k/(q^m - 1).
ParamSet expected_params(std::int64_t q, int m, int r);

/// The two character values the construction must realize away from the
/// principal character: (q^m - q^r, q^m - q^r - q^{m+r}).
std::pair<std::int64_t, std::int64_t> expected_char_values(std::int64_t q, int m, int r);

/// The product-group set: the union over i of C_i x (classes shifted through
/// the index set of R), completed by the horizontal line F_{q^m}^* x {0}.
PdsSet build_denniston(const FieldTable& tab, int r, const SubspaceR& sub);

/// Parameters of a projective (n, h1, h2)-set construction in PG(2, q) scaled
/// into mdim-space: v = q^{mdim}, k = n(q - 1); lambda/mu from the two
/// intersection numbers. Provided for parameter exploration; k2_ok flags
/// whether the demanded parameters are arithmetically consistent at all.
ParamSet projective_set_params(std::int64_t n, std::int64_t h1, std::int64_t h2,
                               std::int64_t q, int mdim = 3);

/// Paley set in the base field F_q, q = p^s == 1 (mod 4): the nonzero squares,
/// claiming ((q-1)/2, (q-5)/4, (q-1)/4).
PdsSet paley_pds(const FieldTable& tab);

/// The nonzero quadric solutions as a set in (F_{q^{2m}}, +), claiming the
/// elliptic-quadric parameter family.
PdsSet quadric_pds(const FieldTable& tab);

}  // namespace pds
