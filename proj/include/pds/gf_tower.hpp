#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pds {

/// Element of the top field F_{q^{2m}} in discrete-log representation.
/// Nonzero elements are alpha^dlog for the table's primitive root alpha;
/// ZERO is the additive identity and is the only element without a dlog.
struct FieldElem {
    static constexpr std::int64_t kZeroMark = -1;
    std::int64_t dlog = kZeroMark;

    constexpr bool is_zero() const { return dlog == kZeroMark; }
    friend constexpr bool operator==(const FieldElem&, const FieldElem&) = default;
};

inline constexpr FieldElem kZero{};

inline constexpr FieldElem elem_at_dlog(std::int64_t j) { return FieldElem{j}; }

/// Description of the tower F_p < F_q < F_{q^m} < F_{q^{2m}}, q = p^s.
/// All arithmetic lives in the top field of order p^d, d = 2*m*s; the
/// intermediate fields are subsets of it.
struct FieldSpec {
    std::int64_t p = 0;
    int s = 0;
    int m = 0;
    int d = 0;                          // 2*m*s
    std::vector<std::int64_t> modulus;  // monic primitive of degree d, constant term first

    std::int64_t q() const;       // p^s
    std::int64_t q_m() const;     // q^m
    std::int64_t q_2m() const;    // q^{2m} = p^d
};

/// Echelonized F_p-basis of one subfield, used for canonical indexing.
/// Rows are in reduced row echelon form over F_p, sorted by pivot column;
/// row i is the coordinate vector (monomial basis) of the i-th basis element.
struct SubfieldBasis {
    std::int64_t order = 0;   // p^c
    std::int64_t step = 0;    // (p^d - 1) / (order - 1); subfield units are alpha^{step*j}
    int dim = 0;              // c
    std::vector<std::vector<std::int64_t>> rows;
    std::vector<int> pivots;
};

/// Exact arithmetic for the whole tower: Zech-logarithm addition, dlog
/// multiplication, Frobenius, relative traces, subfield membership and
/// canonical integer encodings of additive-group elements.
///
/// Immutable after build_field returns; all operations are pure reads and
/// the table may be shared across threads without synchronization.
class FieldTable {
  public:
    const FieldSpec& spec() const { return spec_; }
    std::int64_t order() const { return order_; }        // p^d
    std::int64_t mult_order() const { return mult_; }    // p^d - 1

    FieldElem zero() const { return kZero; }
    FieldElem one() const { return FieldElem{0}; }
    FieldElem alpha(std::int64_t j = 1) const;           // alpha^j, j reduced mod p^d-1
    FieldElem omega() const;                             // alpha^{q^m+1}, generates F_{q^m}^*

    FieldElem add(FieldElem a, FieldElem b) const;
    FieldElem neg(FieldElem a) const;
    FieldElem sub(FieldElem a, FieldElem b) const;
    FieldElem mul(FieldElem a, FieldElem b) const;
    FieldElem inv(FieldElem a) const;                    // throws on ZERO
    FieldElem pow(FieldElem a, std::int64_t e) const;
    FieldElem frobenius(FieldElem a, int k) const;       // a^{p^k}, k >= 0

    /// Trace from the subfield of order `from` onto the subfield of order `to`:
    /// sum of a^{to^i} for 0 <= i < log_to(from). Requires a in the source field.
    FieldElem rel_trace(FieldElem a, std::int64_t from, std::int64_t to) const;

    /// Tr_{from/p}(a) read off as an integer in [0, p).
    std::int64_t prime_trace(FieldElem a, std::int64_t from) const;

    bool is_subfield_order(std::int64_t order) const;
    bool is_in_subfield(FieldElem a, std::int64_t order) const;

    /// Bijection subfield -> [0, order): coordinates of `a` in the echelonized
    /// F_p-basis of the subfield, read as a base-p integer. ZERO maps to 0.
    std::int64_t canonical_index(FieldElem a, std::int64_t order) const;
    /// Inverse of canonical_index.
    FieldElem element_at(std::int64_t index, std::int64_t order) const;

    const SubfieldBasis& basis(std::int64_t order) const;

    /// Coordinates of `a` over F_p in the monomial basis 1, x, ..., x^{d-1}.
    std::vector<std::int64_t> coords(FieldElem a) const;
    FieldElem from_coords(const std::vector<std::int64_t>& c) const;

  private:
    friend FieldTable build_field(std::int64_t, int, int,
                                  const std::optional<std::vector<std::int64_t>>&,
                                  std::int64_t);

    std::int64_t packed_of(FieldElem a) const;           // base-p packed monomial coords
    FieldElem from_packed(std::int64_t packed) const;

    FieldSpec spec_;
    std::int64_t order_ = 0;
    std::int64_t mult_ = 0;
    std::vector<std::int32_t> zech_;          // zech_[j] = dlog(1 + alpha^j), -1 when zero
    std::vector<std::int32_t> packed_;        // packed_[j] = packed coords of alpha^j
    std::vector<std::int32_t> dlog_by_packed_;
    std::vector<SubfieldBasis> bases_;        // one per divisor of d, ascending order
};

constexpr std::int64_t kDefaultSizeCap = std::int64_t(1) << 24;

/// Build the table for the tower with the given p, s, m. When no modulus is
/// supplied the lexicographically smallest monic primitive polynomial of
/// degree 2ms is selected (coefficients compared highest degree first), so
/// construction is reproducible. A supplied modulus must be monic, primitive
/// and of degree 2ms; irreducibility and primitivity failures are reported
/// distinctly.
FieldTable build_field(std::int64_t p, int s, int m,
                       const std::optional<std::vector<std::int64_t>>& modulus = std::nullopt,
                       std::int64_t size_cap = kDefaultSizeCap);

/// True if n is prime (trial division; inputs here are table-scale).
bool is_prime(std::int64_t n);

/// Writes q = p^s; false if q is not a prime power.
bool factor_prime_power(std::int64_t q, std::int64_t& p, int& s);

}  // namespace pds
