#include "pds/gf_tower.hpp"

#include <algorithm>
#include <stdexcept>

namespace pds {

namespace {

// --- F_p[x] helpers used only while validating/searching the modulus. ---
// Polynomials are coefficient vectors, constant term first, no trailing zeros.

using Poly = std::vector<std::int64_t>;

std::int64_t mod_p(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a * b mod f, with f monic of degree d.
Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f, std::int64_t p) {
    const std::size_t d = f.size() - 1;
    std::vector<std::int64_t> prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    for (std::size_t i = prod.size(); i-- > d;) {
        if (prod[i] == 0) continue;
        const std::int64_t c = prod[i];
        prod[i] = 0;
        for (std::size_t j = 0; j < d; ++j)
            prod[i - d + j] = mod_p(prod[i - d + j] - c * f[j], p);
    }
    prod.resize(d);
    Poly r(prod.begin(), prod.end());
    trim(r);
    return r;
}

// x^e mod f by square-and-multiply.
Poly poly_pow_x(std::int64_t e, const Poly& f, std::int64_t p) {
    Poly result{1};
    Poly base{0, 1};
    while (e > 0) {
        if (e & 1) result = poly_mul_mod(result, base, f, p);
        base = poly_mul_mod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

Poly poly_pow_mod(Poly base, std::int64_t e, const Poly& f, std::int64_t p) {
    Poly result{1};
    while (e > 0) {
        if (e & 1) result = poly_mul_mod(result, base, f, p);
        base = poly_mul_mod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

Poly poly_sub(Poly a, const Poly& b, std::int64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod_p(a[i] - b[i], p);
    trim(a);
    return a;
}

Poly poly_rem(Poly a, const Poly& b, std::int64_t p) {
    // b nonzero; divide with inverse of its leading coefficient.
    std::int64_t lead_inv = 1;
    for (std::int64_t t = 1; t < p; ++t)
        if (t * b.back() % p == 1) { lead_inv = t; break; }
    while (a.size() >= b.size() && !a.empty()) {
        const std::int64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = mod_p(a[shift + i] - c * b[i], p);
        trim(a);
        if (a.size() < b.size()) break;
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_irreducible(const Poly& f, std::int64_t p) {
    const int d = int(f.size()) - 1;
    // x^{p^i} mod f for i = 1..d by successive p-th powers.
    std::vector<Poly> xp(d + 1);
    xp[0] = Poly{0, 1};
    for (int i = 1; i <= d; ++i) xp[i] = poly_pow_mod(xp[i - 1], p, f, p);
    if (poly_sub(xp[d], Poly{0, 1}, p) != Poly{}) return false;
    for (std::int64_t e : prime_factors(d)) {
        Poly diff = poly_sub(xp[d / e], Poly{0, 1}, p);
        Poly g = poly_gcd(f, diff, p);
        if (int(g.size()) - 1 != 0) return false;
    }
    return true;
}

// Assumes f irreducible of degree d: checks that x generates the unit group.
bool is_primitive_root_x(const Poly& f, std::int64_t p, std::int64_t group_order) {
    for (std::int64_t ell : prime_factors(group_order)) {
        Poly r = poly_pow_x(group_order / ell, f, p);
        if (r == Poly{1}) return false;
    }
    return true;
}

std::int64_t checked_pow(std::int64_t base, int e, std::int64_t cap) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > cap / base) return -1;
        r *= base;
    }
    return r;
}

}  // namespace

std::int64_t FieldSpec::q() const {
    std::int64_t r = 1;
    for (int i = 0; i < s; ++i) r *= p;
    return r;
}

std::int64_t FieldSpec::q_m() const {
    std::int64_t r = 1;
    for (int i = 0; i < m * s; ++i) r *= p;
    return r;
}

std::int64_t FieldSpec::q_2m() const {
    std::int64_t r = 1;
    for (int i = 0; i < d; ++i) r *= p;
    return r;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

bool factor_prime_power(std::int64_t q, std::int64_t& p, int& s) {
    if (q < 2) return false;
    std::int64_t base = q;
    for (std::int64_t f = 2; f * f <= q; ++f) {
        if (q % f == 0) { base = f; break; }
    }
    std::int64_t r = q;
    s = 0;
    while (r % base == 0) { r /= base; ++s; }
    if (r != 1) return false;
    p = base;
    return true;
}

FieldElem FieldTable::alpha(std::int64_t j) const {
    j %= mult_;
    if (j < 0) j += mult_;
    return FieldElem{j};
}

FieldElem FieldTable::omega() const { return alpha(spec_.q_m() + 1); }

FieldElem FieldTable::add(FieldElem a, FieldElem b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // 1 + alpha^j via the Zech table: alpha^a + alpha^b = alpha^a (1 + alpha^{b-a}).
    std::int64_t diff = b.dlog - a.dlog;
    if (diff < 0) diff += mult_;
    const std::int32_t z = zech_[std::size_t(diff)];
    if (z < 0) return kZero;
    std::int64_t r = a.dlog + z;
    if (r >= mult_) r -= mult_;
    return FieldElem{r};
}

FieldElem FieldTable::neg(FieldElem a) const {
    if (a.is_zero() || spec_.p == 2) return a;
    std::int64_t r = a.dlog + mult_ / 2;
    if (r >= mult_) r -= mult_;
    return FieldElem{r};
}

FieldElem FieldTable::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem FieldTable::mul(FieldElem a, FieldElem b) const {
    if (a.is_zero() || b.is_zero()) return kZero;
    std::int64_t r = a.dlog + b.dlog;
    if (r >= mult_) r -= mult_;
    return FieldElem{r};
}

FieldElem FieldTable::inv(FieldElem a) const {
    if (a.is_zero()) throw std::domain_error("inv: the zero element has no inverse");
    return a.dlog == 0 ? a : FieldElem{mult_ - a.dlog};
}

FieldElem FieldTable::pow(FieldElem a, std::int64_t e) const {
    if (a.is_zero()) {
        if (e > 0) return kZero;
        if (e == 0) return one();
        throw std::domain_error("pow: negative exponent of zero");
    }
    // dlog * e can reach 2^24 * 2^63-scale only via caller bugs; reduce e first.
    std::int64_t er = e % mult_;
    if (er < 0) er += mult_;
    return FieldElem{a.dlog * er % mult_};
}

FieldElem FieldTable::frobenius(FieldElem a, int k) const {
    if (k < 0) throw std::invalid_argument("frobenius: power must be nonnegative");
    if (a.is_zero()) return a;
    std::int64_t pk = 1;
    for (int i = 0; i < k; ++i) pk = pk * spec_.p % mult_;
    return FieldElem{a.dlog * pk % mult_};
}

FieldElem FieldTable::rel_trace(FieldElem a, std::int64_t from, std::int64_t to) const {
    if (!is_subfield_order(from) || !is_subfield_order(to))
        throw std::invalid_argument("rel_trace: orders must be subfield orders of the tower");
    // `to` must be a power-of-`to` divisor of `from`: from == to^e.
    int e = 0;
    std::int64_t acc = 1;
    while (acc < from) { acc *= to; ++e; }
    if (acc != from)
        throw std::invalid_argument("rel_trace: target field is not a subfield of the source");
    if (!is_in_subfield(a, from))
        throw std::domain_error("rel_trace: element lies outside the source field");
    FieldElem sum = kZero;
    FieldElem cur = a;
    for (int i = 0; i < e; ++i) {
        sum = add(sum, cur);
        cur = pow(cur, to);
    }
    return sum;
}

std::int64_t FieldTable::prime_trace(FieldElem a, std::int64_t from) const {
    const FieldElem t = rel_trace(a, from, spec_.p);
    return canonical_index(t, spec_.p);
}

bool FieldTable::is_subfield_order(std::int64_t order) const {
    for (const auto& b : bases_)
        if (b.order == order) return true;
    return false;
}

bool FieldTable::is_in_subfield(FieldElem a, std::int64_t order) const {
    const SubfieldBasis& b = basis(order);
    return a.is_zero() || a.dlog % b.step == 0;
}

const SubfieldBasis& FieldTable::basis(std::int64_t order) const {
    for (const auto& b : bases_)
        if (b.order == order) return b;
    throw std::invalid_argument("basis: " + std::to_string(order) +
                                " is not a subfield order of this tower");
}

std::vector<std::int64_t> FieldTable::coords(FieldElem a) const {
    std::vector<std::int64_t> c(std::size_t(spec_.d), 0);
    if (a.is_zero()) return c;
    std::int64_t packed = packed_[std::size_t(a.dlog)];
    for (int i = 0; i < spec_.d; ++i) {
        c[std::size_t(i)] = packed % spec_.p;
        packed /= spec_.p;
    }
    return c;
}

FieldElem FieldTable::from_coords(const std::vector<std::int64_t>& c) const {
    if (int(c.size()) != spec_.d)
        throw std::invalid_argument("from_coords: expected " + std::to_string(spec_.d) +
                                    " coordinates");
    std::int64_t packed = 0;
    for (int i = spec_.d; i-- > 0;) {
        const std::int64_t digit = mod_p(c[std::size_t(i)], spec_.p);
        packed = packed * spec_.p + digit;
    }
    return from_packed(packed);
}

std::int64_t FieldTable::packed_of(FieldElem a) const {
    return a.is_zero() ? 0 : packed_[std::size_t(a.dlog)];
}

FieldElem FieldTable::from_packed(std::int64_t packed) const {
    if (packed == 0) return kZero;
    return FieldElem{dlog_by_packed_[std::size_t(packed)]};
}

std::int64_t FieldTable::canonical_index(FieldElem a, std::int64_t order) const {
    const SubfieldBasis& b = basis(order);
    if (a.is_zero()) return 0;
    if (a.dlog % b.step != 0)
        throw std::domain_error("canonical_index: element lies outside the subfield of order " +
                                std::to_string(order));
    // Coordinates in the echelon basis: each row has a pivot with zeros above
    // and below, so the coefficient of row i is just the coordinate at its pivot.
    std::int64_t packed = packed_[std::size_t(a.dlog)];
    std::vector<std::int64_t> c(std::size_t(spec_.d), 0);
    for (int i = 0; i < spec_.d; ++i) {
        c[std::size_t(i)] = packed % spec_.p;
        packed /= spec_.p;
    }
    std::int64_t index = 0;
    std::int64_t scale = 1;
    for (int i = 0; i < b.dim; ++i) {
        index += c[std::size_t(b.pivots[std::size_t(i)])] * scale;
        scale *= spec_.p;
    }
    return index;
}

FieldElem FieldTable::element_at(std::int64_t index, std::int64_t order) const {
    const SubfieldBasis& b = basis(order);
    if (index < 0 || index >= order)
        throw std::invalid_argument("element_at: index out of range");
    std::int64_t packed = 0;
    std::int64_t rem = index;
    // Combine basis rows digit by digit; rows have disjoint pivots and are
    // already reduced, so the sum's packed form is a plain per-digit sum mod p.
    std::vector<std::int64_t> c(std::size_t(spec_.d), 0);
    for (int i = 0; i < b.dim; ++i) {
        const std::int64_t coeff = rem % spec_.p;
        rem /= spec_.p;
        if (coeff == 0) continue;
        for (int j = 0; j < spec_.d; ++j)
            c[std::size_t(j)] = (c[std::size_t(j)] + coeff * b.rows[std::size_t(i)][std::size_t(j)]) % spec_.p;
    }
    std::int64_t scale = 1;
    for (int j = 0; j < spec_.d; ++j) {
        packed += c[std::size_t(j)] * scale;
        scale *= spec_.p;
    }
    return from_packed(packed);
}

FieldTable build_field(std::int64_t p, int s, int m,
                       const std::optional<std::vector<std::int64_t>>& modulus,
                       std::int64_t size_cap) {
    if (!is_prime(p))
        throw std::invalid_argument("build_field: p = " + std::to_string(p) + " is not prime");
    if (s < 1) throw std::invalid_argument("build_field: s must be at least 1");
    if (m < 2) throw std::invalid_argument("build_field: m must be at least 2");
    const int d = 2 * m * s;
    const std::int64_t order = checked_pow(p, d, size_cap);
    if (order < 0)
        throw std::invalid_argument("build_field: field order p^(2ms) exceeds the size cap of " +
                                    std::to_string(size_cap));
    const std::int64_t L = order - 1;

    Poly f;
    if (modulus) {
        const auto& c = *modulus;
        if (int(c.size()) != d + 1 || c.back() != 1)
            throw std::invalid_argument("build_field: modulus must be monic of degree " +
                                        std::to_string(d));
        f.assign(c.begin(), c.end());
        for (auto& coef : f) coef = mod_p(coef, p);
        if (f.back() != 1)
            throw std::invalid_argument("build_field: modulus must be monic of degree " +
                                        std::to_string(d));
        if (!is_irreducible(f, p))
            throw std::invalid_argument("build_field: modulus is not irreducible over F_p");
        if (!is_primitive_root_x(f, p, L))
            throw std::invalid_argument(
                "build_field: modulus is irreducible but not primitive (x does not generate the units)");
    } else {
        // Scan monic candidates x^d + a_{d-1} x^{d-1} + ... + a_0 in increasing
        // order of the digit string a_{d-1}...a_0 read as a base-p number, i.e.
        // smallest high-degree coefficients first. Constant term 0 is never
        // irreducible, so skip those outright.
        std::int64_t limit = 1;
        for (int i = 0; i < d; ++i) limit *= p;
        bool found = false;
        for (std::int64_t n = 1; n < limit && !found; ++n) {
            if (n % p == 0) continue;  // a_0 == 0
            Poly cand(std::size_t(d) + 1, 0);
            std::int64_t t = n;
            for (int i = 0; i < d; ++i) { cand[std::size_t(i)] = t % p; t /= p; }
            cand[std::size_t(d)] = 1;
            if (!is_irreducible(cand, p)) continue;
            if (!is_primitive_root_x(cand, p, L)) continue;
            f = cand;
            found = true;
        }
        if (!found)
            throw std::runtime_error("build_field: no primitive polynomial found (internal error)");
    }

    FieldTable tab;
    tab.spec_.p = p;
    tab.spec_.s = s;
    tab.spec_.m = m;
    tab.spec_.d = d;
    tab.spec_.modulus.assign(f.begin(), f.end());
    tab.order_ = order;
    tab.mult_ = L;

    // Walk alpha^0, alpha^1, ... in monomial coordinates (digit vectors) and
    // record the packed value of each power.
    tab.packed_.assign(std::size_t(L), 0);
    tab.dlog_by_packed_.assign(std::size_t(order), -1);
    std::vector<std::int64_t> cur(std::size_t(d), 0);
    cur[0] = 1;
    for (std::int64_t j = 0; j < L; ++j) {
        std::int64_t packed = 0;
        for (int i = d; i-- > 0;) packed = packed * p + cur[std::size_t(i)];
        tab.packed_[std::size_t(j)] = std::int32_t(packed);
        if (tab.dlog_by_packed_[std::size_t(packed)] != -1)
            throw std::runtime_error("build_field: modulus is not primitive (cycle shorter than expected)");
        tab.dlog_by_packed_[std::size_t(packed)] = std::int32_t(j);
        // cur *= x mod f
        const std::int64_t carry = cur[std::size_t(d - 1)];
        for (int i = d - 1; i > 0; --i) cur[std::size_t(i)] = cur[std::size_t(i - 1)];
        cur[0] = 0;
        if (carry != 0)
            for (int i = 0; i < d; ++i)
                cur[std::size_t(i)] = mod_p(cur[std::size_t(i)] - carry * f[std::size_t(i)], p);
    }

    tab.zech_.assign(std::size_t(L), -1);
    for (std::int64_t j = 0; j < L; ++j) {
        std::int64_t packed = tab.packed_[std::size_t(j)];
        std::vector<std::int64_t> digits(std::size_t(d), 0);
        std::int64_t t = packed;
        for (int i = 0; i < d; ++i) { digits[std::size_t(i)] = t % p; t /= p; }
        digits[0] = (digits[0] + 1) % p;
        std::int64_t key = 0;
        for (int i = d; i-- > 0;) key = key * p + digits[std::size_t(i)];
        tab.zech_[std::size_t(j)] = key == 0 ? -1 : tab.dlog_by_packed_[std::size_t(key)];
    }

    // Echelonized bases for every subfield p^c, c | d.
    for (int c = 1; c <= d; ++c) {
        if (d % c != 0) continue;
        SubfieldBasis b;
        b.dim = c;
        b.order = 1;
        for (int i = 0; i < c; ++i) b.order *= p;
        b.step = L / (b.order - 1);
        // Row-reduce the coordinate vectors of the subfield generator's powers
        // 1, g, g^2, ... (g = alpha^step); they span the subfield over F_p.
        std::vector<std::vector<std::int64_t>> rows;
        std::vector<int> pivots;
        for (int k = 0; k < c; ++k) {
            FieldElem g_k = FieldElem{b.step * k % L};
            std::int64_t packed = tab.packed_[std::size_t(g_k.dlog)];
            std::vector<std::int64_t> v(std::size_t(d), 0);
            std::int64_t t2 = packed;
            for (int i = 0; i < d; ++i) { v[std::size_t(i)] = t2 % p; t2 /= p; }
            // reduce against existing rows
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const std::int64_t coef = v[std::size_t(pivots[r])];
                if (coef == 0) continue;
                for (int i = 0; i < d; ++i)
                    v[std::size_t(i)] = mod_p(v[std::size_t(i)] - coef * rows[r][std::size_t(i)], p);
            }
            int piv = -1;
            for (int i = 0; i < d; ++i)
                if (v[std::size_t(i)] != 0) { piv = i; break; }
            if (piv < 0) throw std::runtime_error("build_field: subfield basis degenerated");
            // normalize pivot to 1
            std::int64_t piv_inv = 1;
            for (std::int64_t u = 1; u < p; ++u)
                if (u * v[std::size_t(piv)] % p == 1) { piv_inv = u; break; }
            for (int i = 0; i < d; ++i) v[std::size_t(i)] = v[std::size_t(i)] * piv_inv % p;
            // eliminate this pivot from earlier rows
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const std::int64_t coef = rows[r][std::size_t(piv)];
                if (coef == 0) continue;
                for (int i = 0; i < d; ++i)
                    rows[r][std::size_t(i)] = mod_p(rows[r][std::size_t(i)] - coef * v[std::size_t(i)], p);
            }
            rows.push_back(std::move(v));
            pivots.push_back(piv);
        }
        // sort rows by pivot column so the index encoding is basis-order free
        std::vector<std::size_t> perm(rows.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::sort(perm.begin(), perm.end(),
                  [&](std::size_t x, std::size_t y) { return pivots[x] < pivots[y]; });
        for (std::size_t i : perm) {
            b.rows.push_back(rows[i]);
            b.pivots.push_back(pivots[i]);
        }
        tab.bases_.push_back(std::move(b));
    }

    return tab;
}

}  // namespace pds
