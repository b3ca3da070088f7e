#include "pds/construction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pds/quad_form.hpp"

namespace pds {

namespace {

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::int64_t isqrt_floor(std::int64_t n) {
    if (n < 0) return -1;
    auto r = std::int64_t(std::sqrt(double(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

ParamSet derive_params(std::int64_t v, std::int64_t k, std::int64_t lambda, std::int64_t mu) {
    if (v < 2 || k < 0 || k >= v || lambda < 0 || mu < 0)
        throw std::invalid_argument("derive_params: need v >= 2 and 0 <= k < v, lambda, mu >= 0");
    ParamSet ps;
    ps.v = v;
    ps.k = k;
    ps.lambda = lambda;
    ps.mu = mu;
    ps.disc = (mu - lambda) * (mu - lambda) + 4 * (k - mu);
    ps.k2_ok = k * k == mu * v + (lambda - mu) * k + (k - mu);

    if (ps.disc >= 0) {
        const std::int64_t root = isqrt_floor(ps.disc);
        if (root * root == ps.disc && ((lambda - mu + root) & 1) == 0) {
            ps.integral_spectrum = true;
            ps.theta_pos = (lambda - mu + root) / 2;
            ps.theta_neg = (lambda - mu - root) / 2;
            if (ps.disc == 0) {
                ps.f = v - 1;
                ps.g = 0;
                ps.multiplicities_ok = true;
            } else {
                // f*theta_pos + g*theta_neg = -k and f + g = v - 1.
                const std::int64_t num = -k - (v - 1) * ps.theta_neg;
                const std::int64_t den = ps.theta_pos - ps.theta_neg;
                if (num % den == 0) {
                    ps.f = num / den;
                    ps.g = v - 1 - ps.f;
                    ps.multiplicities_ok = ps.f >= 0 && ps.g >= 0;
                }
            }
        }
    }
    return ps;
}

std::int64_t GroupDesc::group_order(const FieldTable& tab) const {
    return kind == Kind::product ? tab.spec().q_m() * tab.spec().q_2m() : sub_order;
}

std::string GroupDesc::to_string() const {
    return kind == Kind::product ? "product" : "single(" + std::to_string(sub_order) + ")";
}

PdsSet::PdsSet(const FieldTable& tab, GroupDesc group, std::vector<GroupElem> members,
               ParamSet claimed, std::string family)
    : tab_(&tab), group_(group), claimed_(claimed), family_(std::move(family)) {
    const std::int64_t v = group_.group_order(tab);
    if (v > kGroupOrderCap)
        throw std::invalid_argument("PdsSet: group order " + std::to_string(v) +
                                    " exceeds the dense-indicator limit");
    if (claimed_.v != v)
        throw std::invalid_argument("PdsSet: claimed v does not match the group order");
    indicator_.assign(std::size_t(v), 0);
    std::vector<std::pair<std::int64_t, GroupElem>> indexed;
    indexed.reserve(members.size());
    for (const GroupElem& g : members) indexed.emplace_back(index_of(g), g);
    std::sort(indexed.begin(), indexed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    members_.reserve(indexed.size());
    for (const auto& [idx, g] : indexed) {
        if (indicator_[std::size_t(idx)])
            throw std::invalid_argument("PdsSet: duplicate member at index " + std::to_string(idx));
        indicator_[std::size_t(idx)] = 1;
        members_.push_back(g);
    }
}

PdsSet PdsSet::from_indices(const FieldTable& tab, GroupDesc group,
                            const std::vector<std::int64_t>& indices, ParamSet claimed,
                            std::string family) {
    PdsSet scratch(tab, group, {}, claimed, family);  // for element_at on this group
    std::vector<GroupElem> members;
    members.reserve(indices.size());
    for (std::int64_t idx : indices) members.push_back(scratch.element_at(idx));
    return PdsSet(tab, group, std::move(members), claimed, std::move(family));
}

std::int64_t PdsSet::index_of(const GroupElem& g) const {
    if (group_.kind == GroupDesc::Kind::product) {
        const std::int64_t qm = tab_->spec().q_m();
        const std::int64_t q2m = tab_->spec().q_2m();
        return tab_->canonical_index(g.x, qm) * q2m + tab_->canonical_index(g.y, q2m);
    }
    if (!g.y.is_zero())
        throw std::invalid_argument("PdsSet: single-field group element with nonzero second slot");
    return tab_->canonical_index(g.x, group_.sub_order);
}

GroupElem PdsSet::element_at(std::int64_t index) const {
    if (index < 0 || index >= v()) throw std::invalid_argument("PdsSet: index out of range");
    if (group_.kind == GroupDesc::Kind::product) {
        const std::int64_t qm = tab_->spec().q_m();
        const std::int64_t q2m = tab_->spec().q_2m();
        return GroupElem{tab_->element_at(index / q2m, qm), tab_->element_at(index % q2m, q2m)};
    }
    return GroupElem{tab_->element_at(index, group_.sub_order), kZero};
}

PdsSet PdsSet::toggled(std::int64_t index) const {
    std::vector<GroupElem> next;
    next.reserve(members_.size() + 1);
    bool removed = false;
    for (const GroupElem& g : members_) {
        if (index_of(g) == index) {
            removed = true;
            continue;
        }
        next.push_back(g);
    }
    if (!removed) next.push_back(element_at(index));
    PdsSet out(*tab_, group_, std::move(next), claimed_, family_ + "+toggled");
    out.r_ = r_;
    out.subspace_dlogs_ = subspace_dlogs_;
    return out;
}

ParamSet expected_params(std::int64_t q, int m, int r) {
    std::int64_t p;
    int s;
    if (!factor_prime_power(q, p, s))
        throw std::invalid_argument("expected_params: q must be a prime power");
    if (m < 2) throw std::invalid_argument("expected_params: m must be at least 2");
    if (r < 1 || r >= m) throw std::invalid_argument("expected_params: need 1 <= r < m");
    const std::int64_t qm = ipow(q, m);
    const std::int64_t qr = ipow(q, r);
    const std::int64_t qmr = qm * qr;  // q^{m+r}
    const std::int64_t k1 = qmr - qm + qr;
    const std::int64_t v = qm * qm * qm;
    const std::int64_t k = k1 * (qm - 1);
    const std::int64_t lambda = qm - qr + k1 * (qr - 2);
    const std::int64_t mu = k1 * (qr - 1);
    return derive_params(v, k, lambda, mu);
}

std::pair<std::int64_t, std::int64_t> expected_char_values(std::int64_t q, int m, int r) {
    std::int64_t p;
    int s;
    if (!factor_prime_power(q, p, s))
        throw std::invalid_argument("expected_char_values: q must be a prime power");
    if (m < 2 || r < 1 || r >= m)
        throw std::invalid_argument("expected_char_values: need m >= 2 and 1 <= r < m");
    const std::int64_t qm = ipow(q, m);
    const std::int64_t qr = ipow(q, r);
    return {qm - qr, qm - qr - qm * qr};
}

PdsSet build_denniston(const FieldTable& tab, int r, const SubspaceR& sub) {
    const std::int64_t q = tab.spec().q();
    const int m = tab.spec().m;
    if (r < 1 || r >= m) throw std::invalid_argument("build_denniston: need 1 <= r < m");
    if (sub.r() != r)
        throw std::invalid_argument("build_denniston: subspace dimension does not match r");
    const std::int64_t qm = tab.spec().q_m();
    const std::int64_t L = tab.mult_order();
    const std::int64_t N = denniston_modulus(tab);
    const std::int64_t step_m = L / (qm - 1);   // omega = alpha^{step_m}
    const std::int64_t big = L / N;             // size of a top-field class
    const IndexSet T = subspace_index_set(tab, sub);

    std::vector<GroupElem> members;
    members.reserve(std::size_t(expected_params(q, m, r).k));
    for (std::int64_t i = 0; i < N; ++i) {
        // y ranges over the union of top-field classes with indices i + T.
        std::vector<FieldElem> ys;
        ys.reserve(std::size_t(big) * T.members.size());
        for (std::int64_t t : T.members) {
            const std::int64_t c = (i + t) % N;
            for (std::int64_t j = 0; j < big; ++j) ys.push_back(FieldElem{c + N * j});
        }
        for (std::int64_t jx = 0; jx < q - 1; ++jx) {
            const FieldElem x{(i + N * jx) % (qm - 1) * step_m};
            for (FieldElem y : ys) members.push_back(GroupElem{x, y});
        }
    }
    for (std::int64_t e = 0; e < qm - 1; ++e)
        members.push_back(GroupElem{FieldElem{e * step_m}, kZero});

    PdsSet out(tab, GroupDesc{GroupDesc::Kind::product, 0}, std::move(members),
               expected_params(q, m, r), "denniston");
    std::vector<std::int64_t> dlogs;
    for (FieldElem b : sub.basis) dlogs.push_back(b.dlog);
    out.set_provenance(r, std::move(dlogs));
    return out;
}

ParamSet projective_set_params(std::int64_t n, std::int64_t h1, std::int64_t h2,
                               std::int64_t q, int mdim) {
    std::int64_t p;
    int s;
    if (!factor_prime_power(q, p, s))
        throw std::invalid_argument("projective_set_params: q must be a prime power");
    if (mdim < 2) throw std::invalid_argument("projective_set_params: dimension must be >= 2");
    if (n < 1 || h1 < 0 || h2 <= h1)
        throw std::invalid_argument("projective_set_params: need n >= 1 and 0 <= h1 < h2");
    // Character values of the point-set preimage are q*h - n for h the two
    // hyperplane intersection numbers; lambda and mu follow from the pair.
    const std::int64_t v = ipow(q, mdim);
    const std::int64_t k = n * (q - 1);
    const std::int64_t t1 = q * h1 - n;
    const std::int64_t t2 = q * h2 - n;
    const std::int64_t mu = k + t1 * t2;
    const std::int64_t lambda = mu + t1 + t2;
    if (mu < 0 || lambda < 0)
        throw std::invalid_argument("projective_set_params: intersection numbers force negative lambda/mu");
    return derive_params(v, k, lambda, mu);
}

PdsSet paley_pds(const FieldTable& tab) {
    const std::int64_t q = tab.spec().q();
    if (q % 4 != 1)
        throw std::invalid_argument("paley_pds: base field order must be 1 mod 4");
    const std::int64_t step_q = tab.mult_order() / (q - 1);
    std::vector<GroupElem> members;
    for (std::int64_t j = 0; j < (q - 1) / 2; ++j)
        members.push_back(GroupElem{FieldElem{2 * j % (q - 1) * step_q}, kZero});
    const ParamSet claimed = derive_params(q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4);
    return PdsSet(tab, GroupDesc{GroupDesc::Kind::single, q}, std::move(members), claimed,
                  "paley");
}

PdsSet quadric_pds(const FieldTable& tab) {
    const QuadricSet zs = quadric_zero_set(tab);
    const std::int64_t q = tab.spec().q();
    const std::int64_t qm = tab.spec().q_m();
    const std::int64_t q2m = tab.spec().q_2m();
    const std::int64_t qm1 = qm / q;  // q^{m-1}
    std::vector<GroupElem> members;
    members.reserve(zs.elements.size());
    for (FieldElem x : zs.elements) members.push_back(GroupElem{x, kZero});
    // (q^{2m}, (q^m+1)(q^{m-1}-1), q^{2m-2} - q^{m-1}(q-1) - 2, q^{2m-2} - q^{m-1})
    const std::int64_t k = (qm + 1) * (qm1 - 1);
    const std::int64_t lambda = qm1 * qm1 - qm1 * (q - 1) - 2;
    const std::int64_t mu = qm1 * qm1 - qm1;
    const ParamSet claimed = derive_params(q2m, k, lambda, mu);
    return PdsSet(tab, GroupDesc{GroupDesc::Kind::single, q2m}, std::move(members), claimed,
                  "quadric");
}

}  // namespace pds
