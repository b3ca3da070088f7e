#include "pds/cyclotomy.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace pds {

IndexSet IndexSet::of(std::int64_t modulus, std::vector<std::int64_t> members) {
    if (modulus <= 0) throw std::invalid_argument("IndexSet: modulus must be positive");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    IndexSet s;
    s.modulus = modulus;
    s.mask.assign(std::size_t(modulus), 0);
    for (std::int64_t i : members) {
        if (i < 0 || i >= modulus)
            throw std::invalid_argument("IndexSet: member out of range");
        s.mask[std::size_t(i)] = 1;
    }
    s.members = std::move(members);
    return s;
}

bool IndexSet::contains(std::int64_t i) const {
    i %= modulus;
    if (i < 0) i += modulus;
    return mask[std::size_t(i)] != 0;
}

std::int64_t denniston_modulus(const FieldTable& tab) {
    return (tab.spec().q_m() - 1) / (tab.spec().q() - 1);
}

std::vector<FieldElem> class_members(const FieldTable& tab, const CycIndex& c) {
    const std::int64_t qm = tab.spec().q_m();
    const std::int64_t q2m = tab.spec().q_2m();
    if (c.ambient != qm && c.ambient != q2m)
        throw std::invalid_argument("class_members: ambient must be q^m or q^{2m}");
    const std::int64_t units = c.ambient - 1;
    if (c.modulus <= 0 || units % c.modulus != 0)
        throw std::invalid_argument("class_members: modulus must divide the unit group order");
    if (c.i < 0 || c.i >= c.modulus)
        throw std::invalid_argument("class_members: class index out of range");
    const std::int64_t step = tab.mult_order() / units;  // dlog stride of the ambient's generator
    const std::int64_t size = units / c.modulus;
    std::vector<FieldElem> out;
    out.reserve(std::size_t(size));
    for (std::int64_t j = 0; j < size; ++j) {
        const std::int64_t e = c.i + c.modulus * j;  // exponent of the ambient generator
        out.push_back(FieldElem{e % units * step});
    }
    std::sort(out.begin(), out.end(),
              [](FieldElem a, FieldElem b) { return a.dlog < b.dlog; });
    return out;
}

IndexSet trace_zero_index_set(const FieldTable& tab) {
    const std::int64_t N = denniston_modulus(tab);
    const std::int64_t qm = tab.spec().q_m();
    const std::int64_t q = tab.spec().q();
    const FieldElem omega = tab.omega();
    std::vector<std::int64_t> members;
    for (std::int64_t i = 0; i < N; ++i) {
        const FieldElem t = tab.rel_trace(tab.pow(omega, i), qm, q);
        if (t.is_zero()) members.push_back(i);
    }
    return IndexSet::of(N, std::move(members));
}

std::vector<FieldElem> subspace_span(const FieldTable& tab, const SubspaceR& sub) {
    const std::int64_t q = tab.spec().q();
    const std::int64_t qm = tab.spec().q_m();
    const std::int64_t step_q = tab.mult_order() / (q - 1);
    std::vector<FieldElem> span{kZero};
    for (FieldElem b : sub.basis) {
        if (!tab.is_in_subfield(b, qm) || b.is_zero())
            throw std::invalid_argument("subspace_span: basis elements must be nonzero and lie in F_{q^m}");
        std::vector<FieldElem> next(span);
        for (std::int64_t c = 1; c < q; ++c) {
            const FieldElem scaled =
                c == 1 ? b : tab.mul(b, FieldElem{step_q * (c - 1) % tab.mult_order()});
            for (FieldElem v : span) next.push_back(tab.add(v, scaled));
        }
        span = std::move(next);
    }
    std::sort(span.begin(), span.end(),
              [](FieldElem a, FieldElem b) { return a.dlog < b.dlog; });
    const std::size_t before = span.size();
    span.erase(std::unique(span.begin(), span.end()), span.end());
    if (span.size() != before)
        throw std::invalid_argument("subspace_span: basis is not F_q-linearly independent");
    return span;
}

SubspaceR default_subspace(const FieldTable& tab, int r) {
    if (r < 1 || r >= tab.spec().m)
        throw std::invalid_argument("default_subspace: r must satisfy 1 <= r < m");
    const std::int64_t w = tab.spec().q_m() + 1;  // dlog of omega
    // Greedy: take ascending powers of omega, keeping each one that extends
    // the F_q-independent set. 1, omega, ..., omega^{r-1} always suffice when
    // r < m (omega has degree m over F_q), but the check is explicit.
    SubspaceR sub;
    for (std::int64_t j = 0; sub.r() < r; ++j) {
        if (j >= tab.spec().q_m() - 1)
            throw std::invalid_argument("default_subspace: exhausted powers of omega");
        SubspaceR trial = sub;
        trial.basis.push_back(FieldElem{w * j % tab.mult_order()});
        try {
            (void)subspace_span(tab, trial);
        } catch (const std::invalid_argument&) {
            continue;  // dependent; try the next power
        }
        sub = std::move(trial);
    }
    return sub;
}

SubspaceR random_subspace(const FieldTable& tab, int r, std::uint64_t seed) {
    if (r < 1 || r >= tab.spec().m)
        throw std::invalid_argument("random_subspace: r must satisfy 1 <= r < m");
    const std::int64_t qm = tab.spec().q_m();
    const std::int64_t step_m = tab.mult_order() / (qm - 1);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> pick(0, qm - 2);
    for (;;) {
        SubspaceR sub;
        for (int i = 0; i < r; ++i) sub.basis.push_back(FieldElem{pick(rng) * step_m});
        try {
            (void)subspace_span(tab, sub);
            return sub;
        } catch (const std::invalid_argument&) {
            // dependent draw; try again — expected O(1) retries
        }
    }
}

SubspaceR subspace_from_dlogs(const FieldTable& tab, const std::vector<std::int64_t>& dlogs) {
    SubspaceR sub;
    for (std::int64_t d : dlogs) {
        if (d < 0 || d >= tab.mult_order())
            throw std::invalid_argument("subspace_from_dlogs: dlog out of range");
        sub.basis.push_back(FieldElem{d});
    }
    if (sub.r() < 1 || sub.r() >= tab.spec().m)
        throw std::invalid_argument("subspace_from_dlogs: need 1 <= r < m basis elements");
    (void)subspace_span(tab, sub);  // validates membership and independence
    return sub;
}

IndexSet subspace_index_set(const FieldTable& tab, const SubspaceR& sub) {
    const std::int64_t N = denniston_modulus(tab);
    const std::int64_t qm = tab.spec().q_m();
    const std::int64_t step_m = tab.mult_order() / (qm - 1);
    std::vector<std::int64_t> members;
    for (FieldElem v : subspace_span(tab, sub)) {
        if (v.is_zero()) continue;
        // v = omega^e with e = dlog / step_m; its class index is e mod N.
        members.push_back(v.dlog / step_m % N);
    }
    return IndexSet::of(N, std::move(members));
}

std::int64_t intersection_profile(const FieldTable& tab, const IndexSet& T,
                                  const IndexSet& I, std::int64_t u) {
    const std::int64_t N = denniston_modulus(tab);
    if (T.modulus != N || I.modulus != N)
        throw std::invalid_argument("intersection_profile: index sets must have modulus N");
    std::int64_t count = 0;
    for (std::int64_t t : T.members)
        if (I.contains(t + u)) ++count;
    return count;
}

}  // namespace pds
