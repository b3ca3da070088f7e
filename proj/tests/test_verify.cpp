#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "pds/construction.hpp"
#include "pds/cyc_int.hpp"
#include "pds/cyclotomy.hpp"
#include "pds/gf_tower.hpp"
#include "pds/quad_form.hpp"
#include "pds/verify.hpp"

using namespace pds;

TEST_CASE("cyclotomic integers: ring identities") {
    // All p-th roots of unity sum to zero.
    for (std::int64_t p : {2, 3, 5, 7}) {
        CycInt sum(p);
        for (std::int64_t t = 0; t < p; ++t) sum += CycInt::root_power(p, t);
        CHECK(sum == CycInt::integer(p, 0));
        CHECK(sum.is_rational_integer());
        CHECK(sum.as_integer() == 0);
    }
    // zeta^t * zeta^{p-t} = 1, and conjugation is inversion on roots.
    CHECK(CycInt::root_power(5, 2) * CycInt::root_power(5, 3) == CycInt::integer(5, 1));
    CHECK(CycInt::root_power(7, 1).conj() == CycInt::root_power(7, 6));
    // Representatives differing by the all-ones vector are equal.
    CHECK(CycInt::from_coeffs(5, {1, 1, 1, 1, 1}) == CycInt::integer(5, 0));
    CHECK(CycInt::from_coeffs(3, {4, 3, 3}) == CycInt::integer(3, 1));
    // Irrational values refuse integer conversion but print canonically.
    const CycInt zeta5 = CycInt::root_power(5, 1);
    CHECK_FALSE(zeta5.is_rational_integer());
    CHECK_THROWS_AS(zeta5.as_integer(), std::domain_error);
    CHECK(CycInt::integer(3, -7).to_string() == "-7");
    // Mixed root orders cannot interact.
    CHECK_THROWS_AS(CycInt::integer(3, 1) + CycInt::integer(5, 1), std::invalid_argument);
    // For p = 2 the ring collapses to Z: zeta = -1.
    CHECK(CycInt::root_power(2, 1) == CycInt::integer(2, -1));
}

TEST_CASE("cyclotomic integers: a quadratic Gauss sum") {
    // g = sum_t zeta_5^{t^2} satisfies g^2 = 5 (5 = 1 mod 4).
    CycInt g(5);
    for (std::int64_t t = 0; t < 5; ++t) g.add_root_power(t * t % 5);
    CHECK(g * g == CycInt::integer(5, 5));
    // Likewise g^2 = -3 for p = 3 (3 = 3 mod 4).
    CycInt h(3);
    for (std::int64_t t = 0; t < 3; ++t) h.add_root_power(t * t % 3);
    CHECK(h * h == CycInt::integer(3, -3));
    // And |g|^2 = p for any nonprincipal-style Gauss sum.
    CHECK(g * g.conj() == CycInt::integer(5, 5));
}

TEST_CASE("difference count: exact histogram on the smallest instance") {
    const FieldTable tab = build_field(2, 1, 2);
    const PdsSet set = build_denniston(tab, 1, default_subspace(tab, 1));
    const DiffCountCheck dc = difference_count(set);
    CHECK(dc.pass);
    CHECK(dc.identity_count == 18);
    CHECK(dc.counts_in_set == std::map<std::int64_t, std::int64_t>{{2, 18}});
    CHECK(dc.counts_outside == std::map<std::int64_t, std::int64_t>{{6, 45}});
    CHECK(dc.witnesses.empty());
    // Histogram totals must account for every ordered pair: k + sum = k^2.
    std::int64_t pairs = dc.identity_count;
    for (const auto& [value, mult] : dc.counts_in_set) pairs += value * mult;
    for (const auto& [value, mult] : dc.counts_outside) pairs += value * mult;
    CHECK(pairs == set.size() * set.size());
}

TEST_CASE("difference count agrees across worker counts") {
    const FieldTable tab = build_field(3, 1, 2);
    const PdsSet set = build_denniston(tab, 1, default_subspace(tab, 1));
    const DiffCountCheck one = difference_count(set, 1);
    const DiffCountCheck four = difference_count(set, 4);
    CHECK(one.pass);
    CHECK(four.pass);
    CHECK(one.counts_in_set == four.counts_in_set);
    CHECK(one.counts_outside == four.counts_outside);
    CHECK(one.counts_in_set == std::map<std::int64_t, std::int64_t>{{27, 168}});
    CHECK(one.counts_outside == std::map<std::int64_t, std::int64_t>{{42, 560}});
}

TEST_CASE("difference count: direct field arithmetic matches the table kernel") {
    // A zero table budget forces the pair loop off the dense subtraction
    // tables and onto per-pair field operations; every reported field must
    // come out identical.
    auto compare = [](const PdsSet& set) {
        const DiffCountCheck tables = difference_count(set, 1);
        const DiffCountCheck direct = difference_count(set, 1, 0);
        CHECK(tables.pass == direct.pass);
        CHECK(tables.identity_count == direct.identity_count);
        CHECK(tables.counts_in_set == direct.counts_in_set);
        CHECK(tables.counts_outside == direct.counts_outside);
        CHECK(tables.witnesses == direct.witnesses);
        return direct.pass;
    };
    const FieldTable tab3 = build_field(3, 1, 2);
    const PdsSet prod = build_denniston(tab3, 1, default_subspace(tab3, 1));
    CHECK(compare(prod));  // product group
    const FieldTable tab2 = build_field(2, 1, 2);
    CHECK(compare(quadric_pds(tab2)));  // single-field group
    // Both kernels must also agree on a failing set, witnesses included.
    CHECK_FALSE(compare(prod.toggled(1)));
}

TEST_CASE("character spectrum: exact values and multiplicities") {
    const FieldTable tab = build_field(2, 1, 2);
    const PdsSet set = build_denniston(tab, 1, default_subspace(tab, 1));
    const CharSpectrumCheck cs = char_spectrum(set);
    CHECK(cs.pass);
    CHECK(cs.principal_ok);
    CHECK(cs.values_ok);
    CHECK(cs.sum_ok);
    CHECK(cs.multiplicities_ok);
    CHECK(cs.parseval_ok);
    CHECK_FALSE(cs.used_fast_transform);
    CHECK(cs.spectrum ==
          std::map<std::string, std::int64_t>{{"18", 1}, {"2", 45}, {"-6", 18}});
    CHECK(cs.f_observed == 45);
    CHECK(cs.g_observed == 18);
    CHECK(cs.parseval_sum == "1152");  // v * k = 64 * 18
}

TEST_CASE("fast transform equals the naive sweep on every fixture family") {
    auto compare = [](const PdsSet& set) {
        const CharSpectrumCheck naive = char_spectrum(set, false);
        const CharSpectrumCheck fast = char_spectrum(set, true);
        CHECK(fast.used_fast_transform);
        CHECK(naive.spectrum == fast.spectrum);
        CHECK(naive.parseval_sum == fast.parseval_sum);
        CHECK(naive.pass == fast.pass);
        CHECK(naive.f_observed == fast.f_observed);
        CHECK(naive.g_observed == fast.g_observed);
        // Worker count must not change anything either.
        const CharSpectrumCheck serial = char_spectrum(set, false, 1);
        CHECK(serial.spectrum == naive.spectrum);
    };
    {
        const FieldTable tab = build_field(2, 1, 2);
        compare(build_denniston(tab, 1, default_subspace(tab, 1)));
        compare(quadric_pds(tab));
    }
    {
        const FieldTable tab = build_field(3, 1, 2);
        compare(build_denniston(tab, 1, default_subspace(tab, 1)));
        compare(quadric_pds(tab));
    }
    {
        const FieldTable tab = build_field(2, 1, 3);
        compare(build_denniston(tab, 2, default_subspace(tab, 2)));
    }
    {
        const FieldTable tab = build_field(5, 1, 2);
        compare(paley_pds(tab));
    }
    {
        const FieldTable tab = build_field(3, 2, 2);
        compare(paley_pds(tab));
    }
    {
        const FieldTable tab = build_field(13, 1, 2);
        compare(paley_pds(tab));
    }
    // A failing (mutated) set must fail identically under both transforms.
    {
        const FieldTable tab = build_field(3, 1, 2);
        const PdsSet set = build_denniston(tab, 1, default_subspace(tab, 1));
        const PdsSet mut = set.toggled(5);
        const CharSpectrumCheck naive = char_spectrum(mut, false);
        const CharSpectrumCheck fast = char_spectrum(mut, true);
        CHECK_FALSE(naive.pass);
        CHECK_FALSE(fast.pass);
        CHECK(naive.spectrum == fast.spectrum);
    }
}

TEST_CASE("character spectrum cross-checked against the quadric closed form") {
    // quadric_char_value evaluates each character independently (plain sum
    // over members), so matching spectra validates the bulk sweep per value.
    for (const auto& [p, s] : std::vector<std::pair<std::int64_t, int>>{{2, 1}, {3, 1}}) {
        const FieldTable tab = build_field(p, s, 2);
        const PdsSet set = quadric_pds(tab);
        std::map<std::string, std::int64_t> expected;
        const std::int64_t o = tab.spec().q_2m();
        ++expected[quadric_char_value(tab, kZero).to_string()];
        for (std::int64_t j = 0; j < o - 1; ++j)
            ++expected[quadric_char_value(tab, tab.alpha(j)).to_string()];
        CHECK(char_spectrum(set, false).spectrum == expected);
        CHECK(char_spectrum(set, true).spectrum == expected);
    }
}

TEST_CASE("conference parameters: irrational spectrum verified exactly") {
    for (const auto& [p, s] : std::vector<std::pair<std::int64_t, int>>{{5, 1}, {13, 1}}) {
        CAPTURE(p);
        const FieldTable tab = build_field(p, s, 2);
        const PdsSet set = paley_pds(tab);
        REQUIRE_FALSE(set.claimed().integral_spectrum);

        const DiffCountCheck dc = difference_count(set);
        CHECK(dc.pass);

        const CharSpectrumCheck cs = char_spectrum(set);
        CHECK(cs.pass);
        CHECK(cs.principal_ok);
        CHECK(cs.values_ok);       // (2z - (lambda - mu))^2 == disc, exactly
        CHECK(cs.sum_ok);
        CHECK(cs.parseval_ok);
        CHECK(cs.f_observed == -1);  // multiplicity split undefined over Z
        CHECK(cs.g_observed == -1);
        // Spectrum: k once, two conjugate irrational values (q-1)/2 times each.
        const std::int64_t q = tab.spec().q();
        CHECK(cs.spectrum.size() == 3);
        std::int64_t total = 0;
        for (const auto& [value, mult] : cs.spectrum) total += mult;
        CHECK(total == q);
        CHECK(cs.spectrum.at(std::to_string((q - 1) / 2)) == 1);
        for (const auto& [value, mult] : cs.spectrum)
            if (value != std::to_string((q - 1) / 2)) CHECK(mult == (q - 1) / 2);
    }
    // q = 9 has an integral Paley spectrum; it must also pass.
    const FieldTable tab9 = build_field(3, 2, 2);
    const PdsSet paley9 = paley_pds(tab9);
    CHECK(paley9.claimed().integral_spectrum);
    CHECK(difference_count(paley9).pass);
    CHECK(char_spectrum(paley9).pass);
}

TEST_CASE("single-element mutations fail both verifiers consistently") {
    const FieldTable tab = build_field(2, 1, 2);
    const PdsSet set = build_denniston(tab, 1, default_subspace(tab, 1));

    // Removing a member, adding a stranger, and swapping one for another all
    // must fail; swap keeps |D| = k so it also exercises the non-size checks.
    std::int64_t present = set.index_of(set.members().front());
    std::int64_t absent = 1;
    while (set.contains_index(absent)) ++absent;

    for (const PdsSet& mut :
         {set.toggled(present), set.toggled(absent), set.toggled(present).toggled(absent)}) {
        const DiffCountCheck dc = difference_count(mut);
        const CharSpectrumCheck cs = char_spectrum(mut);
        CHECK_FALSE(dc.pass);
        CHECK_FALSE(cs.pass);
        CHECK(dc.pass == cs.pass);  // the two verifiers agree
        CHECK_FALSE(dc.witnesses.empty());
    }
    // The pure swap keeps the size, so Parseval still balances; the value
    // dichotomy is what breaks.
    const CharSpectrumCheck swap_cs = char_spectrum(set.toggled(present).toggled(absent));
    CHECK(swap_cs.parseval_ok);
    CHECK_FALSE(swap_cs.values_ok);
    CHECK_FALSE(swap_cs.witnesses.empty());
    // Size-changing mutations break Parseval against the claimed k.
    CHECK_FALSE(char_spectrum(set.toggled(present)).parseval_ok);
}

TEST_CASE("regularity and scalar invariance") {
    const FieldTable tab = build_field(3, 1, 2);
    const PdsSet set = build_denniston(tab, 1, default_subspace(tab, 1));
    CHECK(is_regular(set));

    // Adding a single element of odd characteristic breaks D = -D.
    std::int64_t absent = 1;
    while (set.contains_index(absent)) ++absent;
    const GroupElem g = set.element_at(absent);
    const GroupElem ng{tab.neg(g.x), tab.neg(g.y)};
    REQUIRE(set.index_of(ng) != absent);  // not self-negative
    CHECK_FALSE(is_regular(set.toggled(absent)));

    // Scalars of F_q^* fix the set; omega does not; zero is a domain error.
    const std::int64_t q = tab.spec().q();
    const std::int64_t step_q = tab.mult_order() / (q - 1);
    for (std::int64_t j = 0; j < q - 1; ++j)
        CHECK(scalar_invariance(set, tab.alpha(j * step_q)));
    CHECK_FALSE(scalar_invariance(set, tab.omega()));
    CHECK_THROWS_AS(scalar_invariance(set, kZero), std::domain_error);
    // alpha itself lies outside the acting field F_{q^m}.
    CHECK_THROWS_AS(scalar_invariance(set, tab.alpha(1)), std::invalid_argument);
}

TEST_CASE("verify report: gating, determinism, levels") {
    const FieldTable tab = build_field(2, 1, 2);
    const PdsSet set = build_denniston(tab, 1, default_subspace(tab, 1));

    VerifyOptions all;
    all.level = CheckLevel::all;
    const VerifyReport rep = run_verify(set, all);
    CHECK(rep.pass);
    CHECK(rep.size_ok);
    CHECK(rep.zero_excluded);
    CHECK(rep.symmetric);
    REQUIRE(rep.counts.has_value());
    REQUIRE(rep.chars.has_value());
    CHECK_FALSE(rep.invariance.empty());
    bool saw_omega = false;
    for (const InvarianceResult& inv : rep.invariance) {
        if (inv.scalar == "omega") {
            saw_omega = true;
            CHECK_FALSE(inv.invariant);
        } else {
            CHECK(inv.invariant);
        }
    }
    CHECK(saw_omega);

    // Reports are byte-identical across worker counts; timings only on demand.
    VerifyOptions w1 = all, w4 = all;
    w1.workers = 1;
    w4.workers = 4;
    const std::string j1 = run_verify(set, w1).to_json();
    const std::string j4 = run_verify(set, w4).to_json();
    CHECK(j1 == j4);
    CHECK(j1.find("timings") == std::string::npos);
    CHECK(run_verify(set, w1).to_json(true).find("timings_ms") != std::string::npos);

    // Levels enable exactly their checks.
    VerifyOptions counts_only;
    counts_only.level = CheckLevel::counts;
    const VerifyReport rc = run_verify(set, counts_only);
    CHECK(rc.counts.has_value());
    CHECK_FALSE(rc.chars.has_value());
    CHECK(rc.invariance.empty());
    CHECK(rc.pass);

    VerifyOptions chars_only;
    chars_only.level = CheckLevel::chars;
    const VerifyReport rh = run_verify(set, chars_only);
    CHECK_FALSE(rh.counts.has_value());
    CHECK(rh.chars.has_value());
    CHECK(rh.pass);

    // A mutated set flips the verdict at every level.
    const PdsSet mut = set.toggled(3);
    CHECK_FALSE(run_verify(mut, all).pass);
    CHECK_FALSE(run_verify(mut, counts_only).pass);
    CHECK_FALSE(run_verify(mut, chars_only).pass);
    CHECK_FALSE(run_verify(mut, all).size_ok);
}

TEST_CASE("verify report on single-field groups skips the product-only survey") {
    const FieldTable tab = build_field(5, 1, 2);
    const VerifyReport rep = run_verify(paley_pds(tab));
    CHECK(rep.pass);
    CHECK(rep.invariance.empty());
    CHECK(rep.group == "single(5)");
}
