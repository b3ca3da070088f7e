#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pds/construction.hpp"
#include "pds/cyc_int.hpp"

namespace pds {

enum class CheckLevel { counts, chars, all };

std::string to_string(CheckLevel level);
CheckLevel check_level_from_string(const std::string& s);

/// Result of the brute-force difference count: for every group element g the
/// number of ordered pairs (d1, d2) in D x D with d1 - d2 = g (the pair
/// d1 = d2 contributes to g = 0, so the count there is |D|).
struct DiffCountCheck {
    bool pass = false;
    std::int64_t identity_count = 0;
    std::map<std::int64_t, std::int64_t> counts_in_set;   // count value -> #elements of D
    std::map<std::int64_t, std::int64_t> counts_outside;  // count value -> #elements outside
    std::vector<std::string> witnesses;                   // capped at 10
};

/// Result of the exact character-sum sweep. Every additive character of the
/// group is evaluated on D as an exact cyclotomic integer; a value z passes
/// when (2z - (lambda - mu))^2 equals the discriminant — exactly the statement
/// "z is a root of the character quadratic", which reduces to membership in
/// {theta_pos, theta_neg} whenever those are integers and remains exact when
/// they are irrational (conference-graph parameter sets).
struct CharSpectrumCheck {
    bool pass = false;
    bool principal_ok = false;        // principal character value == claimed k
    bool values_ok = false;           // every nonprincipal value on the quadratic
    bool sum_ok = false;              // sum over nonprincipal values == -k
    bool multiplicities_ok = false;   // observed f, g match the derived ones
    bool parseval_ok = false;         // sum of |z|^2 over all characters == v*k
    std::map<std::string, std::int64_t> spectrum;  // canonical value -> multiplicity
    std::int64_t f_observed = -1, g_observed = -1; // only when spectrum is integral
    std::string parseval_sum;
    std::vector<std::string> witnesses;            // capped at 10
    bool used_fast_transform = false;
};

/// Entry budget for the dense component subtraction tables difference_count
/// may build; when the components exceed it the pair loop falls back to
/// direct field arithmetic (same results, less memory, slower).
constexpr std::int64_t kDiffTableBudget = std::int64_t(1) << 25;

DiffCountCheck difference_count(const PdsSet& set, int workers = 0,
                                std::int64_t table_budget = kDiffTableBudget);
CharSpectrumCheck char_spectrum(const PdsSet& set, bool fast_transform = false,
                                int workers = 0);

/// Identity excluded and D = -D.
bool is_regular(const PdsSet& set);

/// True iff {c*g : g in D} = D, the scalar acting componentwise. Requires
/// nonzero c lying in the field that acts on the set's coordinates.
bool scalar_invariance(const PdsSet& set, FieldElem c);

/// Sum over all characters of |chi(D)|^2 must equal v * k (computed exactly
/// from the spectrum sweep).
bool parseval_check(const PdsSet& set, const CharSpectrumCheck& chars);

struct InvarianceResult {
    std::string scalar;  // "1", "alpha^5", "omega", ...
    bool invariant = false;
};

struct VerifyReport {
    std::string family;
    FieldSpec field;
    std::string group;
    ParamSet claimed;
    std::int64_t set_size = 0;
    bool size_ok = false;
    bool zero_excluded = false;
    bool symmetric = false;  // D == -D
    CheckLevel level = CheckLevel::all;
    std::optional<DiffCountCheck> counts;
    std::optional<CharSpectrumCheck> chars;
    std::vector<InvarianceResult> invariance;  // informational, never gates verdict
    bool pass = false;                         // verdict over the enabled checks
    std::map<std::string, double> timings_ms;

    /// JSON rendering; timings are included only on request so that default
    /// reports are byte-identical across runs and worker counts.
    std::string to_json(bool with_timings = false) const;
    std::string to_text(bool with_timings = true) const;
};

struct VerifyOptions {
    CheckLevel level = CheckLevel::all;
    bool fast_transform = false;
    int workers = 0;  // 0 = hardware default
};

/// Run the enabled checks and assemble the report. Level `counts` runs the
/// difference count; `chars` runs the character spectrum (with Parseval);
/// `all` runs both plus the scalar-invariance survey. The verdict covers the
/// difference/character checks; regularity and invariance are reported.
VerifyReport run_verify(const PdsSet& set, const VerifyOptions& opt = {});

}  // namespace pds
