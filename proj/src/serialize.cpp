#include "pds/serialize.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "pds/verify.hpp"

namespace pds {

namespace {

using nlohmann::json;

json field_json(const FieldSpec& spec) {
    return json{{"p", spec.p},
                {"s", spec.s},
                {"m", spec.m},
                {"d", spec.d},
                {"modulus", spec.modulus}};
}

json claimed_json(const ParamSet& ps) {
    json j{{"v", ps.v}, {"k", ps.k}, {"lambda", ps.lambda}, {"mu", ps.mu}};
    j["disc"] = ps.disc;
    j["k2_identity"] = ps.k2_ok;
    j["integral_spectrum"] = ps.integral_spectrum;
    if (ps.integral_spectrum) {
        j["theta_pos"] = ps.theta_pos;
        j["theta_neg"] = ps.theta_neg;
        j["f"] = ps.f;
        j["g"] = ps.g;
    }
    return j;
}

}  // namespace

std::string pds_to_json(const PdsSet& set) {
    json j;
    j["schema"] = 1;
    j["kind"] = "pds_set";
    j["field"] = field_json(set.table().spec());
    const bool product = set.group().kind == GroupDesc::Kind::product;
    j["group"] = product ? json{{"kind", "product"}}
                         : json{{"kind", "single"}, {"order", set.group().sub_order}};
    j["family"] = set.family();
    if (set.r() >= 0) {
        j["r"] = set.r();
        j["subspace_basis_dlogs"] = set.subspace_dlogs();
    }
    j["claimed"] = claimed_json(set.claimed());
    std::vector<std::int64_t> indices;
    indices.reserve(std::size_t(set.size()));
    for (const GroupElem& g : set.members()) indices.push_back(set.index_of(g));
    j["indices"] = indices;
    return j.dump(2) + "\n";
}

std::string pds_to_text(const PdsSet& set) {
    std::ostringstream out;
    for (const GroupElem& g : set.members()) out << set.index_of(g) << "\n";
    return out.str();
}

LoadedPds pds_from_json(const std::string& text, std::int64_t size_cap) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("pds_from_json: not valid JSON: ") + e.what());
    }
    try {
        if (!j.is_object() || j.value("schema", 0) != 1 || j.value("kind", "") != "pds_set")
            throw std::invalid_argument("pds_from_json: expected a schema-1 pds_set document");
        const json& jf = j.at("field");
        const std::vector<std::int64_t> modulus = jf.at("modulus").get<std::vector<std::int64_t>>();
        LoadedPds loaded;
        loaded.table = std::make_unique<FieldTable>(
            build_field(jf.at("p").get<std::int64_t>(), jf.at("s").get<int>(),
                        jf.at("m").get<int>(), modulus, size_cap));

        const json& jg = j.at("group");
        GroupDesc group;
        const std::string kind = jg.at("kind").get<std::string>();
        if (kind == "product") {
            group.kind = GroupDesc::Kind::product;
        } else if (kind == "single") {
            group.kind = GroupDesc::Kind::single;
            group.sub_order = jg.at("order").get<std::int64_t>();
        } else {
            throw std::invalid_argument("pds_from_json: unknown group kind '" + kind + "'");
        }

        const json& jc = j.at("claimed");
        const ParamSet claimed =
            derive_params(jc.at("v").get<std::int64_t>(), jc.at("k").get<std::int64_t>(),
                          jc.at("lambda").get<std::int64_t>(), jc.at("mu").get<std::int64_t>());

        const std::vector<std::int64_t> indices = j.at("indices").get<std::vector<std::int64_t>>();
        const std::int64_t v = group.group_order(*loaded.table);
        for (std::int64_t idx : indices)
            if (idx < 0 || idx >= v)
                throw std::invalid_argument("pds_from_json: index " + std::to_string(idx) +
                                            " out of range for group order " + std::to_string(v));
        loaded.set = std::make_unique<PdsSet>(PdsSet::from_indices(
            *loaded.table, group, indices, claimed, j.value("family", "imported")));
        if (j.contains("r"))
            loaded.set->set_provenance(
                j.at("r").get<int>(),
                j.value("subspace_basis_dlogs", std::vector<std::int64_t>{}));
        return loaded;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("pds_from_json: malformed document: ") + e.what());
    }
}

namespace {

json diff_json(const DiffCountCheck& c) {
    json in_hist = json::object(), out_hist = json::object();
    for (const auto& [count, elems] : c.counts_in_set) in_hist[std::to_string(count)] = elems;
    for (const auto& [count, elems] : c.counts_outside) out_hist[std::to_string(count)] = elems;
    return json{{"pass", c.pass},
                {"identity_count", c.identity_count},
                {"counts_in_set", in_hist},
                {"counts_outside", out_hist},
                {"witnesses", c.witnesses}};
}

json chars_json(const CharSpectrumCheck& c) {
    json spectrum = json::object();
    for (const auto& [value, mult] : c.spectrum) spectrum[value] = mult;
    json j{{"pass", c.pass},
           {"principal_ok", c.principal_ok},
           {"values_on_quadratic", c.values_ok},
           {"sum_ok", c.sum_ok},
           {"multiplicities_ok", c.multiplicities_ok},
           {"parseval_ok", c.parseval_ok},
           {"parseval_sum", c.parseval_sum},
           {"spectrum", spectrum},
           {"fast_transform", c.used_fast_transform},
           {"witnesses", c.witnesses}};
    if (c.f_observed >= 0) {
        j["f_observed"] = c.f_observed;
        j["g_observed"] = c.g_observed;
    }
    return j;
}

}  // namespace

std::string VerifyReport::to_json(bool with_timings) const {
    json j;
    j["schema"] = 1;
    j["kind"] = "verify_report";
    j["family"] = family;
    j["field"] = field_json(field);
    j["group"] = group;
    j["claimed"] = claimed_json(claimed);
    j["set_size"] = set_size;
    j["size_matches_k"] = size_ok;
    j["regular"] = json{{"zero_excluded", zero_excluded}, {"symmetric", symmetric}};
    j["check_level"] = pds::to_string(level);
    json checks = json::object();
    if (counts) checks["difference_count"] = diff_json(*counts);
    if (chars) checks["char_spectrum"] = chars_json(*chars);
    j["checks"] = checks;
    if (!invariance.empty()) {
        json inv = json::array();
        for (const auto& r : invariance)
            inv.push_back(json{{"scalar", r.scalar}, {"invariant", r.invariant}});
        j["invariance"] = inv;
    }
    j["verdict"] = pass ? "pass" : "fail";
    if (with_timings) {
        json t = json::object();
        for (const auto& [phase, ms] : timings_ms) t[phase] = ms;
        j["timings_ms"] = t;
    }
    return j.dump(2) + "\n";
}

std::string VerifyReport::to_text(bool with_timings) const {
    std::ostringstream out;
    out << "family: " << family << "\n";
    out << "field: p=" << field.p << " s=" << field.s << " m=" << field.m << " d=" << field.d
        << " modulus=[";
    for (std::size_t i = 0; i < field.modulus.size(); ++i)
        out << (i ? "," : "") << field.modulus[i];
    out << "]\n";
    out << "group: " << group << "\n";
    out << "claimed: v=" << claimed.v << " k=" << claimed.k << " lambda=" << claimed.lambda
        << " mu=" << claimed.mu;
    if (claimed.integral_spectrum)
        out << "  theta=(" << claimed.theta_pos << "," << claimed.theta_neg << ") f=" << claimed.f
            << " g=" << claimed.g;
    out << "\n";
    out << "set size: " << set_size << (size_ok ? " (matches k)" : " (MISMATCH with k)") << "\n";
    out << "regular: zero_excluded=" << (zero_excluded ? "yes" : "no")
        << " symmetric=" << (symmetric ? "yes" : "no") << "\n";
    if (counts) {
        out << "difference_count: " << (counts->pass ? "pass" : "FAIL")
            << " (identity count " << counts->identity_count << ")\n";
        out << "  counts in set:";
        for (const auto& [count, elems] : counts->counts_in_set)
            out << " " << count << "x" << elems;
        out << "\n  counts outside:";
        for (const auto& [count, elems] : counts->counts_outside)
            out << " " << count << "x" << elems;
        out << "\n";
        for (const auto& w : counts->witnesses) out << "  witness: " << w << "\n";
    }
    if (chars) {
        out << "char_spectrum: " << (chars->pass ? "pass" : "FAIL")
            << (chars->used_fast_transform ? " [fast transform]" : "") << "\n";
        out << "  spectrum:";
        for (const auto& [value, mult] : chars->spectrum)
            out << " (" << value << ")x" << mult;
        out << "\n";
        if (chars->f_observed >= 0)
            out << "  multiplicities: f=" << chars->f_observed << " g=" << chars->g_observed
                << (chars->multiplicities_ok ? " (ok)" : " (MISMATCH)") << "\n";
        out << "  parseval: " << (chars->parseval_ok ? "pass" : "FAIL") << " (sum "
            << chars->parseval_sum << ")\n";
        for (const auto& w : chars->witnesses) out << "  witness: " << w << "\n";
    }
    for (const auto& r : invariance)
        out << "invariance under " << r.scalar << ": " << (r.invariant ? "yes" : "no") << "\n";
    out << "verdict: " << (pass ? "pass" : "FAIL") << "\n";
    if (with_timings)
        for (const auto& [phase, ms] : timings_ms)
            out << "time " << phase << ": " << ms << " ms\n";
    return out.str();
}

}  // namespace pds
