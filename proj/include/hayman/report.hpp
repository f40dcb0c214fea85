#pragma once

// JSON and plain-text rendering of classification reports and local
// expansions. All values are exact strings; only spot checks carry doubles.

#include <complex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hayman/classifier.hpp"
#include "hayman/laurent.hpp"
#include "hayman/local_series.hpp"
#include "hayman/numeric_check.hpp"

namespace hayman
{

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

namespace detail
{

inline Json constants_json(const std::vector<FieldConstant>& v)
{
    Json out = Json::array();
    for (const auto& c : v)
        out.push_back(c.to_string());
    return out;
}

inline Json integers_json(const std::vector<Integer>& v)
{
    Json out = Json::array();
    for (const auto& q : v)
        out.push_back(q.get_str());
    return out;
}

inline Json assignment_json(const Assignment& a)
{
    Json out = Json::object();
    for (const auto& [k, v] : a)
        out[k] = v.to_string();
    return out;
}

inline Json complex_json(std::complex<double> c) { return Json::array({c.real(), c.imag()}); }

} // namespace detail

// Ordered (name, value) list shared by both renderers so that text and JSON
// show the same constraint values.
inline std::vector<std::pair<std::string, std::string>> constraint_entries(const ConstraintSet& cs)
{
    std::vector<std::pair<std::string, std::string>> out;
    auto add = [&](const char* name, const auto& v) {
        if (v)
            out.emplace_back(name, v->to_string());
    };
    add("A", cs.A);
    add("B", cs.B);
    add("g", cs.g);
    add("h", cs.h);
    add("k1_squared", cs.k1_squared);
    add("k2_squared", cs.k2_squared);
    add("discriminant", cs.discriminant);
    add("case2_constraint", cs.case2_constraint);
    return out;
}

inline Json family_json(const SolutionFamily& f)
{
    Json j;
    j["case"] = std::string(to_string(f.label));
    j["formula"] = f.formula;
    Json params = Json::array();
    for (const auto& p : f.parameters) {
        Json pj;
        pj["name"] = p.name;
        pj["domain"] = std::string(to_string(p.domain));
        pj["note"] = p.note;
        if (p.domain == ParamDomain::Sign)
            pj["allowed"] = detail::constants_json(p.allowed);
        params.push_back(std::move(pj));
    }
    j["parameters"] = std::move(params);
    Json consts = Json::object();
    for (const auto& [k, v] : f.constants)
        consts[k] = v.to_string();
    j["constants"] = std::move(consts);
    Json cons = Json::object();
    for (const auto& [k, v] : constraint_entries(f.constraints))
        cons[k] = v;
    j["constraints"] = std::move(cons);
    j["verified"] = f.verified;
    j["admissible"] = f.admissible;
    j["extensions"] = detail::integers_json(f.extensions);
    Json checks = Json::array();
    for (const auto& c : f.checks) {
        Json cj;
        cj["values"] = detail::assignment_json(c.values);
        cj["w"] = c.w.to_string();
        cj["residual_zero"] = c.residual_zero;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    return j;
}

inline Json report_json(const ClassificationReport& r)
{
    Json j;
    Json fams = Json::array();
    for (const auto& f : r.families)
        fams.push_back(family_json(f));
    j["families"] = std::move(fams);
    Json rej = Json::array();
    for (const auto& b : r.rejected_branches)
        rej.push_back({{"case", std::string(to_string(b.label))}, {"constraint", b.constraint}, {"code", b.code}});
    j["rejected_branches"] = std::move(rej);
    j["extensions_used"] = detail::integers_json(r.extensions_used);
    j["admissible_family_count"] = r.admissible_count();
    return j;
}

inline void write_report_text(std::ostream& os, const ClassificationReport& r)
{
    for (const auto& f : r.families) {
        os << "family " << to_string(f.label) << (f.verified ? " verified" : " unverified")
           << (f.admissible ? " admissible" : " not-admissible") << "\n";
        os << "  formula: " << f.formula << "\n";
        for (const auto& p : f.parameters) {
            os << "  parameter " << p.name << " (" << to_string(p.domain);
            if (p.domain == ParamDomain::Sign) {
                os << ":";
                for (const auto& s : p.allowed)
                    os << " " << s.to_string();
            }
            os << ")" << (p.note.empty() ? "" : " " + p.note) << "\n";
        }
        for (const auto& [k, v] : f.constants)
            os << "  constant " << k << " = " << v.to_string() << "\n";
        for (const auto& [k, v] : constraint_entries(f.constraints))
            os << "  constraint " << k << " = " << v << "\n";
        for (const auto& q : f.extensions)
            os << "  extension sqrt(" << q.get_str() << ")\n";
        for (const auto& c : f.checks)
            os << "  check " << detail::assignment_string(c.values) << ": w = " << c.w.to_string()
               << (c.residual_zero ? "  residual 0" : "  residual nonzero") << "\n";
    }
    for (const auto& b : r.rejected_branches)
        os << "rejected " << to_string(b.label) << " [" << b.code << "] " << b.constraint << "\n";
    for (const auto& w : r.warnings)
        os << "warning: " << w << "\n";
    os << "extensions used:";
    if (r.extensions_used.empty())
        os << " none";
    for (const auto& q : r.extensions_used)
        os << " sqrt(" << q.get_str() << ")";
    os << "\nadmissible families: " << r.admissible_count() << "\n";
}

inline Json expansion_json(const LaurentExpansion& e)
{
    Json j;
    j["z0"] = e.z0.to_string();
    j["p"] = e.p;
    j["coefficients"] = detail::constants_json(e.coefficients);
    j["truncation_order"] = e.truncation_order;
    j["linear_factors"] = detail::constants_json(e.linear_factors);
    if (e.resonance) {
        Json r;
        r["r"] = e.resonance->r ? Json(e.resonance->r->to_string()) : Json(nullptr);
        r["is_positive_integer"] = e.resonance->is_positive_integer;
        r["condition_satisfied"] =
            e.resonance->condition_satisfied ? Json(*e.resonance->condition_satisfied) : Json(nullptr);
        r["free_coefficient_index"] =
            e.resonance->free_coefficient_index ? Json(*e.resonance->free_coefficient_index) : Json(nullptr);
        j["resonance"] = std::move(r);
    } else {
        j["resonance"] = nullptr;
    }
    j["alternate_coefficients"] =
        e.alternate_coefficients ? detail::constants_json(*e.alternate_coefficients) : Json(nullptr);
    j["halted_at"] = e.halted_at ? Json(*e.halted_at) : Json(nullptr);
    return j;
}

inline Json summary_json(const ResonanceSummary& s)
{
    Json j;
    j["status"] = s.status;
    j["formula_applicable"] = s.formula_applicable;
    j["r"] = s.r ? Json(s.r->to_string()) : Json(nullptr);
    j["is_positive_integer"] = s.is_positive_integer;
    j["condition_satisfied"] = s.condition_satisfied ? Json(*s.condition_satisfied) : Json(nullptr);
    j["operational_index"] = s.operational_index ? Json(*s.operational_index) : Json(nullptr);
    return j;
}

inline void write_expansion_text(std::ostream& os, const LaurentExpansion& e)
{
    os << "  p = " << e.p << ", truncation order " << e.truncation_order << "\n";
    for (std::size_t n = 0; n < e.coefficients.size(); ++n)
        os << "  a" << n << " = " << e.coefficients[n].to_string() << "\n";
    if (e.resonance && e.resonance->free_coefficient_index)
        os << "  resonance at n = " << *e.resonance->free_coefficient_index << ", condition "
           << (e.resonance->condition_satisfied.value_or(false) ? "satisfied" : "violated") << "\n";
    if (e.halted_at)
        os << "  halted at n = " << *e.halted_at << "\n";
}

inline Json spot_checks_json(const std::vector<SpotCheck>& checks)
{
    Json out = Json::array();
    for (const auto& s : checks)
        out.push_back({{"z", detail::complex_json(s.z)},
                       {"w", detail::complex_json(s.w)},
                       {"residual_abs", s.residual_abs},
                       {"bound", s.bound},
                       {"ok", s.ok}});
    return out;
}

} // namespace hayman
