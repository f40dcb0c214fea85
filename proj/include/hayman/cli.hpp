#pragma once

// Command dispatch for the hayman tool. Exit codes: 0 success, 1 error,
// 2 when classify finds no admissible family or verify finds a nonzero
// residual.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hayman/classifier.hpp"
#include "hayman/local_series.hpp"
#include "hayman/numeric_check.hpp"
#include "hayman/parser.hpp"
#include "hayman/report.hpp"

namespace hayman
{

inline constexpr const char* kExpSumSyntaxHelp =
    "Solution syntax: sums and products of coefficient expressions in z and terms exp(rate * z),\n"
    "where rate is a constant such as 2, -1/2 or 1/2*sqrt(-2). Constants may use sqrt(rational),\n"
    "and parameters given with --params name=value. Division is allowed by a single term only.\n"
    "Example: --solution \"c1*exp(z) - z - 1\" --params c1=2";

namespace detail
{

struct CliOptions {
    std::string alpha = "0", beta = "0", gamma = "0";
    std::string k0 = "0", k1 = "0", k2 = "0", k3 = "0";
    std::string solution;
    std::vector<std::string> params;
    std::string at = "0";
    int order = 10;
    std::optional<int> branch;
    int cap = 64;
    bool json = false;
    bool text = false;
    bool timing = false;
    bool then_classify = false;
};

inline Json header(const std::string& command)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

inline void finish(std::ostream& out, Json& doc, const CliOptions& o, std::chrono::steady_clock::time_point start)
{
    if (o.timing) {
        auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
        doc["timing"] = {{"elapsed_ms", static_cast<double>(us.count()) / 1000.0}};
    }
    out << doc.dump(2) << "\n";
}

inline std::map<std::string, FieldConstant> parse_params(const std::vector<std::string>& items)
{
    std::map<std::string, FieldConstant> out;
    for (const auto& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error(ErrorCode::InvalidArgument, "parameter must be name=value: " + item);
        out[item.substr(0, eq)] = parse_constant(item.substr(eq + 1));
    }
    return out;
}

inline Json direct_input(const CliOptions& o, const RatFunc& a, const RatFunc& b, const RatFunc& c)
{
    Json in;
    in["form"] = "direct";
    in["alpha"] = o.alpha;
    in["beta"] = o.beta;
    in["gamma"] = o.gamma;
    in["parsed"] = {{"alpha", a.to_string()}, {"beta", b.to_string()}, {"gamma", c.to_string()}};
    return in;
}

inline int cmd_classify(const CliOptions& o, std::ostream& out)
{
    auto start = std::chrono::steady_clock::now();
    RatFunc a = parse_ratfunc(o.alpha), b = parse_ratfunc(o.beta), c = parse_ratfunc(o.gamma);
    ClassificationReport r = classify(a, b, c);
    if (o.json) {
        Json doc = header("classify");
        doc["input"] = direct_input(o, a, b, c);
        doc["report"] = report_json(r);
        doc["warnings"] = r.warnings;
        finish(out, doc, o, start);
    } else {
        out << "classify alpha = " << a.to_string() << ", beta = " << b.to_string() << ", gamma = " << c.to_string()
            << "\n";
        write_report_text(out, r);
    }
    return r.admissible_count() > 0 ? 0 : 2;
}

struct OriginalCheck {
    CaseLabel label;
    Assignment values;
    ExpSum f;
    bool residual_zero;
};

inline int cmd_transform(const CliOptions& o, std::ostream& out)
{
    auto start = std::chrono::steady_clock::now();
    RatFunc k0 = parse_ratfunc(o.k0), k1 = parse_ratfunc(o.k1), k2 = parse_ratfunc(o.k2), k3 = parse_ratfunc(o.k3);
    Coefficients co = transform_original(k0, k1, k2, k3);
    std::optional<ClassificationReport> r;
    std::vector<OriginalCheck> checks;
    bool all_ok = true;
    if (o.then_classify) {
        r = classify(co.alpha, co.beta, co.gamma);
        for (const auto& fam : r->families)
            for (const auto& ch : fam.checks) {
                ExpSum f = ch.w + ExpSum(k3);
                bool ok = original_residual(k0, k1, k2, k3, f).is_zero();
                all_ok = all_ok && ok;
                checks.push_back({fam.label, ch.values, f, ok});
            }
    }
    if (o.json) {
        Json doc = header("transform");
        doc["input"] = {{"form", "original-kappa"}, {"k0", o.k0}, {"k1", o.k1}, {"k2", o.k2}, {"k3", o.k3}};
        doc["coefficients"] = {
            {"alpha", co.alpha.to_string()}, {"beta", co.beta.to_string()}, {"gamma", co.gamma.to_string()}};
        if (r) {
            doc["report"] = report_json(*r);
            Json oc = Json::array();
            for (const auto& ch : checks)
                oc.push_back({{"case", std::string(to_string(ch.label))},
                              {"values", assignment_json(ch.values)},
                              {"f", ch.f.to_string()},
                              {"residual_zero", ch.residual_zero}});
            doc["original_checks"] = std::move(oc);
            doc["warnings"] = r->warnings;
        } else {
            doc["warnings"] = Json::array();
        }
        finish(out, doc, o, start);
    } else {
        out << "alpha = " << co.alpha.to_string() << "\n";
        out << "beta = " << co.beta.to_string() << "\n";
        out << "gamma = " << co.gamma.to_string() << "\n";
        if (r) {
            write_report_text(out, *r);
            for (const auto& ch : checks)
                out << "original " << to_string(ch.label) << " " << assignment_string(ch.values) << ": f = "
                    << ch.f.to_string() << (ch.residual_zero ? "  residual 0" : "  residual nonzero") << "\n";
        }
    }
    if (!all_ok)
        return 1;
    if (r)
        return r->admissible_count() > 0 ? 0 : 2;
    return 0;
}

inline int cmd_verify(const CliOptions& o, std::ostream& out)
{
    auto start = std::chrono::steady_clock::now();
    if (o.solution.empty())
        throw Error(ErrorCode::InvalidArgument, "--solution is required");
    RatFunc a = parse_ratfunc(o.alpha), b = parse_ratfunc(o.beta), c = parse_ratfunc(o.gamma);
    auto params = parse_params(o.params);
    ExpSum w = parse_expsum(o.solution, params);
    ExpSum res = es_residual(a, b, c, w);
    auto spots = numeric_spot_check(a, b, c, w);
    bool spots_ok = std::all_of(spots.begin(), spots.end(), [](const SpotCheck& s) { return s.ok; });
    if (o.json) {
        Json doc = header("verify");
        Json in = direct_input(o, a, b, c);
        in["solution"] = o.solution;
        in["params"] = assignment_json(params);
        in["parsed_solution"] = w.to_string();
        doc["input"] = std::move(in);
        doc["residual"] = res.to_string();
        doc["residual_zero"] = res.is_zero();
        doc["spot_checks"] = spot_checks_json(spots);
        doc["spot_checks_passed"] = spots_ok;
        doc["warnings"] = Json::array();
        finish(out, doc, o, start);
    } else {
        out << "w = " << w.to_string() << "\n";
        out << "residual = " << res.to_string() << (res.is_zero() ? "  (identically zero)" : "") << "\n";
        out << "spot checks (|z| <= 2):\n";
        char line[160];
        for (const auto& s : spots) {
            std::snprintf(line, sizeof line, "  z = %+.6f%+.6fi  |residual| = %.3e  bound = %.3e  %s\n", s.z.real(),
                          s.z.imag(), s.residual_abs, s.bound, s.ok ? "ok" : "FAIL");
            out << line;
        }
    }
    return res.is_zero() ? 0 : 2;
}

inline int cmd_expand(const CliOptions& o, std::ostream& out)
{
    auto start = std::chrono::steady_clock::now();
    RatFunc a = parse_ratfunc(o.alpha), b = parse_ratfunc(o.beta), c = parse_ratfunc(o.gamma);
    FieldConstant z0 = parse_constant(o.at);
    auto cands = leading_candidates(a, b, c, z0);
    auto summaries = resonance_report(a, b, c, z0, o.cap);
    if (o.branch && (*o.branch < 0 || *o.branch >= static_cast<int>(cands.size())))
        throw Error(ErrorCode::InvalidArgument, "--branch " + std::to_string(*o.branch) + " out of range (" +
                                                    std::to_string(cands.size()) + " branches)");
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (!o.branch || static_cast<int>(i) == *o.branch)
            chosen.push_back(i);
    std::vector<LaurentExpansion> exps;
    for (auto i : chosen) {
        auto e = expand(a, b, c, z0, cands[i].p, cands[i].a0, o.order);
        e.multiplicity = cands[i].multiplicity;
        exps.push_back(std::move(e));
    }
    std::vector<std::string> warnings;
    if (cands.empty())
        warnings.push_back("all coefficients vanish; nonzero solutions c2*exp(c1*z) have no zeros");
    if (o.json) {
        Json doc = header("expand");
        Json in = direct_input(o, a, b, c);
        in["at"] = z0.to_string();
        in["order"] = o.order;
        in["branch"] = o.branch ? Json(*o.branch) : Json(nullptr);
        in["cap"] = o.cap;
        doc["input"] = std::move(in);
        Json br = Json::array();
        for (std::size_t k = 0; k < chosen.size(); ++k) {
            const auto& cand = cands[chosen[k]];
            Json bj;
            bj["index"] = chosen[k];
            bj["p"] = cand.p;
            bj["a0"] = cand.a0.to_string();
            bj["multiplicity"] = cand.multiplicity;
            bj["note"] = cand.note;
            bj["side_condition"] = cand.side_condition ? Json(*cand.side_condition) : Json(nullptr);
            bj["resonance_summary"] = summary_json(summaries[chosen[k]]);
            bj["expansion"] = expansion_json(exps[k]);
            br.push_back(std::move(bj));
        }
        doc["branches"] = std::move(br);
        doc["warnings"] = warnings;
        finish(out, doc, o, start);
    } else {
        out << "expand at z0 = " << z0.to_string() << " through n = " << o.order << "\n";
        for (std::size_t k = 0; k < chosen.size(); ++k) {
            const auto& cand = cands[chosen[k]];
            const auto& s = summaries[chosen[k]];
            out << "branch " << chosen[k] << ": p = " << cand.p << ", a0 = " << cand.a0.to_string() << " (" << cand.note
                << ")\n";
            out << "  resonance: " << s.status;
            if (s.r)
                out << ", r = " << s.r->to_string();
            if (s.operational_index)
                out << ", operational index " << *s.operational_index;
            if (s.condition_satisfied)
                out << ", condition " << (*s.condition_satisfied ? "satisfied" : "violated");
            out << "\n";
            write_expansion_text(out, exps[k]);
        }
        for (const auto& w : warnings)
            out << "warning: " << w << "\n";
    }
    return 0;
}

inline void report_error(const Error& e, const CliOptions& o, const std::string& command, std::ostream& out,
                         std::ostream& err)
{
    err << "error: " << e.what() << "\n";
    if (o.json) {
        Json doc = header(command);
        Json ej;
        ej["code"] = std::string(to_string(e.code()));
        ej["message"] = e.what();
        ej["position"] = e.position() ? Json(*e.position()) : Json(nullptr);
        doc["error"] = std::move(ej);
        out << doc.dump(2) << "\n";
    }
}

} // namespace detail

// argv without the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    detail::CliOptions o;
    CLI::App app{"Exact classifier for w*w'' - w'^2 = alpha*w + beta*w' + gamma with rational coefficients", "hayman"};
    app.require_subcommand(1);

    auto coeffs = [&](CLI::App* sub) {
        sub->add_option("--alpha", o.alpha, "coefficient alpha(z)")->required();
        sub->add_option("--beta", o.beta, "coefficient beta(z)")->required();
        sub->add_option("--gamma", o.gamma, "coefficient gamma(z)")->required();
    };
    auto modes = [&](CLI::App* sub) {
        auto* j = sub->add_flag("--json", o.json, "JSON output");
        auto* t = sub->add_flag("--text", o.text, "plain-text output (default)");
        j->excludes(t);
        sub->add_flag("--timing", o.timing, "add elapsed time to JSON output");
    };

    auto* classify_cmd = app.add_subcommand("classify", "list the solution families of the equation");
    coeffs(classify_cmd);
    modes(classify_cmd);

    auto* transform_cmd =
        app.add_subcommand("transform", "reduce f f'' - f'^2 = k0 + k1 f + k2 f' + k3 f'' by w = f - k3");
    transform_cmd->add_option("--k0", o.k0)->required();
    transform_cmd->add_option("--k1", o.k1)->required();
    transform_cmd->add_option("--k2", o.k2)->required();
    transform_cmd->add_option("--k3", o.k3)->required();
    transform_cmd->add_flag("--then-classify", o.then_classify, "classify the reduced equation");
    modes(transform_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "substitute a solution and report the residual");
    coeffs(verify_cmd);
    verify_cmd->add_option("--solution", o.solution, "exponential-sum expression for w")->required();
    verify_cmd->add_option("--params", o.params, "parameter values name=value")->expected(0, -1);
    verify_cmd->footer(kExpSumSyntaxHelp);
    modes(verify_cmd);

    auto* expand_cmd = app.add_subcommand("expand", "series expansion of a solution at a zero z0");
    coeffs(expand_cmd);
    expand_cmd->add_option("--at", o.at, "expansion point z0 (exact constant)")->required();
    expand_cmd->add_option("--order", o.order, "truncation order N")->required();
    expand_cmd->add_option("--branch", o.branch, "expand only this leading-order branch (0-based)");
    expand_cmd->add_option("--cap", o.cap, "largest resonance index evaluated")->capture_default_str();
    modes(expand_cmd);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (command == "classify")
            return detail::cmd_classify(o, out);
        if (command == "transform")
            return detail::cmd_transform(o, out);
        if (command == "verify")
            return detail::cmd_verify(o, out);
        return detail::cmd_expand(o, out);
    } catch (const Error& e) {
        detail::report_error(e, o, command, out, err);
        return 1;
    }
}

} // namespace hayman
