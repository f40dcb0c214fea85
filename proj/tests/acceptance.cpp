// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failing criteria. Optional argument: path of the test_properties binary.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <iostream>
#include <sstream>
#include <string>

#include "hayman/cli.hpp"
#include "hayman/hayman.hpp"
#include "oracle.hpp"

using namespace hayman;

namespace
{

constexpr double kFixtureBudgetSeconds = 1.0;
constexpr int kDeterminismRuns = 3;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::string failures;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            failures += " [failed: " + what + "]";
        }
    }
};

RatFunc P(const char* s) { return parse_ratfunc(s); }
ExpSum E(const char* s) { return parse_expsum(s); }

double seconds_since(std::chrono::steady_clock::time_point t)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

const SolutionFamily* find(const ClassificationReport& r, CaseLabel label)
{
    for (const auto& f : r.families)
        if (f.label == label)
            return &f;
    return nullptr;
}

struct Fixture {
    const char *a, *b, *c;
    CaseLabel label;
    Assignment values;
    const char* expected;
};

const std::vector<Fixture>& fixtures()
{
    static const std::vector<Fixture> v = {
        {"2", "0", "0", CaseLabel::ACosh, {{"c1", 1}, {"C", 1}}, "2 + exp(z) + exp(-z)"},
        {"2", "0", "0", CaseLabel::AQuadratic, {{"c2", 3}}, "-(z + 3)^2"},
        {"-2*z", "z", "0", CaseLabel::B, {{"c1", 5}}, "5*exp(2*z)"},
        {"0", "1", "0", CaseLabel::C, {{"c1", 2}, {"c2", 3}}, "3*exp(2*z) + 1/2"},
        {"1 - z", "0", "-z^2", CaseLabel::D, {{"c1", 4}}, "4*exp(z) - z - 1"},
        {"0", "0", "1", CaseLabel::Ea, {{"k1", 1}, {"sign", 1}, {"C", 1}}, "exp(z)/2 + exp(-z)/2"},
        {"1", "0", "2", CaseLabel::Ec, {{"c1", 3}}, "-(z + 3)^2/2 - 1"},
        {"0", "0", "-1", CaseLabel::Ed, {{"sign", -1}, {"c1", 2}}, "-z + 2"},
        {"1", "2", "1", CaseLabel::Ee, {{"c1", 3}}, "3*exp(-z) - 1"},
    };
    return v;
}

void case_coverage(Outcome& o)
{
    double worst = 0;
    for (const auto& fx : fixtures()) {
        auto t = std::chrono::steady_clock::now();
        RatFunc a = P(fx.a), b = P(fx.b), c = P(fx.c);
        auto r = classify(a, b, c);
        double s = seconds_since(t);
        worst = std::max(worst, s);
        std::string tag = std::string(to_string(fx.label)) + " (" + fx.a + ", " + fx.b + ", " + fx.c + ")";
        o.require(s < kFixtureBudgetSeconds, tag + " over time budget");
        const SolutionFamily* f = find(r, fx.label);
        o.require(f != nullptr, tag + " missing");
        if (!f)
            continue;
        o.require(f->verified, tag + " not verified");
        o.require(f->admissible, tag + " not admissible");
        for (const auto& ch : f->checks)
            o.require(oracle::residual_zero(a, b, c, ch.w), tag + " check " + ch.w.to_string());
        ExpSum w = instantiate(*f, fx.values);
        o.require(w == E(fx.expected), tag + " instantiation " + w.to_string());
        o.require(oracle::residual_zero(a, b, c, w), tag + " instantiation residual");
    }
    // extras named by the criterion
    auto d = classify(P("1 - z"), 0, P("-z^2"));
    const SolutionFamily* df = find(d, CaseLabel::D);
    o.require(df && df->constraints.h && *df->constraints.h == P("z") && df->constants.at(0).second == FieldConstant(1),
              "D: h = z, k1 = 1");
    bool minus = false;
    for (const auto& rb : d.rejected_branches)
        minus = minus || (rb.label == CaseLabel::D && rb.constraint.find("h = -z") != std::string::npos);
    o.require(minus, "D: h = -z rejected");
    auto b = classify(P("-2*z"), P("z"), 0);
    o.require(find(b, CaseLabel::B) && find(b, CaseLabel::B)->constants.at(0).second == FieldConstant(2), "B: k1 = 2");
    auto ee = classify(1, 2, 1);
    o.require(find(ee, CaseLabel::Ee) && *find(ee, CaseLabel::Ee)->constraints.A == RatFunc(2), "E.e: A = 2");
    auto ea = classify(0, 0, 1);
    o.require(find(ea, CaseLabel::Ea) && find(ea, CaseLabel::Ea)->parameters.front().name == "k1", "E.a: k1 free");
    char buf[64];
    std::snprintf(buf, sizeof buf, " slowest fixture %.3f s (limit %.1f s)", worst, kFixtureBudgetSeconds);
    o.detail << fixtures().size() << " fixtures;" << buf;
}

void negative_control(Outcome& o)
{
    std::ostringstream out, err;
    int code = run_command({"classify", "--alpha=z", "--beta=0", "--gamma=1", "--json"}, out, err);
    o.require(code == 2, "exit code " + std::to_string(code));
    Json doc = Json::parse(out.str());
    o.require(doc["report"]["families"].empty(), "families not empty");
    std::set<std::string> named;
    for (const auto& b : doc["report"]["rejected_branches"])
        if (!b["constraint"].get<std::string>().empty())
            named.insert(b["case"].get<std::string>());
    for (auto label : kAllCaseLabels)
        o.require(named.count(std::string(to_string(label))) > 0, "no rejection for " + std::string(to_string(label)));
    o.detail << "exit " << code << ", " << doc["report"]["rejected_branches"].size() << " rejected branches covering "
             << named.size() << " case labels";
}

void transformation(Outcome& o)
{
    RatFunc k0(1), k1(0), k2(0), k3 = P("z^2");
    auto co = transform_original(k0, k1, k2, k3);
    bool literal = co.alpha == RatFunc(-2) && co.beta == P("2*z") && co.gamma == P("1 + 4*z^2");

    int checked = 0;
    bool all_ok = true;
    auto r = classify(co.alpha, co.beta, co.gamma);
    for (const auto& f : r.families)
        for (const auto& ch : f.checks) {
            all_ok = all_ok && oracle::original_residual_zero(k0, k1, k2, k3, ch.w + ExpSum(k3));
            ++checked;
        }
    auto lit = classify(-2, P("2*z"), P("1 + 4*z^2"));

    o.require(literal, "expected beta = 2*z literally; got beta = " + co.beta.to_string());
    o.require(all_ok && checked > 0, "original-equation residual");
    o.detail << "got alpha = " << co.alpha.to_string() << ", beta = " << co.beta.to_string()
             << ", gamma = " << co.gamma.to_string() << ". Substituting f = w + k3 gives beta = k2 + 2 k3', so 4*z is"
             << " correct; the criterion's 2*z yields " << lit.families.size() << " families (vacuous check). "
             << "With the correct beta: " << r.families.size() << " families, " << checked
             << " instantiations, original residual zero for all: " << (all_ok ? "yes" : "no");
}

const std::vector<std::array<const char*, 3>>& corpus()
{
    static const std::vector<std::array<const char*, 3>> v = {
        {"2", "0", "0"},  {"-2*z", "z", "0"}, {"0", "1", "0"}, {"1 - z", "0", "-z^2"}, {"0", "0", "1"},
        {"1", "0", "2"},  {"0", "0", "-1"},   {"1", "2", "1"}, {"z", "0", "1"},        {"0", "0", "0"},
        {"1", "1", "-z^2 - z"}, {"-z^2", "z", "-z^4/4 + z^2/2"}, {"1/z^2 - 2/z^3", "1/z - 1/z^2", "0"},
    };
    return v;
}

void exponential_shape(Outcome& o)
{
    int families = 0, transcendental = 0;
    for (const auto& in : corpus()) {
        auto r = classify(P(in[0]), P(in[1]), P(in[2]));
        for (const auto& f : r.families) {
            ++families;
            for (const auto& ch : f.checks) {
                bool exponential = false;
                for (const auto& t : ch.w.terms())
                    exponential = exponential || !t.rate.is_zero();
                if (!exponential)
                    continue;
                ++transcendental;
                // finite list of constant rates with rational-function coefficients, and it survives reparsing
                o.require(!ch.w.terms().empty() && ch.w.terms().size() < 64, "term count");
                for (const auto& t : ch.w.terms())
                    o.require(!t.coeff.denominator().is_zero(), "coefficient");
                std::map<std::string, FieldConstant> none;
                o.require(parse_expsum(ch.w.to_string(), none) == ch.w, "serialization " + ch.w.to_string());
            }
        }
    }
    o.require(transcendental > 0, "no exponential instantiations");
    o.detail << families << " families, " << transcendental << " exponential instantiations checked";
}

void resonance(Outcome& o)
{
    auto t = std::chrono::steady_clock::now();
    auto summaries = resonance_report(0, -3, -4, 0);
    auto cands = leading_candidates(0, -3, -4, 0);
    oracle::BruteForce bf{Polynomial(), Polynomial(std::vector<FieldConstant>{-3}), Polynomial(std::vector<FieldConstant>{-4}), 1};
    bool saw4 = false, saw1 = false;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const auto& s = summaries[i];
        FieldConstant a0 = cands[i].a0;
        FieldConstant r = FieldConstant(-3) / a0 + FieldConstant(2);
        o.require(s.r && *s.r == r, "r mismatch for a0 = " + a0.to_string());
        auto e = expand(0, -3, -4, 0, 1, a0, 20);
        auto bfr = bf.run(a0, 20);
        if (a0 == FieldConstant(4)) {
            saw4 = true;
            o.require(*s.r == FieldConstant::rational(5, 4) && !s.is_positive_integer, "a0 = 4: r = 5/4 non-integer");
            o.require(!bfr.resonance, "oracle resonance on a0 = 4");
            o.require(e.coefficients == bfr.a, "a0 = 4 coefficients");
        }
        if (a0 == FieldConstant(-1)) {
            saw1 = true;
            o.require(*s.r == FieldConstant(5) && s.is_positive_integer, "a0 = -1: r = 5");
            o.require(bfr.resonance && *bfr.resonance == 5, "oracle resonance index");
            o.require(s.condition_satisfied && bfr.condition && *s.condition_satisfied == *bfr.condition,
                      "condition truth value");
            o.detail << "a0 = -1: r = 5, condition " << (s.condition_satisfied.value_or(false) ? "satisfied" : "violated")
                     << " (oracle agrees); ";
        }
    }
    double s = seconds_since(t);
    o.require(saw4 && saw1, "branches");
    o.require(s < kFixtureBudgetSeconds, "runtime");
    char buf[64];
    std::snprintf(buf, sizeof buf, "a0 = 4: r = 5/4; N = 20 in %.3f s", s);
    o.detail << buf;
}

void series_agreement(Outcome& o)
{
    constexpr int kOrder = 12;
    FieldConstant z0 = FieldConstant::make(-3, 1, -2);
    ExpSum w = E("-(z + 3)^2/2 - 1");
    auto closed = es_laurent_at(w, z0, kOrder + 1);
    bool matched = false;
    for (const auto& cand : leading_candidates(1, 0, 2, z0)) {
        if (cand.a0 != closed.coefficients[0])
            continue;
        auto e = expand(1, 0, 2, z0, cand.p, cand.a0, kOrder, closed.coefficient_of_power(3));
        for (int k = 1; k <= kOrder + 1; ++k)
            o.require(e.coefficient_of_power(k) == closed.coefficient_of_power(k), "power " + std::to_string(k));
        matched = true;
    }
    o.require(matched, "no branch with a0 = " + closed.coefficients[0].to_string());
    o.detail << "z0 = " << z0.to_string() << ", a0 = " << closed.coefficients[0].to_string() << ", exact through n = "
             << kOrder;
}

void integration(Outcome& o)
{
    auto r1 = es_integrate(P("1/z"), 1);
    o.require(!r1.ok() && r1.obstructions.size() == 1 && r1.obstructions[0].residue_coefficient == FieldConstant(1) &&
                  r1.obstructions[0].offending_pole.is_zero(),
              "obstruction for 1/z");
    auto r2 = es_integrate(P("2/z - 1/z^2"), 2);
    o.require(r2.ok() && *r2.antiderivative == ExpSum::exp_term(2, P("1/z")), "antiderivative (1/z) e^{2z}");
    o.require(r2.ok() && r2.antiderivative->derivative() == ExpSum::exp_term(2, P("2/z - 1/z^2")), "derivative back");
    o.detail << "residue " << (r1.obstructions.empty() ? "-" : r1.obstructions[0].residue_coefficient.to_string())
             << "; antiderivative " << (r2.ok() ? r2.antiderivative->to_string() : "-");
}

void properties(Outcome& o, const char* binary)
{
    if (!binary) {
        o.require(false, "test_properties path not given");
        return;
    }
    std::string cmd = std::string("\"") + binary + "\" --gtest_brief=1 > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    o.require(status == 0, "test_properties exit status " + std::to_string(status));
    o.detail << "fixed-seed suites, 200 cases each, spot-check bound " << kSpotTolerance << " * (1 + |w|^2)";
}

void determinism(Outcome& o)
{
    int inputs = 0;
    for (const auto& in : corpus()) {
        std::vector<std::string> args = {"classify", std::string("--alpha=") + in[0], std::string("--beta=") + in[1],
                                         std::string("--gamma=") + in[2], "--json"};
        std::string first;
        for (int i = 0; i < kDeterminismRuns; ++i) {
            std::ostringstream out, err;
            run_command(args, out, err);
            if (i == 0)
                first = out.str();
            else
                o.require(out.str() == first, std::string("output differs for alpha = ") + in[0]);
        }
        ++inputs;
    }
    o.detail << inputs << " inputs x " << kDeterminismRuns << " runs";
}

} // namespace

int main(int argc, char** argv)
{
    const char* properties_binary = argc > 1 ? argv[1] : nullptr;
    struct Criterion {
        const char* name;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria = {
        {"case coverage", case_coverage},
        {"negative control", negative_control},
        {"transformation pipeline", transformation},
        {"exponential-type shape", exponential_shape},
        {"resonance reproduction", resonance},
        {"series/closed-form agreement", series_agreement},
        {"integration obstruction", integration},
        {"property suites", [&](Outcome& o) { properties(o, properties_binary); }},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].name << ": " << o.detail.str()
                  << o.failures << std::endl;
    }
    return failed;
}
