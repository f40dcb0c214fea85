#pragma once

// Decision procedure for the meromorphic solution families of
//     w w'' - w'^2 = alpha w + beta w' + gamma
// with rational coefficients. Every branch builds its candidate from the
// closed-form template for that case and keeps it only if the exact residual
// vanishes at several parameter points; failures are logged, never emitted.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hayman/constant_field.hpp"
#include "hayman/expsum.hpp"
#include "hayman/ratfunc.hpp"
#include "hayman/roots.hpp"

namespace hayman
{

enum class CaseLabel { TrivialAllZero, ACosh, AQuadratic, B, C, D, Ea, Eb, Ec, Ed, Ee };

inline constexpr std::array<CaseLabel, 11> kAllCaseLabels = {
    CaseLabel::TrivialAllZero, CaseLabel::ACosh, CaseLabel::AQuadratic, CaseLabel::B,  CaseLabel::C,  CaseLabel::D,
    CaseLabel::Ea,             CaseLabel::Eb,    CaseLabel::Ec,         CaseLabel::Ed, CaseLabel::Ee,
};

inline std::string_view to_string(CaseLabel label)
{
    switch (label) {
    case CaseLabel::TrivialAllZero: return "trivial-all-zero";
    case CaseLabel::ACosh: return "A-cosh";
    case CaseLabel::AQuadratic: return "A-quadratic";
    case CaseLabel::B: return "B";
    case CaseLabel::C: return "C";
    case CaseLabel::D: return "D";
    case CaseLabel::Ea: return "E.a";
    case CaseLabel::Eb: return "E.b";
    case CaseLabel::Ec: return "E.c";
    case CaseLabel::Ed: return "E.d";
    case CaseLabel::Ee: return "E.e";
    }
    return "?";
}

enum class ParamDomain { Any, NonZero, Sign };

inline std::string_view to_string(ParamDomain d)
{
    switch (d) {
    case ParamDomain::Any: return "any";
    case ParamDomain::NonZero: return "nonzero";
    case ParamDomain::Sign: return "sign";
    }
    return "?";
}

struct Parameter {
    std::string name;
    ParamDomain domain = ParamDomain::Any;
    std::string note;
    // Sign parameters: the signs that passed verification.
    std::vector<FieldConstant> allowed;
};

using Assignment = std::map<std::string, FieldConstant>;

// Constraint quantities for the branch that produced a family; unset fields
// are not applicable to that branch.
struct ConstraintSet {
    std::optional<RatFunc> A;
    std::optional<RatFunc> B;
    std::optional<FieldConstant> g;
    std::optional<RatFunc> h;
    std::optional<FieldConstant> k1_squared;
    std::optional<FieldConstant> k2_squared;
    std::optional<RatFunc> discriminant;
    std::optional<RatFunc> case2_constraint;
};

struct FamilyCheck {
    Assignment values;
    ExpSum w;
    bool residual_zero = false;
    std::string failure; // residual or error text when not zero
};

struct SolutionFamily {
    CaseLabel label = CaseLabel::TrivialAllZero;
    std::vector<Parameter> parameters;
    std::string formula;
    std::vector<std::pair<std::string, FieldConstant>> constants;
    ConstraintSet constraints;
    std::function<ExpSum(const Assignment&)> build;
    std::vector<FamilyCheck> checks;
    bool verified = false;
    bool admissible = false;
    std::vector<Integer> extensions;
};

struct RejectedBranch {
    CaseLabel label;
    std::string constraint;
    // ConstraintFailed, NotApplicable, SubstitutionFailed, IntegrationObstructed,
    // Unsupported, IrreducibleDenominator
    std::string code = "ConstraintFailed";
};

struct ClassificationReport {
    RatFunc alpha, beta, gamma;
    std::vector<SolutionFamily> families;
    std::vector<RejectedBranch> rejected_branches;
    std::vector<Integer> extensions_used;
    std::vector<std::string> warnings;

    std::size_t admissible_count() const
    {
        return static_cast<std::size_t>(
            std::count_if(families.begin(), families.end(), [](const SolutionFamily& f) { return f.admissible; }));
    }
};

// --- coefficient transformation ----------------------------------------------

struct Coefficients {
    RatFunc alpha, beta, gamma;
};

// f f'' - f'^2 = k0 + k1 f + k2 f' + k3 f''  becomes the reduced equation
// under w = f - k3. The cross term -2 k3' w' from -(w' + k3')^2 gives
// beta = k2 + 2 k3'.
inline Coefficients transform_original(const RatFunc& k0, const RatFunc& k1, const RatFunc& k2, const RatFunc& k3)
{
    RatFunc d1 = k3.derivative();
    RatFunc d2 = d1.derivative();
    return {k1 - d2, k2 + RatFunc(2) * d1, k0 + k1 * k3 + k2 * d1 + d1 * d1};
}

// f f'' - f'^2 - k0 - k1 f - k2 f' - k3 f'', computed directly.
inline ExpSum original_residual(const RatFunc& k0, const RatFunc& k1, const RatFunc& k2, const RatFunc& k3,
                                const ExpSum& f)
{
    ExpSum f1 = f.derivative();
    ExpSum f2 = f1.derivative();
    return f * f2 - f1 * f1 - ExpSum(k0) - ExpSum(k1) * f - ExpSum(k2) * f1 - ExpSum(k3) * f2;
}

inline RatFunc compute_A(const RatFunc& alpha, const RatFunc& beta, const RatFunc& gamma)
{
    if (gamma.is_zero())
        throw Error(ErrorCode::GammaIdenticallyZero, "A is undefined when gamma vanishes identically");
    return (beta * (alpha + beta.derivative()) - gamma.derivative()) / gamma;
}

// --- families -----------------------------------------------------------------

inline ExpSum instantiate(const SolutionFamily& family, const Assignment& values)
{
    for (const auto& p : family.parameters) {
        auto it = values.find(p.name);
        if (it == values.end())
            throw Error(ErrorCode::DomainViolation, "missing value for parameter " + p.name);
        const FieldConstant& v = it->second;
        if (p.domain == ParamDomain::NonZero && v.is_zero())
            throw Error(ErrorCode::DomainViolation, "parameter " + p.name + " must be nonzero");
        if (p.domain == ParamDomain::Sign) {
            const auto& allowed = p.allowed.empty() ? std::vector<FieldConstant>{1, -1} : p.allowed;
            if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
                throw Error(ErrorCode::DomainViolation, "parameter " + p.name + " must be one of the verified signs");
        }
    }
    return family.build(values);
}

inline bool admissibility(const SolutionFamily& family, const RatFunc& alpha, const RatFunc& beta, const RatFunc& gamma)
{
    if (!family.verified)
        throw Error(ErrorCode::InvalidArgument, "admissibility requires a verified family");
    const bool constant_coefficients = alpha.is_constant() && beta.is_constant() && gamma.is_constant();
    for (const auto& check : family.checks) {
        bool generic = std::all_of(check.values.begin(), check.values.end(),
                                   [](const auto& kv) { return !kv.second.is_zero(); });
        if (!generic)
            continue;
        if (check.w.has_nonzero_rate())
            return true;
        if (constant_coefficients && !check.w.is_constant())
            return true;
    }
    return false;
}

namespace detail
{

inline const std::vector<FieldConstant>& sample_values()
{
    static const std::vector<FieldConstant> values = {
        1, 2, FieldConstant::rational(-1, 2), 3, FieldConstant::rational(-3, 2), 5,
    };
    return values;
}

// Three distinct nonzero assignments per admissible sign.
inline std::vector<Assignment> default_samples(const std::vector<Parameter>& params)
{
    const auto& vals = sample_values();
    std::vector<Assignment> out;
    const Parameter* sign = nullptr;
    for (const auto& p : params)
        if (p.domain == ParamDomain::Sign)
            sign = &p;
    std::vector<FieldConstant> signs = sign ? (sign->allowed.empty() ? std::vector<FieldConstant>{1, -1} : sign->allowed)
                                            : std::vector<FieldConstant>{1};
    for (const auto& s : signs)
        for (std::size_t j = 0; j < 3; ++j) {
            Assignment a;
            std::size_t i = 0;
            for (const auto& p : params) {
                if (p.domain == ParamDomain::Sign)
                    a[p.name] = s;
                else
                    a[p.name] = vals[(j + 2 * i++) % vals.size()];
            }
            out.push_back(std::move(a));
        }
    return out;
}

inline std::string assignment_string(const Assignment& a)
{
    std::string out;
    for (const auto& [k, v] : a) {
        if (!out.empty())
            out += ", ";
        out += k + " = " + v.to_string();
    }
    return out;
}

class Classifier
{
public:
    Classifier(RatFunc alpha, RatFunc beta, RatFunc gamma)
    {
        report_.alpha = std::move(alpha);
        report_.beta = std::move(beta);
        report_.gamma = std::move(gamma);
        da_ = a().derivative();
        db_ = b().derivative();
        ddb_ = db_.derivative();
    }

    ClassificationReport run()
    {
        trivial();
        case_a();
        case_b();
        case_c();
        case_d();
        case_e();
        std::set<Integer> exts;
        for (const auto& f : report_.families)
            exts.insert(f.extensions.begin(), f.extensions.end());
        report_.extensions_used.assign(exts.begin(), exts.end());
        return std::move(report_);
    }

private:
    const RatFunc& a() const { return report_.alpha; }
    const RatFunc& b() const { return report_.beta; }
    const RatFunc& c() const { return report_.gamma; }

    void reject(CaseLabel label, std::string text, std::string code = "ConstraintFailed")
    {
        report_.rejected_branches.push_back({label, std::move(text), std::move(code)});
    }

    void reject_all(std::initializer_list<CaseLabel> labels, const std::string& text,
                    const std::string& code = "ConstraintFailed")
    {
        for (auto l : labels)
            reject(l, text, code);
    }

    static std::string code_for(const Error& e)
    {
        switch (e.code()) {
        case ErrorCode::IrreducibleDenominator: return "IrreducibleDenominator";
        case ErrorCode::IncompatibleExtensions:
        case ErrorCode::NestedExtension:
        case ErrorCode::Unsupported: return "Unsupported";
        default: return std::string(to_string(e.code()));
        }
    }

    // Verification gate. Sign parameters are verified one sign at a time;
    // a failing sign is dropped from the domain and logged.
    bool gate(SolutionFamily fam, std::vector<Assignment> samples = {})
    {
        Parameter* sign = nullptr;
        for (auto& p : fam.parameters)
            if (p.domain == ParamDomain::Sign)
                sign = &p;
        if (sign && sign->allowed.empty())
            sign->allowed = {1, -1};
        if (samples.empty())
            samples = default_samples(fam.parameters);

        std::map<FieldConstant, bool> sign_ok;
        std::map<FieldConstant, std::string> sign_failure;
        std::vector<FamilyCheck> checks;
        bool all_ok = true;
        std::string first_failure;
        for (const auto& s : samples) {
            FamilyCheck check;
            check.values = s;
            try {
                check.w = fam.build(s);
                ExpSum res = es_residual(a(), b(), c(), check.w);
                check.residual_zero = res.is_zero();
                if (!check.residual_zero)
                    check.failure = "residual " + res.to_string();
            } catch (const Error& e) {
                check.residual_zero = false;
                check.failure = e.what();
            }
            FieldConstant key = sign ? s.at(sign->name) : FieldConstant(1);
            if (!sign_ok.count(key))
                sign_ok[key] = true;
            if (!check.residual_zero) {
                sign_ok[key] = false;
                if (!sign_failure.count(key))
                    sign_failure[key] = "at " + assignment_string(s) + ": " + check.failure;
                all_ok = false;
                if (first_failure.empty())
                    first_failure = sign_failure[key];
            }
            checks.push_back(std::move(check));
        }
        if (sign) {
            std::vector<FieldConstant> passing;
            for (const auto& sv : sign->allowed) {
                if (sign_ok[sv])
                    passing.push_back(sv);
                else
                    reject(fam.label, "sign " + sv.to_string() + " fails substitution " + sign_failure[sv],
                           "SubstitutionFailed");
            }
            if (passing.empty())
                return false;
            sign->allowed = passing;
            std::erase_if(checks, [&](const FamilyCheck& ch) {
                return std::find(passing.begin(), passing.end(), ch.values.at(sign->name)) == passing.end();
            });
            all_ok = std::all_of(checks.begin(), checks.end(), [](const FamilyCheck& ch) { return ch.residual_zero; });
        } else if (!all_ok) {
            reject(fam.label, "substitution check failed " + first_failure, "SubstitutionFailed");
            return false;
        }
        if (!all_ok || checks.size() < 3) {
            reject(fam.label, "fewer than three verified instantiations", "SubstitutionFailed");
            return false;
        }
        fam.checks = std::move(checks);
        fam.verified = true;
        std::set<Integer> exts;
        for (const auto& ch : fam.checks) {
            try {
                if (auto q = ch.w.extension())
                    exts.insert(*q);
            } catch (const Error&) {
            }
        }
        fam.extensions.assign(exts.begin(), exts.end());
        fam.admissible = admissibility(fam, a(), b(), c());
        report_.families.push_back(std::move(fam));
        return true;
    }

    // --- branches --------------------------------------------------------------

    void trivial()
    {
        if (!(a().is_zero() && b().is_zero() && c().is_zero())) {
            reject(CaseLabel::TrivialAllZero, "requires alpha = beta = gamma = 0", "NotApplicable");
            return;
        }
        SolutionFamily fam;
        fam.label = CaseLabel::TrivialAllZero;
        fam.parameters = {{"c1", ParamDomain::Any, "rate", {}}, {"c2", ParamDomain::NonZero, "amplitude", {}}};
        fam.formula = "w = c2*exp(c1*z)";
        fam.build = [](const Assignment& v) { return ExpSum::exp_term(v.at("c1"), RatFunc(v.at("c2"))); };
        gate(std::move(fam));
    }

    void case_a()
    {
        const std::initializer_list<CaseLabel> labels = {CaseLabel::ACosh, CaseLabel::AQuadratic};
        if (!b().is_zero()) {
            reject_all(labels, "requires beta = 0 (beta = " + b().to_string() + ")", "NotApplicable");
            return;
        }
        if (!c().is_zero()) {
            reject_all(labels, "requires gamma = 0 (gamma = " + c().to_string() + ")", "NotApplicable");
            return;
        }
        if (a().is_zero()) {
            reject_all(labels, "requires alpha != 0", "NotApplicable");
            return;
        }
        auto k1 = a().constant_value();
        if (!k1) {
            reject_all(labels, "k1 = alpha = " + a().to_string() + " is not constant");
            return;
        }
        ConstraintSet cs;
        cs.case2_constraint = a() + db_;
        {
            SolutionFamily fam;
            fam.label = CaseLabel::ACosh;
            fam.parameters = {{"c1", ParamDomain::NonZero, "rate", {}},
                              {"C", ParamDomain::NonZero, "C = exp(c2)", {}}};
            fam.formula = "w = (k1/c1^2)*(1 + (C*exp(c1*z) + exp(-c1*z)/C)/2)";
            fam.constants = {{"k1", *k1}};
            fam.constraints = cs;
            fam.build = [k = *k1](const Assignment& v) {
                const FieldConstant& c1 = v.at("c1");
                const FieldConstant& C = v.at("C");
                FieldConstant half(FieldConstant::rational(1, 2));
                ExpSum cosh = ExpSum::exp_term(c1, RatFunc(half * C)) + ExpSum::exp_term(-c1, RatFunc(half / C));
                return ExpSum(RatFunc(k / (c1 * c1))) * (ExpSum(1) + cosh);
            };
            gate(std::move(fam));
        }
        {
            SolutionFamily fam;
            fam.label = CaseLabel::AQuadratic;
            fam.parameters = {{"c2", ParamDomain::Any, "shift", {}}};
            fam.formula = "w = -(k1/2)*(z + c2)^2";
            fam.constants = {{"k1", *k1}};
            fam.constraints = cs;
            fam.build = [k = *k1](const Assignment& v) {
                RatFunc shift = RatFunc::z() + RatFunc(v.at("c2"));
                return ExpSum(RatFunc(-k / FieldConstant(2)) * shift * shift);
            };
            gate(std::move(fam));
        }
    }

    void case_b()
    {
        if (!c().is_zero()) {
            reject(CaseLabel::B, "requires gamma = 0 (gamma = " + c().to_string() + ")", "NotApplicable");
            return;
        }
        if (b().is_zero()) {
            reject(CaseLabel::B, "requires beta != 0", "NotApplicable");
            return;
        }
        RatFunc ratio = -a() / b();
        auto k1 = ratio.constant_value();
        if (!k1) {
            reject(CaseLabel::B, "k1 = -alpha/beta = " + ratio.to_string() + " is not constant");
            return;
        }
        SolutionFamily fam;
        fam.label = CaseLabel::B;
        fam.parameters = {{"c1", ParamDomain::NonZero, "amplitude", {}}};
        fam.formula = "w = c1*exp(k1*z)";
        fam.constants = {{"k1", *k1}};
        fam.constraints.case2_constraint = a() + db_;
        fam.build = [k = *k1](const Assignment& v) { return ExpSum::exp_term(k, RatFunc(v.at("c1"))); };
        gate(std::move(fam));
    }

    void case_c()
    {
        if (!c().is_zero()) {
            reject(CaseLabel::C, "requires gamma = 0 (gamma = " + c().to_string() + ")", "NotApplicable");
            return;
        }
        RatFunc side = a() + db_;
        if (!side.is_zero()) {
            reject(CaseLabel::C, "alpha + beta' = " + side.to_string() + " is not identically zero");
            return;
        }
        ConstraintSet cs;
        cs.case2_constraint = side;
        std::vector<std::pair<FieldConstant, Polynomial>> rhos;
        try {
            rhos = integration_residue_polynomials(b());
        } catch (const Error& e) {
            reject(CaseLabel::C, std::string("partial fractions of beta: ") + e.what(), code_for(e));
            return;
        }
        const RatFunc beta = b();
        // w = exp(c1 z) (c2 - Integral(beta exp(-c1 z)))
        auto build_for = [beta](const FieldConstant& c1, const FieldConstant& c2) {
            auto F = es_integrate(beta, -c1);
            if (!F.ok())
                throw Error(ErrorCode::InvalidArgument, "integral of beta*exp(-c1*z) obstructed at c1 = " + c1.to_string());
            return ExpSum::exp_term(c1, RatFunc(c2)) - (*F.antiderivative) * ExpSum::exp_term(c1);
        };
        std::erase_if(rhos, [](const auto& pr) { return pr.second.is_zero(); });
        if (rhos.empty()) {
            SolutionFamily fam;
            fam.label = CaseLabel::C;
            fam.parameters = {{"c1", ParamDomain::Any, "rate", {}}, {"c2", ParamDomain::Any, "integration constant", {}}};
            fam.formula = "w = exp(c1*z)*(c2 - Integral((" + beta.to_string() + ")*exp(-c1*z), z))";
            fam.constraints = cs;
            fam.build = [build_for](const Assignment& v) { return build_for(v.at("c1"), v.at("c2")); };
            auto samples = default_samples(fam.parameters);
            samples.push_back({{"c1", 0}, {"c2", 2}});
            gate(std::move(fam), samples);
            return;
        }
        // Poles of beta: the log coefficient after reduction by parts is
        // rho_c(-c1); only common roots survive.
        std::string eqs;
        Polynomial common;
        for (const auto& [pole, rho] : rhos) {
            if (!eqs.empty())
                eqs += "; ";
            eqs += "pole " + pole.to_string() + ": " + rho.to_string("lambda") + " = 0";
            common = gcd(common, rho);
        }
        reject(CaseLabel::C,
               "generic c1: Integral(beta*exp(-c1*z)) is not meromorphic; residue equations with lambda = -c1: " + eqs,
               "IntegrationObstructed");
        std::vector<FieldConstant> lambdas;
        if (common.degree() > 0)
            lambdas = roots_in_field(common);
        if (lambdas.empty()) {
            reject(CaseLabel::C, "no rate c1 satisfies every residue equation", "IntegrationObstructed");
            return;
        }
        for (const auto& lambda : lambdas) {
            FieldConstant c1 = -lambda;
            SolutionFamily fam;
            fam.label = CaseLabel::C;
            fam.parameters = {{"c2", ParamDomain::Any, "integration constant", {}}};
            fam.constants = {{"c1", c1}};
            fam.constraints = cs;
            auto F = es_integrate(beta, -c1);
            ExpSum tail = -(*F.antiderivative) * ExpSum::exp_term(c1);
            fam.formula = "w = c2*exp(c1*z) + " + tail.to_string() + " (c1 restricted to a residue-free rate)";
            fam.build = [build_for, c1](const Assignment& v) { return build_for(c1, v.at("c2")); };
            gate(std::move(fam));
        }
    }

    void case_d()
    {
        if (c().is_zero()) {
            reject(CaseLabel::D, "requires gamma != 0", "NotApplicable");
            return;
        }
        RatFunc disc = b() * b() - RatFunc(4) * c();
        RatSqrtResult s;
        try {
            s = rf_sqrt(disc);
        } catch (const Error& e) {
            reject(CaseLabel::D, std::string("sqrt(beta^2 - 4 gamma): ") + e.what(), code_for(e));
            return;
        }
        if (!s.root) {
            reject(CaseLabel::D, "beta^2 - 4 gamma = " + disc.to_string() + " is not a square in K(z)");
            return;
        }
        std::vector<RatFunc> branches;
        RatFunc half(FieldConstant::rational(1, 2));
        branches.push_back(half * (-b() + *s.root));
        if (!s.root->is_zero())
            branches.push_back(half * (-b() - *s.root));
        for (const auto& h : branches) {
            std::string tag = "branch h = " + h.to_string() + ": ";
            try {
                RatFunc ratio = (h.derivative() - a()) / (h + b());
                auto k1 = ratio.constant_value();
                if (!k1) {
                    reject(CaseLabel::D, tag + "k1 = (h' - alpha)/(h + beta) = " + ratio.to_string() + " is not constant");
                    continue;
                }
                auto F = es_integrate(h, -*k1);
                if (!F.ok()) {
                    const auto& ob = F.obstructions.front();
                    reject(CaseLabel::D, tag + "Integral(h*exp(-k1*z)) has a logarithmic term at z = " +
                                             ob.offending_pole.to_string() + " (coefficient " +
                                             ob.residue_coefficient.to_string() + ")",
                           "IntegrationObstructed");
                    continue;
                }
                ExpSum tail = (*F.antiderivative) * ExpSum::exp_term(*k1);
                SolutionFamily fam;
                fam.label = CaseLabel::D;
                fam.parameters = {{"c1", ParamDomain::Any, "integration constant", {}}};
                fam.formula = "w = c1*exp(k1*z) + " + tail.to_string();
                fam.constants = {{"k1", *k1}};
                fam.constraints.discriminant = disc;
                fam.constraints.h = h;
                fam.build = [tail, k = *k1](const Assignment& v) {
                    return ExpSum::exp_term(k, RatFunc(v.at("c1"))) + tail;
                };
                gate(std::move(fam));
            } catch (const Error& e) {
                reject(CaseLabel::D, tag + e.what(), code_for(e));
            }
        }
    }

    void case_e()
    {
        const std::initializer_list<CaseLabel> labels = {CaseLabel::Ea, CaseLabel::Eb, CaseLabel::Ec, CaseLabel::Ed,
                                                         CaseLabel::Ee};
        if (c().is_zero()) {
            reject_all(labels, "requires gamma != 0", "NotApplicable");
            return;
        }
        RatFunc A = compute_A(a(), b(), c());
        auto Aconst = A.constant_value();
        if (!Aconst) {
            reject_all(labels, "A = (beta*(alpha + beta') - gamma')/gamma = " + A.to_string() + " is not constant");
            return;
        }
        // H = (beta/2) A - beta' - 2 alpha; disc4 = beta^2/4 - gamma
        RatFunc H = RatFunc(FieldConstant::rational(1, 2)) * b() * A - db_ - RatFunc(2) * a();
        RatFunc disc = b() * b() - RatFunc(4) * c();
        RatFunc disc4 = RatFunc(FieldConstant::rational(1, 4)) * b() * b() - c();
        ConstraintSet base;
        base.A = A;
        base.discriminant = disc;
        base.h = H;
        for (auto [label, fn] : std::initializer_list<std::pair<CaseLabel, void (Classifier::*)(const FieldConstant&,
                                                                                                const RatFunc&, const RatFunc&,
                                                                                                const RatFunc&,
                                                                                                const ConstraintSet&)>>{
                 {CaseLabel::Ea, &Classifier::case_ea},
                 {CaseLabel::Eb, &Classifier::case_eb},
                 {CaseLabel::Ec, &Classifier::case_ec},
                 {CaseLabel::Ed, &Classifier::case_ed},
                 {CaseLabel::Ee, &Classifier::case_ee},
             }) {
            try {
                (this->*fn)(*Aconst, H, disc, disc4, base);
            } catch (const Error& e) {
                reject(label, e.what(), code_for(e));
            }
        }
    }

    // cosh(k1 z + c1) scaled by sign*k2, with C = exp(c1)
    static ExpSum cosh_shape(const FieldConstant& k1, const FieldConstant& scale, const FieldConstant& C)
    {
        FieldConstant half = FieldConstant::rational(1, 2);
        return ExpSum::exp_term(k1, RatFunc(half * scale * C)) + ExpSum::exp_term(-k1, RatFunc(half * scale / C));
    }

    void case_ea(const FieldConstant& A, const RatFunc&, const RatFunc&, const RatFunc&, const ConstraintSet& base)
    {
        if (!A.is_zero()) {
            reject(CaseLabel::Ea, "requires A = 0 (A = " + A.to_string() + ")");
            return;
        }
        RatFunc shift_num = db_ + RatFunc(2) * a(); // beta' + 2 alpha
        RatFunc b_cond = ddb_ + RatFunc(2) * da_;   // beta'' + 2 alpha'
        const RatFunc alpha = a(), beta = b(), gamma = c();
        // k2^2 = (1/k1^2) ((beta' + 2 alpha)^2 / (4 k1^2) + gamma - beta^2/4)
        auto k2_squared = [shift_num, beta, gamma](const FieldConstant& k1sq) {
            RatFunc inner = shift_num * shift_num / RatFunc(FieldConstant(4) * k1sq) + gamma -
                            RatFunc(FieldConstant::rational(1, 4)) * beta * beta;
            return inner / RatFunc(k1sq);
        };
        if (!beta.is_zero()) {
            RatFunc k1sq_rf = -b_cond / beta;
            auto k1sq = k1sq_rf.constant_value();
            if (!k1sq) {
                reject(CaseLabel::Ea, "k1^2 = -(beta'' + 2 alpha')/beta = " + k1sq_rf.to_string() + " is not constant");
                return;
            }
            if (k1sq->is_zero()) {
                reject(CaseLabel::Ea, "k1^2 = -(beta'' + 2 alpha')/beta = 0; a nonzero k1 is required");
                return;
            }
            RatFunc k2sq_rf = k2_squared(*k1sq);
            auto k2sq = k2sq_rf.constant_value();
            if (!k2sq) {
                report_.warnings.push_back("consistency: k2^2 = " + k2sq_rf.to_string() +
                                           " is not constant although the E.a hypotheses hold");
                reject(CaseLabel::Ea, "k2^2 = " + k2sq_rf.to_string() + " is not constant");
                return;
            }
            if (k2sq->is_zero()) {
                reject(CaseLabel::Ea, "k2 = 0 (the k2 = 0 solutions belong to E.b)");
                return;
            }
            auto k1 = sqrt_constant(*k1sq);
            auto k2 = sqrt_constant(*k2sq);
            if (k1.extension && k2.extension && *k1.extension != *k2.extension) {
                reject(CaseLabel::Ea, "second field extension required: sqrt(" + k1.extension->get_str() + ") and sqrt(" +
                                          k2.extension->get_str() + ")",
                       "Unsupported");
                return;
            }
            RatFunc offset = shift_num / RatFunc(FieldConstant(2) * *k1sq);
            SolutionFamily fam;
            fam.label = CaseLabel::Ea;
            fam.parameters = {{"sign", ParamDomain::Sign, "+1 or -1", {}}, {"C", ParamDomain::NonZero, "C = exp(c1)", {}}};
            fam.formula = "w = sign*k2*(C*exp(k1*z) + exp(-k1*z)/C)/2 + " + offset.to_string();
            fam.constants = {{"k1", k1.root}, {"k2", k2.root}};
            fam.constraints = base;
            fam.constraints.k1_squared = *k1sq;
            fam.constraints.k2_squared = *k2sq;
            fam.constraints.g = *k1sq;
            fam.constraints.B = beta * RatFunc(*k1sq) + ddb_ + RatFunc(2) * da_;
            fam.build = [k1 = k1.root, k2 = k2.root, offset](const Assignment& v) {
                return cosh_shape(k1, v.at("sign") * k2, v.at("C")) + ExpSum(offset);
            };
            gate(std::move(fam));
            return;
        }
        if (!b_cond.is_zero()) {
            reject(CaseLabel::Ea, "beta = 0 and beta'' + 2 alpha' = " + b_cond.to_string() + " is not identically zero");
            return;
        }
        // beta = 0: every nonzero k1 works; k2 depends on k1.
        auto k2sq_at = [k2_squared](const FieldConstant& k1) { return k2_squared(k1 * k1).constant_value(); };
        SolutionFamily fam;
        fam.label = CaseLabel::Ea;
        fam.parameters = {{"k1", ParamDomain::NonZero, "free rate (k2 = 0 values excluded)", {}},
                          {"sign", ParamDomain::Sign, "+1 or -1", {}},
                          {"C", ParamDomain::NonZero, "C = exp(c1)", {}}};
        fam.formula = "w = sign*k2*(C*exp(k1*z) + exp(-k1*z)/C)/2 + (" + shift_num.to_string() +
                      ")/(2*k1^2), k2^2 = ((" + shift_num.to_string() + ")^2/(4*k1^2) + " + gamma.to_string() +
                      ")/k1^2";
        fam.constraints = base;
        fam.constraints.B = ddb_ + RatFunc(2) * da_;
        fam.build = [k2sq_at, shift_num](const Assignment& v) {
            const FieldConstant& k1 = v.at("k1");
            auto k2sq = k2sq_at(k1);
            if (!k2sq)
                throw Error(ErrorCode::InvalidArgument, "k2^2 is not constant");
            if (k2sq->is_zero())
                throw Error(ErrorCode::DomainViolation, "k2 = 0 at k1 = " + k1.to_string());
            FieldConstant k2 = sqrt_constant(*k2sq).root;
            RatFunc offset = shift_num / RatFunc(FieldConstant(2) * k1 * k1);
            return cosh_shape(k1, v.at("sign") * k2, v.at("C")) + ExpSum(offset);
        };
        std::vector<Assignment> samples;
        const std::vector<FieldConstant> k1_pool = {1, 2, FieldConstant::rational(1, 2), 3, FieldConstant::rational(1, 3), 5};
        const std::vector<FieldConstant> C_pool = {1, 2, FieldConstant::rational(-1, 2)};
        for (FieldConstant s : {FieldConstant(1), FieldConstant(-1)}) {
            std::size_t used = 0;
            for (const auto& k1 : k1_pool) {
                if (used == 3)
                    break;
                auto k2sq = k2sq_at(k1);
                if (!k2sq || k2sq->is_zero())
                    continue;
                samples.push_back({{"k1", k1}, {"sign", s}, {"C", C_pool[used]}});
                ++used;
            }
        }
        gate(std::move(fam), samples);
    }

    void case_eb(const FieldConstant& A, const RatFunc& H, const RatFunc& disc, const RatFunc&, const ConstraintSet& base)
    {
        if (disc.is_zero()) {
            reject(CaseLabel::Eb, "beta^2 - 4 gamma = 0, so k1^2 = H^2/(beta^2 - 4 gamma) is undefined");
            return;
        }
        RatFunc k1sq_rf = H * H / disc;
        auto k1sq = k1sq_rf.constant_value();
        if (!k1sq) {
            reject(CaseLabel::Eb, "k1^2 = ((beta/2) A - beta' - 2 alpha)^2/(beta^2 - 4 gamma) = " + k1sq_rf.to_string() +
                                      " is not constant");
            return;
        }
        if (k1sq->is_zero()) {
            reject(CaseLabel::Eb, "k1^2 = 0; a nonzero constant is required");
            return;
        }
        auto k1 = sqrt_constant(*k1sq);
        RatFunc offset = -H / RatFunc(FieldConstant(2) * *k1sq);
        FieldConstant half_a = A / FieldConstant(2);
        SolutionFamily fam;
        fam.label = CaseLabel::Eb;
        fam.parameters = {{"sign", ParamDomain::Sign, "+1 or -1", {}}, {"c1", ParamDomain::NonZero, "amplitude", {}}};
        fam.formula = "w = c1*exp((-A/2 + sign*k1)*z) + " + offset.to_string();
        fam.constants = {{"A", A}, {"k1", k1.root}};
        fam.constraints = base;
        fam.constraints.k1_squared = *k1sq;
        fam.constraints.k2_squared = FieldConstant(0);
        fam.constraints.g = *k1sq - A * A / FieldConstant(4);
        fam.build = [half_a, k1 = k1.root, offset](const Assignment& v) {
            return ExpSum::exp_term(-half_a + v.at("sign") * k1, RatFunc(v.at("c1"))) + ExpSum(offset);
        };
        gate(std::move(fam));
    }

    void case_ec(const FieldConstant& A, const RatFunc&, const RatFunc&, const RatFunc&, const ConstraintSet& base)
    {
        if (!b().is_zero()) {
            reject(CaseLabel::Ec, "requires beta = 0 (beta = " + b().to_string() + ")");
            return;
        }
        auto al = a().constant_value();
        if (!al || al->is_zero()) {
            reject(CaseLabel::Ec, "requires alpha to be a nonzero constant (alpha = " + a().to_string() + ")");
            return;
        }
        auto ga = c().constant_value();
        if (!ga || ga->is_zero()) {
            reject(CaseLabel::Ec, "requires gamma to be a nonzero constant (gamma = " + c().to_string() + ")");
            return;
        }
        FieldConstant shift = -*ga / (FieldConstant(2) * *al);
        SolutionFamily fam;
        fam.label = CaseLabel::Ec;
        fam.parameters = {{"c1", ParamDomain::Any, "shift", {}}};
        fam.formula = "w = -(alpha/2)*(z + c1)^2 - gamma/(2*alpha)";
        fam.constants = {{"alpha", *al}, {"gamma", *ga}};
        fam.constraints = base;
        fam.constraints.g = -A * A / FieldConstant(4);
        fam.build = [al = *al, shift](const Assignment& v) {
            RatFunc s = RatFunc::z() + RatFunc(v.at("c1"));
            return ExpSum(RatFunc(-al / FieldConstant(2)) * s * s + RatFunc(shift));
        };
        gate(std::move(fam));
    }

    void case_ed(const FieldConstant& A, const RatFunc& H, const RatFunc&, const RatFunc& disc4, const ConstraintSet& base)
    {
        auto k1sq = disc4.constant_value();
        if (!k1sq) {
            reject(CaseLabel::Ed, "k1^2 = beta^2/4 - gamma = " + disc4.to_string() + " is not constant");
            return;
        }
        if (k1sq->is_zero()) {
            reject(CaseLabel::Ed, "k1^2 = beta^2/4 - gamma vanishes identically");
            return;
        }
        if (!A.is_zero()) {
            reject(CaseLabel::Ed, "requires A = 0 (A = " + A.to_string() + ")");
            return;
        }
        if (!H.is_zero()) {
            reject(CaseLabel::Ed, "side condition h = (beta/2) A - beta' - 2 alpha = " + H.to_string() +
                                      " is not identically zero");
            return;
        }
        auto F = es_integrate(b(), 0);
        if (!F.ok()) {
            reject(CaseLabel::Ed, "Integral(beta) has a logarithmic term at z = " +
                                      F.obstructions.front().offending_pole.to_string(),
                   "IntegrationObstructed");
            return;
        }
        RatFunc half_int = RatFunc(FieldConstant::rational(-1, 2)) * *F.antiderivative->as_ratfunc();
        auto k1 = sqrt_constant(*k1sq);
        SolutionFamily fam;
        fam.label = CaseLabel::Ed;
        fam.parameters = {{"sign", ParamDomain::Sign, "+1 or -1", {}}, {"c1", ParamDomain::Any, "shift", {}}};
        fam.formula = "w = sign*k1*z + c1 + " + half_int.to_string();
        fam.constants = {{"k1", k1.root}};
        fam.constraints = base;
        fam.constraints.k1_squared = *k1sq;
        fam.constraints.g = FieldConstant(0);
        fam.build = [k1 = k1.root, half_int](const Assignment& v) {
            return ExpSum(RatFunc(Polynomial(std::vector<FieldConstant>{v.at("c1"), v.at("sign") * k1})) + half_int);
        };
        gate(std::move(fam));
    }

    void case_ee(const FieldConstant& A, const RatFunc&, const RatFunc&, const RatFunc& disc4, const ConstraintSet& base)
    {
        if (!disc4.is_zero()) {
            reject(CaseLabel::Ee, "beta^2/4 - gamma = " + disc4.to_string() + " is not identically zero");
            return;
        }
        FieldConstant half_a = A / FieldConstant(2);
        RatFunc half_beta = RatFunc(FieldConstant::rational(1, 2)) * b();
        auto F = es_integrate(half_beta, half_a);
        if (!F.ok()) {
            reject(CaseLabel::Ee, "Integral((beta/2)*exp(A*z/2)) has a logarithmic term at z = " +
                                      F.obstructions.front().offending_pole.to_string(),
                   "IntegrationObstructed");
            return;
        }
        ExpSum tail = -(*F.antiderivative) * ExpSum::exp_term(-half_a);
        SolutionFamily fam;
        fam.label = CaseLabel::Ee;
        fam.parameters = {{"c1", ParamDomain::Any, "integration constant", {}}};
        fam.formula = "w = c1*exp(-A*z/2) + " + tail.to_string();
        fam.constants = {{"A", A}};
        fam.constraints = base;
        fam.constraints.g = -A * A / FieldConstant(4);
        fam.build = [half_a, tail](const Assignment& v) { return ExpSum::exp_term(-half_a, RatFunc(v.at("c1"))) + tail; };
        gate(std::move(fam));
    }

    ClassificationReport report_;
    RatFunc da_, db_, ddb_;
};

} // namespace detail

inline ClassificationReport classify(const RatFunc& alpha, const RatFunc& beta, const RatFunc& gamma)
{
    return detail::Classifier(alpha, beta, gamma).run();
}

} // namespace hayman
