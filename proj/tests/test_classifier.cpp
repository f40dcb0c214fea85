#include <random>
#include <set>

#include <gtest/gtest.h>

#include "hayman/classifier.hpp"
#include "hayman/parser.hpp"
#include "oracle.hpp"

using namespace hayman;

namespace
{

RatFunc P(const char* s) { return parse_ratfunc(s); }
ExpSum E(const char* s, const std::map<std::string, FieldConstant>& v = {}) { return parse_expsum(s, v); }
FieldConstant q(long n, long d = 1) { return FieldConstant::rational(n, d); }

struct Input {
    const char *a, *b, *c;
};

ClassificationReport run(const Input& in) { return classify(P(in.a), P(in.b), P(in.c)); }

std::vector<const SolutionFamily*> families(const ClassificationReport& r, CaseLabel label)
{
    std::vector<const SolutionFamily*> out;
    for (const auto& f : r.families)
        if (f.label == label)
            out.push_back(&f);
    return out;
}

const SolutionFamily& only(const ClassificationReport& r, CaseLabel label)
{
    auto v = families(r, label);
    EXPECT_EQ(v.size(), 1U) << to_string(label);
    if (v.empty())
        throw std::runtime_error("missing family");
    return *v.front();
}

const std::vector<Input> kCorpus = {
    {"2", "0", "0"},       {"-2*z", "z", "0"},  {"0", "1", "0"},   {"1 - z", "0", "-z^2"},
    {"0", "0", "1"},       {"1", "0", "2"},     {"0", "0", "-1"},  {"1", "2", "1"},
    {"z", "0", "1"},       {"0", "0", "0"},     {"1", "1", "-z^2 - z"},
    {"-z^2", "z", "-z^4/4 + z^2/2"},            {"1/z^2 - 2/z^3", "1/z - 1/z^2", "0"},
    {"1/z^2", "1/z", "0"}, {"-2", "4*z", "1 + 4*z^2"},
    {"0", "-3", "-4"},     {"-1", "2*z", "z^2 - 4"},
};

} // namespace

TEST(Classifier, CaseA)
{
    auto r = run({"2", "0", "0"});
    const auto& cosh = only(r, CaseLabel::ACosh);
    EXPECT_TRUE(cosh.verified);
    EXPECT_TRUE(cosh.admissible);
    EXPECT_EQ(instantiate(cosh, {{"c1", 1}, {"C", 1}}), E("2 + exp(z) + exp(-z)"));
    const auto& quad = only(r, CaseLabel::AQuadratic);
    EXPECT_TRUE(quad.admissible);
    EXPECT_EQ(instantiate(quad, {{"c2", 3}}), E("-(z + 3)^2"));
    EXPECT_THROW(instantiate(cosh, {{"c1", 0}, {"C", 1}}), Error);
}

TEST(Classifier, CaseB)
{
    auto r = run({"-2*z", "z", "0"});
    const auto& b = only(r, CaseLabel::B);
    EXPECT_EQ(b.constants.at(0).second, FieldConstant(2));
    EXPECT_TRUE(b.admissible);
    EXPECT_EQ(instantiate(b, {{"c1", 5}}), E("5*exp(2*z)"));
    try {
        instantiate(b, {{"c1", 0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DomainViolation);
    }
}

TEST(Classifier, CaseC)
{
    auto r = run({"0", "1", "0"});
    const auto& c = only(r, CaseLabel::C);
    EXPECT_TRUE(c.admissible);
    EXPECT_EQ(instantiate(c, {{"c1", 1}, {"c2", 0}}), ExpSum(1));
    for (long c1 : {1, 2, -3})
        EXPECT_EQ(instantiate(c, {{"c1", c1}, {"c2", 7}}),
                  ExpSum::exp_term(c1, 7) + ExpSum(FieldConstant(1) / FieldConstant(c1)));
    EXPECT_EQ(instantiate(c, {{"c1", 0}, {"c2", 7}}), E("7 - z"));
}

TEST(Classifier, CaseCWithPoles)
{
    // beta = 1/z - 1/z^2: residue polynomial 1 - lambda, so only c1 = -1 survives
    auto r = run({"1/z^2 - 2/z^3", "1/z - 1/z^2", "0"});
    const auto& c = only(r, CaseLabel::C);
    EXPECT_EQ(c.constants.at(0).second, FieldConstant(-1));
    EXPECT_EQ(instantiate(c, {{"c2", 2}}), E("2*exp(-z) - 1/z"));
    bool logged = false;
    for (const auto& b : r.rejected_branches)
        logged = logged || (b.label == CaseLabel::C && b.code == "IntegrationObstructed");
    EXPECT_TRUE(logged);

    // beta = 1/z: residue 1 for every rate
    auto s = run({"1/z^2", "1/z", "0"});
    EXPECT_TRUE(families(s, CaseLabel::C).empty());
}

TEST(Classifier, CaseD)
{
    auto r = run({"1 - z", "0", "-z^2"});
    const auto& d = only(r, CaseLabel::D);
    EXPECT_EQ(*d.constraints.h, P("z"));
    EXPECT_EQ(d.constants.at(0).second, FieldConstant(1));
    EXPECT_TRUE(d.admissible);
    EXPECT_EQ(instantiate(d, {{"c1", 4}}), E("4*exp(z) - z - 1"));
    bool rejected = false;
    for (const auto& b : r.rejected_branches)
        rejected = rejected || (b.label == CaseLabel::D && b.constraint.find("h = -z") != std::string::npos);
    EXPECT_TRUE(rejected);
}

TEST(Classifier, CaseEa)
{
    auto r = run({"0", "0", "1"});
    const auto& a = only(r, CaseLabel::Ea);
    EXPECT_TRUE(a.admissible);
    EXPECT_EQ(instantiate(a, {{"k1", 1}, {"sign", 1}, {"C", 1}}), E("exp(z)/2 + exp(-z)/2"));
    EXPECT_EQ(a.parameters.front().name, "k1");

    // beta != 0: k1^2 = 4, k2^2 = 1/64
    auto s = run({"-z^2", "z", "-z^4/4 + z^2/2"});
    const auto& b = only(s, CaseLabel::Ea);
    EXPECT_EQ(*b.constraints.k1_squared, FieldConstant(4));
    EXPECT_EQ(*b.constraints.k2_squared, q(1, 64));
    EXPECT_TRUE(b.admissible);
    EXPECT_EQ(instantiate(b, {{"sign", 1}, {"C", 1}}), E("exp(2*z)/16 + exp(-2*z)/16 + 1/8 - z^2/4"));
}

TEST(Classifier, CaseEaTwoExtensionsIsUnsupported)
{
    // k1^2 = 2 and k2^2 = 3
    auto r = run({"-z^2/2", "z", "-z^4/8 + z^2/2 + 47/8"});
    EXPECT_TRUE(families(r, CaseLabel::Ea).empty());
    bool unsupported = false;
    for (const auto& b : r.rejected_branches)
        unsupported = unsupported || (b.label == CaseLabel::Ea && b.code == "Unsupported");
    EXPECT_TRUE(unsupported);
}

TEST(Classifier, CaseEb)
{
    auto r = run({"1", "0", "2"});
    const auto& b = only(r, CaseLabel::Eb);
    EXPECT_EQ(*b.constraints.k1_squared, q(-1, 2));
    EXPECT_EQ(b.parameters.front().allowed.size(), 2U);
}

TEST(Classifier, CaseEc)
{
    auto r = run({"1", "0", "2"});
    const auto& c = only(r, CaseLabel::Ec);
    EXPECT_TRUE(c.admissible);
    EXPECT_EQ(instantiate(c, {{"c1", 3}}), E("-(z + 3)^2/2 - 1"));
}

TEST(Classifier, CaseEd)
{
    auto r = run({"0", "0", "-1"});
    const auto& d = only(r, CaseLabel::Ed);
    EXPECT_TRUE(d.admissible);
    EXPECT_EQ(instantiate(d, {{"sign", 1}, {"c1", 2}}), E("z + 2"));
    EXPECT_EQ(instantiate(d, {{"sign", -1}, {"c1", 2}}), E("-z + 2"));

    // alpha != 0 but h = 0: beta = 2z, alpha = -1, gamma = z^2 - 4
    auto s = run({"-1", "2*z", "z^2 - 4"});
    const auto& e = only(s, CaseLabel::Ed);
    EXPECT_EQ(instantiate(e, {{"sign", 1}, {"c1", 0}}), E("2*z - z^2/2"));
}

TEST(Classifier, CaseEe)
{
    auto r = run({"1", "2", "1"});
    const auto& e = only(r, CaseLabel::Ee);
    EXPECT_EQ(*e.constraints.A, RatFunc(2));
    EXPECT_TRUE(e.admissible);
    EXPECT_EQ(instantiate(e, {{"c1", 3}}), E("3*exp(-z) - 1"));
}

TEST(Classifier, NegativeControl)
{
    auto r = run({"z", "0", "1"});
    EXPECT_TRUE(r.families.empty());
    EXPECT_EQ(r.admissible_count(), 0U);
    std::map<CaseLabel, std::string> first;
    for (const auto& b : r.rejected_branches)
        first.emplace(b.label, b.constraint);
    EXPECT_NE(first[CaseLabel::Ea].find("beta'' + 2 alpha' = 2"), std::string::npos);
    EXPECT_NE(first[CaseLabel::Eb].find("-z^2"), std::string::npos);
    EXPECT_NE(first[CaseLabel::Ec].find("alpha"), std::string::npos);
    EXPECT_NE(first[CaseLabel::Ed].find("-2*z"), std::string::npos);
    EXPECT_NE(first[CaseLabel::Ee].find("-1"), std::string::npos);
    EXPECT_NE(first[CaseLabel::D].find("not constant"), std::string::npos);
}

TEST(Classifier, ComputeA)
{
    EXPECT_EQ(compute_A(1, 0, 2), RatFunc(0));
    EXPECT_EQ(compute_A(P("z"), 0, 1), RatFunc(0));
    EXPECT_EQ(compute_A(1, 2, 1), RatFunc(2));
    EXPECT_THROW(compute_A(1, 1, 0), Error);
}

TEST(Classifier, Admissibility)
{
    auto r = run({"1", "1", "-z^2 - z"});
    bool found = false;
    for (const auto& f : families(r, CaseLabel::D)) {
        if (f->constants.at(0).second.is_zero()) {
            EXPECT_FALSE(f->admissible);
            EXPECT_EQ(instantiate(*f, {{"c1", 0}}), E("z^2/2"));
            found = true;
        }
    }
    EXPECT_TRUE(found);
    EXPECT_TRUE(only(run({"1 - z", "0", "-z^2"}), CaseLabel::D).admissible);
}

TEST(Classifier, TrivialEquation)
{
    auto r = run({"0", "0", "0"});
    const auto& t = only(r, CaseLabel::TrivialAllZero);
    EXPECT_EQ(instantiate(t, {{"c1", 2}, {"c2", 3}}), E("3*exp(2*z)"));
}

TEST(Transform, Coefficients)
{
    auto t0 = transform_original(0, 0, 0, 0);
    EXPECT_TRUE(t0.alpha.is_zero() && t0.beta.is_zero() && t0.gamma.is_zero());
    // Substituting f = w + k3 by hand: beta = k2 + 2 k3'
    auto t1 = transform_original(0, 1, 0, P("z"));
    EXPECT_EQ(t1.alpha, RatFunc(1));
    EXPECT_EQ(t1.beta, RatFunc(2));
    EXPECT_EQ(t1.gamma, P("z + 1"));
    auto t2 = transform_original(1, 0, 0, P("z^2"));
    EXPECT_EQ(t2.alpha, RatFunc(-2));
    EXPECT_EQ(t2.beta, P("4*z"));
    EXPECT_EQ(t2.gamma, P("1 + 4*z^2"));
}

TEST(Transform, ConsistencyWithOriginalEquation)
{
    // k3 = z, f = 7 solves f f'' - f'^2 = z f''
    EXPECT_TRUE(oracle::original_residual_zero(0, 0, 0, P("z"), ExpSum(7)));
    auto t = transform_original(0, 0, 0, P("z"));
    EXPECT_TRUE(oracle::residual_zero(t.alpha, t.beta, t.gamma, ExpSum(7) - ExpSum(P("z"))));
    EXPECT_FALSE(oracle::residual_zero(t.alpha, RatFunc(1), t.gamma, ExpSum(7) - ExpSum(P("z"))));
}

TEST(Transform, RandomKappas)
{
    std::mt19937 rng(20261014);
    std::uniform_int_distribution<int> coef(-2, 2), deg(0, 2);
    auto poly = [&] {
        std::vector<FieldConstant> v;
        int d = deg(rng);
        for (int i = 0; i <= d; ++i)
            v.push_back(coef(rng));
        return RatFunc(Polynomial(std::move(v)));
    };
    int emitted = 0;
    for (int trial = 0; trial < 40; ++trial) {
        RatFunc k0 = poly(), k1 = poly(), k2 = poly(), k3 = poly();
        auto co = transform_original(k0, k1, k2, k3);
        auto r = classify(co.alpha, co.beta, co.gamma);
        for (const auto& f : r.families)
            for (const auto& ch : f.checks) {
                bool reduced = oracle::residual_zero(co.alpha, co.beta, co.gamma, ch.w);
                bool original = oracle::original_residual_zero(k0, k1, k2, k3, ch.w + ExpSum(k3));
                EXPECT_EQ(reduced, original);
                EXPECT_TRUE(original);
                ++emitted;
            }
    }
    EXPECT_GT(emitted, 0);
}

TEST(Invariants, SoundnessAuditSignsDeterminism)
{
    for (const auto& in : kCorpus) {
        auto r = run(in);
        std::set<CaseLabel> seen;
        for (const auto& f : r.families) {
            seen.insert(f.label);
            EXPECT_TRUE(f.verified);
            EXPECT_GE(f.checks.size(), 3U);
            for (const auto& ch : f.checks) {
                EXPECT_TRUE(ch.residual_zero);
                EXPECT_TRUE(oracle::residual_zero(P(in.a), P(in.b), P(in.c), ch.w))
                    << in.a << "," << in.b << "," << in.c << ": " << ch.w.to_string();
            }
            for (const auto& p : f.parameters) {
                if (p.domain != ParamDomain::Sign)
                    continue;
                for (const auto& s : p.allowed) {
                    int hits = 0;
                    for (const auto& ch : f.checks)
                        hits += ch.values.at(p.name) == s;
                    EXPECT_GE(hits, 3);
                }
            }
        }
        for (const auto& b : r.rejected_branches)
            seen.insert(b.label);
        for (auto label : kAllCaseLabels)
            EXPECT_TRUE(seen.count(label)) << to_string(label) << " missing for " << in.a << "," << in.b << "," << in.c;

        auto again = run(in);
        ASSERT_EQ(again.families.size(), r.families.size());
        for (std::size_t i = 0; i < r.families.size(); ++i)
            EXPECT_EQ(again.families[i].formula, r.families[i].formula);
    }
}

