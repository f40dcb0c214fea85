#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "hayman/classifier.hpp"
#include "hayman/numeric_check.hpp"
#include "hayman/parser.hpp"

using namespace hayman;

namespace
{

constexpr int kCases = 200;

class Gen
{
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    FieldConstant rational()
    {
        return FieldConstant::rational(integer(-6, 6), integer(1, 4));
    }

    // Occasionally carries sqrt(2) so the extension arithmetic is exercised.
    FieldConstant constant(bool surds)
    {
        if (surds && integer(0, 3) == 0)
            return FieldConstant::make(rational().rational_part(), rational().rational_part(), 2);
        return rational();
    }

    Polynomial polynomial(int max_degree, bool surds = false)
    {
        std::vector<FieldConstant> v;
        int d = integer(0, max_degree);
        for (int i = 0; i <= d; ++i)
            v.push_back(constant(surds));
        return Polynomial(std::move(v));
    }

    RatFunc ratfunc(int max_degree, bool surds = false)
    {
        Polynomial den;
        do
            den = polynomial(max_degree, surds);
        while (den.is_zero());
        return RatFunc(polynomial(max_degree, surds), den);
    }

    FieldConstant rate()
    {
        static const FieldConstant rates[] = {0, 1, -1, 2, FieldConstant::rational(1, 2), FieldConstant::rational(-3, 2)};
        return rates[integer(0, 5)];
    }

    ExpSum expsum()
    {
        ExpSum acc;
        int n = integer(1, 3);
        for (int i = 0; i < n; ++i)
            acc = acc + ExpSum::exp_term(rate(), ratfunc(2));
        return acc;
    }

    std::complex<double> point()
    {
        std::uniform_real_distribution<double> d(-1.5, 1.5);
        return {d(rng_), d(rng_)};
    }

private:
    std::mt19937 rng_;
};

bool near(std::complex<double> a, std::complex<double> b, double tol = 1e-8)
{
    return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
}

} // namespace

TEST(Properties, FieldAxioms)
{
    Gen g(101);
    for (int i = 0; i < kCases; ++i) {
        RatFunc a = g.ratfunc(3, true), b = g.ratfunc(3, true), c = g.ratfunc(3, true);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a - a).is_zero());
        EXPECT_EQ(a + RatFunc(0), a);
        EXPECT_EQ(a * RatFunc(1), a);
        if (!a.is_zero()) {
            EXPECT_EQ(a * (RatFunc(1) / a), RatFunc(1));
            EXPECT_EQ((b / a) * a, b);
        }
    }
}

TEST(Properties, ProductAndQuotientRule)
{
    Gen g(202);
    for (int i = 0; i < kCases; ++i) {
        RatFunc a = g.ratfunc(3, true), b = g.ratfunc(3, true);
        EXPECT_EQ((a * b).derivative(), a.derivative() * b + a * b.derivative());
        if (!b.is_zero()) {
            EXPECT_EQ((a / b).derivative() * b * b, a.derivative() * b - a * b.derivative());
        }
    }
}

TEST(Properties, ExactArithmeticMatchesFloatingPoint)
{
    Gen g(303);
    for (int i = 0; i < kCases; ++i) {
        RatFunc a = g.ratfunc(3, true), b = g.ratfunc(3, true);
        auto z = g.point();
        auto va = a.eval_complex(z), vb = b.eval_complex(z);
        if (std::abs(va) > 1e6 || std::abs(vb) > 1e6)
            continue;
        EXPECT_TRUE(near((a * b).eval_complex(z), va * vb));
        EXPECT_TRUE(near((a - b).eval_complex(z), va - vb));
    }
}

TEST(Properties, ExpSumRingClosure)
{
    Gen g(404);
    for (int i = 0; i < kCases; ++i) {
        ExpSum x = g.expsum(), y = g.expsum(), u = g.expsum();
        ExpSum p = x * y;
        for (const auto& t : p.terms()) {
            bool found = false;
            for (const auto& s : x.terms())
                for (const auto& r : y.terms())
                    found = found || s.rate + r.rate == t.rate;
            EXPECT_TRUE(found);
            EXPECT_FALSE(t.coeff.is_zero());
        }
        EXPECT_EQ(p, y * x);
        EXPECT_EQ(x * (y + u), p + x * u);
        EXPECT_EQ((x * y).derivative(), x.derivative() * y + x * y.derivative());
        EXPECT_TRUE((x - x).terms().empty());

        auto z = g.point();
        auto vx = es_eval_complex(x, z), vy = es_eval_complex(y, z);
        if (std::abs(vx) < 1e6 && std::abs(vy) < 1e6) {
            EXPECT_TRUE(near(es_eval_complex(p, z), vx * vy));
        }
    }
}

TEST(Properties, DerivativeIntegralRoundTrip)
{
    Gen g(505);
    int integrated = 0;
    for (int i = 0; i < kCases; ++i) {
        // R = Q' + rate Q is exactly integrable against e^{rate z}
        RatFunc Q = g.ratfunc(2);
        FieldConstant rate = g.rate();
        RatFunc R = Q.derivative() + RatFunc(rate) * Q;
        auto res = es_integrate(R, rate);
        ASSERT_TRUE(res.ok());
        EXPECT_EQ(res.antiderivative->derivative(), ExpSum::exp_term(rate, R));
        ExpSum diff = *res.antiderivative - ExpSum::exp_term(rate, Q);
        if (rate.is_zero()) {
            EXPECT_TRUE(diff.is_zero() || diff.as_ratfunc()->constant_value());
        } else {
            EXPECT_TRUE(diff.is_zero());
        }

        // a generic R: if integration succeeds it must differentiate back
        RatFunc S = g.ratfunc(2);
        auto r2 = es_integrate(S, rate);
        if (r2.ok()) {
            EXPECT_EQ(r2.antiderivative->derivative(), ExpSum::exp_term(rate, S));
            ++integrated;
        } else {
            EXPECT_FALSE(r2.obstructions.empty());
        }
    }
    EXPECT_GT(integrated, 0);
}

TEST(Properties, ParsePrintRoundTrip)
{
    Gen g(606);
    for (int i = 0; i < kCases; ++i) {
        RatFunc a = g.ratfunc(6);
        EXPECT_EQ(parse_ratfunc(a.to_string()), a) << a.to_string();
        ExpSum x = g.expsum();
        EXPECT_EQ(parse_expsum(x.to_string()), x) << x.to_string();
    }
    for (int i = 0; i < 50; ++i) {
        RatFunc a = g.ratfunc(3, true);
        EXPECT_EQ(parse_expsum(a.to_string()).as_ratfunc(), a) << a.to_string();
    }
}

TEST(Properties, NumericSpotCheckOfFamilies)
{
    const std::vector<std::array<const char*, 3>> corpus = {
        {"2", "0", "0"},       {"-2*z", "z", "0"},  {"0", "1", "0"},  {"1 - z", "0", "-z^2"},
        {"0", "0", "1"},       {"1", "0", "2"},     {"0", "0", "-1"}, {"1", "2", "1"},
        {"1", "1", "-z^2 - z"}, {"-z^2", "z", "-z^4/4 + z^2/2"},      {"1/z^2 - 2/z^3", "1/z - 1/z^2", "0"},
        {"-2", "4*z", "1 + 4*z^2"},
    };
    Gen g(707);
    int instantiations = 0;
    for (const auto& in : corpus) {
        RatFunc a = parse_ratfunc(in[0]), b = parse_ratfunc(in[1]), c = parse_ratfunc(in[2]);
        for (const auto& fam : classify(a, b, c).families) {
            ASSERT_TRUE(fam.verified);
            for (int k = 0; k < 8; ++k) {
                Assignment values;
                for (const auto& p : fam.parameters) {
                    if (p.domain == ParamDomain::Sign) {
                        values[p.name] = p.allowed[static_cast<std::size_t>(g.integer(0, static_cast<int>(p.allowed.size()) - 1))];
                        continue;
                    }
                    FieldConstant v = FieldConstant::rational(g.integer(-3, 3), g.integer(1, 2));
                    if (p.domain == ParamDomain::NonZero && v.is_zero())
                        v = 1;
                    values[p.name] = v;
                }
                ExpSum w;
                try {
                    w = instantiate(fam, values);
                } catch (const Error& e) {
                    EXPECT_EQ(e.code(), ErrorCode::DomainViolation);
                    continue;
                }
                auto spots = numeric_spot_check(a, b, c, w);
                EXPECT_EQ(spots.size(), 20U);
                for (const auto& s : spots)
                    EXPECT_TRUE(s.ok) << to_string(fam.label) << " " << w.to_string() << " at " << s.z << ": "
                                      << s.residual_abs << " > " << s.bound;
                ++instantiations;
            }
        }
    }
    EXPECT_GE(instantiations, kCases);
}

TEST(Properties, SpotCheckRejectsWrongSolution)
{
    RatFunc a = parse_ratfunc("1 - z"), b(0), c = parse_ratfunc("-z^2");
    auto spots = numeric_spot_check(a, b, c, parse_expsum("exp(z) - z"));
    int failed = 0;
    for (const auto& s : spots)
        failed += !s.ok;
    EXPECT_GT(failed, 15);
}
