#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hayman/constant_field.hpp"
#include "hayman/polynomial.hpp"
#include "hayman/roots.hpp"
#include "hayman/series.hpp"

namespace hayman
{

// Rational function num/den with gcd(num, den) = 1 and den monic. The zero
// function is 0/1.
class RatFunc
{
public:
    RatFunc() : den_(1) {}
    RatFunc(FieldConstant c) : num_(std::move(c)), den_(1) {}
    RatFunc(int c) : RatFunc(FieldConstant(c)) {}
    RatFunc(Polynomial p) : num_(std::move(p)), den_(1) {}
    RatFunc(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatFunc z() { return RatFunc(Polynomial::z()); }

    const Polynomial& numerator() const noexcept { return num_; }
    const Polynomial& denominator() const noexcept { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    // Value when the function is constant after normalization.
    std::optional<FieldConstant> constant_value() const
    {
        if (den_.degree() == 0 && num_.degree() <= 0)
            return num_.coefficient(0);
        return std::nullopt;
    }
    bool is_constant() const { return constant_value().has_value(); }

    std::optional<Integer> extension() const
    {
        std::optional<Integer> q = num_.extension();
        merge_extension(q, den_.extension());
        return q;
    }

    RatFunc operator-() const
    {
        RatFunc out = *this;
        out.num_ = -out.num_;
        return out;
    }

    friend RatFunc operator+(const RatFunc& x, const RatFunc& y)
    {
        if (x.den_ == y.den_)
            return RatFunc(x.num_ + y.num_, x.den_);
        return RatFunc(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend RatFunc operator-(const RatFunc& x, const RatFunc& y) { return x + (-y); }
    friend RatFunc operator*(const RatFunc& x, const RatFunc& y)
    {
        if (x.is_zero() || y.is_zero())
            return {};
        return RatFunc(x.num_ * y.num_, x.den_ * y.den_);
    }
    friend RatFunc operator/(const RatFunc& x, const RatFunc& y)
    {
        if (y.is_zero())
            throw Error(ErrorCode::DivisionByZero, "division by the zero rational function");
        return RatFunc(x.num_ * y.den_, x.den_ * y.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& x, const RatFunc& y) { return x.num_ == y.num_ && x.den_ == y.den_; }

    RatFunc pow(unsigned n) const { return RatFunc(num_.pow(n), den_.pow(n)); }

    RatFunc derivative() const
    {
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    // Order of the pole at z0 (0 when z0 is not a pole).
    int pole_order(const FieldConstant& z0) const
    {
        if (!den_.eval(z0).is_zero())
            return 0;
        return den_.shifted(z0).valuation();
    }

    FieldConstant eval(const FieldConstant& z0) const
    {
        FieldConstant d = den_.eval(z0);
        if (d.is_zero()) {
            int order = pole_order(z0);
            throw Error(ErrorCode::PoleAtPoint,
                        "pole of order " + std::to_string(order) + " at z = " + z0.to_string())
                .with_detail(order);
        }
        return num_.eval(z0) / d;
    }

    std::complex<double> eval_complex(std::complex<double> x) const
    {
        return num_.eval_complex(x) / den_.eval_complex(x);
    }

    // Taylor coefficients at a regular point z0: f(z0 + t) = sum c_k t^k.
    SeriesCoeffs taylor(const FieldConstant& z0, std::size_t n) const
    {
        Polynomial d = den_.shifted(z0);
        if (d.coefficient(0).is_zero())
            throw Error(ErrorCode::PoleAtPoint, "Taylor expansion requested at a pole z = " + z0.to_string())
                .with_detail(pole_order(z0));
        return series_div(series_from_polynomial(num_.shifted(z0), n), series_from_polynomial(d, n), n);
    }

    // "(num)/(den)", or just num when den = 1.
    std::string to_string() const
    {
        if (den_.degree() == 0)
            return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    void normalize()
    {
        if (den_.is_zero())
            throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Polynomial(1);
            return;
        }
        Polynomial g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_quotient(num_, g);
            den_ = exact_quotient(den_, g);
        }
        FieldConstant lc = den_.leading();
        if (!lc.is_one()) {
            FieldConstant inv = lc.inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    Polynomial num_;
    Polynomial den_;
};

inline RatFunc rf_derivative(const RatFunc& x) { return x.derivative(); }
inline FieldConstant rf_eval(const RatFunc& x, const FieldConstant& z0) { return x.eval(z0); }
inline std::optional<FieldConstant> rf_is_constant(const RatFunc& x) { return x.constant_value(); }

// --- partial fractions ------------------------------------------------------

struct PoleTerm {
    FieldConstant location;
    int order = 1;
    FieldConstant coefficient; // of (z - location)^(-order)
};

struct PartialFractionForm {
    Polynomial polynomial_part;
    std::vector<PoleTerm> pole_terms; // sorted by (location, order)

    RatFunc reassemble() const
    {
        RatFunc out(polynomial_part);
        for (const auto& t : pole_terms)
            out += RatFunc(Polynomial(t.coefficient), Polynomial::linear_factor(t.location).pow(
                                                          static_cast<unsigned>(t.order)));
        return out;
    }
};

inline PartialFractionForm rf_partial_fractions(const RatFunc& x)
{
    PartialFractionForm out;
    auto [quo, rem] = divmod(x.numerator(), x.denominator());
    out.polynomial_part = quo;
    if (rem.is_zero())
        return out;
    const Polynomial& den = x.denominator();
    Splitting split = split_into_linear_factors(den);
    if (split.unsplit.degree() > 0)
        throw Error(ErrorCode::IrreducibleDenominator,
                    "factor " + split.unsplit.to_string() + " does not split into linear factors over the constant field");
    for (const auto& [c, m] : split.roots) {
        auto mm = static_cast<std::size_t>(m);
        // rem/den = rem / ((z-c)^m Q); expand rem/Q about c.
        Polynomial q = exact_quotient(den, Polynomial::linear_factor(c).pow(static_cast<unsigned>(m)));
        SeriesCoeffs s = series_div(series_from_polynomial(rem.shifted(c), mm), series_from_polynomial(q.shifted(c), mm), mm);
        for (std::size_t j = 0; j < mm; ++j) {
            if (s[j].is_zero())
                continue;
            out.pole_terms.push_back({c, m - static_cast<int>(j), s[j]});
        }
    }
    std::sort(out.pole_terms.begin(), out.pole_terms.end(), [](const PoleTerm& a, const PoleTerm& b) {
        if (a.location != b.location)
            return a.location < b.location;
        return a.order < b.order;
    });
    return out;
}

// --- square roots -----------------------------------------------------------

struct RatSqrtResult {
    std::optional<RatFunc> root; // nullopt: not a square in K(z)
    std::optional<Integer> extension;
};

// s with s^2 = x via square-free decomposition; only the leading constant may
// push the result into an extension.
inline RatSqrtResult rf_sqrt(const RatFunc& x)
{
    if (x.is_zero())
        return {RatFunc(), std::nullopt};
    auto half_power = [](const Polynomial& p) -> std::optional<Polynomial> {
        Polynomial out(1);
        for (const auto& [f, i] : squarefree_decomposition(p)) {
            if (i % 2 != 0)
                return std::nullopt;
            out *= f.pow(static_cast<unsigned>(i / 2));
        }
        return out;
    };
    auto n = half_power(x.numerator());
    auto d = half_power(x.denominator());
    if (!n || !d)
        return {std::nullopt, std::nullopt};
    auto lc = sqrt_constant(x.numerator().leading());
    return {RatFunc(n->scaled(lc.root), *d), lc.extension};
}

// z0 is a zero or pole of some coefficient that is not identically zero.
inline bool rf_in_excluded_set(const RatFunc& alpha, const RatFunc& beta, const RatFunc& gamma, const FieldConstant& z0)
{
    for (const RatFunc* f : {&alpha, &beta, &gamma}) {
        if (f->is_zero())
            continue;
        if (f->denominator().eval(z0).is_zero() || f->numerator().eval(z0).is_zero())
            return true;
    }
    return false;
}

} // namespace hayman
