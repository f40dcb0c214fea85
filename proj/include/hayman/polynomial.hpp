#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hayman/constant_field.hpp"

namespace hayman
{

// Dense univariate polynomial in z, lowest degree first. The zero polynomial
// has no coefficients.
class Polynomial
{
public:
    Polynomial() = default;
    Polynomial(FieldConstant c)
    {
        if (!c.is_zero())
            coeffs_.push_back(std::move(c));
    }
    Polynomial(int c) : Polynomial(FieldConstant(c)) {}
    explicit Polynomial(std::vector<FieldConstant> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Polynomial z() { return Polynomial(std::vector<FieldConstant>{0, 1}); }

    static Polynomial monomial(FieldConstant c, std::size_t degree)
    {
        std::vector<FieldConstant> v(degree + 1);
        v[degree] = std::move(c);
        return Polynomial(std::move(v));
    }

    // z - c
    static Polynomial linear_factor(const FieldConstant& c) { return Polynomial(std::vector<FieldConstant>{-c, 1}); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    const std::vector<FieldConstant>& coefficients() const noexcept { return coeffs_; }

    FieldConstant coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : FieldConstant(0); }
    FieldConstant leading() const { return coeffs_.empty() ? FieldConstant(0) : coeffs_.back(); }

    bool has_rational_coefficients() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const FieldConstant& c) { return c.is_rational(); });
    }

    std::optional<Integer> extension() const
    {
        std::optional<Integer> q;
        for (const auto& c : coeffs_)
            merge_extension(q, extension_of(c));
        return q;
    }

    Polynomial operator-() const
    {
        Polynomial out = *this;
        for (auto& c : out.coeffs_)
            c = -c;
        return out;
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        if (o.coeffs_.size() > coeffs_.size())
            coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
            coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) { return *this += -o; }

    friend Polynomial operator+(Polynomial x, const Polynomial& y) { return x += y; }
    friend Polynomial operator-(Polynomial x, const Polynomial& y) { return x -= y; }

    friend Polynomial operator*(const Polynomial& x, const Polynomial& y)
    {
        if (x.is_zero() || y.is_zero())
            return {};
        std::vector<FieldConstant> v(x.coeffs_.size() + y.coeffs_.size() - 1);
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
            if (x.coeffs_[i].is_zero())
                continue;
            for (std::size_t j = 0; j < y.coeffs_.size(); ++j)
                v[i + j] += x.coeffs_[i] * y.coeffs_[j];
        }
        return Polynomial(std::move(v));
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const FieldConstant& s) const
    {
        if (s.is_zero())
            return {};
        Polynomial out = *this;
        for (auto& c : out.coeffs_)
            c *= s;
        return out;
    }

    Polynomial monic() const { return is_zero() ? *this : scaled(leading().inverse()); }

    Polynomial pow(unsigned n) const
    {
        Polynomial result(1);
        Polynomial base = *this;
        while (n > 0) {
            if (n & 1U)
                result *= base;
            n >>= 1U;
            if (n > 0)
                base *= base;
        }
        return result;
    }

    Polynomial derivative() const
    {
        if (coeffs_.size() <= 1)
            return {};
        std::vector<FieldConstant> v(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            v[k - 1] = coeffs_[k] * FieldConstant(static_cast<long>(k));
        return Polynomial(std::move(v));
    }

    // Antiderivative with zero constant term.
    Polynomial integral() const
    {
        if (is_zero())
            return {};
        std::vector<FieldConstant> v(coeffs_.size() + 1);
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            v[k + 1] = coeffs_[k] / FieldConstant(static_cast<long>(k + 1));
        return Polynomial(std::move(v));
    }

    FieldConstant eval(const FieldConstant& x) const
    {
        FieldConstant acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    std::complex<double> eval_complex(std::complex<double> x) const
    {
        std::complex<double> acc{0.0, 0.0};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + it->embed();
        return acc;
    }

    // p(z + c)
    Polynomial shifted(const FieldConstant& c) const
    {
        Polynomial acc;
        Polynomial lin(std::vector<FieldConstant>{c, 1});
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * lin + Polynomial(*it);
        return acc;
    }

    // Order of vanishing at z = 0 (lowest nonzero coefficient index).
    int valuation() const
    {
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (!coeffs_[k].is_zero())
                return static_cast<int>(k);
        return -1;
    }

    Polynomial conj() const
    {
        Polynomial out = *this;
        for (auto& c : out.coeffs_)
            c = c.conj();
        return out;
    }

    friend bool operator==(const Polynomial& x, const Polynomial& y) { return x.coeffs_ == y.coeffs_; }

    // "3/2*z^2 - z + 1", highest degree first.
    std::string to_string(const std::string& var = "z") const
    {
        if (is_zero())
            return "0";
        std::string out;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            const FieldConstant& c = coeffs_[static_cast<std::size_t>(k)];
            if (c.is_zero())
                continue;
            std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
            bool negative = false;
            std::string coef;
            if (c.is_monomial_form()) {
                negative = c.is_negative_monomial();
                FieldConstant mag = negative ? -c : c;
                coef = (mag.is_one() && k > 0) ? "" : mag.to_string();
            } else {
                coef = "(" + c.to_string() + ")";
            }
            std::string term = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
            if (first)
                out += negative ? "-" + term : term;
            else
                out += negative ? " - " + term : " + " + term;
            first = false;
        }
        return out;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back().is_zero())
            coeffs_.pop_back();
    }

    std::vector<FieldConstant> coeffs_;
};

struct PolynomialDivision {
    Polynomial quotient;
    Polynomial remainder;
};

inline PolynomialDivision divmod(const Polynomial& num, const Polynomial& den)
{
    if (den.is_zero())
        throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    std::vector<FieldConstant> rem = num.coefficients();
    const int dd = den.degree();
    if (num.degree() < dd)
        return {Polynomial(), num};
    std::vector<FieldConstant> quo(static_cast<std::size_t>(num.degree() - dd + 1));
    FieldConstant lead_inv = den.leading().inverse();
    for (int k = num.degree(); k >= dd; --k) {
        FieldConstant f = rem[static_cast<std::size_t>(k)] * lead_inv;
        quo[static_cast<std::size_t>(k - dd)] = f;
        if (f.is_zero())
            continue;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<std::size_t>(k - dd + j)] -= f * den.coefficient(static_cast<std::size_t>(j));
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

// Monic gcd; gcd(0, 0) = 0.
inline Polynomial gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        Polynomial r = divmod(a, b).remainder;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

inline Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) { return divmod(a, b).quotient; }

// Yun's algorithm: p = lc * prod f_i^i with f_i monic, square-free and
// pairwise coprime. Returns (f_i, i) for non-constant f_i.
inline std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p)
{
    std::vector<std::pair<Polynomial, int>> out;
    if (p.degree() <= 0)
        return out;
    Polynomial f = p.monic();
    Polynomial fp = f.derivative();
    Polynomial a = gcd(f, fp);
    Polynomial b = exact_quotient(f, a);
    Polynomial c = exact_quotient(fp, a);
    Polynomial d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        Polynomial g = gcd(b, d);
        if (g.degree() > 0)
            out.emplace_back(g, i);
        b = exact_quotient(b, g);
        c = exact_quotient(d, g);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

} // namespace hayman
