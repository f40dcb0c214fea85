#pragma once

// Exact scalars: rationals and elements a + b*sqrt(q) of a single quadratic
// extension Q(sqrt(q)), with q a square-free integer. q == 0 marks a rational.

#include <compare>
#include <complex>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "hayman/error.hpp"

namespace hayman
{

using Integer = mpz_class;
using Rational = mpq_class;

namespace detail
{

inline Rational make_rational(const Integer& num, const Integer& den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_perfect_square(const Integer& n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Integer isqrt(const Integer& n)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

struct SquareSplit {
    Integer root;       // s
    Integer squarefree; // f, carries the sign of n
};

// n = s^2 * f with f square-free. Trial division runs while p^3 <= m; the
// cofactor left over then has at most two prime factors, so a perfect-square
// test finishes the job.
inline SquareSplit split_square(const Integer& n)
{
    if (n == 0)
        return {0, 0};
    Integer m = abs(n);
    Integer s = 1;
    Integer f = 1;
    auto absorb = [&](const Integer& p) {
        int e = 0;
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()) != 0) {
            m /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i)
            s *= p;
        if (e % 2 != 0)
            f *= p;
    };
    absorb(Integer(2));
    constexpr unsigned long kTrialLimit = 2000000UL;
    for (unsigned long p = 3; p <= kTrialLimit; p += 2) {
        Integer pp(p);
        if (pp * pp * pp > m)
            break;
        absorb(pp);
    }
    if (m > 1) {
        if (is_perfect_square(m))
            s *= isqrt(m);
        else
            f *= m;
    }
    if (n < 0)
        f = -f;
    return {s, f};
}

inline std::string rational_string(const Rational& r) { return r.get_str(); }

} // namespace detail

class FieldConstant
{
public:
    FieldConstant() = default;
    FieldConstant(long v) : a_(v) {}
    FieldConstant(int v) : a_(v) {}
    FieldConstant(Rational a) : a_(std::move(a)) { a_.canonicalize(); }

    static FieldConstant rational(const Integer& num, const Integer& den)
    {
        if (den == 0)
            throw Error(ErrorCode::DivisionByZero, "zero denominator in rational literal");
        return FieldConstant(detail::make_rational(num, den));
    }

    // a + b*sqrt(q) for an arbitrary rational q; normalizes q to a square-free
    // integer and folds perfect squares back into the rational part.
    static FieldConstant make(const Rational& a, const Rational& b, const Rational& q)
    {
        FieldConstant out;
        out.a_ = a;
        if (b == 0 || q == 0)
            return out;
        // sqrt(n/d) = sqrt(n*d)/d
        Integer nd = q.get_num() * q.get_den();
        auto split = detail::split_square(nd);
        Rational scale = detail::make_rational(split.root, q.get_den());
        Rational coeff = b * scale;
        if (split.squarefree == 1) {
            out.a_ += coeff;
            return out;
        }
        out.b_ = coeff;
        out.q_ = split.squarefree;
        return out;
    }

    const Rational& rational_part() const noexcept { return a_; }
    const Rational& radical_coefficient() const noexcept { return b_; }
    // Square-free discriminant of the extension this value lives in; 0 if rational.
    const Integer& discriminant() const noexcept { return q_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0; }
    bool is_rational() const { return q_ == 0; }

    bool is_integer() const { return is_rational() && a_.get_den() == 1; }
    bool is_positive_integer() const { return is_integer() && a_ > 0; }

    FieldConstant conj() const
    {
        FieldConstant out = *this;
        out.b_ = -out.b_;
        return out;
    }

    // N(a + b sqrt q) = a^2 - q b^2
    Rational norm() const { return a_ * a_ - Rational(q_) * b_ * b_; }

    FieldConstant operator-() const
    {
        FieldConstant out = *this;
        out.a_ = -out.a_;
        out.b_ = -out.b_;
        return out;
    }

    FieldConstant& operator+=(const FieldConstant& o)
    {
        Integer q = common_discriminant(*this, o);
        a_ += o.a_;
        b_ += o.b_;
        q_ = q;
        normalize();
        return *this;
    }
    FieldConstant& operator-=(const FieldConstant& o) { return *this += -o; }
    FieldConstant& operator*=(const FieldConstant& o)
    {
        Integer q = common_discriminant(*this, o);
        Rational a = a_ * o.a_ + Rational(q) * b_ * o.b_;
        Rational b = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(a);
        b_ = std::move(b);
        q_ = q;
        normalize();
        return *this;
    }
    FieldConstant& operator/=(const FieldConstant& o) { return *this *= o.inverse(); }

    FieldConstant inverse() const
    {
        if (is_zero())
            throw Error(ErrorCode::DivisionByZero, "inverse of zero constant");
        Rational n = norm();
        FieldConstant out;
        out.a_ = a_ / n;
        out.b_ = -b_ / n;
        out.q_ = q_;
        out.normalize();
        return out;
    }

    friend FieldConstant operator+(FieldConstant x, const FieldConstant& y) { return x += y; }
    friend FieldConstant operator-(FieldConstant x, const FieldConstant& y) { return x -= y; }
    friend FieldConstant operator*(FieldConstant x, const FieldConstant& y) { return x *= y; }
    friend FieldConstant operator/(FieldConstant x, const FieldConstant& y) { return x /= y; }

    friend bool operator==(const FieldConstant& x, const FieldConstant& y)
    {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.q_ == y.q_;
    }

    // Lexicographic on (a, b, q); a total order used for canonical term sorting.
    friend std::strong_ordering operator<=>(const FieldConstant& x, const FieldConstant& y)
    {
        if (int c = cmp(x.a_, y.a_); c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        if (int c = cmp(x.b_, y.b_); c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        if (int c = cmp(x.q_, y.q_); c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::complex<double> embed() const
    {
        double a = a_.get_d();
        if (b_ == 0)
            return {a, 0.0};
        double b = b_.get_d();
        double q = q_.get_d();
        if (q > 0)
            return {a + b * std::sqrt(q), 0.0};
        return {a, b * std::sqrt(-q)};
    }

    // Exact text form: "3/2", "sqrt(2)", "1/2*sqrt(-1)", "1 - sqrt(2)".
    std::string to_string() const
    {
        if (b_ == 0)
            return detail::rational_string(a_);
        std::string radical = "sqrt(" + q_.get_str() + ")";
        Rational mag = abs(b_);
        std::string rad_term = (mag == 1) ? radical : detail::rational_string(mag) + "*" + radical;
        if (a_ == 0)
            return (b_ < 0 ? "-" : "") + rad_term;
        return detail::rational_string(a_) + (b_ < 0 ? " - " : " + ") + rad_term;
    }

    // True when the printed form is a single signed product (no inner + or -).
    bool is_monomial_form() const { return b_ == 0 || a_ == 0; }

    bool is_negative_monomial() const { return (b_ == 0 && a_ < 0) || (a_ == 0 && b_ < 0); }

    static Integer common_discriminant(const FieldConstant& x, const FieldConstant& y)
    {
        if (x.q_ == 0)
            return y.q_;
        if (y.q_ == 0 || x.q_ == y.q_)
            return x.q_;
        throw Error(ErrorCode::IncompatibleExtensions,
                    "cannot combine values from Q(sqrt(" + x.q_.get_str() + ")) and Q(sqrt(" + y.q_.get_str() + "))");
    }

private:
    void normalize()
    {
        if (b_ == 0)
            q_ = 0;
    }

    Rational a_{0};
    Rational b_{0};
    Integer q_{0};
};

inline std::complex<double> embed_complex(const FieldConstant& c) { return c.embed(); }

// Extension q carried by a value, or nullopt when it is rational.
inline std::optional<Integer> extension_of(const FieldConstant& c)
{
    if (c.is_rational())
        return std::nullopt;
    return c.discriminant();
}

// Merges an extension into a running budget; a second distinct extension is
// Unsupported.
inline void merge_extension(std::optional<Integer>& budget, const std::optional<Integer>& q)
{
    if (!q)
        return;
    if (!budget) {
        budget = q;
        return;
    }
    if (*budget != *q)
        throw Error(ErrorCode::Unsupported, "second field extension required: sqrt(" + budget->get_str() +
                                                ") and sqrt(" + q->get_str() + ")");
}

struct SqrtResult {
    FieldConstant root;
    // Set when the root needed an extension the input did not live in.
    std::optional<Integer> extension;
};

// Square root in the constant field. Rational input always has a root in Q
// or Q(sqrt(q')); input already in Q(sqrt(q)) must be a square there.
inline SqrtResult sqrt_constant(const FieldConstant& c)
{
    if (c.is_rational()) {
        const Rational& v = c.rational_part();
        if (v == 0)
            return {FieldConstant(0), std::nullopt};
        FieldConstant root = FieldConstant::make(0, 1, v);
        return {root, extension_of(root)};
    }
    // (x + y sqrt q)^2 = (x^2 + q y^2) + 2xy sqrt q; with b != 0, x^2 solves
    // 4x^4 - 4a x^2 + q b^2 = 0.
    const Rational& a = c.rational_part();
    const Rational& b = c.radical_coefficient();
    Rational q(c.discriminant());
    Rational n = c.norm();
    auto rational_sqrt = [](const Rational& r) -> std::optional<Rational> {
        if (r < 0)
            return std::nullopt;
        if (!detail::is_perfect_square(r.get_num()) || !detail::is_perfect_square(r.get_den()))
            return std::nullopt;
        return detail::make_rational(detail::isqrt(r.get_num()), detail::isqrt(r.get_den()));
    };
    if (auto t = rational_sqrt(n)) {
        for (int sign : {1, -1}) {
            Rational x2 = (a + sign * (*t)) / 2;
            if (auto x = rational_sqrt(x2); x && *x != 0) {
                Rational y = b / (2 * (*x));
                FieldConstant root = FieldConstant::make(*x, y, q);
                return {root, std::nullopt};
            }
        }
    }
    throw Error(ErrorCode::NestedExtension, c.to_string() + " is not a square in Q(sqrt(" +
                                                c.discriminant().get_str() + "))");
}

} // namespace hayman
