#pragma once

// Roots of polynomials inside the constant field: rational roots by the
// rational root theorem, the rest by the quadratic formula when at most a
// quadratic factor remains.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "hayman/constant_field.hpp"
#include "hayman/polynomial.hpp"

namespace hayman
{

struct RootMultiplicity {
    FieldConstant root;
    int multiplicity = 1;
};

struct Splitting {
    std::vector<RootMultiplicity> roots;
    // Monic product of everything that did not split (1 when fully split).
    Polynomial unsplit{1};
};

namespace detail
{

inline std::vector<Integer> positive_divisors(Integer n)
{
    n = abs(n);
    std::vector<std::pair<Integer, int>> factors;
    constexpr unsigned long kLimit = 10000000UL;
    for (unsigned long p = 2; p <= kLimit; ++p) {
        Integer pp(p);
        if (pp * pp > n)
            break;
        int e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t()) != 0) {
            n /= pp;
            ++e;
        }
        if (e > 0)
            factors.emplace_back(pp, e);
    }
    if (n > 1)
        factors.emplace_back(n, 1);
    std::vector<Integer> divs{1};
    for (const auto& [p, e] : factors) {
        std::size_t base = divs.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i)
                divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

// Distinct rational roots of a polynomial with rational coefficients.
inline std::vector<FieldConstant> rational_roots(const Polynomial& p)
{
    std::vector<FieldConstant> out;
    if (p.degree() <= 0)
        return out;
    Integer lcm = 1;
    for (const auto& c : p.coefficients())
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rational_part().get_den().get_mpz_t());
    std::vector<Integer> ints;
    for (const auto& c : p.coefficients())
        ints.push_back(Integer(c.rational_part() * Rational(lcm)));
    std::size_t low = 0;
    while (low < ints.size() && ints[low] == 0)
        ++low;
    if (low > 0)
        out.emplace_back(0);
    if (ints.size() - low <= 1)
        return out;
    auto eval = [&](const Integer& num, const Integer& den) {
        // sum c_k num^k den^(n-k), zero iff num/den is a root
        Integer acc = 0;
        Integer dpow = 1;
        std::size_t n = ints.size() - 1;
        std::vector<Integer> dpows(n - low + 1);
        for (std::size_t k = 0; k <= n - low; ++k) {
            dpows[k] = dpow;
            dpow *= den;
        }
        for (std::size_t k = n + 1; k-- > low;) {
            acc = acc * num + ints[k] * dpows[n - k];
        }
        return acc == 0;
    };
    auto nums = positive_divisors(ints[low]);
    auto dens = positive_divisors(ints.back());
    for (const auto& d : dens)
        for (const auto& n : nums)
            for (int sign : {1, -1}) {
                Integer sn = sign * n;
                Integer g;
                mpz_gcd(g.get_mpz_t(), sn.get_mpz_t(), d.get_mpz_t());
                if (g != 1)
                    continue;
                if (eval(sn, d))
                    out.push_back(FieldConstant::rational(sn, d));
            }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Roots of a square-free polynomial; factors left unsplit go to `rest`.
inline std::vector<FieldConstant> squarefree_roots(const Polynomial& f, Polynomial& rest)
{
    std::vector<FieldConstant> roots;
    Polynomial g = f.monic();
    std::vector<FieldConstant> candidates;
    if (g.has_rational_coefficients())
        candidates = rational_roots(g);
    else if (g.degree() > 2) {
        // Rational roots of g are rational roots of its norm g * conj(g).
        Polynomial n = g * g.conj();
        if (n.has_rational_coefficients())
            for (auto& r : rational_roots(n))
                if (g.eval(r).is_zero())
                    candidates.push_back(r);
    }
    for (auto& r : candidates) {
        roots.push_back(r);
        g = exact_quotient(g, Polynomial::linear_factor(r));
    }
    if (g.degree() == 1) {
        roots.push_back(-g.coefficient(0) / g.coefficient(1));
    } else if (g.degree() == 2) {
        const FieldConstant& b = g.coefficient(1);
        const FieldConstant& c = g.coefficient(0);
        FieldConstant disc = b * b - FieldConstant(4) * c;
        try {
            auto s = sqrt_constant(disc);
            roots.push_back((-b + s.root) / FieldConstant(2));
            roots.push_back((-b - s.root) / FieldConstant(2));
            g = Polynomial(1);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NestedExtension && e.code() != ErrorCode::IncompatibleExtensions)
                throw;
            rest *= g;
        }
    } else if (g.degree() > 2) {
        rest *= g;
    }
    return roots;
}

} // namespace detail

inline Splitting split_into_linear_factors(const Polynomial& p)
{
    Splitting out;
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        Polynomial rest(1);
        for (auto& r : detail::squarefree_roots(factor, rest))
            out.roots.push_back({r, mult});
        if (rest.degree() > 0)
            out.unsplit *= rest.pow(static_cast<unsigned>(mult));
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const RootMultiplicity& x, const RootMultiplicity& y) { return x.root < y.root; });
    return out;
}

// Distinct roots in the constant field (possibly after one extension).
inline std::vector<FieldConstant> roots_in_field(const Polynomial& p)
{
    std::vector<FieldConstant> out;
    for (auto& r : split_into_linear_factors(p).roots)
        out.push_back(r.root);
    return out;
}

} // namespace hayman
