#pragma once

// Floating-point cross-check of a candidate solution at sample points in the
// disc |z| <= 2, away from every pole of the coefficients and of w.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "hayman/expsum.hpp"
#include "hayman/ratfunc.hpp"

namespace hayman
{

struct SpotCheck {
    std::complex<double> z;
    std::complex<double> w;
    double residual_abs = 0.0;
    double bound = 0.0;
    bool ok = false;
};

inline constexpr double kSpotTolerance = 1e-9;

inline std::vector<SpotCheck> numeric_spot_check(const RatFunc& alpha, const RatFunc& beta, const RatFunc& gamma,
                                                 const ExpSum& w, int count = 20)
{
    constexpr double kGuard = 0.05;
    std::vector<std::complex<double>> poles;
    for (const RatFunc* f : {&alpha, &beta, &gamma})
        for (auto r : numeric_roots(f->denominator()))
            poles.push_back(r);
    for (const auto& t : w.terms())
        for (auto r : numeric_roots(t.coeff.denominator()))
            poles.push_back(r);

    ExpSum w1 = w.derivative();
    ExpSum w2 = w1.derivative();
    std::vector<SpotCheck> out;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; static_cast<int>(out.size()) < count && k < 50 * count; ++k) {
        double radius = 2.0 * std::sqrt((k + 0.5) / (2.0 * count));
        if (radius > 2.0)
            radius = 2.0 - 0.01 * (k % 50);
        std::complex<double> z = std::polar(radius, golden * k);
        bool near = false;
        for (auto p : poles)
            if (std::abs(z - p) < kGuard)
                near = true;
        if (near)
            continue;
        std::complex<double> v = es_eval_complex(w, z);
        std::complex<double> v1 = es_eval_complex(w1, z);
        std::complex<double> v2 = es_eval_complex(w2, z);
        std::complex<double> res = v * v2 - v1 * v1 - alpha.eval_complex(z) * v - beta.eval_complex(z) * v1 -
                                   gamma.eval_complex(z);
        SpotCheck s;
        s.z = z;
        s.w = v;
        s.residual_abs = std::abs(res);
        s.bound = kSpotTolerance * (1.0 + std::norm(v));
        s.ok = s.residual_abs <= s.bound;
        out.push_back(s);
    }
    return out;
}

} // namespace hayman
