#pragma once

// Truncated power series in t over the constant field, stored as coefficient
// vectors (index = power of t).

#include <cstddef>
#include <vector>

#include "hayman/constant_field.hpp"
#include "hayman/polynomial.hpp"

namespace hayman
{

using SeriesCoeffs = std::vector<FieldConstant>;

inline FieldConstant series_at(const SeriesCoeffs& s, std::size_t k) { return k < s.size() ? s[k] : FieldConstant(0); }

inline SeriesCoeffs series_mul(const SeriesCoeffs& a, const SeriesCoeffs& b, std::size_t n)
{
    SeriesCoeffs out(n);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero())
            continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

// a / b to n terms; b[0] must be nonzero.
inline SeriesCoeffs series_div(const SeriesCoeffs& a, const SeriesCoeffs& b, std::size_t n)
{
    if (b.empty() || b[0].is_zero())
        throw Error(ErrorCode::DivisionByZero, "series division by a series with zero constant term");
    FieldConstant inv0 = b[0].inverse();
    SeriesCoeffs out(n);
    for (std::size_t k = 0; k < n; ++k) {
        FieldConstant acc = series_at(a, k);
        for (std::size_t j = 1; j <= k && j < b.size(); ++j)
            acc -= b[j] * out[k - j];
        out[k] = acc * inv0;
    }
    return out;
}

// e^{rate * t}
inline SeriesCoeffs series_exp_linear(const FieldConstant& rate, std::size_t n)
{
    SeriesCoeffs out(n);
    FieldConstant term = 1;
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = term;
        term = term * rate / FieldConstant(static_cast<long>(k + 1));
    }
    return out;
}

inline SeriesCoeffs series_from_polynomial(const Polynomial& p, std::size_t n)
{
    SeriesCoeffs out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = p.coefficient(k);
    return out;
}

} // namespace hayman
