#pragma once

// Local analysis of  w w'' - w'^2 = alpha w + beta w' + gamma  at a zero z0 of
// w lying off the coefficients' zeros and poles. Coefficients are found by
// substituting a truncated series and matching orders; no closed recurrence
// is hard-coded, so the same engine serves every leading-order case.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "hayman/constant_field.hpp"
#include "hayman/laurent.hpp"
#include "hayman/ratfunc.hpp"
#include "hayman/series.hpp"

namespace hayman
{

struct LeadingCandidate {
    int p = 1;
    FieldConstant a0;
    int multiplicity = 1;
    // gamma == 0, beta != 0 only: whether alpha(z0) + beta'(z0) = 0.
    std::optional<bool> side_condition;
    std::string note;
};

inline bool is_trivial_equation(const RatFunc& alpha, const RatFunc& beta, const RatFunc& gamma)
{
    return alpha.is_zero() && beta.is_zero() && gamma.is_zero();
}

// Leading-order balance at z0. With beta == gamma == 0 zeros are double;
// otherwise they are simple. Empty when all coefficients vanish, since then
// w = c2 e^{c1 z} has no zeros at all.
inline std::vector<LeadingCandidate> leading_candidates(const RatFunc& alpha, const RatFunc& beta,
                                                        const RatFunc& gamma, const FieldConstant& z0)
{
    if (rf_in_excluded_set(alpha, beta, gamma, z0))
        throw Error(ErrorCode::PointInPhi, "z0 = " + z0.to_string() + " is a zero or pole of a coefficient");
    std::vector<LeadingCandidate> out;
    if (is_trivial_equation(alpha, beta, gamma))
        return out;
    try {
        if (beta.is_zero() && gamma.is_zero()) {
            out.push_back({2, -alpha.eval(z0) / FieldConstant(2), 1, std::nullopt, "double zero"});
            return out;
        }
        FieldConstant b0 = beta.is_zero() ? FieldConstant(0) : beta.eval(z0);
        if (gamma.is_zero()) {
            FieldConstant side = alpha.eval(z0) + beta.derivative().eval(z0);
            out.push_back({1, -b0, 1, side.is_zero(), "simple zero, a0 = -beta(z0)"});
            return out;
        }
        FieldConstant g0 = gamma.eval(z0);
        FieldConstant disc = b0 * b0 - FieldConstant(4) * g0;
        auto s = sqrt_constant(disc);
        if (s.root.is_zero()) {
            out.push_back({1, -b0 / FieldConstant(2), 2, std::nullopt, "double root of a0^2 + beta(z0) a0 + gamma(z0)"});
            return out;
        }
        out.push_back({1, (-b0 + s.root) / FieldConstant(2), 1, std::nullopt, "root of a0^2 + beta(z0) a0 + gamma(z0)"});
        out.push_back({1, (-b0 - s.root) / FieldConstant(2), 1, std::nullopt, "root of a0^2 + beta(z0) a0 + gamma(z0)"});
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NestedExtension || e.code() == ErrorCode::IncompatibleExtensions)
            throw Error(ErrorCode::Unsupported, std::string("leading coefficient needs a second extension: ") + e.what());
        throw;
    }
    return out;
}

namespace detail
{

struct LocalEquation {
    SeriesCoeffs alpha, beta, gamma;
};

inline SeriesCoeffs taylor_or_zero(const RatFunc& f, const FieldConstant& z0, std::size_t n)
{
    if (f.is_zero())
        return SeriesCoeffs(n);
    return f.taylor(z0, n);
}

// Coefficient of t^m in W W'' - W'^2 - alpha W - beta W' - gamma, where W[k]
// is the coefficient of t^k (missing entries are zero).
inline FieldConstant residual_coefficient(const LocalEquation& eq, const SeriesCoeffs& W, int m)
{
    auto w = [&](int k) { return k >= 0 && k < static_cast<int>(W.size()) ? W[static_cast<std::size_t>(k)] : FieldConstant(0); };
    auto d1 = [&](int k) { return w(k + 1) * FieldConstant(k + 1); };
    auto d2 = [&](int k) { return w(k + 2) * FieldConstant((k + 2) * (k + 1)); };
    FieldConstant acc;
    for (int i = 0; i <= m; ++i) {
        FieldConstant wi = w(i);
        if (!wi.is_zero())
            acc += wi * d2(m - i);
        FieldConstant di = d1(i);
        if (!di.is_zero())
            acc -= di * d1(m - i);
        FieldConstant al = series_at(eq.alpha, static_cast<std::size_t>(i));
        if (!al.is_zero())
            acc -= al * w(m - i);
        FieldConstant be = series_at(eq.beta, static_cast<std::size_t>(i));
        if (!be.is_zero())
            acc -= be * d1(m - i);
    }
    acc -= series_at(eq.gamma, static_cast<std::size_t>(m));
    return acc;
}

} // namespace detail

// Expansion w = sum_{n=0}^{N} a_n (z - z0)^{n+p} on the branch (p, a0). At a
// resonance (vanishing linear factor) the coefficient is free if the
// compatibility condition holds; it is set to free_value when given,
// otherwise 0, with the continuation for 1 kept alongside.
inline LaurentExpansion expand(const RatFunc& alpha, const RatFunc& beta, const RatFunc& gamma,
                               const FieldConstant& z0, int p, const FieldConstant& a0, int N,
                               std::optional<FieldConstant> free_value = std::nullopt)
{
    if (p < 1)
        throw Error(ErrorCode::InvalidArgument, "leading order p must be positive at a zero");
    if (N < p + 2)
        throw Error(ErrorCode::InvalidArgument, "truncation order N must be at least p + 2");
    if (a0.is_zero())
        throw Error(ErrorCode::InvalidArgument, "leading coefficient a0 must be nonzero");
    const int max_order = N + 2 * p - 2;
    const auto terms = static_cast<std::size_t>(max_order + 1);
    detail::LocalEquation eq{detail::taylor_or_zero(alpha, z0, terms), detail::taylor_or_zero(beta, z0, terms),
                             detail::taylor_or_zero(gamma, z0, terms)};

    SeriesCoeffs W(static_cast<std::size_t>(p + N + 1));
    W[static_cast<std::size_t>(p)] = a0;
    for (int m = 0; m <= 2 * p - 2; ++m)
        if (!detail::residual_coefficient(eq, W, m).is_zero())
            throw Error(ErrorCode::InvalidArgument, "(p, a0) = (" + std::to_string(p) + ", " + a0.to_string() +
                                                        ") does not balance the equation at z0");

    LaurentExpansion out;
    out.z0 = z0;
    out.p = p;
    ResonanceInfo info;
    if (p == 1) {
        FieldConstant b0 = beta.is_zero() ? FieldConstant(0) : beta.eval(z0);
        info.r = b0 / a0 + FieldConstant(2);
        info.is_positive_integer = info.r->is_positive_integer();
    }

    // Fills W[p+n] for n in [from, N]; returns the halting index if a
    // resonance condition fails.
    auto run = [&](SeriesCoeffs& coeffs, int from, bool record) -> std::optional<int> {
        for (int n = from; n <= N; ++n) {
            const int m = n + 2 * p - 2;
            auto slot = static_cast<std::size_t>(p + n);
            coeffs[slot] = 0;
            FieldConstant e0 = detail::residual_coefficient(eq, coeffs, m);
            coeffs[slot] = 1;
            FieldConstant e1 = detail::residual_coefficient(eq, coeffs, m);
            FieldConstant factor = e1 - e0;
            if (record)
                out.linear_factors.push_back(factor);
            if (!factor.is_zero()) {
                coeffs[slot] = -e0 / factor;
                continue;
            }
            if (!e0.is_zero()) {
                coeffs[slot] = 0;
                if (record) {
                    info.condition_satisfied = false;
                    info.free_coefficient_index = n;
                }
                return n;
            }
            if (record) {
                info.condition_satisfied = true;
                info.free_coefficient_index = n;
            }
            coeffs[slot] = (record && free_value) ? *free_value : FieldConstant(0);
        }
        return std::nullopt;
    };

    auto halted = run(W, 1, true);
    int last = halted ? *halted - 1 : N;
    out.coefficients.assign(W.begin() + p, W.begin() + p + last + 1);
    out.truncation_order = p + last;
    out.halted_at = halted;

    if (!halted && info.condition_satisfied.value_or(false) && !free_value) {
        int idx = *info.free_coefficient_index;
        SeriesCoeffs alt = W;
        alt[static_cast<std::size_t>(p + idx)] = 1;
        std::fill(alt.begin() + p + idx + 1, alt.end(), FieldConstant(0));
        run(alt, idx + 1, false);
        out.alternate_coefficients = std::vector<FieldConstant>(alt.begin() + p, alt.end());
    }
    if (info.r || info.free_coefficient_index)
        out.resonance = info;
    return out;
}

// Truncated-series check: smallest order at which the expansion fails to
// satisfy the equation (orders up to N + 2p - 2 vanish for a full expansion).
inline int remainder_order(const RatFunc& alpha, const RatFunc& beta, const RatFunc& gamma,
                           const LaurentExpansion& e, int horizon)
{
    const auto terms = static_cast<std::size_t>(horizon + 1);
    detail::LocalEquation eq{detail::taylor_or_zero(alpha, e.z0, terms), detail::taylor_or_zero(beta, e.z0, terms),
                             detail::taylor_or_zero(gamma, e.z0, terms)};
    SeriesCoeffs W(static_cast<std::size_t>(e.p) + e.coefficients.size());
    for (std::size_t i = 0; i < e.coefficients.size(); ++i)
        W[static_cast<std::size_t>(e.p) + i] = e.coefficients[i];
    for (int m = 0; m <= horizon; ++m)
        if (!detail::residual_coefficient(eq, W, m).is_zero())
            return m;
    return horizon + 1;
}

struct ResonanceSummary {
    LeadingCandidate candidate;
    bool formula_applicable = false;
    std::optional<FieldConstant> r;
    bool is_positive_integer = false;
    std::optional<bool> condition_satisfied;
    // Index where the order-matched linear factor vanishes, if found.
    std::optional<int> operational_index;
    // "non-integer", "evaluated", "not-applicable", "ResonanceCapExceeded"
    std::string status;
};

inline std::vector<ResonanceSummary> resonance_report(const RatFunc& alpha, const RatFunc& beta, const RatFunc& gamma,
                                                      const FieldConstant& z0, int cap = 64)
{
    std::vector<ResonanceSummary> out;
    for (const auto& cand : leading_candidates(alpha, beta, gamma, z0)) {
        ResonanceSummary s;
        s.candidate = cand;
        if (cand.p != 1) {
            s.status = "not-applicable";
            auto e = expand(alpha, beta, gamma, z0, cand.p, cand.a0, cand.p + 4);
            if (e.resonance && e.resonance->free_coefficient_index) {
                s.operational_index = e.resonance->free_coefficient_index;
                s.condition_satisfied = e.resonance->condition_satisfied;
            }
            out.push_back(std::move(s));
            continue;
        }
        s.formula_applicable = true;
        FieldConstant b0 = beta.is_zero() ? FieldConstant(0) : beta.eval(z0);
        s.r = b0 / cand.a0 + FieldConstant(2);
        s.is_positive_integer = s.r->is_positive_integer();
        if (!s.is_positive_integer) {
            s.status = "non-integer";
        } else if (s.r->rational_part() > cap) {
            s.status = std::string(to_string(ErrorCode::ResonanceCapExceeded));
        } else {
            int r = static_cast<int>(s.r->rational_part().get_num().get_si());
            auto e = expand(alpha, beta, gamma, z0, 1, cand.a0, std::max(r, 3));
            s.status = "evaluated";
            if (e.resonance) {
                s.condition_satisfied = e.resonance->condition_satisfied;
                s.operational_index = e.resonance->free_coefficient_index;
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace hayman
