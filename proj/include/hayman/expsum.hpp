#pragma once

// Exponential sums  sum_i R_i(z) e^{lambda_i z}  with rational coefficients
// and constant rates. Solutions, their derivatives, residuals and
// antiderivatives all live in this class.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hayman/constant_field.hpp"
#include "hayman/laurent.hpp"
#include "hayman/ratfunc.hpp"
#include "hayman/series.hpp"

namespace hayman
{

struct ExpTerm {
    FieldConstant rate;
    RatFunc coeff;

    friend bool operator==(const ExpTerm& a, const ExpTerm& b) { return a.rate == b.rate && a.coeff == b.coeff; }
};

class ExpSum
{
public:
    ExpSum() = default;
    ExpSum(RatFunc r)
    {
        if (!r.is_zero())
            terms_.push_back({FieldConstant(0), std::move(r)});
    }
    ExpSum(FieldConstant c) : ExpSum(RatFunc(std::move(c))) {}
    ExpSum(int c) : ExpSum(RatFunc(c)) {}
    explicit ExpSum(std::vector<ExpTerm> terms) : terms_(std::move(terms)) { normalize(); }

    // coeff * e^{rate z}
    static ExpSum exp_term(const FieldConstant& rate, RatFunc coeff = RatFunc(1))
    {
        return ExpSum(std::vector<ExpTerm>{{rate, std::move(coeff)}});
    }

    const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool has_nonzero_rate() const
    {
        return std::any_of(terms_.begin(), terms_.end(), [](const ExpTerm& t) { return !t.rate.is_zero(); });
    }

    // The rational function when every rate is zero.
    std::optional<RatFunc> as_ratfunc() const
    {
        if (terms_.empty())
            return RatFunc();
        if (terms_.size() == 1 && terms_[0].rate.is_zero())
            return terms_[0].coeff;
        return std::nullopt;
    }

    bool is_constant() const
    {
        auto r = as_ratfunc();
        return r && r->is_constant();
    }

    std::optional<Integer> extension() const
    {
        std::optional<Integer> q;
        for (const auto& t : terms_) {
            merge_extension(q, extension_of(t.rate));
            merge_extension(q, t.coeff.extension());
        }
        return q;
    }

    ExpSum operator-() const
    {
        ExpSum out = *this;
        for (auto& t : out.terms_)
            t.coeff = -t.coeff;
        return out;
    }

    friend ExpSum operator+(const ExpSum& x, const ExpSum& y)
    {
        std::vector<ExpTerm> v = x.terms_;
        v.insert(v.end(), y.terms_.begin(), y.terms_.end());
        return ExpSum(std::move(v));
    }
    friend ExpSum operator-(const ExpSum& x, const ExpSum& y) { return x + (-y); }
    friend ExpSum operator*(const ExpSum& x, const ExpSum& y)
    {
        std::vector<ExpTerm> v;
        v.reserve(x.terms_.size() * y.terms_.size());
        for (const auto& a : x.terms_)
            for (const auto& b : y.terms_)
                v.push_back({a.rate + b.rate, a.coeff * b.coeff});
        return ExpSum(std::move(v));
    }
    ExpSum& operator+=(const ExpSum& o) { return *this = *this + o; }
    ExpSum& operator-=(const ExpSum& o) { return *this = *this - o; }
    ExpSum& operator*=(const ExpSum& o) { return *this = *this * o; }

    friend bool operator==(const ExpSum& x, const ExpSum& y) { return x.terms_ == y.terms_; }

    // Term-wise (R' + lambda R) e^{lambda z}.
    ExpSum derivative() const
    {
        std::vector<ExpTerm> v;
        for (const auto& t : terms_)
            v.push_back({t.rate, t.coeff.derivative() + RatFunc(t.rate) * t.coeff});
        return ExpSum(std::move(v));
    }

    // Terms sorted by rate, each "(coeff) * exp(rate * z)"; rate 0 omits the
    // exponential.
    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const auto& t = terms_[i];
            if (i > 0)
                out += " + ";
            out += "(" + t.coeff.to_string() + ")";
            if (!t.rate.is_zero()) {
                std::string rate = t.rate.to_string();
                if (!t.rate.is_monomial_form())
                    rate = "(" + rate + ")";
                out += " * exp(" + rate + " * z)";
            }
        }
        return out;
    }

private:
    void normalize()
    {
        std::stable_sort(terms_.begin(), terms_.end(),
                         [](const ExpTerm& a, const ExpTerm& b) { return a.rate < b.rate; });
        std::vector<ExpTerm> merged;
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().rate == t.rate)
                merged.back().coeff += t.coeff;
            else
                merged.push_back(std::move(t));
        }
        std::erase_if(merged, [](const ExpTerm& t) { return t.coeff.is_zero(); });
        terms_ = std::move(merged);
    }

    std::vector<ExpTerm> terms_;
};

inline ExpSum es_derivative(const ExpSum& x) { return x.derivative(); }

// --- integration ------------------------------------------------------------

struct ObstructionReport {
    FieldConstant offending_pole;
    FieldConstant rate;
    FieldConstant residue_coefficient;
};

struct IntegrationResult {
    std::optional<ExpSum> antiderivative;
    std::vector<ObstructionReport> obstructions;

    bool ok() const { return antiderivative.has_value(); }
};

namespace detail
{

inline std::map<FieldConstant, std::vector<FieldConstant>> group_pole_terms(const PartialFractionForm& pf)
{
    // location -> coefficients indexed by order (index 0 unused)
    std::map<FieldConstant, std::vector<FieldConstant>> poles;
    for (const auto& t : pf.pole_terms) {
        auto& v = poles[t.location];
        if (static_cast<int>(v.size()) <= t.order)
            v.resize(static_cast<std::size_t>(t.order) + 1);
        v[static_cast<std::size_t>(t.order)] = t.coefficient;
    }
    return poles;
}

inline RatFunc inverse_power(const FieldConstant& c, int k)
{
    return RatFunc(Polynomial(1), Polynomial::linear_factor(c).pow(static_cast<unsigned>(k)));
}

} // namespace detail

// Exact antiderivative of R e^{rate z} when it is meromorphic. Pole terms are
// reduced by parts down to (z - c)^{-1}; a surviving coefficient there would
// need a logarithm or an exponential integral and is reported instead.
inline IntegrationResult es_integrate(const RatFunc& R, const FieldConstant& rate)
{
    IntegrationResult result;
    if (R.is_zero()) {
        result.antiderivative = ExpSum();
        return result;
    }
    PartialFractionForm pf = rf_partial_fractions(R);
    RatFunc coeff;
    if (rate.is_zero()) {
        coeff = RatFunc(pf.polynomial_part.integral());
        for (const auto& t : pf.pole_terms) {
            if (t.order == 1)
                result.obstructions.push_back({t.location, rate, t.coefficient});
            else
                coeff += RatFunc(-t.coefficient / FieldConstant(t.order - 1)) * detail::inverse_power(t.location, t.order - 1);
        }
    } else {
        // Q' + rate Q = P  =>  Q = sum_j (-1)^j P^{(j)} / rate^{j+1}
        Polynomial q;
        Polynomial dp = pf.polynomial_part;
        FieldConstant scale = rate.inverse();
        while (!dp.is_zero()) {
            q += dp.scaled(scale);
            scale = -scale / rate;
            dp = dp.derivative();
        }
        coeff = RatFunc(q);
        for (auto& [c, a] : detail::group_pole_terms(pf)) {
            for (int k = static_cast<int>(a.size()) - 1; k >= 2; --k) {
                const FieldConstant ak = a[static_cast<std::size_t>(k)];
                if (ak.is_zero())
                    continue;
                FieldConstant km1(k - 1);
                coeff += RatFunc(-ak / km1) * detail::inverse_power(c, k - 1);
                a[static_cast<std::size_t>(k - 1)] += rate * ak / km1;
            }
            if (a.size() > 1 && !a[1].is_zero())
                result.obstructions.push_back({c, rate, a[1]});
        }
    }
    if (result.obstructions.empty())
        result.antiderivative = ExpSum::exp_term(rate, coeff);
    return result;
}

// For each pole c of R, the polynomial rho_c(lambda) = sum_k b_k lambda^{k-1}/(k-1)!
// (b_k the coefficient of (z - c)^{-k}); es_integrate(R, lambda) is obstructed
// exactly when some rho_c(lambda) != 0.
inline std::vector<std::pair<FieldConstant, Polynomial>> integration_residue_polynomials(const RatFunc& R)
{
    std::vector<std::pair<FieldConstant, Polynomial>> out;
    if (R.is_zero())
        return out;
    for (const auto& [c, b] : detail::group_pole_terms(rf_partial_fractions(R))) {
        std::vector<FieldConstant> rho(b.size() > 1 ? b.size() - 1 : 0);
        FieldConstant fact = 1;
        for (std::size_t k = 1; k < b.size(); ++k) {
            if (k > 1)
                fact *= FieldConstant(static_cast<long>(k - 1));
            rho[k - 1] = b[k] / fact;
        }
        out.emplace_back(c, Polynomial(std::move(rho)));
    }
    return out;
}

// w w'' - (w')^2 - alpha w - beta w' - gamma
inline ExpSum es_residual(const RatFunc& alpha, const RatFunc& beta, const RatFunc& gamma, const ExpSum& w)
{
    ExpSum w1 = w.derivative();
    ExpSum w2 = w1.derivative();
    return w * w2 - w1 * w1 - ExpSum(alpha) * w - ExpSum(beta) * w1 - ExpSum(gamma);
}

// --- local expansion --------------------------------------------------------

// Exact Laurent coefficients of x about z0 through (z - z0)^N. A nonzero rate
// at z0 != 0 would introduce the transcendental constant e^{rate z0}.
inline LaurentExpansion es_laurent_at(const ExpSum& x, const FieldConstant& z0, int N)
{
    if (x.is_zero())
        throw Error(ErrorCode::InvalidArgument, "Laurent expansion of the zero expression");
    struct Piece {
        int low;
        SeriesCoeffs coeffs;
    };
    std::vector<Piece> pieces;
    int min_power = N;
    for (const auto& t : x.terms()) {
        if (!t.rate.is_zero() && !z0.is_zero())
            throw Error(ErrorCode::TranscendentalConstant,
                        "expansion of exp(" + t.rate.to_string() + " * z) about z0 = " + z0.to_string() +
                            " needs exp(" + (t.rate * z0).to_string() + ")");
        Polynomial num = t.coeff.numerator().shifted(z0);
        Polynomial den = t.coeff.denominator().shifted(z0);
        int k = num.valuation();
        int m = den.valuation();
        int low = k - m;
        if (low > N)
            continue;
        auto count = static_cast<std::size_t>(N - low + 1);
        std::vector<FieldConstant> nc(num.coefficients().begin() + k, num.coefficients().end());
        std::vector<FieldConstant> dc(den.coefficients().begin() + m, den.coefficients().end());
        SeriesCoeffs s = series_div(nc, dc, count);
        if (!t.rate.is_zero())
            s = series_mul(s, series_exp_linear(t.rate, count), count);
        pieces.push_back({low, std::move(s)});
        min_power = std::min(min_power, low);
    }
    SeriesCoeffs acc(static_cast<std::size_t>(N - min_power + 1));
    for (const auto& piece : pieces)
        for (std::size_t i = 0; i < piece.coeffs.size(); ++i)
            acc[static_cast<std::size_t>(piece.low - min_power) + i] += piece.coeffs[i];
    std::size_t lead = 0;
    while (lead < acc.size() && acc[lead].is_zero())
        ++lead;
    if (lead == acc.size())
        throw Error(ErrorCode::InvalidArgument,
                    "expression vanishes through order " + std::to_string(N) + " at z0 = " + z0.to_string());
    LaurentExpansion out;
    out.z0 = z0;
    out.p = min_power + static_cast<int>(lead);
    out.coefficients.assign(acc.begin() + static_cast<std::ptrdiff_t>(lead), acc.end());
    out.truncation_order = N;
    return out;
}

// --- numerics ---------------------------------------------------------------

inline std::vector<std::complex<double>> numeric_roots(const Polynomial& p)
{
    std::vector<std::complex<double>> out;
    int n = p.degree();
    if (n <= 0)
        return out;
    std::complex<double> lead = p.leading().embed();
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i)
        companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i)
        companion(i, n - 1) = -p.coefficient(static_cast<std::size_t>(i)).embed() / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    for (int i = 0; i < n; ++i)
        out.push_back(solver.eigenvalues()(i));
    return out;
}

inline std::complex<double> es_eval_complex(const ExpSum& x, std::complex<double> z)
{
    constexpr double kPoleGuard = 1e-6;
    std::complex<double> acc{0.0, 0.0};
    for (const auto& t : x.terms()) {
        for (auto r : numeric_roots(t.coeff.denominator()))
            if (std::abs(z - r) <= kPoleGuard)
                throw Error(ErrorCode::NearPole, "evaluation point within 1e-6 of a pole");
        acc += t.coeff.eval_complex(z) * std::exp(t.rate.embed() * z);
    }
    return acc;
}

} // namespace hayman
