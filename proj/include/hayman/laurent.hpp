#pragma once

#include <optional>
#include <vector>

#include "hayman/constant_field.hpp"

namespace hayman
{

struct ResonanceInfo {
    // r = beta(z0)/a0 + 2 where that formula applies (simple zeros).
    std::optional<FieldConstant> r;
    bool is_positive_integer = false;
    std::optional<bool> condition_satisfied;
    std::optional<int> free_coefficient_index;
};

// Local expansion sum_n a_n (z - z0)^(p + n).
struct LaurentExpansion {
    FieldConstant z0;
    int p = 0;
    std::vector<FieldConstant> coefficients;
    int truncation_order = 0; // highest power of (z - z0) represented
    std::optional<ResonanceInfo> resonance;
    // Factor multiplying a_n in the order-matched equation, for n = 1, 2, ...
    std::vector<FieldConstant> linear_factors;
    // Continuation with the free coefficient set to 1 instead of 0.
    std::optional<std::vector<FieldConstant>> alternate_coefficients;
    // Index at which a failed resonance condition stopped the expansion.
    std::optional<int> halted_at;
    int multiplicity = 1;

    FieldConstant coefficient_of_power(int k) const
    {
        int idx = k - p;
        if (idx < 0 || idx >= static_cast<int>(coefficients.size()))
            return 0;
        return coefficients[static_cast<std::size_t>(idx)];
    }
};

} // namespace hayman
