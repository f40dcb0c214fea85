// Local expansions at a zero of a solution, branch by branch.

#include <iostream>

#include "hayman/hayman.hpp"

int main()
{
    using namespace hayman;
    RatFunc alpha = 0, beta = -3, gamma = -4;
    for (const auto& s : resonance_report(alpha, beta, gamma, 0)) {
        std::cout << "a0 = " << s.candidate.a0.to_string() << ": r = " << s.r->to_string() << " (" << s.status << ")\n";
        LaurentExpansion e = expand(alpha, beta, gamma, 0, s.candidate.p, s.candidate.a0, 8);
        for (std::size_t n = 0; n < e.coefficients.size(); ++n)
            std::cout << "  a" << n << " = " << e.coefficients[n].to_string() << "\n";
    }

    // A zero of -(z + c1)^2/2 - 1 with c1 = 3, where the constant field needs sqrt(-2).
    RatFunc a1 = 1, g1 = 2;
    FieldConstant z0 = FieldConstant::make(-3, 1, -2);
    for (const auto& cand : leading_candidates(a1, 0, g1, z0)) {
        LaurentExpansion e = expand(a1, 0, g1, z0, cand.p, cand.a0, 4);
        std::cout << "z0 = " << z0.to_string() << ", a0 = " << cand.a0.to_string() << ":";
        for (const auto& c : e.coefficients)
            std::cout << " " << c.to_string();
        std::cout << "\n";
    }
}
