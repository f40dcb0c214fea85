// Classifies a few coefficient triples and prints one instance per family.

#include <iostream>

#include "hayman/hayman.hpp"

int main()
{
    using namespace hayman;
    const char* inputs[][3] = {
        {"2", "0", "0"},
        {"1 - z", "0", "-z^2"},
        {"1", "2", "1"},
        {"z", "0", "1"},
    };
    for (const auto& in : inputs) {
        RatFunc a = parse_ratfunc(in[0]), b = parse_ratfunc(in[1]), c = parse_ratfunc(in[2]);
        ClassificationReport r = classify(a, b, c);
        std::cout << "alpha = " << a.to_string() << ", beta = " << b.to_string() << ", gamma = " << c.to_string()
                  << ": " << r.families.size() << " families\n";
        for (const auto& f : r.families)
            std::cout << "  " << to_string(f.label) << (f.admissible ? " (admissible)" : "") << "  e.g. w = "
                      << f.checks.front().w.to_string() << "\n";
    }
}
