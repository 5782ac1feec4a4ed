// Computes a multiplicity sequence, checks the local formula, and tests a
// reduction through the library API.

#include <iostream>

#include "gmseq/gmseq.hpp"

int main() {
    using namespace gmseq;
    const PolyRing ring({"x", "y", "z"});
    const CyclicModule m = CyclicModule::free(ring);

    const Ideal i = Ideal::parse(ring, {"x*y", "x*z", "y*z"});
    const MultiplicitySequence c = multiplicity_sequence(i, m);
    std::cout << "c(I) =";
    for (auto v : c.c) std::cout << ' ' << v;
    std::cout << "\n";

    const FormulaReport f = verify_formula(i, m);
    for (const auto& t : f.terms) {
        std::cout << "k=" << t.k << " lhs=" << t.lhs << " rhs=" << t.rhs << " " << to_string(t.verdict);
        for (const auto& p : t.support) std::cout << ' ' << p;
        std::cout << "\n";
    }

    const PolyRing plane({"x", "y"});
    const ReductionReport r = rees_criterion(Ideal::parse(plane, {"x^2", "y^2"}), Ideal::parse(plane, {"x^2", "x*y", "y^2"}),
                                             CyclicModule::free(plane));
    std::cout << "(x^2, y^2) in (x, y)^2: " << to_string(r.verdict) << ", reduced at n = " << *r.direct.reduced_at << "\n";
}
