// Prints every orthocomplementation of MO_k for k = 1..3, found both by the
// LP route and by exhaustive search.

#include "orthoforge/generate.hpp"
#include "orthoforge/search.hpp"

#include <iostream>

int main() {
    using namespace orthoforge;
    for (std::size_t k = 1; k <= 3; ++k) {
        const Lattice L = build_lattice(generate("mo", k));
        const SearchReport report = find_orthos(L);
        std::cout << "MO_" << k << ": " << report.orthos.size() << " orthocomplementation(s), routes "
                  << (*report.agreement ? "agree" : "DISAGREE") << '\n';
        for (const auto& o : report.orthos) {
            std::cout << "  ";
            for (std::size_t p = 0; p < L.size(); ++p)
                if (p < o.sigma[p]) std::cout << ' ' << L.label(p) << "<->" << L.label(o.sigma[p]);
            std::cout << '\n';
        }
    }
}
