// Computes cat = cd of Z^3 -> Z x Z_2 and prints the certificate.

#include <iostream>

#include "lscat/json_io.hpp"

int main() {
    using namespace lscat;

    const Homomorphism h(FgAbelianGroup::free(3), FgAbelianGroup(1, {2}), IntMatrix{{1, 0, 0}, {0, 1, 0}});
    const InvariantResult r = cat_cd(h);

    std::cout << h.domain().to_string() << " -> " << h.codomain().to_string() << ": cat = cd = " << r.value << "\n";
    std::cout << "certificate re-checks: " << (verify_certificate(r) ? "yes" : "no") << "\n";

    // H^*(Z_4; Z) through degree 4
    for (const auto& c : cohomology(FgAbelianGroup(0, {4}), Coefficients::integers(), 4))
        std::cout << "H^" << c.degree << " = " << c.group.to_string() << "\n";

    std::cout << json::encode(r.certificate.lower_witness).dump(2) << "\n";
}
