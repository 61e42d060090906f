// Spectral gaps of a rectangular lattice graph with edges 1 and sqrt(5).
#include <iostream>

#include "onesided/onesided.hpp"

using namespace onesided;

int main() {
  for (long u : {9869, 29608}) {
    const BigRational coupling(u, 10000);
    GapReport r = classify_gaps({QuadraticSurd(BigInt(1)), QuadraticSurd::sqrt(5), QuadraticSurd(coupling)}, 10000);
    std::cout << "u = " << static_cast<double>(coupling) << ": " << to_string(r.classification) << ", L_a = " << r.L_a->str()
              << ", L_b = " << r.L_b->str() << "\n";
    for (const auto& s : r.solutions) std::cout << "  family " << to_string(s.family) << ", m = " << s.m << "\n";
  }
}
