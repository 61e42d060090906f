// Best upper approximations of pi with denominators up to 7.
#include <iostream>

#include "onesided/onesided.hpp"

using namespace onesided;

int main() {
  // The known prefix of pi; "..." semantics: nothing is claimed beyond it.
  TermStream pi{3, [terms = std::vector<int>{7, 15, 1, 292, 1, 1, 1, 2, 1, 3}, i = std::size_t{0}]() mutable
                   -> std::optional<BigInt> {
                     if (i >= terms.size()) return std::nullopt;
                     return BigInt(terms[i++]);
                   },
                std::nullopt, "pi"};
  CFExpansion cf(std::move(pi));
  for (unsigned kind : {1u, 2u}) {
    ClassificationResult r = classify(Query{cf, kind, Side::upper, BigInt(7), 64});
    std::cout << "kind " << kind << ":";
    for (const auto& f : r.members) std::cout << ' ' << f.p << '/' << f.q;
    std::cout << '\n';
  }
}
