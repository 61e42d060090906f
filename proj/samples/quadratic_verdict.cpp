// Which side of a quadratic irrational has finitely many 3rd-kind best approximations.
#include <iostream>

#include "onesided/onesided.hpp"

using namespace onesided;

int main(int argc, char** argv) {
  long d = argc > 1 ? std::stol(argv[1]) : 5;
  CFExpansion cf(QuadraticSurd::sqrt(d));
  QuadraticVerdict v = quadratic_kind3_verdict(cf);
  std::cout << "sqrt(" << d << "): m = " << v.preperiod << ", h = " << v.period << ", clause (" << to_string(v.clause)
            << ") " << v.rule << "\n";
  for (Side s : {Side::lower, Side::upper}) {
    const Finiteness& f = v.side(s);
    std::cout << "  " << to_string(s) << ": " << to_string(f.kind);
    if (f.total) std::cout << " (" << *f.total << " members)";
    std::cout << "\n";
  }
  ClassificationResult upper = classify(Query{cf, 3, Side::upper, BigInt(1000000), 64});
  std::cout << "  upper members:";
  for (const auto& f : upper.members) std::cout << ' ' << f.p << '/' << f.q;
  std::cout << "\n";
}
