#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "onesided/numeric/bigint.hpp"
#include "onesided/numeric/surd.hpp"

namespace onesided {

/// [a0; a1, ..., a_m] optionally followed by a repeating block.
struct ExplicitCF {
  std::vector<BigInt> prefix;
  std::vector<BigInt> period;
};

/// Pull-based supplier of the terms a1, a2, ... of a real whose continued
/// fraction is not known in closed form. `next` returns nullopt once no
/// further term can be certified.
struct TermStream {
  BigInt a0;
  std::function<std::optional<BigInt>()> next;
  std::optional<BigInt> term_bound;  // declared bound on every a_j, j >= 1
  std::string label;
};

using AlphaSource = std::variant<BigRational, QuadraticSurd, ExplicitCF, TermStream>;

inline bool is_exact_source(const AlphaSource& a) { return !std::holds_alternative<TermStream>(a); }

}  // namespace onesided
