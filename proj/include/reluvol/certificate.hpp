#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reluvol/exact_arith.hpp"
#include "reluvol/linalg.hpp"

namespace reluvol {

enum class Verdict { holds, fails, inapplicable };

std::string_view verdict_name(Verdict v);

struct NamedValue {
  std::string name;
  BigInt value;
};

// Machine-checkable verdict. Every intermediate quantity the verdict rests on
// is recorded, so a failure can be reproduced from the certificate alone.
struct Certificate {
  std::string claim;
  Verdict verdict = Verdict::inapplicable;
  std::string reason;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<NamedValue> witness_volumes;
  // Direction on which two support functions differ, with both values.
  std::optional<IntVec> witness_direction;
  std::vector<NamedValue> witness_values;
  // Depth k witnessed by an SU^k or k-hidden-layer representation.
  std::optional<std::size_t> depth;

  bool holds() const { return verdict == Verdict::holds; }
};

}  // namespace reluvol
