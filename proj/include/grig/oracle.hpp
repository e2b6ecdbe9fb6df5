#pragma once

// Brute-force ground truth at small depth: BFS enumeration of the congruence
// quotients of G, exhaustive enumeration of admissible decorations, and
// random-word verification of the portrait constraints.

#include <cstdint>
#include <random>
#include <vector>

#include "grig/quotient_set.hpp"
#include "grig/words.hpp"

namespace grig {

inline constexpr int max_quotient_level = 5;

/// Depth-n portrait key of gh from the keys of g and h.
std::uint32_t compose_keys(int level, std::uint32_t g, std::uint32_t h);

/// All depth-n portraits of elements of G, found by BFS from the identity
/// under right multiplication by a, b, c, d. Supported for 1 <= n <= 5; level
/// 5 needs about 350 MB.
QuotientSet enumerate_quotient(int level);

/// Every depth-n decoration all of whose complete depth-3 windows satisfy
/// the portrait constraints, found by exhaustive search over each window's
/// bottom row. Sorted keys. Supported for 1 <= n <= 5.
std::vector<std::uint32_t> enumerate_admissible_decorations(int level);

/// Uniform letters over {a,b,c,d}, length uniform in [0, max_len].
GenWord random_word(std::mt19937_64& rng, std::size_t max_len);

struct ConstraintReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t max_len = 0;
  int depth = 8;
  std::vector<GenWord> violations;

  bool ok() const { return violations.empty(); }
};

/// For `samples` random words, checks that every window of the element's
/// depth-8 portrait satisfies the portrait constraints.
ConstraintReport verify_portrait_constraints(std::size_t samples, std::size_t max_len, std::uint64_t seed = 0);

} // namespace grig
