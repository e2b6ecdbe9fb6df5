#pragma once

// Portrait constraints characterising the closure of the Grigorchuk group in
// Aut(T): the beta statistics, the admissible-window table, finite-depth
// closure membership, free-choice completion of portraits and the
// Hausdorff dimension count.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "grig/quotient_set.hpp"
#include "grig/tree_core.hpp"
#include "grig/words.hpp"

namespace grig {

/// Level-1 activities and the four beta values of a depth-3 window.
struct BetaProfile {
  bool a0 = false;
  bool a1 = false;
  BetaBits beta;

  friend bool operator==(const BetaProfile&, const BetaProfile&) = default;
};

/// The 14 activity bits on relative levels 1..3 below a vertex, in heap
/// order with the top vertex removed: bits 0-1 are alpha_0, alpha_1, bits 2-5
/// alpha_00..alpha_11, bits 6-13 alpha_000..alpha_111.
class WindowDecoration {
public:
  static constexpr int bit_count = 14;

  constexpr WindowDecoration() = default;
  explicit WindowDecoration(std::uint16_t bits);

  std::uint16_t bits() const { return bits_; }
  /// Activity at a relative vertex of length 1..3.
  bool at(const Vertex& v) const;
  void set(const Vertex& v, bool value);

  friend bool operator==(const WindowDecoration&, const WindowDecoration&) = default;

private:
  static int position(const Vertex& v);
  std::uint16_t bits_ = 0;
};

/// The window hanging below u. Requires |u| + 4 <= p.depth().
WindowDecoration window_at(const Portrait& p, const Vertex& u);

BetaProfile beta_profile(const WindowDecoration& w);
/// Profile of the root window. Throws std::invalid_argument if depth < 4.
BetaProfile beta_profile(const Portrait& p);

/// The eight admissible (alpha0, alpha1 | beta00, beta01, beta10, beta11)
/// rows, two complementary rows per (alpha0, alpha1).
const std::array<BetaProfile, 8>& constraint_table();

bool is_admissible(const BetaProfile& profile);
/// True iff the window's profile is a row of the constraint table.
bool simulates_grigorchuk(const WindowDecoration& w);

/// Outcome of a finite-depth closure check.
struct ClosureVerdict {
  int depth = 0;
  std::optional<Vertex> violation;

  bool ok() const { return !violation.has_value(); }
  /// "OK depth=<d>" or "VIOLATION vertex=<label>".
  std::string to_string() const;
};

/// Checks every window below a vertex u with |u| <= depth - 4. The reported
/// violation is the shallowest, then lexicographically first, vertex.
ClosureVerdict in_closure_up_to(const Portrait& p);
ClosureVerdict in_closure_up_to(const Automorphism& g, int depth);

/// True iff the depth-4 portrait of g is the depth-4 portrait of an element
/// of G, looked up in a level-4 quotient set.
bool within_sixteenth_of_G(const Automorphism& g, const QuotientSet& level4);
/// Same, against a level-4 quotient computed once per process.
bool within_sixteenth_of_G(const Automorphism& g);

/// Positions of the five free level-3 bits, in argument order of
/// complete_window.
inline constexpr std::array<int, 5> free_window_slots = {0b001, 0b011, 0b101, 0b111, 0b110};

/// Fills the three forced level-3 bits (000, 010, 100) of a window from its
/// level-1 bits (alpha_0, alpha_1 in bits 0,1), level-2 bits (alpha_00..alpha_11
/// in bits 0..3) and the free level-3 bits in the order of free_window_slots.
WindowDecoration complete_window(std::uint8_t level1, std::uint8_t level2, std::uint8_t free_bits);

/// Whether a vertex decoration may be chosen freely when building closure
/// elements level by level: every vertex on levels 0-2, and below that the
/// vertices whose label ends in 1 or in 110.
bool is_free_vertex(const Vertex& u);

/// Builds a depth-`depth` portrait in the closure: free vertices take
/// `free_bit(u)`, forced vertices are completed window by window.
Portrait complete_portrait(int depth, const std::function<bool(const Vertex&)>& free_bit);

/// Pseudo-random bit for a vertex, a pure function of (seed, u).
bool seeded_vertex_bit(std::uint64_t seed, const Vertex& u);

/// complete_portrait with seeded_vertex_bit. Truncating the result to a
/// smaller depth gives the sample at that depth. Requires depth >= 4.
Portrait sample_closure_element(std::uint64_t seed, int depth);

/// Free decoration bits on levels 0..n-1: 2^n - 1 for n <= 3, otherwise
/// 2 + 5 * 2^(n-3).
std::uint64_t free_bit_count(int n);

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Rational reduced() const;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Rational& a, const Rational& b);
};

/// free_bit_count(n) / (2^n - 1): the ratio of log-orders of the level-n
/// congruence quotients of the closure and of Aut(T). Not reduced.
Rational hausdorff_estimate(int n);

} // namespace grig
