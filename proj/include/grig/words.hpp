#pragma once

// Words over the generators {a, b, c, d} of the Grigorchuk group, their
// wreath decomposition and the parity statistics of B-letters.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "grig/tree_core.hpp"

namespace grig {

/// A word over {a, b, c, d}; the empty word is the identity.
class GenWord {
public:
  GenWord() = default;
  /// Throws std::invalid_argument on letters outside {a,b,c,d}. "-" is
  /// accepted as the empty word.
  explicit GenWord(std::string_view letters);

  const std::string& str() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  char operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  void push_back(char letter);
  GenWord operator+(const GenWord& other) const;
  /// Formal inverse: the reversed word, every generator being an involution.
  GenWord inverse() const;

  /// The word, or "-" when empty.
  std::string display() const { return letters_.empty() ? "-" : letters_; }

  friend bool operator==(const GenWord&, const GenWord&) = default;
  friend auto operator<=>(const GenWord&, const GenWord&) = default;

private:
  std::string letters_;
};

/// A subset of the B-letters {b, c, d}.
class LetterSet {
public:
  constexpr LetterSet() = default;
  /// E.g. LetterSet("bc"). Only b, c, d are allowed.
  explicit LetterSet(std::string_view letters);

  bool contains(char letter) const;
  bool empty() const { return mask_ == 0; }

  static LetterSet bc() { return LetterSet("bc"); }

private:
  std::uint8_t mask_ = 0;
};

/// Rewrites W with the simple relations a^2 = b^2 = c^2 = d^2 = 1 and
/// bc = cb = d, bd = db = c, cd = dc = b into the alternating normal form
/// (single a's separating single B-letters).
GenWord reduce(const GenWord& w);

struct Decomposition {
  GenWord left;   // section word at 0
  GenWord right;  // section word at 1
  bool active = false;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Splits W = (W0, W1) sigma^eps by scanning with a running a-parity:
/// b, c, d at even parity contribute (a,c), (a,d), (1,b); at odd parity
/// they are read as the conjugates aba = (c,a), aca = (d,a), ada = (b,1).
/// Only aa = 1 is used; B-letters are never combined.
Decomposition decompose_word(const GenWord& w);

/// Section words W_u for all |u| <= depth, obtained by repeated
/// decompose_word without further reduction.
std::map<Vertex, GenWord> section_words(const GenWord& w, int depth);

/// N_C(W).
std::size_t count(const GenWord& w, LetterSet letters);
/// N^p_C(W): C-letters preceded by a number of a's of parity p.
std::size_t count_p(const GenWord& w, LetterSet letters, bool parity);
/// N^{p,q}_{b,c}(W): {b,c}-letters of parity p preceded by a number of
/// {b,c}-letters of the opposite parity that has parity q.
std::size_t count_pq(const GenWord& w, bool p, bool q);

/// All parity statistics of a word, computed in one pass.
struct LetterStats {
  // by_letter[p][k]: occurrences of letter "bcd"[k] at a-parity p.
  std::size_t by_letter[2][3] = {};
  // bc_pq[p][q] = N^{p,q}_{b,c}
  std::size_t bc_pq[2][2] = {};
  std::size_t a_count = 0;

  std::size_t n(LetterSet letters) const;
  std::size_t n_p(LetterSet letters, bool parity) const;
};

LetterStats letter_stats(const GenWord& w);

/// The four beta values predicted by the word statistics, in the order
/// (beta00, beta01, beta10, beta11) =
/// (N^{1,0}, N^{1,1}, N^{0,0}, N^{0,1}) mod 2.
struct BetaBits {
  bool b00 = false;
  bool b01 = false;
  bool b10 = false;
  bool b11 = false;

  friend bool operator==(const BetaBits&, const BetaBits&) = default;
};

BetaBits beta_from_counts(const GenWord& w);

/// Word-backed automorphism. Sections are computed by decompose_word and
/// memoized.
Automorphism element(const GenWord& w);

/// Generator letter as an automorphism.
Automorphism generator(char letter);

} // namespace grig
