#include "grig/words.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace grig {

namespace {

bool is_generator(char ch) { return ch >= 'a' && ch <= 'd'; }
bool is_b_letter(char ch) { return ch >= 'b' && ch <= 'd'; }
int b_index(char ch) { return ch - 'b'; }

// Klein four-group {1, b, c, d}: b = 1, c = 2, d = 3, product is xor.
int klein(char ch) { return ch - 'a'; }
char klein_letter(int k) { return static_cast<char>('a' + k); }

// Sections of the B-letters: (section at 0, section at 1), '1' = identity.
// Even parity:            b = (a,c), c = (a,d), d = (1,b)
// Odd parity (conjugate): aba = (c,a), aca = (d,a), ada = (b,1)
constexpr char kEven[3][2] = {{'a', 'c'}, {'a', 'd'}, {'1', 'b'}};
constexpr char kOdd[3][2] = {{'c', 'a'}, {'d', 'a'}, {'b', '1'}};

} // namespace

GenWord::GenWord(std::string_view letters) {
  if (letters == "-")
    return;
  for (char ch : letters)
    push_back(ch);
}

void GenWord::push_back(char letter) {
  if (!is_generator(letter))
    throw std::invalid_argument("invalid generator letter '" + std::string(1, letter) +
                                "' (expected a, b, c or d)");
  letters_.push_back(letter);
}

GenWord GenWord::operator+(const GenWord& other) const {
  GenWord out = *this;
  out.letters_ += other.letters_;
  return out;
}

GenWord GenWord::inverse() const {
  GenWord out = *this;
  std::reverse(out.letters_.begin(), out.letters_.end());
  return out;
}

LetterSet::LetterSet(std::string_view letters) {
  for (char ch : letters) {
    if (!is_b_letter(ch))
      throw std::invalid_argument("letter sets may only contain b, c, d");
    mask_ |= static_cast<std::uint8_t>(1u << b_index(ch));
  }
}

bool LetterSet::contains(char letter) const {
  return is_b_letter(letter) && ((mask_ >> b_index(letter)) & 1u);
}

GenWord reduce(const GenWord& w) {
  std::string stack;
  for (char ch : w) {
    if (stack.empty()) {
      stack.push_back(ch);
    } else if (ch == 'a' && stack.back() == 'a') {
      stack.pop_back();
    } else if (is_b_letter(ch) && is_b_letter(stack.back())) {
      const int k = klein(stack.back()) ^ klein(ch);
      stack.pop_back();
      if (k != 0)
        stack.push_back(klein_letter(k));
    } else {
      stack.push_back(ch);
    }
  }
  return GenWord(stack);
}

Decomposition decompose_word(const GenWord& w) {
  Decomposition out;
  bool parity = false;
  for (char ch : w) {
    if (ch == 'a') {
      parity = !parity;
      continue;
    }
    const auto& pair = parity ? kOdd[b_index(ch)] : kEven[b_index(ch)];
    if (pair[0] != '1')
      out.left.push_back(pair[0]);
    if (pair[1] != '1')
      out.right.push_back(pair[1]);
  }
  out.active = parity;
  return out;
}

std::map<Vertex, GenWord> section_words(const GenWord& w, int depth) {
  if (depth < 0)
    throw std::invalid_argument("depth must be non-negative");
  std::map<Vertex, GenWord> out;
  std::vector<std::pair<Vertex, GenWord>> level{{Vertex{}, w}};
  for (int l = 0; l <= depth; ++l) {
    std::vector<std::pair<Vertex, GenWord>> next;
    for (auto& [u, word] : level) {
      if (l < depth) {
        auto parts = decompose_word(word);
        next.emplace_back(u.child(false), std::move(parts.left));
        next.emplace_back(u.child(true), std::move(parts.right));
      }
      out.emplace(u, std::move(word));
    }
    level = std::move(next);
  }
  return out;
}

std::size_t LetterStats::n(LetterSet letters) const { return n_p(letters, false) + n_p(letters, true); }

std::size_t LetterStats::n_p(LetterSet letters, bool parity) const {
  std::size_t total = 0;
  for (int k = 0; k < 3; ++k)
    if (letters.contains(static_cast<char>('b' + k)))
      total += by_letter[parity][k];
  return total;
}

LetterStats letter_stats(const GenWord& w) {
  LetterStats s;
  bool parity = false;
  // running count of {b,c}-letters seen so far, per parity
  std::size_t seen_bc[2] = {0, 0};
  for (char ch : w) {
    if (ch == 'a') {
      parity = !parity;
      ++s.a_count;
      continue;
    }
    ++s.by_letter[parity][b_index(ch)];
    if (ch == 'b' || ch == 'c') {
      const bool q = seen_bc[!parity] & 1u;
      ++s.bc_pq[parity][q];
      ++seen_bc[parity];
    }
  }
  return s;
}

std::size_t count(const GenWord& w, LetterSet letters) {
  return static_cast<std::size_t>(
      std::count_if(w.begin(), w.end(), [&](char ch) { return letters.contains(ch); }));
}

std::size_t count_p(const GenWord& w, LetterSet letters, bool parity) {
  return letter_stats(w).n_p(letters, parity);
}

std::size_t count_pq(const GenWord& w, bool p, bool q) { return letter_stats(w).bc_pq[p][q]; }

BetaBits beta_from_counts(const GenWord& w) {
  const auto s = letter_stats(w);
  return {static_cast<bool>(s.bc_pq[1][0] & 1u), static_cast<bool>(s.bc_pq[1][1] & 1u),
          static_cast<bool>(s.bc_pq[0][0] & 1u), static_cast<bool>(s.bc_pq[0][1] & 1u)};
}

// ------------------------------------------------------------ elements

namespace {

class WordNode final : public MemoizedNode {
public:
  explicit WordNode(GenWord w)
      : MemoizedNode(std::count(w.begin(), w.end(), 'a') % 2 == 1), word_(std::move(w)) {}

protected:
  std::pair<Automorphism, Automorphism> compute_sections() const override {
    auto parts = decompose_word(word_);
    return {element(parts.left), element(parts.right)};
  }

private:
  GenWord word_;
};

bool acts_trivially(const GenWord& w) {
  return std::all_of(w.begin(), w.end(), [](char ch) { return ch == 'a'; }) && w.size() % 2 == 0;
}

} // namespace

Automorphism element(const GenWord& w) {
  if (acts_trivially(w))
    return identity();
  return Automorphism(std::make_shared<WordNode>(w));
}

Automorphism generator(char letter) { return element(GenWord(std::string_view(&letter, 1))); }

} // namespace grig
