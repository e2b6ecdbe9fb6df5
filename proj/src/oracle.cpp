#include "grig/oracle.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "grig/closure.hpp"

namespace grig {

namespace {

void check_level(int level) {
  if (level < 1 || level > max_quotient_level)
    throw std::out_of_range("quotient level must be between 1 and " + std::to_string(max_quotient_level));
}

std::size_t vertex_count(int level) { return (std::size_t{1} << level) - 1; }

// Window below vertex (root_level, root_index) read from a packed key.
WindowDecoration window_from_key(std::uint32_t key, int root_level, std::uint64_t root_index) {
  std::uint16_t bits = 0;
  int pos = 0;
  for (int m = 1; m <= 3; ++m) {
    const std::size_t first = vertex_count(root_level + m) + (root_index << m);
    for (std::size_t i = 0; i < (std::size_t{1} << m); ++i, ++pos)
      bits |= static_cast<std::uint16_t>(((key >> (first + i)) & 1u) << pos);
  }
  return WindowDecoration(bits);
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                         static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes, 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4))
    throw std::runtime_error("truncated quotient file");
  return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) | (static_cast<std::uint32_t>(bytes[3]) << 24);
}

} // namespace

// ------------------------------------------------------------ QuotientSet

QuotientSet::QuotientSet(int level, std::vector<std::uint32_t> keys) : level_(level), keys_(std::move(keys)) {
  check_level(level);
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  const std::size_t bits = vertex_count(level);
  for (auto k : keys_)
    if (bits < 32 && (k >> bits) != 0)
      throw std::invalid_argument("quotient key exceeds level width");
}

bool QuotientSet::contains(std::uint32_t key) const {
  return std::binary_search(keys_.begin(), keys_.end(), key);
}

bool QuotientSet::contains(const Portrait& p) const {
  if (p.depth() != level_)
    throw std::invalid_argument("portrait depth does not match quotient level");
  return contains(static_cast<std::uint32_t>(p.key()));
}

std::optional<GenWord> QuotientSet::witness(std::uint32_t key) const {
  if (!has_witnesses())
    return std::nullopt;
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key)
    return std::nullopt;
  std::string letters;
  for (std::uint32_t pos = bfs_position_[static_cast<std::size_t>(it - keys_.begin())]; pos != 0;
       pos = bfs_parent_[pos])
    letters.push_back(bfs_letter_[pos]);
  std::reverse(letters.begin(), letters.end());
  return GenWord(letters);
}

void QuotientSet::write(std::ostream& out) const {
  put_u32(out, static_cast<std::uint32_t>(level_));
  put_u32(out, static_cast<std::uint32_t>(keys_.size()));
  for (auto k : keys_)
    put_u32(out, k);
}

QuotientSet QuotientSet::read(std::istream& in) {
  const auto level = static_cast<int>(get_u32(in));
  const std::uint32_t count = get_u32(in);
  check_level(level);
  std::vector<std::uint32_t> keys(count);
  for (auto& k : keys)
    k = get_u32(in);
  if (!std::is_sorted(keys.begin(), keys.end()))
    throw std::runtime_error("quotient file keys are not sorted");
  return QuotientSet(level, std::move(keys));
}

void QuotientSet::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open " + path + " for writing");
  write(out);
}

QuotientSet QuotientSet::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  return read(in);
}

// ------------------------------------------------------------ enumeration

std::uint32_t compose_keys(int level, std::uint32_t g, std::uint32_t h) {
  const std::size_t n = vertex_count(level);
  std::array<std::uint8_t, 32> image{};
  std::uint32_t out = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint32_t swap = (g >> k) & 1u;
    out |= (swap ^ ((h >> image[k]) & 1u)) << k;
    const std::size_t c0 = 2 * k + 1;
    if (c0 < n) {
      image[c0] = static_cast<std::uint8_t>(2 * image[k] + 1 + swap);
      image[c0 + 1] = static_cast<std::uint8_t>(2 * image[k] + 2 - swap);
    }
  }
  return out;
}

QuotientSet enumerate_quotient(int level) {
  check_level(level);
  const std::size_t bits = vertex_count(level);
  constexpr std::array<char, 4> letters = {'a', 'b', 'c', 'd'};
  std::array<std::uint32_t, 4> gens{};
  for (std::size_t i = 0; i < letters.size(); ++i)
    gens[i] = static_cast<std::uint32_t>(portrait_of(generator(letters[i]), level).key());

  std::vector<std::uint64_t> visited((std::size_t{1} << bits) / 64 + 1, 0);
  auto mark = [&visited](std::uint32_t k) {
    auto& word = visited[k >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (k & 63u);
    const bool fresh = (word & bit) == 0;
    word |= bit;
    return fresh;
  };

  QuotientSet q;
  q.level_ = level;
  q.bfs_order_.push_back(0);
  q.bfs_parent_.push_back(0);
  q.bfs_letter_.push_back(0);
  mark(0);
  for (std::size_t head = 0; head < q.bfs_order_.size(); ++head) {
    const std::uint32_t current = q.bfs_order_[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::uint32_t next = compose_keys(level, current, gens[i]);
      if (mark(next)) {
        q.bfs_order_.push_back(next);
        q.bfs_parent_.push_back(static_cast<std::uint32_t>(head));
        q.bfs_letter_.push_back(letters[i]);
      }
    }
  }
  visited = {};

  std::vector<std::uint32_t> positions(q.bfs_order_.size());
  for (std::uint32_t i = 0; i < positions.size(); ++i)
    positions[i] = i;
  std::sort(positions.begin(), positions.end(),
            [&q](std::uint32_t x, std::uint32_t y) { return q.bfs_order_[x] < q.bfs_order_[y]; });
  q.keys_.reserve(positions.size());
  for (auto p : positions)
    q.keys_.push_back(q.bfs_order_[p]);
  q.bfs_position_ = std::move(positions);
  return q;
}

std::vector<std::uint32_t> enumerate_admissible_decorations(int level) {
  check_level(level);
  // Levels 0..2 (or fewer) are unconstrained.
  const int free_levels = std::min(level, 3);
  std::vector<std::uint32_t> current;
  for (std::uint32_t k = 0; k < (1u << vertex_count(free_levels)); ++k)
    current.push_back(k);

  for (int bottom = 3; bottom < level; ++bottom) {
    const int root_level = bottom - 3;
    const std::size_t roots = std::size_t{1} << root_level;
    const std::size_t bottom_first = vertex_count(bottom);
    std::vector<std::uint32_t> next;
    for (std::uint32_t prefix : current) {
      // Admissible 8-bit bottom rows, per window, tried exhaustively.
      std::vector<std::vector<std::uint32_t>> choices(roots);
      for (std::size_t r = 0; r < roots; ++r)
        for (std::uint32_t row = 0; row < 256; ++row) {
          const std::uint32_t candidate = prefix | (row << (bottom_first + 8 * r));
          if (simulates_grigorchuk(window_from_key(candidate, root_level, r)))
            choices[r].push_back(row << (bottom_first + 8 * r));
        }
      std::vector<std::uint32_t> partial{prefix};
      for (const auto& options : choices) {
        std::vector<std::uint32_t> grown;
        grown.reserve(partial.size() * options.size());
        for (auto p : partial)
          for (auto o : options)
            grown.push_back(p | o);
        partial = std::move(grown);
      }
      next.insert(next.end(), partial.begin(), partial.end());
    }
    current = std::move(next);
  }
  std::sort(current.begin(), current.end());
  return current;
}

GenWord random_word(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> length(0, max_len);
  std::uniform_int_distribution<int> letter(0, 3);
  GenWord w;
  const std::size_t n = length(rng);
  for (std::size_t i = 0; i < n; ++i)
    w.push_back(static_cast<char>('a' + letter(rng)));
  return w;
}

ConstraintReport verify_portrait_constraints(std::size_t samples, std::size_t max_len, std::uint64_t seed) {
  ConstraintReport report;
  report.seed = seed;
  report.samples = samples;
  report.max_len = max_len;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const GenWord w = random_word(rng, max_len);
    if (!in_closure_up_to(element(w), report.depth).ok())
      report.violations.push_back(w);
  }
  return report;
}

} // namespace grig
