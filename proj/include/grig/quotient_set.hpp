#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "grig/tree_core.hpp"
#include "grig/words.hpp"

namespace grig {

/// Depth-n portraits of the elements of G, i.e. the congruence quotient
/// G / Stab_G(X^n), keyed by bit-packed portraits (bit k = heap index k).
///
/// When built by BFS the set also carries a spanning tree of the search, from
/// which a generator word witnessing each key can be recovered.
class QuotientSet {
public:
  QuotientSet() = default;
  /// Sorts and deduplicates `keys`.
  QuotientSet(int level, std::vector<std::uint32_t> keys);

  int level() const { return level_; }
  std::size_t size() const { return keys_.size(); }
  /// Sorted ascending.
  const std::vector<std::uint32_t>& keys() const { return keys_; }

  bool contains(std::uint32_t key) const;
  bool contains(const Portrait& p) const;

  bool has_witnesses() const { return !bfs_order_.empty(); }
  /// A word over {a,b,c,d} whose depth-n portrait is `key`.
  std::optional<GenWord> witness(std::uint32_t key) const;

  /// Flat binary cache: little-endian uint32 level, uint32 count, then
  /// `count` uint32 keys in ascending order.
  void write(std::ostream& out) const;
  static QuotientSet read(std::istream& in);
  void save(const std::string& path) const;
  static QuotientSet load(const std::string& path);

  friend bool operator==(const QuotientSet& a, const QuotientSet& b) {
    return a.level_ == b.level_ && a.keys_ == b.keys_;
  }

private:
  friend QuotientSet enumerate_quotient(int level);

  int level_ = 0;
  std::vector<std::uint32_t> keys_;
  // BFS spanning tree: key, parent position, generator letter.
  std::vector<std::uint32_t> bfs_order_;
  std::vector<std::uint32_t> bfs_parent_;
  std::vector<char> bfs_letter_;
  // position in bfs_order_ of keys_[i]
  std::vector<std::uint32_t> bfs_position_;
};

} // namespace grig
