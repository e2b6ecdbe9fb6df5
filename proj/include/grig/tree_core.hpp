#pragma once

// Binary rooted tree automorphisms: vertices, truncated portraits, lazily
// evaluated automorphisms and the profinite metric.
//
// Conventions: right action, products read left to right, so that
// w^(gh) = (w^g)^h and (gh)_x = g_x h_(x^g).

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace grig {

/// A vertex of the binary tree: a word over {0,1}. The empty word is the
/// root. Letters are packed into an integer with the first letter as the
/// most significant bit, so `index()` is the lexicographic position of the
/// vertex inside its level.
class Vertex {
public:
  static constexpr int max_length = 63;

  Vertex() = default;
  Vertex(int length, std::uint64_t index);

  /// Parses a string over {0,1}; "" and "-" both denote the root.
  static Vertex parse(std::string_view text);

  int length() const { return length_; }
  std::uint64_t index() const { return bits_; }
  bool empty() const { return length_ == 0; }

  /// Letter at position i (0-based, from the root).
  bool letter(int i) const { return (bits_ >> (length_ - 1 - i)) & 1u; }
  bool last() const { return bits_ & 1u; }

  Vertex child(bool x) const;
  Vertex parent() const;
  /// Concatenation uv.
  Vertex append(const Vertex& v) const;
  /// Drops the first n letters.
  Vertex suffix_from(int n) const;
  bool is_prefix_of(const Vertex& v) const;

  /// Position in level-by-level (heap) order: 2^length - 1 + index.
  std::uint64_t heap_index() const { return ((std::uint64_t{1} << length_) - 1) + bits_; }

  /// "0110"-style label; the root prints as "-".
  std::string label() const;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  /// Shallower first, then lexicographic.
  friend bool operator<(const Vertex& a, const Vertex& b) {
    return a.length_ != b.length_ ? a.length_ < b.length_ : a.bits_ < b.bits_;
  }

private:
  std::uint64_t bits_ = 0;
  int length_ = 0;
};

/// Activity decoration of the first `depth` levels of a tree automorphism:
/// one bit per vertex u with |u| < depth, stored in heap order.
class Portrait {
public:
  Portrait() = default;
  explicit Portrait(int depth);

  int depth() const { return depth_; }
  std::size_t size() const { return bits_.size(); }

  bool at(const Vertex& u) const { return bits_.at(u.heap_index()); }
  void set(const Vertex& u, bool value) { bits_.at(u.heap_index()) = value; }
  bool bit(std::size_t heap_index) const { return bits_[heap_index]; }
  void set_bit(std::size_t heap_index, bool value) { bits_[heap_index] = value; }

  /// The 2^level bits of one level, lexicographic order.
  std::vector<bool> level(int level) const;
  /// Level as a '0'/'1' string.
  std::string level_string(int level) const;

  /// Restriction to the first `depth` levels.
  Portrait truncated(int depth) const;
  /// Portrait of the section at u, restricted to what this portrait knows.
  Portrait section(const Vertex& u) const;

  /// Packs the bits into an integer, bit k = heap index k. Requires depth <= 6.
  std::uint64_t key() const;
  static Portrait from_key(int depth, std::uint64_t key);

  /// Text format: `depth` lines, line i holds the 2^i bits of level i.
  std::string to_text() const;
  /// Inverse of to_text. Blank lines at the end and lines starting with '#'
  /// are ignored.
  static Portrait parse_text(std::string_view text);

  friend bool operator==(const Portrait&, const Portrait&) = default;

private:
  int depth_ = 0;
  std::vector<bool> bits_;
};

/// Portrait of gh at depth d computed from the depth-d portraits of g and h.
Portrait compose_portraits(const Portrait& g, const Portrait& h);

/// Image of a vertex of length < depth under the truncated automorphism.
Vertex apply(const Portrait& g, const Vertex& w);

class AutomorphismNode;

/// Handle to an immutable, lazily evaluated tree automorphism. Copies share
/// the underlying node.
class Automorphism {
public:
  /// The identity.
  Automorphism();
  explicit Automorphism(std::shared_ptr<const AutomorphismNode> node);

  bool root_activity() const;
  Automorphism section(bool x) const;
  /// True when the node is known to be the identity without evaluation.
  bool is_trivially_identity() const;

  const AutomorphismNode& node() const { return *node_; }

  /// Wreath recursion g = (s0, s1) sigma^active.
  static Automorphism wreath(bool active, Automorphism s0, Automorphism s1);
  /// Automorphism whose portrait is `p` and whose sections below the
  /// truncation depth are the identity.
  static Automorphism from_portrait(Portrait p);

private:
  std::shared_ptr<const AutomorphismNode> node_;
};

/// Node interface for automorphism backings. Root activity is fixed at
/// construction; sections may be computed on demand.
class AutomorphismNode {
public:
  explicit AutomorphismNode(bool active) : active_(active) {}
  virtual ~AutomorphismNode() = default;
  AutomorphismNode(const AutomorphismNode&) = delete;
  AutomorphismNode& operator=(const AutomorphismNode&) = delete;

  bool active() const { return active_; }
  virtual Automorphism section(bool x) const = 0;
  virtual bool is_identity() const { return false; }

private:
  bool active_;
};

/// Node whose two sections are computed once, on first request.
class MemoizedNode : public AutomorphismNode {
public:
  using AutomorphismNode::AutomorphismNode;
  Automorphism section(bool x) const final;

protected:
  virtual std::pair<Automorphism, Automorphism> compute_sections() const = 0;

private:
  mutable std::once_flag once_;
  mutable std::array<Automorphism, 2> sections_;
};

Automorphism identity();

/// w^g, letter by letter.
Vertex apply(const Automorphism& g, const Vertex& w);
/// g_u.
Automorphism section_at(const Automorphism& g, const Vertex& u);
/// alpha_u(g).
bool activity(const Automorphism& g, const Vertex& u);
Portrait portrait_of(const Automorphism& g, int depth);

/// gh, acting first by g then by h.
Automorphism compose(const Automorphism& g, const Automorphism& h);
/// Left-to-right product of a list; the empty product is the identity.
Automorphism product(const std::vector<Automorphism>& factors);
Automorphism invert(const Automorphism& g);

/// Portrait equality on levels 0..depth-1, i.e. equal action on words of
/// length depth.
bool equal_to_depth(const Automorphism& g, const Automorphism& h, int depth);

/// Result of a capped distance computation. When exact, the distance is
/// 1/2^level; otherwise it is at most 1/2^level.
struct Distance {
  int level = 0;
  bool exact = true;

  double value() const;
  /// "1/2^n" or "<= 1/2^cap".
  std::string to_string() const;
  friend bool operator==(const Distance&, const Distance&) = default;
};

inline constexpr int default_distance_cap = 16;

/// Profinite distance: 1/2^n where n is the first level at which the
/// portraits of g and h differ, searched over levels 0..cap-1.
Distance distance(const Automorphism& g, const Automorphism& h,
                  int cap = default_distance_cap);

/// Calls visit(u, g_u) for every vertex with |u| < depth, level by level in
/// lexicographic order.
void for_each_section(const Automorphism& g, int depth,
                      const std::function<void(const Vertex&, const Automorphism&)>& visit);

std::ostream& operator<<(std::ostream& os, const Vertex& v);

} // namespace grig
