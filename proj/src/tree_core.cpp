#include "grig/tree_core.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace grig {

// ---------------------------------------------------------------- Vertex

Vertex::Vertex(int length, std::uint64_t index) : bits_(index), length_(length) {
  if (length < 0 || length > max_length)
    throw std::length_error("vertex length out of range");
  if (length < 64 && (index >> length) != 0)
    throw std::invalid_argument("vertex index exceeds level size");
}

Vertex Vertex::parse(std::string_view text) {
  if (text == "-")
    return Vertex{};
  if (text.size() > static_cast<std::size_t>(max_length))
    throw std::length_error("vertex too long: " + std::string(text));
  std::uint64_t bits = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1')
      throw std::invalid_argument("invalid vertex letter '" + std::string(1, ch) + "'");
    bits = (bits << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  return Vertex(static_cast<int>(text.size()), bits);
}

Vertex Vertex::child(bool x) const {
  return Vertex(length_ + 1, (bits_ << 1) | static_cast<std::uint64_t>(x));
}

Vertex Vertex::parent() const {
  if (length_ == 0)
    throw std::logic_error("root has no parent");
  return Vertex(length_ - 1, bits_ >> 1);
}

Vertex Vertex::append(const Vertex& v) const {
  return Vertex(length_ + v.length_, (bits_ << v.length_) | v.bits_);
}

Vertex Vertex::suffix_from(int n) const {
  if (n < 0 || n > length_)
    throw std::out_of_range("suffix_from");
  const int rest = length_ - n;
  const std::uint64_t mask = rest == 0 ? 0 : (~std::uint64_t{0} >> (64 - rest));
  return Vertex(rest, bits_ & mask);
}

bool Vertex::is_prefix_of(const Vertex& v) const {
  return length_ <= v.length_ && (v.bits_ >> (v.length_ - length_)) == bits_;
}

std::string Vertex::label() const {
  if (length_ == 0)
    return "-";
  std::string s(static_cast<std::size_t>(length_), '0');
  for (int i = 0; i < length_; ++i)
    if (letter(i))
      s[static_cast<std::size_t>(i)] = '1';
  return s;
}

std::ostream& operator<<(std::ostream& os, const Vertex& v) { return os << v.label(); }

// -------------------------------------------------------------- Portrait

Portrait::Portrait(int depth) : depth_(depth) {
  if (depth < 0 || depth > 30)
    throw std::out_of_range("portrait depth out of range");
  bits_.assign((std::size_t{1} << depth) - 1, false);
}

std::vector<bool> Portrait::level(int level) const {
  if (level < 0 || level >= depth_)
    throw std::out_of_range("portrait level out of range");
  const std::size_t first = (std::size_t{1} << level) - 1;
  return {bits_.begin() + static_cast<std::ptrdiff_t>(first),
          bits_.begin() + static_cast<std::ptrdiff_t>(2 * first + 1)};
}

std::string Portrait::level_string(int level) const {
  std::string s;
  for (bool b : this->level(level))
    s.push_back(b ? '1' : '0');
  return s;
}

Portrait Portrait::truncated(int depth) const {
  if (depth > depth_)
    throw std::out_of_range("cannot truncate to a larger depth");
  Portrait p(depth);
  std::copy(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(p.size()), p.bits_.begin());
  return p;
}

Portrait Portrait::section(const Vertex& u) const {
  if (u.length() > depth_)
    throw std::out_of_range("section vertex below portrait depth");
  Portrait p(depth_ - u.length());
  for (int l = 0; l < p.depth_; ++l)
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << l); ++i) {
      const Vertex v(l, i);
      p.set(v, at(u.append(v)));
    }
  return p;
}

std::uint64_t Portrait::key() const {
  if (depth_ > 6)
    throw std::out_of_range("portrait key requires depth <= 6");
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i])
      k |= std::uint64_t{1} << i;
  return k;
}

Portrait Portrait::from_key(int depth, std::uint64_t key) {
  if (depth > 6)
    throw std::out_of_range("portrait key requires depth <= 6");
  Portrait p(depth);
  for (std::size_t i = 0; i < p.bits_.size(); ++i)
    p.bits_[i] = (key >> i) & 1u;
  if (p.bits_.size() < 64 && (key >> p.bits_.size()) != 0)
    throw std::invalid_argument("portrait key has bits beyond its depth");
  return p;
}

std::string Portrait::to_text() const {
  std::string out;
  for (int l = 0; l < depth_; ++l) {
    out += level_string(l);
    out.push_back('\n');
  }
  return out;
}

Portrait Portrait::parse_text(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    if (!line.empty() && line.front() == '#')
      continue;
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty())
    lines.pop_back();

  Portrait p(static_cast<int>(lines.size()));
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const std::size_t width = std::size_t{1} << l;
    if (lines[l].size() != width)
      throw std::invalid_argument("portrait line " + std::to_string(l) + " must have " +
                                  std::to_string(width) + " characters");
    for (std::size_t i = 0; i < width; ++i) {
      const char ch = lines[l][i];
      if (ch != '0' && ch != '1')
        throw std::invalid_argument("portrait lines must contain only 0 and 1");
      p.bits_[width - 1 + i] = ch == '1';
    }
  }
  return p;
}

Vertex apply(const Portrait& g, const Vertex& w) {
  if (w.length() > g.depth())
    throw std::out_of_range("vertex longer than portrait depth");
  Vertex u;
  Vertex image;
  for (int i = 0; i < w.length(); ++i) {
    const bool x = w.letter(i);
    image = image.child(x != g.at(u));
    u = u.child(x);
  }
  return image;
}

Portrait compose_portraits(const Portrait& g, const Portrait& h) {
  if (g.depth() != h.depth())
    throw std::invalid_argument("portrait depths differ");
  const int depth = g.depth();
  Portrait out(depth);
  if (depth == 0)
    return out;
  // image[k] = heap index of u^g for u = heap index k.
  std::vector<std::size_t> image(out.size());
  image[0] = 0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const bool swap = g.bit(k);
    out.set_bit(k, swap != h.bit(image[k]));
    const std::size_t c0 = 2 * k + 1;
    if (c0 < out.size()) {
      image[c0] = 2 * image[k] + 1 + (swap ? 1 : 0);
      image[c0 + 1] = 2 * image[k] + 1 + (swap ? 0 : 1);
    }
  }
  return out;
}

// ---------------------------------------------------------- Automorphism

namespace {

class IdentityNode final : public AutomorphismNode {
public:
  IdentityNode() : AutomorphismNode(false) {}
  Automorphism section(bool) const override { return identity(); }
  bool is_identity() const override { return true; }
};

class WreathNode final : public AutomorphismNode {
public:
  WreathNode(bool active, Automorphism s0, Automorphism s1)
      : AutomorphismNode(active), sections_{std::move(s0), std::move(s1)} {}
  Automorphism section(bool x) const override { return sections_[x]; }

private:
  std::array<Automorphism, 2> sections_;
};

class TruncationNode final : public AutomorphismNode {
public:
  TruncationNode(std::shared_ptr<const Portrait> portrait, Vertex base)
      : AutomorphismNode(portrait->at(base)), portrait_(std::move(portrait)), base_(base) {}

  Automorphism section(bool x) const override {
    const Vertex next = base_.child(x);
    if (next.length() >= portrait_->depth())
      return identity();
    return Automorphism(std::make_shared<TruncationNode>(portrait_, next));
  }

private:
  std::shared_ptr<const Portrait> portrait_;
  Vertex base_;
};

class ComposeNode final : public MemoizedNode {
public:
  ComposeNode(Automorphism g, Automorphism h)
      : MemoizedNode(g.root_activity() != h.root_activity()), g_(std::move(g)), h_(std::move(h)) {}

protected:
  std::pair<Automorphism, Automorphism> compute_sections() const override {
    const bool swap = g_.root_activity();
    return {compose(g_.section(false), h_.section(swap)),
            compose(g_.section(true), h_.section(!swap))};
  }

private:
  Automorphism g_;
  Automorphism h_;
};

class InverseNode final : public MemoizedNode {
public:
  explicit InverseNode(Automorphism g) : MemoizedNode(g.root_activity()), g_(std::move(g)) {}

protected:
  // (g^-1)_y = (g_(y xor eps))^-1
  std::pair<Automorphism, Automorphism> compute_sections() const override {
    const bool swap = g_.root_activity();
    return {invert(g_.section(swap)), invert(g_.section(!swap))};
  }

private:
  Automorphism g_;
};

const std::shared_ptr<const AutomorphismNode>& identity_node() {
  static const std::shared_ptr<const AutomorphismNode> node = std::make_shared<IdentityNode>();
  return node;
}

} // namespace

Automorphism MemoizedNode::section(bool x) const {
  std::call_once(once_, [this] {
    auto [s0, s1] = compute_sections();
    sections_[0] = std::move(s0);
    sections_[1] = std::move(s1);
  });
  return sections_[x];
}

Automorphism::Automorphism() : node_(identity_node()) {}

Automorphism::Automorphism(std::shared_ptr<const AutomorphismNode> node) : node_(std::move(node)) {
  if (!node_)
    throw std::invalid_argument("null automorphism node");
}

bool Automorphism::root_activity() const { return node_->active(); }
Automorphism Automorphism::section(bool x) const { return node_->section(x); }
bool Automorphism::is_trivially_identity() const { return node_->is_identity(); }

Automorphism Automorphism::wreath(bool active, Automorphism s0, Automorphism s1) {
  if (!active && s0.is_trivially_identity() && s1.is_trivially_identity())
    return identity();
  return Automorphism(std::make_shared<WreathNode>(active, std::move(s0), std::move(s1)));
}

Automorphism Automorphism::from_portrait(Portrait p) {
  if (p.depth() == 0)
    return identity();
  return Automorphism(std::make_shared<TruncationNode>(std::make_shared<const Portrait>(std::move(p)), Vertex{}));
}

Automorphism identity() { return Automorphism(); }

Vertex apply(const Automorphism& g, const Vertex& w) {
  Automorphism current = g;
  Vertex image;
  for (int i = 0; i < w.length(); ++i) {
    const bool x = w.letter(i);
    image = image.child(x != current.root_activity());
    current = current.section(x);
  }
  return image;
}

Automorphism section_at(const Automorphism& g, const Vertex& u) {
  Automorphism current = g;
  for (int i = 0; i < u.length() && !current.is_trivially_identity(); ++i)
    current = current.section(u.letter(i));
  return current;
}

bool activity(const Automorphism& g, const Vertex& u) { return section_at(g, u).root_activity(); }

void for_each_section(const Automorphism& g, int depth,
                      const std::function<void(const Vertex&, const Automorphism&)>& visit) {
  std::vector<Automorphism> level{g};
  for (int l = 0; l < depth; ++l) {
    std::vector<Automorphism> next;
    if (l + 1 < depth)
      next.reserve(level.size() * 2);
    for (std::size_t i = 0; i < level.size(); ++i) {
      visit(Vertex(l, i), level[i]);
      if (l + 1 < depth) {
        next.push_back(level[i].section(false));
        next.push_back(level[i].section(true));
      }
    }
    level = std::move(next);
  }
}

Portrait portrait_of(const Automorphism& g, int depth) {
  if (depth < 0)
    throw std::invalid_argument("portrait depth must be non-negative");
  Portrait p(depth);
  for_each_section(g, depth, [&p](const Vertex& u, const Automorphism& s) {
    p.set(u, s.root_activity());
  });
  return p;
}

Automorphism compose(const Automorphism& g, const Automorphism& h) {
  if (g.is_trivially_identity())
    return h;
  if (h.is_trivially_identity())
    return g;
  return Automorphism(std::make_shared<ComposeNode>(g, h));
}

Automorphism product(const std::vector<Automorphism>& factors) {
  Automorphism result;
  for (const auto& f : factors)
    result = compose(result, f);
  return result;
}

Automorphism invert(const Automorphism& g) {
  if (g.is_trivially_identity())
    return g;
  return Automorphism(std::make_shared<InverseNode>(g));
}

bool equal_to_depth(const Automorphism& g, const Automorphism& h, int depth) {
  return distance(g, h, depth).exact == false;
}

double Distance::value() const { return 1.0 / static_cast<double>(std::uint64_t{1} << level); }

std::string Distance::to_string() const {
  return (exact ? "1/2^" : "<= 1/2^") + std::to_string(level);
}

Distance distance(const Automorphism& g, const Automorphism& h, int cap) {
  if (cap < 0)
    throw std::invalid_argument("distance cap must be non-negative");
  std::vector<std::pair<Automorphism, Automorphism>> level{{g, h}};
  for (int l = 0; l < cap; ++l) {
    std::vector<std::pair<Automorphism, Automorphism>> next;
    for (const auto& [x, y] : level) {
      if (&x.node() == &y.node())
        continue;
      if (x.root_activity() != y.root_activity())
        return {l, true};
      if (l + 1 < cap) {
        next.emplace_back(x.section(false), y.section(false));
        next.emplace_back(x.section(true), y.section(true));
      }
    }
    if (next.empty())
      break;
    level = std::move(next);
  }
  return {cap, false};
}

} // namespace grig
