#include "grig/closure.hpp"

#include <numeric>
#include <stdexcept>
#include <string_view>

#include "grig/oracle.hpp"

namespace grig {

WindowDecoration::WindowDecoration(std::uint16_t bits) : bits_(bits) {
  if (bits >> bit_count)
    throw std::invalid_argument("window decoration has more than 14 bits");
}

int WindowDecoration::position(const Vertex& v) {
  if (v.length() < 1 || v.length() > 3)
    throw std::out_of_range("window vertices have length 1 to 3");
  return static_cast<int>(v.heap_index()) - 1;
}

bool WindowDecoration::at(const Vertex& v) const { return (bits_ >> position(v)) & 1u; }

void WindowDecoration::set(const Vertex& v, bool value) {
  const auto mask = static_cast<std::uint16_t>(1u << position(v));
  bits_ = value ? static_cast<std::uint16_t>(bits_ | mask) : static_cast<std::uint16_t>(bits_ & ~mask);
}

WindowDecoration window_at(const Portrait& p, const Vertex& u) {
  if (u.length() + 4 > p.depth())
    throw std::out_of_range("window below " + u.label() + " exceeds portrait depth");
  WindowDecoration w;
  for (int l = 1; l <= 3; ++l)
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << l); ++i) {
      const Vertex v(l, i);
      w.set(v, p.at(u.append(v)));
    }
  return w;
}

namespace {

// Bit position of a relative vertex label inside a WindowDecoration.
constexpr int slot(std::string_view label) {
  int index = 0;
  for (char ch : label)
    index = 2 * index + (ch == '1' ? 1 : 0);
  return (1 << label.size()) - 2 + index;
}

} // namespace

BetaProfile beta_profile(const WindowDecoration& w) {
  auto a = [bits = w.bits()](std::string_view label) -> bool { return (bits >> slot(label)) & 1u; };
  BetaProfile out;
  out.a0 = a("0");
  out.a1 = a("1");
  // beta_xy = alpha_xy + alpha_{x ybar 0} + alpha_{x ybar 1}
  out.beta.b00 = a("00") ^ a("010") ^ a("011");
  out.beta.b01 = a("01") ^ a("000") ^ a("001");
  out.beta.b10 = a("10") ^ a("110") ^ a("111");
  out.beta.b11 = a("11") ^ a("100") ^ a("101");
  return out;
}

BetaProfile beta_profile(const Portrait& p) {
  if (p.depth() < 4)
    throw std::invalid_argument("beta profile needs a portrait of depth at least 4");
  return beta_profile(window_at(p, Vertex{}));
}

const std::array<BetaProfile, 8>& constraint_table() {
  static const std::array<BetaProfile, 8> table = [] {
    // (alpha0, alpha1 | beta00, beta01, beta10, beta11), plus beta-complements
    const bool rows[4][6] = {
        {0, 0, 0, 0, 0, 0},
        {0, 1, 1, 0, 0, 0},
        {1, 0, 0, 0, 1, 0},
        {1, 1, 0, 1, 1, 0},
    };
    std::array<BetaProfile, 8> t{};
    for (int i = 0; i < 4; ++i)
      for (int flip = 0; flip < 2; ++flip) {
        const bool f = flip == 1;
        t[static_cast<std::size_t>(2 * i + flip)] =
            BetaProfile{rows[i][0], rows[i][1],
                        BetaBits{rows[i][2] != f, rows[i][3] != f, rows[i][4] != f, rows[i][5] != f}};
      }
    return t;
  }();
  return table;
}

bool is_admissible(const BetaProfile& profile) {
  for (const auto& row : constraint_table())
    if (row == profile)
      return true;
  return false;
}

bool simulates_grigorchuk(const WindowDecoration& w) { return is_admissible(beta_profile(w)); }

std::string ClosureVerdict::to_string() const {
  if (ok())
    return "OK depth=" + std::to_string(depth);
  return "VIOLATION vertex=" + violation->label();
}

ClosureVerdict in_closure_up_to(const Portrait& p) {
  if (p.depth() < 4)
    throw std::invalid_argument("closure check needs depth at least 4");
  ClosureVerdict verdict{p.depth(), std::nullopt};
  for (int l = 0; l + 4 <= p.depth(); ++l)
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << l); ++i) {
      const Vertex u(l, i);
      if (!simulates_grigorchuk(window_at(p, u))) {
        verdict.violation = u;
        return verdict;
      }
    }
  return verdict;
}

ClosureVerdict in_closure_up_to(const Automorphism& g, int depth) {
  if (depth < 4)
    throw std::invalid_argument("closure check needs depth at least 4");
  return in_closure_up_to(portrait_of(g, depth));
}

bool within_sixteenth_of_G(const Automorphism& g, const QuotientSet& level4) {
  if (level4.level() != 4)
    throw std::invalid_argument("within_sixteenth_of_G needs the level-4 quotient");
  return level4.contains(portrait_of(g, 4));
}

bool within_sixteenth_of_G(const Automorphism& g) {
  static const QuotientSet level4 = enumerate_quotient(4);
  return within_sixteenth_of_G(g, level4);
}

WindowDecoration complete_window(std::uint8_t level1, std::uint8_t level2, std::uint8_t free_bits) {
  if (level1 >> 2 || level2 >> 4 || free_bits >> 5)
    throw std::invalid_argument("complete_window input has too many bits");
  WindowDecoration w;
  for (int i = 0; i < 2; ++i)
    w.set(Vertex(1, static_cast<std::uint64_t>(i)), (level1 >> i) & 1u);
  for (int i = 0; i < 4; ++i)
    w.set(Vertex(2, static_cast<std::uint64_t>(i)), (level2 >> i) & 1u);
  for (std::size_t j = 0; j < free_window_slots.size(); ++j)
    w.set(Vertex(3, static_cast<std::uint64_t>(free_window_slots[j])), (free_bits >> j) & 1u);

  auto a = [&w](std::string_view label) -> bool { return (w.bits() >> slot(label)) & 1u; };
  const bool a0 = a("0");
  const bool a1 = a("1");
  const bool b10 = a("10") ^ a("110") ^ a("111");
  const BetaProfile* row = nullptr;
  for (const auto& r : constraint_table())
    if (r.a0 == a0 && r.a1 == a1 && r.beta.b10 == b10)
      row = &r;
  w.set(Vertex::parse("010"), row->beta.b00 ^ a("00") ^ a("011"));
  w.set(Vertex::parse("000"), row->beta.b01 ^ a("01") ^ a("001"));
  w.set(Vertex::parse("100"), row->beta.b11 ^ a("11") ^ a("101"));
  return w;
}

bool is_free_vertex(const Vertex& u) {
  if (u.length() < 3)
    return true;
  return u.last() || (u.index() & 0b111u) == 0b110u;
}

Portrait complete_portrait(int depth, const std::function<bool(const Vertex&)>& free_bit) {
  Portrait p(depth);
  for (int l = 0; l < depth; ++l) {
    const std::uint64_t width = std::uint64_t{1} << l;
    for (std::uint64_t i = 0; i < width; ++i) {
      const Vertex u(l, i);
      if (is_free_vertex(u))
        p.set(u, free_bit(u));
    }
    if (l < 3)
      continue;
    // Each forced vertex at level l is a level-3 slot of exactly one window,
    // the one rooted three levels up; fill those windows now.
    for (std::uint64_t r = 0; r < (width >> 3); ++r) {
      const Vertex root(l - 3, r);
      std::uint8_t level1 = 0;
      std::uint8_t level2 = 0;
      std::uint8_t free_bits = 0;
      for (int i = 0; i < 2; ++i)
        level1 |= static_cast<std::uint8_t>(p.at(root.append(Vertex(1, static_cast<std::uint64_t>(i)))) << i);
      for (int i = 0; i < 4; ++i)
        level2 |= static_cast<std::uint8_t>(p.at(root.append(Vertex(2, static_cast<std::uint64_t>(i)))) << i);
      for (std::size_t j = 0; j < free_window_slots.size(); ++j)
        free_bits |= static_cast<std::uint8_t>(
            p.at(root.append(Vertex(3, static_cast<std::uint64_t>(free_window_slots[j])))) << j);
      const WindowDecoration w = complete_window(level1, level2, free_bits);
      for (const char* label : {"000", "010", "100"}) {
        const Vertex v = Vertex::parse(label);
        p.set(root.append(v), w.at(v));
      }
    }
  }
  return p;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

bool seeded_vertex_bit(std::uint64_t seed, const Vertex& u) {
  const std::uint64_t key = (static_cast<std::uint64_t>(u.length()) << 57) ^ u.index();
  return splitmix64(splitmix64(seed) ^ key) >> 63;
}

Portrait sample_closure_element(std::uint64_t seed, int depth) {
  if (depth < 4)
    throw std::invalid_argument("sample depth must be at least 4");
  return complete_portrait(depth, [seed](const Vertex& u) { return seeded_vertex_bit(seed, u); });
}

std::uint64_t free_bit_count(int n) {
  if (n < 0 || n > 60)
    throw std::out_of_range("free_bit_count level out of range");
  if (n <= 3)
    return (std::uint64_t{1} << n) - 1;
  return 2 + 5 * (std::uint64_t{1} << (n - 3));
}

Rational Rational::reduced() const {
  const std::uint64_t g = std::gcd(num, den);
  return g == 0 ? *this : Rational{num / g, den / g};
}

bool operator==(const Rational& a, const Rational& b) {
  return static_cast<unsigned __int128>(a.num) * b.den == static_cast<unsigned __int128>(b.num) * a.den;
}

Rational hausdorff_estimate(int n) {
  if (n < 1 || n > 60)
    throw std::out_of_range("hausdorff_estimate level out of range");
  return {free_bit_count(n), (std::uint64_t{1} << n) - 1};
}

} // namespace grig
