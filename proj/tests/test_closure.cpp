#include <doctest.h>

#include <cmath>
#include <random>

#include "grig/automata.hpp"
#include "grig/closure.hpp"
#include "grig/oracle.hpp"

using namespace grig;

namespace {

Vertex v(const char* label) { return Vertex::parse(label); }

// Case analysis on the parities, written independently of the table.
bool satisfies_cases(const BetaProfile& p) {
  const bool b00 = p.beta.b00, b01 = p.beta.b01, b10 = p.beta.b10, b11 = p.beta.b11;
  if (!p.a0 && !p.a1)
    return b00 == b11 && b11 == b01 && b01 == b10;
  if (!p.a0 && p.a1)
    return b00 != b11 && b11 == b01 && b01 == b10;
  if (p.a0 && !p.a1)
    return b00 == b11 && b11 == b01 && b01 != b10;
  return b00 == b11 && b11 != b01 && b01 == b10;
}

// Every vertex active.
Automorphism all_ones() {
  static const auto automaton =
      std::make_shared<const MealyAutomaton>(MealyAutomaton::parse("s: 1 s s\n"));
  return element_of(automaton, "s");
}

WindowDecoration example1_window() {
  // all ones on levels 1-2, level 3 = 1,1,0,1,0,1,1,1
  WindowDecoration w;
  for (const char* u : {"0", "1", "00", "01", "10", "11", "000", "001", "011", "101", "110", "111"})
    w.set(v(u), true);
  return w;
}

} // namespace

TEST_CASE("constraint table") {
  const auto& table = constraint_table();
  CHECK(table.size() == 8);
  for (const auto& row : table)
    CHECK(satisfies_cases(row));
  for (int a = 0; a < 4; ++a) {
    int rows = 0;
    for (const auto& row : table)
      rows += (row.a0 == (a & 1) && row.a1 == ((a >> 1) & 1)) ? 1 : 0;
    CHECK(rows == 2);
  }
  // every profile satisfying the cases is in the table
  for (int bits = 0; bits < 64; ++bits) {
    const BetaProfile p{static_cast<bool>(bits & 1), static_cast<bool>(bits & 2),
                        BetaBits{static_cast<bool>(bits & 4), static_cast<bool>(bits & 8),
                                 static_cast<bool>(bits & 16), static_cast<bool>(bits & 32)}};
    CHECK(is_admissible(p) == satisfies_cases(p));
  }
  // alpha0 = alpha1 = 1 and beta11 = 0 gives beta00 = 0, beta01 = beta10 = 1
  int matches = 0;
  for (const auto& row : table)
    if (row.a0 && row.a1 && !row.beta.b11) {
      ++matches;
      CHECK(row.beta == BetaBits{false, true, true, false});
    }
  CHECK(matches == 1);
}

TEST_CASE("beta_profile") {
  WindowDecoration w;
  for (const char* u : {"0", "1", "00", "01", "10", "11", "001", "011", "101", "111", "110"})
    w.set(v(u), true);
  CHECK(beta_profile(w).beta.b10);

  CHECK(beta_profile(Portrait(4)) == BetaProfile{});
  const BetaProfile d = beta_profile(portrait_of(generator('d'), 4));
  CHECK(is_admissible(d));
  CHECK_THROWS_AS(beta_profile(Portrait(3)), std::invalid_argument);
}

TEST_CASE("simulates_grigorchuk") {
  CHECK(simulates_grigorchuk(WindowDecoration{}));
  CHECK(simulates_grigorchuk(example1_window()));
  CHECK_FALSE(simulates_grigorchuk(WindowDecoration(0x3fff)));
  CHECK_THROWS_AS(WindowDecoration(0x4000), std::invalid_argument);
}

TEST_CASE("exhaustive window count") {
  int admissible = 0;
  for (std::uint32_t bits = 0; bits < (1u << 14); ++bits)
    admissible += simulates_grigorchuk(WindowDecoration(static_cast<std::uint16_t>(bits))) ? 1 : 0;
  CHECK(admissible == (1 << 11));
}

TEST_CASE("complete_window") {
  const WindowDecoration ones = complete_window(0b11, 0b1111, 0b11111);
  CHECK(ones.at(v("000")));
  CHECK_FALSE(ones.at(v("010")));
  CHECK_FALSE(ones.at(v("100")));
  CHECK(ones == example1_window());
  CHECK(simulates_grigorchuk(ones));

  CHECK(complete_window(0, 0, 0) == WindowDecoration{});
  CHECK_THROWS_AS(complete_window(4, 0, 0), std::invalid_argument);
}

TEST_CASE("property: complete_window always yields admissible windows") {
  for (std::uint32_t in = 0; in < (1u << 11); ++in) {
    const auto level1 = static_cast<std::uint8_t>(in & 0b11);
    const auto level2 = static_cast<std::uint8_t>((in >> 2) & 0b1111);
    const auto free_bits = static_cast<std::uint8_t>(in >> 6);
    const WindowDecoration w = complete_window(level1, level2, free_bits);
    REQUIRE(simulates_grigorchuk(w));
    // inputs are kept
    for (std::size_t j = 0; j < free_window_slots.size(); ++j)
      REQUIRE(w.at(Vertex(3, static_cast<std::uint64_t>(free_window_slots[j]))) == static_cast<bool>((free_bits >> j) & 1u));
    // fixed point: re-completing from the completed window changes nothing
    REQUIRE(complete_window(level1, level2, free_bits) == w);
    // and no other completion is admissible
    for (int forced = 0; forced < 8; ++forced) {
      WindowDecoration other = w;
      other.set(v("000"), forced & 1);
      other.set(v("010"), forced & 2);
      other.set(v("100"), forced & 4);
      if (!(other == w))
        REQUIRE_FALSE(simulates_grigorchuk(other));
    }
  }
}

TEST_CASE("in_closure_up_to") {
  CHECK(in_closure_up_to(generator('b'), 10).ok());
  CHECK(in_closure_up_to(generator('b'), 10).to_string() == "OK depth=10");

  const ClosureVerdict ones = in_closure_up_to(all_ones(), 8);
  REQUIRE_FALSE(ones.ok());
  CHECK(*ones.violation == Vertex{});
  CHECK(ones.to_string() == "VIOLATION vertex=-");

  // Break one window deep in an otherwise admissible portrait.
  Portrait p = sample_closure_element(7, 8);
  p.set(v("1011010"), !p.at(v("1011010")));
  const ClosureVerdict broken = in_closure_up_to(p);
  REQUIRE_FALSE(broken.ok());
  CHECK(*broken.violation == v("1011"));
  CHECK(broken.to_string() == "VIOLATION vertex=1011");

  CHECK_THROWS_AS(in_closure_up_to(generator('b'), 3), std::invalid_argument);
}

TEST_CASE("property: closure violations persist at larger depth") {
  std::mt19937_64 rng(31);
  std::bernoulli_distribution coin(0.5);
  int failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Portrait p = sample_closure_element(rng(), 10);
    // flip a few random bits
    for (int k = 0; k < 2; ++k)
      p.set_bit(rng() % p.size(), coin(rng));
    const Automorphism g = Automorphism::from_portrait(p);
    for (int d = 4; d <= 10; ++d) {
      const auto verdict = in_closure_up_to(g, d);
      if (!verdict.ok()) {
        ++failures;
        for (int e = d; e <= 10; ++e) {
          const auto later = in_closure_up_to(g, e);
          REQUIRE_FALSE(later.ok());
          REQUIRE(*later.violation == *verdict.violation);
        }
        break;
      }
    }
  }
  CHECK(failures > 50);
}

TEST_CASE("within_sixteenth_of_G") {
  CHECK(within_sixteenth_of_G(identity()));
  CHECK(within_sixteenth_of_G(element_of(f_automaton(), "f")));
  CHECK_FALSE(within_sixteenth_of_G(all_ones()));
  const QuotientSet level4 = enumerate_quotient(4);
  CHECK(within_sixteenth_of_G(generator('c'), level4));
  CHECK_THROWS_AS(within_sixteenth_of_G(identity(), enumerate_quotient(3)), std::invalid_argument);
  // agrees with the root-window test on every depth-4 decoration
  for (std::uint32_t key = 0; key < (1u << 15); ++key) {
    const Portrait p = Portrait::from_key(4, key);
    REQUIRE(within_sixteenth_of_G(Automorphism::from_portrait(p), level4) ==
            simulates_grigorchuk(window_at(p, Vertex{})));
  }
}

TEST_CASE("sample_closure_element") {
  for (std::uint64_t seed = 0; seed < 50; ++seed)
    CHECK(simulates_grigorchuk(window_at(sample_closure_element(seed, 4), Vertex{})));
  CHECK(sample_closure_element(42, 9) == sample_closure_element(42, 9));
  CHECK_FALSE(sample_closure_element(42, 9) == sample_closure_element(43, 9));
  // extending the depth keeps the shallower levels
  CHECK(sample_closure_element(5, 12).truncated(8) == sample_closure_element(5, 8));
  CHECK_THROWS_AS(sample_closure_element(0, 3), std::invalid_argument);
}

TEST_CASE("forced and free vertex counts") {
  for (int l = 3; l <= 10; ++l) {
    std::uint64_t free_count = 0;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << l); ++i)
      free_count += is_free_vertex(Vertex(l, i)) ? 1 : 0;
    CHECK(free_count == 5 * (std::uint64_t{1} << (l - 3)));
    CHECK((std::uint64_t{1} << l) - free_count == 3 * (std::uint64_t{1} << (l - 3)));
  }
  for (const char* u : {"-", "0", "11", "000", "010"})
    CHECK(is_free_vertex(v(u)) == (v(u).length() < 3));
  CHECK(is_free_vertex(v("0110")));
  CHECK_FALSE(is_free_vertex(v("0100")));
}

TEST_CASE("property: sampled portraits lie in the closure at every section") {
  const QuotientSet level4 = enumerate_quotient(4);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Portrait p = sample_closure_element(seed, 8);
    REQUIRE(in_closure_up_to(p).ok());
    for (int l = 0; l + 4 <= 8; ++l)
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << l); ++i)
        REQUIRE(within_sixteenth_of_G(Automorphism::from_portrait(p.section(Vertex(l, i))), level4));
  }
}

TEST_CASE("free_bit_count") {
  CHECK(free_bit_count(0) == 0);
  CHECK(free_bit_count(3) == 7);
  CHECK(free_bit_count(4) == 12);
  CHECK(free_bit_count(5) == 22);
  // closed form against a direct count of free vertices
  for (int n = 0; n <= 12; ++n) {
    std::uint64_t direct = 0;
    for (int l = 0; l < n; ++l)
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << l); ++i)
        direct += is_free_vertex(Vertex(l, i)) ? 1 : 0;
    CHECK(free_bit_count(n) == direct);
  }
}

TEST_CASE("hausdorff_estimate") {
  CHECK(hausdorff_estimate(4) == Rational{12, 15});
  CHECK(hausdorff_estimate(4).num == 12);
  CHECK(hausdorff_estimate(4).den == 15);
  CHECK(hausdorff_estimate(4).reduced().to_string() == "4/5");
  CHECK(hausdorff_estimate(20) == Rational{655362, 1048575});
  CHECK(std::abs(hausdorff_estimate(20).value() - 0.625) < 0.01);
  CHECK(std::abs(hausdorff_estimate(40).value() - 0.625) < 1e-9);
  CHECK_THROWS_AS(hausdorff_estimate(0), std::out_of_range);
}
