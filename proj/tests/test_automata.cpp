#include <doctest.h>

#include <random>

#include "grig/automata.hpp"
#include "grig/closure.hpp"
#include "grig/oracle.hpp"

using namespace grig;

namespace {

Vertex v(const char* label) { return Vertex::parse(label); }

Automorphism grig_state(const char* s) { return element_of(grigorchuk_automaton(), s); }
Automorphism f_state(const char* s) { return element_of(f_automaton(), s); }

const KWord kAbab{GenWord("abab")};

} // namespace

TEST_CASE("grigorchuk automaton") {
  const auto& g = *grigorchuk_automaton();
  CHECK(g.size() == 5);
  CHECK(g.state(g.index_of("b")).next1 == g.index_of("c"));
  CHECK(g.is_identity_state(g.index_of("1")));
  CHECK_FALSE(g.is_identity_state(g.index_of("d")));
  CHECK(grig_state("1").is_trivially_identity());
  CHECK(equal_to_depth(section_at(grig_state("b"), v("1")), grig_state("c"), 10));
  for (const char* s : {"a", "b", "c", "d"})
    CHECK(equal_to_depth(grig_state(s), generator(s[0]), 10));
}

TEST_CASE("f automaton") {
  const auto& f = *f_automaton();
  CHECK(f.size() == 5);
  for (const char* s : {"f", "l", "r", "m"})
    CHECK(f.state(f.index_of(s)).active);
  CHECK_FALSE(f.state(f.index_of("n")).active);

  const Portrait p = portrait_of(f_state("f"), 5);
  CHECK(p.level_string(0) == "1");
  CHECK(p.level_string(1) == "11");
  CHECK(p.level_string(2) == "1111");
  CHECK(p.level_string(3) == "11010111");
  CHECK(p.level_string(4) == "0111111111110111");

  CHECK(in_closure_up_to(f_state("f"), 12).ok());
  CHECK_FALSE(is_bounded_automaton(f));
}

TEST_CASE("f is the all-ones choice of the free-vertex strategy") {
  const Portrait built = complete_portrait(10, [](const Vertex&) { return true; });
  CHECK(built == portrait_of(f_state("f"), 10));
}

TEST_CASE("element_of") {
  CHECK(equal_to_depth(grig_state("d"), generator('d'), 10));
  const Automorphism n = f_state("n");
  CHECK_FALSE(n.root_activity());
  CHECK(equal_to_depth(n.section(false), f_state("r"), 10));
  CHECK(equal_to_depth(n.section(true), f_state("m"), 10));
  CHECK_THROWS_AS(element_of(f_automaton(), "x"), std::invalid_argument);
  auto single = std::make_shared<const MealyAutomaton>(MealyAutomaton::parse("e: 0 e e\n"));
  CHECK(element_of(single, "e").is_trivially_identity());
}

TEST_CASE("automaton text format") {
  const MealyAutomaton f = MealyAutomaton::parse(f_automaton()->to_text());
  CHECK(f.root_name() == "f");
  CHECK(f.to_text() == f_automaton()->to_text());
  CHECK(MealyAutomaton::parse("# comment\n\nx: 1 y y\ny: 0 y y\n").size() == 2);
  CHECK_THROWS_AS(MealyAutomaton::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(MealyAutomaton::parse("x: 1 y y\n"), std::invalid_argument);
  CHECK_THROWS_AS(MealyAutomaton::parse("x: 2 x x\n"), std::invalid_argument);
  CHECK_THROWS_AS(MealyAutomaton::parse("x: 1 x x\nx: 0 x x\n"), std::invalid_argument);
  CHECK_THROWS_AS(MealyAutomaton::parse("x 1 x x\n"), std::invalid_argument);
  CHECK_THROWS_AS(MealyAutomaton::parse("x: 1 x x x\n"), std::invalid_argument);
}

TEST_CASE("KWord shape") {
  CHECK(KWord::has_conjugate_product_shape(GenWord()));
  CHECK(KWord::has_conjugate_product_shape(GenWord("abab")));
  CHECK(KWord::has_conjugate_product_shape(GenWord("baba")));
  CHECK(KWord::has_conjugate_product_shape(GenWord("cababc")));
  CHECK(KWord::has_conjugate_product_shape(GenWord("dcbabacdabab")));
  CHECK_FALSE(KWord::has_conjugate_product_shape(GenWord("ab")));
  CHECK_FALSE(KWord::has_conjugate_product_shape(GenWord("cababd")));
  CHECK_THROWS_AS(KWord(GenWord("abc")), std::invalid_argument);
  const KWord k = KWord::from_conjugators({GenWord("cd"), GenWord()});
  CHECK(k.word() == GenWord("dcababcdabab"));
  CHECK(KWord::has_conjugate_product_shape(k.word()));
}

TEST_CASE("kbar_element") {
  const Automorphism kbar = kbar_element(kAbab);
  const Automorphism k = element(GenWord("abab"));
  Vertex u;
  for (int n = 0; n <= 8; ++n) {
    CHECK(equal_to_depth(section_at(kbar, u.child(false)), k, 8));
    u = u.child(true);
  }
  CHECK(kbar_element(KWord()).is_trivially_identity());
  CHECK(in_closure_up_to(kbar, 12).ok());
  CHECK(equal_to_depth(kbar.section(true), kbar, 10));
  CHECK(equal_to_depth(kbar.section(false), k, 10));
  CHECK_FALSE(kbar.root_activity());

  // Unlike elements of G, kbar has unbounded level activity.
  const auto profile = activity_profile(kbar, 16);
  CHECK(profile[16] > profile[8]);
  CHECK(profile[8] > profile[4]);
}

TEST_CASE("kbar for other K-elements stays in the closure") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<GenWord> conjugators;
    for (int i = 0; i < 2; ++i)
      conjugators.push_back(random_word(rng, 6));
    const KWord k = KWord::from_conjugators(conjugators);
    const Automorphism kbar = kbar_element(k);
    CHECK(in_closure_up_to(kbar, 10).ok());
    CHECK(equal_to_depth(kbar.section(false), element(k.word()), 8));
  }
}

TEST_CASE("recursion systems") {
  using Def = RecursionSystem::Definition;
  CHECK_THROWS_AS(RecursionSystem({Def{"x", false, std::string("y"), identity()}}), std::invalid_argument);
  CHECK_THROWS_AS(RecursionSystem({Def{"x", false, identity(), identity()}, Def{"x", true, identity(), identity()}}),
                  std::invalid_argument);
  // f rebuilt as a recursion system equals the automaton element
  auto f = std::make_shared<const RecursionSystem>(std::vector<Def>{
      {"f", true, std::string("l"), std::string("r")},
      {"l", true, std::string("r"), std::string("m")},
      {"r", true, std::string("m"), std::string("r")},
      {"m", true, std::string("n"), std::string("f")},
      {"n", false, std::string("r"), std::string("m")},
  });
  CHECK(equal_to_depth(element_of(f, "f"), f_state("f"), 10));
}

TEST_CASE("scattered_element") {
  CHECK(scattered_element({}).is_trivially_identity());
  CHECK(equal_to_depth(scattered_element({{Vertex{}, kAbab}}), element(GenWord("abab")), 10));
  const Automorphism s = scattered_element({{v("00"), kAbab}, {v("01"), kAbab}, {v("1"), kAbab}});
  CHECK(in_closure_up_to(s, 12).ok());
  CHECK(equal_to_depth(section_at(s, v("01")), element(GenWord("abab")), 8));
  CHECK_FALSE(activity(s, v("0")));
  CHECK_THROWS_AS(scattered_element({{v("0"), kAbab}, {v("01"), kAbab}}), std::invalid_argument);
  CHECK_THROWS_AS(scattered_element({{v("1"), kAbab}, {v("1"), kAbab}}), std::invalid_argument);
}

TEST_CASE("activity_profile") {
  CHECK(activity_profile(identity(), 5) == std::vector<std::uint64_t>(6, 0));
  // d -> b -> c -> d cycle; a appears one level below b and c
  CHECK(activity_profile(generator('d'), 9) == std::vector<std::uint64_t>{0, 0, 1, 1, 0, 1, 1, 0, 1, 1});
  const std::vector<std::uint64_t> f_profile = {1,   2,    4,    6,    14,   28,    54,    110,  220,
                                                438, 878, 1756, 3510, 7022, 14044, 28086, 56174};
  CHECK(activity_profile(f_state("f"), 16) == f_profile);
  CHECK(activity_profile(*f_automaton(), f_automaton()->index_of("f"), 16) == f_profile);
  for (const auto& s : grigorchuk_automaton()->states())
    CHECK(activity_profile(grig_state(s.name.c_str()), 12) ==
          activity_profile(*grigorchuk_automaton(), grigorchuk_automaton()->index_of(s.name), 12));
}

TEST_CASE("is_bounded_automaton") {
  CHECK(is_bounded_automaton(*grigorchuk_automaton()));
  CHECK_FALSE(is_bounded_automaton(*f_automaton()));
  CHECK(is_bounded_automaton(MealyAutomaton::parse("e: 0 e e\n")));
  // one active state looping twice: all-ones portrait
  CHECK_FALSE(is_bounded_automaton(MealyAutomaton::parse("s: 1 s s\n")));
  // a single cycle with exits to the identity
  CHECK(is_bounded_automaton(MealyAutomaton::parse("x: 1 y e\ny: 0 e x\ne: 0 e e\n")));
  // two disjoint cycles joined by a path
  CHECK_FALSE(is_bounded_automaton(MealyAutomaton::parse("x: 1 x y\ny: 1 y e\ne: 0 e e\n")));
  // two disjoint, unconnected cycles
  CHECK(is_bounded_automaton(MealyAutomaton::parse("x: 1 x e\ny: 1 e y\ne: 0 e e\n")));
}

TEST_CASE("property: structural boundedness matches the activity profile") {
  const auto& g = *grigorchuk_automaton();
  for (std::size_t s = 0; s < g.size(); ++s)
    for (auto count : activity_profile(g, s, 16))
      CHECK(count <= g.size());
  const auto f = activity_profile(*f_automaton(), 0, 16);
  for (std::size_t n = 1; n < f.size(); ++n)
    CHECK(f[n] > f[n - 1]);

  // random small automata: bounded ones never exceed the state count
  std::mt19937_64 rng(42);
  int bounded_seen = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<MealyAutomaton::StateSpec> specs;
    for (std::size_t i = 0; i < n; ++i)
      specs.push_back({"s" + std::to_string(i), static_cast<bool>(rng() % 2), "s" + std::to_string(rng() % n),
                       "s" + std::to_string(rng() % n)});
    const MealyAutomaton a(specs);
    const bool bounded = is_bounded_automaton(a);
    for (std::size_t s = 0; s < n; ++s) {
      const auto profile = activity_profile(a, s, 16);
      if (bounded)
        for (auto count : profile)
          REQUIRE(count <= n);
      else if (!is_bounded_automaton(a.reachable_from(s))) {
        // activity may vanish on single levels, so look at a window of n levels
        std::uint64_t window = 0;
        for (std::size_t l = 16 - n; l <= 16; ++l)
          window += profile[l];
        REQUIRE(window > n);
      }
    }
    bounded_seen += bounded ? 1 : 0;
  }
  CHECK(bounded_seen > 20);
}

TEST_CASE("sections of f lie in the closure") {
  for (const auto& s : f_automaton()->states())
    CHECK(in_closure_up_to(f_state(s.name.c_str()), 10).ok());
}
