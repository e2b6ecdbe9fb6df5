#pragma once

// Finite-state (Mealy) automorphisms, recursion systems mixing symbols with
// concrete elements, and the bounded-activity check.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "grig/tree_core.hpp"
#include "grig/words.hpp"

namespace grig {

/// A finite automaton over the binary alphabet whose states define tree
/// automorphisms: state s = (next0(s), next1(s)) sigma^activity(s).
class MealyAutomaton {
public:
  struct State {
    std::string name;
    bool active = false;
    std::size_t next0 = 0;
    std::size_t next1 = 0;
  };

  /// Transitions refer to states by name. The first state is the root.
  /// Throws std::invalid_argument on an empty list, duplicate names or
  /// dangling transitions.
  struct StateSpec {
    std::string name;
    bool active;
    std::string next0;
    std::string next1;
  };
  explicit MealyAutomaton(const std::vector<StateSpec>& states);

  std::size_t size() const { return states_.size(); }
  const State& state(std::size_t i) const { return states_.at(i); }
  const std::vector<State>& states() const { return states_; }
  std::size_t index_of(std::string_view name) const;
  bool has_state(std::string_view name) const;
  const std::string& root_name() const { return states_.front().name; }

  /// A state is the identity iff no active state is reachable from it.
  bool is_identity_state(std::size_t i) const { return identity_[i]; }

  /// Sub-automaton of the states reachable from `start`, with `start` first.
  MealyAutomaton reachable_from(std::size_t start) const;

  /// One state per line: `<name>: <activity 0|1> <next0> <next1>`. Blank
  /// lines and lines starting with '#' are skipped.
  static MealyAutomaton parse(std::string_view text);
  static MealyAutomaton load(const std::string& path);
  std::string to_text() const;

private:
  std::vector<State> states_;
  std::vector<bool> identity_;
};

/// States 1, a, b, c, d with a = (1,1) sigma, b = (a,c), c = (a,d), d = (1,b).
const std::shared_ptr<const MealyAutomaton>& grigorchuk_automaton();

/// States f, l, r, m, n with f = (l,r) sigma, l = (r,m) sigma, r = (m,r) sigma,
/// m = (n,f) sigma, n = (r,m).
const std::shared_ptr<const MealyAutomaton>& f_automaton();

/// Automorphism defined by a state. Throws std::invalid_argument for an
/// unknown state name.
Automorphism element_of(const std::shared_ptr<const MealyAutomaton>& automaton, std::size_t state);
Automorphism element_of(const std::shared_ptr<const MealyAutomaton>& automaton, std::string_view state);

/// A system of named recursive definitions s = (ref0, ref1) sigma^activity,
/// where each reference is another symbol or a concrete automorphism.
class RecursionSystem {
public:
  using Reference = std::variant<std::string, Automorphism>;
  struct Definition {
    std::string name;
    bool active = false;
    Reference section0;
    Reference section1;
  };

  /// Throws std::invalid_argument if a symbol is defined twice or a
  /// referenced symbol is undefined.
  explicit RecursionSystem(std::vector<Definition> definitions);

  std::size_t size() const { return definitions_.size(); }
  std::size_t index_of(std::string_view name) const;

  struct Resolved {
    bool active;
    // symbol index, or a concrete element
    std::variant<std::size_t, Automorphism> section[2];
  };
  const Resolved& resolved(std::size_t i) const { return resolved_[i]; }

private:
  std::vector<Definition> definitions_;
  std::vector<Resolved> resolved_;
};

Automorphism element_of(const std::shared_ptr<const RecursionSystem>& system, std::string_view symbol);

/// A word of the shape w1^-1 [a,b] w1 * w2^-1 [a,b]^+-1 w2 * ..., with
/// [a,b] = abab and [a,b]^-1 = baba, which represents an element of K.
class KWord {
public:
  /// The empty product.
  KWord() = default;
  /// Checks the conjugate-product shape; throws std::invalid_argument
  /// otherwise.
  explicit KWord(GenWord word);
  /// Product of conjugates of abab by the given words.
  static KWord from_conjugators(const std::vector<GenWord>& conjugators);

  const GenWord& word() const { return word_; }

  /// Whether `word` splits into blocks reverse(w) (abab|baba) w.
  static bool has_conjugate_product_shape(const GenWord& word);

private:
  GenWord word_;
};

/// kbar = (k, kbar): inactive at the root, section k at 0 and itself at 1.
Automorphism kbar_element(const KWord& k);

/// Inactive at every vertex without a prefix among the assigned vertices;
/// the section at each assigned vertex is its K-element. Throws
/// std::invalid_argument when one vertex is a prefix of another.
Automorphism scattered_element(const std::vector<std::pair<Vertex, KWord>>& assignments);

/// Entry n is the number of active vertices on level n, for n = 0..levels.
std::vector<std::uint64_t> activity_profile(const Automorphism& g, int levels);
/// Same, computed by counting states per level.
std::vector<std::uint64_t> activity_profile(const MealyAutomaton& automaton, std::size_t state, int levels);

/// Bounded (activity degree 0) automaton: among non-identity states, no two
/// distinct directed cycles share a state or are joined by a path.
bool is_bounded_automaton(const MealyAutomaton& automaton);

} // namespace grig
