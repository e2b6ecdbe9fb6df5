#include "grig/automata.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace grig {

// -------------------------------------------------------- MealyAutomaton

MealyAutomaton::MealyAutomaton(const std::vector<StateSpec>& states) {
  if (states.empty())
    throw std::invalid_argument("automaton needs at least one state");
  std::map<std::string, std::size_t, std::less<>> index;
  for (const auto& s : states) {
    if (s.name.empty())
      throw std::invalid_argument("empty state name");
    if (!index.emplace(s.name, index.size()).second)
      throw std::invalid_argument("duplicate state '" + s.name + "'");
  }
  auto lookup = [&index](const std::string& name) {
    const auto it = index.find(name);
    if (it == index.end())
      throw std::invalid_argument("transition to undefined state '" + name + "'");
    return it->second;
  };
  for (const auto& s : states)
    states_.push_back({s.name, s.active, lookup(s.next0), lookup(s.next1)});

  // Identity states: those from which no active state is reachable. Mark
  // every state that reaches an active one by backward search.
  std::vector<std::vector<std::size_t>> incoming(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    incoming[states_[i].next0].push_back(i);
    incoming[states_[i].next1].push_back(i);
  }
  std::vector<bool> reaches_active(states_.size(), false);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i].active) {
      reaches_active[i] = true;
      stack.push_back(i);
    }
  while (!stack.empty()) {
    const std::size_t s = stack.back();
    stack.pop_back();
    for (std::size_t p : incoming[s])
      if (!reaches_active[p]) {
        reaches_active[p] = true;
        stack.push_back(p);
      }
  }
  identity_.resize(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i)
    identity_[i] = !reaches_active[i];
}

std::size_t MealyAutomaton::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i].name == name)
      return i;
  throw std::invalid_argument("unknown state '" + std::string(name) + "'");
}

bool MealyAutomaton::has_state(std::string_view name) const {
  return std::any_of(states_.begin(), states_.end(), [name](const State& s) { return s.name == name; });
}

MealyAutomaton MealyAutomaton::reachable_from(std::size_t start) const {
  std::vector<std::size_t> order{start};
  std::vector<bool> seen(states_.size(), false);
  seen.at(start) = true;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (std::size_t next : {states_[order[head]].next0, states_[order[head]].next1})
      if (!seen[next]) {
        seen[next] = true;
        order.push_back(next);
      }
  std::vector<StateSpec> specs;
  for (std::size_t i : order) {
    const auto& s = states_[i];
    specs.push_back({s.name, s.active, states_[s.next0].name, states_[s.next1].name});
  }
  return MealyAutomaton(specs);
}

MealyAutomaton MealyAutomaton::parse(std::string_view text) {
  std::vector<StateSpec> specs;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    const auto colon = line.find(':');
    auto fail = [line_no](const std::string& why) {
      return std::invalid_argument("automaton line " + std::to_string(line_no) + ": " + why);
    };
    if (colon == std::string::npos)
      throw fail("expected '<name>: <activity> <next0> <next1>'");
    std::istringstream name_in(line.substr(0, colon));
    std::string name;
    name_in >> name;
    std::istringstream rest(line.substr(colon + 1));
    std::string activity, next0, next1, extra;
    if (!(rest >> activity >> next0 >> next1) || (rest >> extra) || name.empty())
      throw fail("expected '<name>: <activity> <next0> <next1>'");
    if (activity != "0" && activity != "1")
      throw fail("activity must be 0 or 1");
    specs.push_back({name, activity == "1", next0, next1});
  }
  return MealyAutomaton(specs);
}

MealyAutomaton MealyAutomaton::load(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string MealyAutomaton::to_text() const {
  std::string out;
  for (const auto& s : states_)
    out += s.name + ": " + (s.active ? "1 " : "0 ") + states_[s.next0].name + " " + states_[s.next1].name + "\n";
  return out;
}

const std::shared_ptr<const MealyAutomaton>& grigorchuk_automaton() {
  static const auto automaton = std::make_shared<const MealyAutomaton>(std::vector<MealyAutomaton::StateSpec>{
      {"a", true, "1", "1"},
      {"b", false, "a", "c"},
      {"c", false, "a", "d"},
      {"d", false, "1", "b"},
      {"1", false, "1", "1"},
  });
  return automaton;
}

const std::shared_ptr<const MealyAutomaton>& f_automaton() {
  static const auto automaton = std::make_shared<const MealyAutomaton>(std::vector<MealyAutomaton::StateSpec>{
      {"f", true, "l", "r"},
      {"l", true, "r", "m"},
      {"r", true, "m", "r"},
      {"m", true, "n", "f"},
      {"n", false, "r", "m"},
  });
  return automaton;
}

namespace {

class AutomatonNode final : public AutomorphismNode {
public:
  AutomatonNode(std::shared_ptr<const MealyAutomaton> automaton, std::size_t state)
      : AutomorphismNode(automaton->state(state).active), automaton_(std::move(automaton)), state_(state) {}

  Automorphism section(bool x) const override {
    const auto& s = automaton_->state(state_);
    return element_of(automaton_, x ? s.next1 : s.next0);
  }

private:
  std::shared_ptr<const MealyAutomaton> automaton_;
  std::size_t state_;
};

} // namespace

Automorphism element_of(const std::shared_ptr<const MealyAutomaton>& automaton, std::size_t state) {
  if (state >= automaton->size())
    throw std::invalid_argument("state index out of range");
  if (automaton->is_identity_state(state))
    return identity();
  return Automorphism(std::make_shared<AutomatonNode>(automaton, state));
}

Automorphism element_of(const std::shared_ptr<const MealyAutomaton>& automaton, std::string_view state) {
  return element_of(automaton, automaton->index_of(state));
}

// ------------------------------------------------------- RecursionSystem

RecursionSystem::RecursionSystem(std::vector<Definition> definitions) : definitions_(std::move(definitions)) {
  for (std::size_t i = 0; i < definitions_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (definitions_[i].name == definitions_[j].name)
        throw std::invalid_argument("symbol '" + definitions_[i].name + "' defined twice");
  auto resolve = [this](const Reference& ref) -> std::variant<std::size_t, Automorphism> {
    if (const auto* name = std::get_if<std::string>(&ref))
      return index_of(*name);
    return std::get<Automorphism>(ref);
  };
  for (const auto& d : definitions_)
    resolved_.push_back({d.active, {resolve(d.section0), resolve(d.section1)}});
}

std::size_t RecursionSystem::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < definitions_.size(); ++i)
    if (definitions_[i].name == name)
      return i;
  throw std::invalid_argument("undefined symbol '" + std::string(name) + "'");
}

namespace {

class SymbolNode final : public AutomorphismNode {
public:
  SymbolNode(std::shared_ptr<const RecursionSystem> system, std::size_t symbol)
      : AutomorphismNode(system->resolved(symbol).active), system_(std::move(system)), symbol_(symbol) {}

  Automorphism section(bool x) const override {
    const auto& target = system_->resolved(symbol_).section[x];
    if (const auto* index = std::get_if<std::size_t>(&target))
      return Automorphism(std::make_shared<SymbolNode>(system_, *index));
    return std::get<Automorphism>(target);
  }

private:
  std::shared_ptr<const RecursionSystem> system_;
  std::size_t symbol_;
};

} // namespace

Automorphism element_of(const std::shared_ptr<const RecursionSystem>& system, std::string_view symbol) {
  return Automorphism(std::make_shared<SymbolNode>(system, system->index_of(symbol)));
}

// ------------------------------------------------------------------ KWord

namespace {

constexpr std::string_view kCommutator = "abab";
constexpr std::string_view kCommutatorInverse = "baba";

} // namespace

KWord::KWord(GenWord word) : word_(std::move(word)) {
  if (!has_conjugate_product_shape(word_))
    throw std::invalid_argument("'" + word_.display() +
                                "' is not a product of conjugates of abab or baba");
}

KWord KWord::from_conjugators(const std::vector<GenWord>& conjugators) {
  KWord k;
  for (const auto& w : conjugators)
    k.word_ = k.word_ + w.inverse() + GenWord(kCommutator) + w;
  return k;
}

bool KWord::has_conjugate_product_shape(const GenWord& word) {
  const std::string& s = word.str();
  const std::size_t n = s.size();
  // reachable[i]: the prefix of length i is a product of blocks
  std::vector<bool> reachable(n + 1, false);
  reachable[0] = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!reachable[i])
      continue;
    for (std::size_t len = 0; i + 2 * len + 4 <= n; ++len) {
      const std::string_view core(s.data() + i + len, 4);
      if (core != kCommutator && core != kCommutatorInverse)
        continue;
      bool mirrored = true;
      for (std::size_t t = 0; t < len && mirrored; ++t)
        mirrored = s[i + t] == s[i + 2 * len + 4 - 1 - t];
      if (mirrored)
        reachable[i + 2 * len + 4] = true;
    }
  }
  return reachable[n];
}

Automorphism kbar_element(const KWord& k) {
  if (k.word().empty())
    return identity();
  auto system = std::make_shared<const RecursionSystem>(std::vector<RecursionSystem::Definition>{
      {"kbar", false, element(k.word()), std::string("kbar")},
  });
  return element_of(system, "kbar");
}

namespace {

Automorphism build_scattered(const std::vector<std::pair<Vertex, const KWord*>>& entries) {
  if (entries.empty())
    return identity();
  if (entries.size() == 1 && entries.front().first.empty())
    return element(entries.front().second->word());
  std::vector<std::pair<Vertex, const KWord*>> sides[2];
  for (const auto& [v, k] : entries)
    sides[v.letter(0)].emplace_back(v.suffix_from(1), k);
  return Automorphism::wreath(false, build_scattered(sides[0]), build_scattered(sides[1]));
}

} // namespace

Automorphism scattered_element(const std::vector<std::pair<Vertex, KWord>>& assignments) {
  for (std::size_t i = 0; i < assignments.size(); ++i)
    for (std::size_t j = 0; j < assignments.size(); ++j)
      if (i != j && assignments[i].first.is_prefix_of(assignments[j].first))
        throw std::invalid_argument("vertex " + assignments[i].first.label() + " is a prefix of " +
                                    assignments[j].first.label());
  std::vector<std::pair<Vertex, const KWord*>> entries;
  for (const auto& [v, k] : assignments)
    entries.emplace_back(v, &k);
  return build_scattered(entries);
}

// ------------------------------------------------------------ boundedness

std::vector<std::uint64_t> activity_profile(const Automorphism& g, int levels) {
  if (levels < 0)
    throw std::invalid_argument("levels must be non-negative");
  std::vector<std::uint64_t> profile(static_cast<std::size_t>(levels) + 1, 0);
  for_each_section(g, levels + 1, [&profile](const Vertex& u, const Automorphism& s) {
    profile[static_cast<std::size_t>(u.length())] += s.root_activity() ? 1 : 0;
  });
  return profile;
}

std::vector<std::uint64_t> activity_profile(const MealyAutomaton& automaton, std::size_t state, int levels) {
  if (levels < 0)
    throw std::invalid_argument("levels must be non-negative");
  std::vector<std::uint64_t> counts(automaton.size(), 0);
  counts.at(state) = 1;
  std::vector<std::uint64_t> profile;
  for (int l = 0; l <= levels; ++l) {
    std::uint64_t active = 0;
    std::vector<std::uint64_t> next(automaton.size(), 0);
    for (std::size_t s = 0; s < automaton.size(); ++s) {
      if (automaton.state(s).active)
        active += counts[s];
      next[automaton.state(s).next0] += counts[s];
      next[automaton.state(s).next1] += counts[s];
    }
    profile.push_back(active);
    counts = std::move(next);
  }
  return profile;
}

bool is_bounded_automaton(const MealyAutomaton& automaton) {
  const std::size_t n = automaton.size();
  // Edges among non-identity states, with multiplicity.
  std::vector<std::vector<std::size_t>> edges(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (automaton.is_identity_state(s))
      continue;
    for (std::size_t t : {automaton.state(s).next0, automaton.state(s).next1})
      if (!automaton.is_identity_state(t))
        edges[s].push_back(t);
  }

  // Tarjan's strongly connected components.
  std::vector<int> index(n, -1), low(n, 0), component(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0;
  int components = 0;
  std::function<void(std::size_t)> connect = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : edges[v]) {
      if (index[w] < 0) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      for (std::size_t w = n; w != v;) {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component[w] = components;
      }
      ++components;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (!automaton.is_identity_state(v) && index[v] < 0)
      connect(v);

  // A component carrying a cycle must be exactly one cycle: as many internal
  // edges as states.
  std::vector<std::size_t> states_in(static_cast<std::size_t>(components), 0);
  std::vector<std::size_t> internal_edges(static_cast<std::size_t>(components), 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (component[v] < 0)
      continue;
    ++states_in[static_cast<std::size_t>(component[v])];
    for (std::size_t w : edges[v])
      if (component[w] == component[v])
        ++internal_edges[static_cast<std::size_t>(component[v])];
  }
  std::vector<bool> cyclic(static_cast<std::size_t>(components), false);
  for (std::size_t c = 0; c < cyclic.size(); ++c) {
    if (internal_edges[c] > states_in[c])
      return false;
    cyclic[c] = internal_edges[c] > 0;
  }

  // No path may lead from one cycle to a different one.
  for (std::size_t start = 0; start < n; ++start) {
    if (component[start] < 0 || !cyclic[static_cast<std::size_t>(component[start])])
      continue;
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> todo{start};
    seen[start] = true;
    while (!todo.empty()) {
      const std::size_t v = todo.back();
      todo.pop_back();
      for (std::size_t w : edges[v]) {
        if (seen[w])
          continue;
        seen[w] = true;
        if (component[w] != component[start] && cyclic[static_cast<std::size_t>(component[w])])
          return false;
        todo.push_back(w);
      }
    }
  }
  return true;
}

} // namespace grig
