#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "grig/automata.hpp"
#include "grig/tree_core.hpp"

namespace grig::cli {

/// An element designator resolved to an automorphism. Automaton-backed
/// elements also carry their automaton and state.
struct ResolvedElement {
  Automorphism element;
  std::shared_ptr<const MealyAutomaton> automaton;
  std::size_t state = 0;
};

/// Accepts word:<abcd>, auto:f[#state], auto:grig#<state>,
/// auto:<file>[#state], kbar:<word> and portrait:<file>. Throws
/// std::invalid_argument on malformed designators.
ResolvedElement resolve_element(std::string_view spec);

/// Runs one command line (args excludes the program name). Returns 0 on
/// success or a positive verdict, 1 on a negative verdict, 2 on usage or
/// parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace grig::cli
