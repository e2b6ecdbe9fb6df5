#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "grig/closure.hpp"
#include "grig/oracle.hpp"
#include "grig/words.hpp"

namespace grig::cli {

namespace {

constexpr int kMaxPortraitDepth = 20;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void check_range(const char* what, int value, int lo, int hi) {
  if (value < lo || value > hi)
    throw std::invalid_argument(std::string(what) + " must be between " + std::to_string(lo) + " and " +
                                std::to_string(hi));
}

std::string join(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i)
    out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

std::string to_dot(const Portrait& p) {
  std::ostringstream dot;
  dot << "digraph portrait {\n  node [shape=circle];\n";
  for (int l = 0; l < p.depth(); ++l)
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << l); ++i) {
      const Vertex u(l, i);
      dot << "  \"" << u.label() << "\" [label=\"" << u.label() << "\\n" << p.at(u) << "\"];\n";
      if (l > 0)
        dot << "  \"" << u.parent().label() << "\" -> \"" << u.label() << "\";\n";
    }
  dot << "}\n";
  return dot.str();
}

ResolvedElement from_automaton(std::shared_ptr<const MealyAutomaton> automaton, std::string_view state) {
  const std::size_t index = state.empty() ? 0 : automaton->index_of(state);
  return {element_of(automaton, index), std::move(automaton), index};
}

} // namespace

ResolvedElement resolve_element(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("element spec must look like word:<letters>, auto:..., kbar:<word> or portrait:<file>");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view body = spec.substr(colon + 1);

  if (kind == "word")
    return {element(GenWord(body)), nullptr, 0};
  if (kind == "kbar")
    return {kbar_element(KWord(GenWord(body))), nullptr, 0};
  if (kind == "portrait")
    return {Automorphism::from_portrait(Portrait::parse_text(read_file(std::string(body)))), nullptr, 0};
  if (kind == "auto") {
    const auto hash = body.find('#');
    const std::string_view source = body.substr(0, hash);
    const std::string_view state = hash == std::string_view::npos ? std::string_view{} : body.substr(hash + 1);
    if (hash != std::string_view::npos && state.empty())
      throw std::invalid_argument("missing state name after '#'");
    if (source == "f")
      return from_automaton(f_automaton(), state);
    if (source == "grig") {
      if (state.empty())
        throw std::invalid_argument("auto:grig needs a state, e.g. auto:grig#b");
      return from_automaton(grigorchuk_automaton(), state);
    }
    if (source.empty())
      throw std::invalid_argument("missing automaton file");
    return from_automaton(std::make_shared<const MealyAutomaton>(MealyAutomaton::load(std::string(source))), state);
  }
  throw std::invalid_argument("unknown element kind '" + std::string(kind) + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Automorphisms of the binary rooted tree and the closure of the Grigorchuk group", "grig"};
  app.require_subcommand(1);

  std::string word;
  std::string elem;
  std::string vertex;
  std::string format = "text";
  std::string out_path;
  int depth = 1;
  int level = 4;
  int max_level = 20;
  int levels = 16;
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  std::size_t max_len = 200;

  auto* reduce_cmd = app.add_subcommand("reduce", "Normal form under the simple relations");
  reduce_cmd->add_option("word", word, "Word over abcd ('-' for empty)")->required();

  auto* decompose_cmd = app.add_subcommand("decompose", "Wreath decomposition of a word");
  decompose_cmd->add_option("word", word, "Word over abcd ('-' for empty)")->required();
  decompose_cmd->add_option("--depth", depth, "Decompose down to this level")->capture_default_str();

  auto* act_cmd = app.add_subcommand("act", "Image of a vertex");
  act_cmd->add_option("element", elem)->required();
  act_cmd->add_option("vertex", vertex, "Binary word ('-' for the root)")->required();

  auto* portrait_cmd = app.add_subcommand("portrait", "Truncated portrait of an element");
  portrait_cmd->add_option("element", elem)->required();
  portrait_cmd->add_option("--depth", depth)->required();
  portrait_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "dot"}))->capture_default_str();

  auto* closure_cmd = app.add_subcommand("check-closure", "Finite-depth closure membership");
  closure_cmd->add_option("element", elem)->required();
  closure_cmd->add_option("--depth", depth)->required();

  auto* enumerate_cmd = app.add_subcommand("enumerate", "BFS enumeration of the level-n congruence quotient");
  enumerate_cmd->add_option("--level", level)->required();
  enumerate_cmd->add_option("--out", out_path, "Write the sorted keys to a binary file");

  auto* hausdorff_cmd = app.add_subcommand("hausdorff", "Free-bit ratios converging to the Hausdorff dimension");
  hausdorff_cmd->add_option("--max-level", max_level)->required();

  auto* sample_cmd = app.add_subcommand("sample", "Random closure element portrait");
  sample_cmd->add_option("--seed", seed)->capture_default_str();
  sample_cmd->add_option("--depth", depth)->required();

  auto* bounded_cmd = app.add_subcommand("bounded", "Activity profile and boundedness");
  bounded_cmd->add_option("element", elem)->required();
  bounded_cmd->add_option("--levels", levels)->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "Check the portrait constraints on random words");
  verify_cmd->add_option("--samples", samples)->capture_default_str();
  verify_cmd->add_option("--max-len", max_len)->capture_default_str();
  verify_cmd->add_option("--seed", seed)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (reduce_cmd->parsed()) {
      out << reduce(GenWord(word)).display() << "\n";
      return 0;
    }
    if (decompose_cmd->parsed()) {
      check_range("--depth", depth, 1, kMaxPortraitDepth);
      const GenWord w(word);
      if (depth == 1) {
        const auto parts = decompose_word(w);
        out << "0: " << parts.left.display() << "  1: " << parts.right.display() << "  sigma: " << parts.active
            << "\n";
        return 0;
      }
      for (const auto& [u, wu] : section_words(w, depth - 1)) {
        const auto parts = decompose_word(wu);
        out << "u=" << u.label() << "  0: " << parts.left.display() << "  1: " << parts.right.display()
            << "  sigma: " << parts.active << "\n";
      }
      return 0;
    }
    if (act_cmd->parsed()) {
      out << apply(resolve_element(elem).element, Vertex::parse(vertex)).label() << "\n";
      return 0;
    }
    if (portrait_cmd->parsed()) {
      check_range("--depth", depth, 0, kMaxPortraitDepth);
      const Portrait p = portrait_of(resolve_element(elem).element, depth);
      out << (format == "dot" ? to_dot(p) : p.to_text());
      return 0;
    }
    if (closure_cmd->parsed()) {
      check_range("--depth", depth, 4, kMaxPortraitDepth);
      const ClosureVerdict verdict = in_closure_up_to(resolve_element(elem).element, depth);
      out << verdict.to_string() << "\n";
      return verdict.ok() ? 0 : 1;
    }
    if (enumerate_cmd->parsed()) {
      check_range("--level", level, 1, max_quotient_level);
      const QuotientSet q = enumerate_quotient(level);
      if (!out_path.empty())
        q.save(out_path);
      out << "level=" << level << " count=" << q.size() << "\n";
      return 0;
    }
    if (hausdorff_cmd->parsed()) {
      check_range("--max-level", max_level, 1, 60);
      out << "n\tfree_bits\ttotal_bits\tratio\tdecimal\n";
      for (int n = 1; n <= max_level; ++n) {
        const Rational r = hausdorff_estimate(n);
        out << n << "\t" << r.num << "\t" << r.den << "\t" << r.to_string() << "\t" << std::fixed
            << std::setprecision(6) << r.value() << "\n";
      }
      return 0;
    }
    if (sample_cmd->parsed()) {
      check_range("--depth", depth, 4, kMaxPortraitDepth);
      out << "# seed=" << seed << "\n" << sample_closure_element(seed, depth).to_text();
      return 0;
    }
    if (bounded_cmd->parsed()) {
      check_range("--levels", levels, 0, kMaxPortraitDepth);
      const ResolvedElement r = resolve_element(elem);
      out << "profile=" << join(activity_profile(r.element, levels)) << "\n";
      if (!r.automaton) {
        out << "structural=n/a\n";
        return 0;
      }
      const bool bounded = is_bounded_automaton(r.automaton->reachable_from(r.state));
      out << "structural=" << (bounded ? "bounded" : "unbounded") << "\n";
      return bounded ? 0 : 1;
    }
    if (verify_cmd->parsed()) {
      const ConstraintReport report = verify_portrait_constraints(samples, max_len, seed);
      out << "seed=" << report.seed << " samples=" << report.samples << " max_len=" << report.max_len
          << " depth=" << report.depth << " violations=" << report.violations.size() << "\n";
      for (const auto& w : report.violations)
        out << "counterexample " << w.display() << "\n";
      return report.ok() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

} // namespace grig::cli
