#include "cli.hpp"

#include <charconv>
#include <functional>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "subfib/error.hpp"
#include "subfib/exhaust.hpp"
#include "subfib/primes.hpp"
#include "subfib/serialize.hpp"

namespace subfib::cli {
namespace {

constexpr std::uint64_t kDefaultGenerateSteps = 30;

const char* const kFooter =
    "Environment:\n  SUBFIB_SIEVE_BOUND  size of the smallest-prime-factor sieve (default 10^7)\n"
    "Exit codes: 0 success, 1 usage or validation error, 2 computational limit";

Term parse_term(std::string_view s) {
  Term value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (s.empty() || ec != std::errc{} || ptr != last) {
    if (ec == std::errc::result_out_of_range) throw DomainError("number out of range '" + std::string(s) + "'");
    throw DomainError("malformed number '" + std::string(s) + "'");
  }
  return value;
}

std::vector<Term> parse_list(std::string_view s, char sep = ',') {
  std::vector<Term> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(parse_term(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

TermPair parse_pair(std::string_view s) {
  const std::vector<Term> v = parse_list(s);
  if (v.size() != 2) throw DomainError("expected a pair A,B, got '" + std::string(s) + "'");
  return {v[0], v[1]};
}

std::vector<TermPair> parse_pairs(std::string_view s) {
  std::vector<TermPair> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(';', pos);
    const std::string_view item = s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    if (!item.empty()) out.push_back(parse_pair(item));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  if (out.empty()) throw DomainError("no starting pairs given");
  return out;
}

StepPolicy parse_policy(std::string_view s) {
  if (s == "subprime") return StepPolicy::subprime();
  constexpr std::string_view prefix = "fixed:";
  if (s.starts_with(prefix)) return StepPolicy::fixed_prime(parse_term(s.substr(prefix.size())));
  throw DomainError("unknown policy '" + std::string(s) + "'");
}

Format pick_format(std::string_view name, std::initializer_list<Format> allowed) {
  const Format f = parse_format(name);
  for (Format a : allowed) {
    if (a == f) return f;
  }
  throw DomainError("format '" + std::string(name) + "' is not supported here");
}

template <class T>
std::string join(const std::vector<T>& v, std::string_view sep = ",") {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? sep : "") << v[i];
  return s.str();
}

std::string pair_text(const TermPair& p) { return std::to_string(p.first) + "," + std::to_string(p.second); }

std::string divisors_text(const std::vector<NodeDivisors>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ' ';
    s += "(" + std::to_string(d[i].p) + "," + std::to_string(d[i].q) + ")";
  }
  return s;
}

std::string class_label(const std::string& row) {
  if (row == "trivial" || row == "unknown" || row == "unresolved") return row;
  return row + "-cycle";
}

// Each subcommand fills `action`, which runs after a successful parse.
using Action = std::function<void(std::ostream&)>;

void add_generate(CLI::App& app, Action& action) {
  auto* cmd = app.add_subcommand("generate", "Print the terms of a sequence from a starting pair");
  auto start = std::make_shared<std::string>();
  auto steps = std::make_shared<std::uint64_t>(kDefaultGenerateSteps);
  auto policy = std::make_shared<std::string>("subprime");
  auto format = std::make_shared<std::string>("text");
  cmd->add_option("--start", *start, "Starting pair A,B")->required();
  cmd->add_option("--steps", *steps, "Number of terms after the starting pair")->capture_default_str();
  cmd->add_option("--policy", *policy, "subprime, or fixed:P to divide only by the odd prime P")
      ->capture_default_str();
  cmd->add_option("--format", *format, "text or json")->capture_default_str();
  cmd->callback([=, &action] {
    action = [=](std::ostream& out) {
      const TermPair s = parse_pair(*start);
      const StepPolicy p = parse_policy(*policy);
      const Format f = pick_format(*format, {Format::Text, Format::Json});
      const std::vector<Term> terms = generate(s, *steps, p);
      if (f == Format::Json) {
        out << "[" << join(terms, ", ") << "]\n";
      } else {
        out << join(terms) << '\n';
      }
    };
  });
}

void add_classify(CLI::App& app, Action& action) {
  auto* cmd = app.add_subcommand("classify", "Find the cycle a starting pair falls into");
  auto start = std::make_shared<std::string>();
  auto max_steps = std::make_shared<std::uint64_t>(kDefaultMaxSteps);
  auto format = std::make_shared<std::string>("text");
  cmd->add_option("--start", *start, "Starting pair A,B")->required();
  cmd->add_option("--max-steps", *max_steps, "Give up after this many steps (default 10^6)")->capture_default_str();
  cmd->add_option("--format", *format, "text or json")->capture_default_str();
  cmd->callback([=, &action] {
    action = [=](std::ostream& out) {
      const TermPair s = parse_pair(*start);
      const Format f = pick_format(*format, {Format::Text, Format::Json});
      const Trajectory t = classify(s, *max_steps);
      if (f == Format::Json) {
        out << trajectory_json(t);
        return;
      }
      out << "start: " << pair_text(t.start) << '\n';
      out << "class: " << to_string(t.cycle.cycle_class()) << '\n';
      out << "tail length: " << t.tail_length << '\n';
      out << "cycle length: " << t.cycle.length() << '\n';
      if (t.entry_node) out << "entry node: " << pair_text(*t.entry_node) << '\n';
      out << "cycle: " << join(t.cycle.terms()) << '\n';
    };
  });
}

void add_census(CLI::App& app, Action& action) {
  auto* cmd = app.add_subcommand("census", "Classify every starting pair in [L,H]^2");
  auto lo = std::make_shared<Term>(1);
  auto hi = std::make_shared<Term>(10);
  auto workers = std::make_shared<unsigned>(1);
  auto max_steps = std::make_shared<std::uint64_t>(kDefaultMaxSteps);
  auto format = std::make_shared<std::string>("text");
  cmd->add_option("--min", *lo, "Smallest starting term")->capture_default_str();
  cmd->add_option("--max", *hi, "Largest starting term")->capture_default_str();
  cmd->add_option("--workers", *workers, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
  cmd->add_option("--max-steps", *max_steps, "Per-pair step limit (default 10^6)")->capture_default_str();
  cmd->add_option("--format", *format, "text, csv or json")->capture_default_str();
  cmd->callback([=, &action] {
    action = [=](std::ostream& out) {
      const Format f = pick_format(*format, {Format::Text, Format::Csv, Format::Json});
      CensusOptions opts;
      opts.workers = *workers;
      opts.max_steps = *max_steps;
      const CensusReport r = census(*lo, *hi, opts);
      if (f != Format::Text) {
        out << export_census(r, f);
        return;
      }
      out << "census " << r.lo << ".." << r.hi << " (" << r.total() << " pairs)\n";
      for (const auto& [label, count] : r.rows()) out << class_label(label) << ' ' << count << '\n';
      for (const Cycle& c : r.unknown_cycles) out << "unknown cycle: " << join(c.terms()) << '\n';
      for (const TermPair& p : r.unresolved_pairs) out << "unresolved: " << pair_text(p) << '\n';
    };
  });
}

void add_predecessors(CLI::App& app, Action& action) {
  auto* cmd = app.add_subcommand("predecessors", "List the direct predecessor nodes of a node");
  auto node = std::make_shared<std::string>();
  auto format = std::make_shared<std::string>("text");
  cmd->add_option("--node", *node, "Target node A,B (odd, coprime, positive)")->required();
  cmd->add_option("--format", *format, "text or json")->capture_default_str();
  cmd->callback([=, &action] {
    action = [=](std::ostream& out) {
      const TermPair p = parse_pair(*node);
      const Format f = pick_format(*format, {Format::Text, Format::Json});
      const PredecessorSet set = direct_predecessors(Node::make(p.first, p.second));
      if (f == Format::Json) {
        out << predecessors_json(set);
        return;
      }
      out << "target: " << to_string(set.target) << '\n';
      out << "even links: " << join(set.even_links) << '\n';
      for (const PredecessorBranch& b : set.branches) {
        out << "link " << b.even_link << " (q=" << b.q << ", p=" << b.p << ", x=" << b.last_odd << "):";
        for (const Node& n : b.nodes) out << ' ' << to_string(n);
        out << '\n';
      }
      out << "predecessors: " << set.predecessors.size() << '\n';
    };
  });
}

void add_graph(CLI::App& app, Action& action) {
  auto* cmd = app.add_subcommand("graph", "Node digraph reached from one or more starting pairs");
  auto starts = std::make_shared<std::string>();
  auto max_steps = std::make_shared<std::uint64_t>(kDefaultMaxSteps);
  auto format = std::make_shared<std::string>("dot");
  cmd->add_option("--start", *starts, "Starting pairs A,B[;C,D...]")->required();
  cmd->add_option("--max-steps", *max_steps, "Per-start step limit (default 10^6)")->capture_default_str();
  cmd->add_option("--format", *format, "dot or json")->capture_default_str();
  cmd->callback([=, &action] {
    action = [=](std::ostream& out) {
      const std::vector<TermPair> s = parse_pairs(*starts);
      const Format f = pick_format(*format, {Format::Dot, Format::Json});
      out << export_graph(build_graph(s, *max_steps), f);
    };
  });
}

void add_signature(CLI::App& app, Action& action) {
  auto* cmd = app.add_subcommand("signature", "Signature, run configuration and node divisors of a cycle");
  auto cycle = std::make_shared<std::string>();
  cmd->add_option("--cycle", *cycle, "Cycle terms t1,...,tm")->required();
  cmd->callback([=, &action] {
    action = [=](std::ostream& out) {
      const std::vector<Term> terms = parse_list(*cycle);
      const Signature sig = signature_of(terms);
      out << "signature: " << join(sig.divisors) << '\n';
      if (terms.size() < 2) return;
      const CycleRuns runs = decompose_cycle(terms);
      out << "configuration: " << join(runs.configuration) << '\n';
      out << "divisors: " << divisors_text(runs.divisors) << '\n';
    };
  });
}

void add_solve(CLI::App& app, Action& action) {
  auto* cmd = app.add_subcommand("solve", "Recover the unique candidate cycle for a signature");
  auto signature = std::make_shared<std::string>();
  auto format = std::make_shared<std::string>("text");
  cmd->add_option("--signature", *signature, "Signature s1,...,sm")->required();
  cmd->add_option("--format", *format, "text or json")->capture_default_str();
  cmd->callback([=, &action] {
    action = [=](std::ostream& out) {
      const Signature sig{parse_list(*signature)};
      const Format f = pick_format(*format, {Format::Text, Format::Json});
      const SolveOutcome o = solve_signature(sig);
      if (f == Format::Json) {
        out << solve_json(o, sig);
        return;
      }
      switch (o.kind) {
        case SolveOutcome::Kind::Candidate:
          out << "candidate: " << join(o.candidate->terms) << '\n';
          if (o.candidate->verdict.valid()) out << "valid cycle\n";
          for (const std::string& r : o.candidate->verdict.reasons) out << "Fails: " << r << '\n';
          break;
        case SolveOutcome::Kind::NoSolution:
          out << "no solution: " << o.detail << '\n';
          break;
        case SolveOutcome::Kind::Degenerate:
          out << "degenerate: nullspace of dimension " << o.nullity << '\n';
          break;
      }
    };
  });
}

void add_exhaust(CLI::App& app, Action& action) {
  auto* cmd = app.add_subcommand("exhaust", "Search every run configuration of a cycle length");
  auto length = std::make_shared<int>(0);
  auto bound = std::make_shared<Term>(kDefaultPrimeBound);
  auto workers = std::make_shared<unsigned>(1);
  auto runs = std::make_shared<std::size_t>(0);
  auto format = std::make_shared<std::string>("text");
  cmd->add_option("--length", *length, "Cycle length m")->required()->check(CLI::Range(1, 64));
  cmd->add_option("--prime-bound", *bound, "Largest divisor tried for three or more runs (default 1000)")
      ->capture_default_str();
  cmd->add_option("--workers", *workers, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
  cmd->add_option("--runs", *runs, "Only configurations with this many runs (0 = all)")->capture_default_str();
  cmd->add_option("--format", *format, "text or json")->capture_default_str();
  cmd->callback([=, &action] {
    action = [=](std::ostream& out) {
      const Format f = pick_format(*format, {Format::Text, Format::Json});
      ExhaustOptions opts;
      opts.prime_bound = *bound;
      opts.workers = *workers;
      opts.only_runs = *runs;
      const ExhaustReport r = exhaust_cycles(*length, opts);
      if (f == Format::Json) {
        out << exhaust_json(r);
        return;
      }
      out << "length " << r.length << ", prime bound " << r.prime_bound << '\n';
      for (const ConfigurationReport& c : r.configurations) {
        out << "(" << join(c.configuration.lengths()) << "): ";
        if (c.discarded) {
          out << "discarded, " << *c.discarded << '\n';
          continue;
        }
        out << (c.exact ? "exact" : "bounded") << ", " << c.cases.size() << " cases\n";
        for (const ExhaustCase& e : c.cases) {
          out << "  " << divisors_text(e.divisors) << " -> ";
          out << (e.candidate ? join(e.candidate->terms) : std::string("none"));
          if (e.valid()) out << " | valid";
          for (const std::string& reason : e.failure_reasons) out << " | " << reason;
          out << '\n';
        }
      }
      out << "candidates: " << r.candidate_count() << '\n';
      out << "valid: " << r.valid_count() << '\n';
    };
  });
}

void add_registry(CLI::App& app, Action& action) {
  auto* cmd = app.add_subcommand("registry", "Show the known non-trivial cycles");
  auto id = std::make_shared<Term>(0);
  auto format = std::make_shared<std::string>("text");
  cmd->add_option("--id", *id, "Cycle length; omit to list all");
  cmd->add_option("--format", *format, "text or json")->capture_default_str();
  cmd->callback([=, &action] {
    action = [=](std::ostream& out) {
      const Format f = pick_format(*format, {Format::Text, Format::Json});
      std::vector<const KnownCycle*> chosen;
      if (*id != 0) {
        const KnownCycle* k = find_known_cycle(*id);
        if (k == nullptr) throw DomainError("no known cycle of length " + std::to_string(*id));
        chosen.push_back(k);
      } else {
        for (const KnownCycle& k : registry()) chosen.push_back(&k);
      }
      if (f == Format::Json) {
        out << registry_json(chosen);
        return;
      }
      for (const KnownCycle* k : chosen) {
        if (*id == 0) {
          out << k->id << "-cycle: min " << k->cycle.min_term() << ", max " << k->cycle.max_term() << ", runs "
              << k->runs.configuration.size() << '\n';
          continue;
        }
        out << "cycle: " << join(k->cycle.terms()) << '\n';
        out << "signature: " << join(k->signature.divisors) << '\n';
        out << "configuration: " << join(k->runs.configuration) << '\n';
        out << "divisors: " << divisors_text(k->runs.divisors) << '\n';
        out << "entry node: " << to_string(k->entry_node) << '\n';
        out << "starts:";
        for (const TermPair& s : k->starts) out << ' ' << pair_text(s);
        out << '\n';
      }
    };
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subprime Fibonacci sequences: trajectories, cycles, censuses and searches", "subfib"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.fallthrough(false);

  Action action;
  add_generate(app, action);
  add_classify(app, action);
  add_census(app, action);
  add_predecessors(app, action);
  add_graph(app, action);
  add_signature(app, action);
  add_solve(app, action);
  add_exhaust(app, action);
  add_registry(app, action);
  for (CLI::App* sub : app.get_subcommands({})) sub->footer(kFooter);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  // Buffer so a failing command prints nothing on the result stream.
  std::ostringstream buffer;
  try {
    if (action) action(buffer);
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kExitLimit;
  } catch (const NonterminationSuspected& e) {
    err << "error: " << e.what() << '\n';
    return kExitLimit;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  out << buffer.str();
  return kExitOk;
}

}  // namespace subfib::cli
