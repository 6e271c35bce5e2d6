#include "subfib/atlas.hpp"

#include <algorithm>
#include <set>

#include "subfib/error.hpp"

namespace subfib {

bool NodeGraph::contains(const Node& n) const {
  return std::find(vertices.begin(), vertices.end(), n) != vertices.end();
}

NodeGraph build_graph(const std::vector<TermPair>& starts, std::uint64_t max_steps) {
  NodeGraph graph;
  std::set<Node> seen;
  auto add_vertex = [&](const Node& n) {
    if (seen.insert(n).second) graph.vertices.push_back(n);
  };
  for (const TermPair& start : starts) {
    const Trajectory traj = classify(start, max_steps);
    if (traj.cycle.is_trivial()) {
      graph.skipped.push_back(start);
      continue;
    }
    // Twice around the cycle so every cycle node gets its outgoing arc.
    const std::size_t steps = traj.tail_length + 2 * traj.cycle.length() + 2;
    const std::vector<Term> terms = generate(start, steps);
    const std::vector<Run> runs = decompose_runs(terms);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      add_vertex(runs[i].node);
      if (i + 1 == runs.size()) break;
      if (runs[i + 1].offset != runs[i].offset + static_cast<std::size_t>(runs[i].k)) continue;
      const Arc arc{runs[i + 1].node, runs[i].k};
      auto [it, inserted] = graph.arcs.emplace(runs[i].node, arc);
      if (!inserted && !(it->second == arc)) {
        throw Error("node " + to_string(runs[i].node) + " has two different successors");
      }
    }
  }
  return graph;
}

}  // namespace subfib
