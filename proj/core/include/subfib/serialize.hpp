#pragma once

#include <string>
#include <string_view>

#include "subfib/algebra.hpp"
#include "subfib/atlas.hpp"
#include "subfib/exhaust.hpp"
#include "subfib/registry.hpp"

namespace subfib {

enum class Format { Text, Csv, Json, Dot };

// "text", "csv", "json" or "dot"; throws DomainError otherwise.
Format parse_format(std::string_view name);
std::string_view format_name(Format f);

// Census: csv (header lo,hi,class,count; nonzero classes only) or json.
std::string export_census(const CensusReport& report, Format format);
// Node graph: dot or json.
std::string export_graph(const NodeGraph& graph, Format format);

std::string predecessors_json(const PredecessorSet& set);
std::string exhaust_json(const ExhaustReport& report);
std::string trajectory_json(const Trajectory& trajectory);
std::string solve_json(const SolveOutcome& outcome, const Signature& signature);
std::string registry_json(const std::vector<const KnownCycle*>& cycles);

}  // namespace subfib
