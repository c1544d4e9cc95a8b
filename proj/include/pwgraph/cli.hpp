#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pwgraph/graph.hpp"
#include "pwgraph/sampling.hpp"

namespace pwgraph::cli {

/// A graph plus the generator it came from. `dims` is set for tori.
struct GraphSource {
  Graph graph;
  std::string kind;  // cycle, path, torus, file
  std::vector<std::size_t> dims;
};

/// cycle:m, path:m, torus:m1xm2[x...], file:<path>.
GraphSource parse_graph(std::string_view spec);

struct RemovalPart {
  VertexSet set;
  std::string shape;  // segment, solid, list
  std::optional<std::size_t> segment_length;
  std::vector<std::size_t> solid_dims;
};

struct Removal {
  VertexSet set;
  std::vector<RemovalPart> parts;
};

/// segment:N[@start], segments:CxN, solid:N1xN2[@r,c], list:v1,v2,...
/// joined with '+'. Parts placed by segments:CxN must have disjoint closures.
Removal parse_removal(const GraphSource& g, std::string_view spec);

struct ExperimentConfig {
  std::string command;  // spectrum, lambda, spline, reconstruct, uniqueness, gen
  std::string graph;
  std::string remove;
  std::string at;  // constraint set for `spline`, same grammar as `remove`
  std::vector<double> values;
  /// Observed values on U = V \ S for `reconstruct`; when set, no ground
  /// truth is synthesized and the trace carries bounds only.
  std::filesystem::path samples;
  double omega = 0.0;
  std::optional<double> eps;  // empty means automatic
  double eps_floor = 1.0;
  double order = 2.0;
  unsigned l_max = 6;
  std::uint64_t seed = 0;
  unsigned trials = 1;
  unsigned parallel_trials = 1;
  bool with_basis = false;
  std::filesystem::path out_dir = ".";
  std::filesystem::path out;  // edge-list target for `gen`; stdout when empty
};

/// Merges a JSON object into `config`. Keys mirror the long flag names with
/// '-' replaced by '_'. Throws ConfigInvalid on unknown keys or bad types.
void apply_json(ExperimentConfig& config, std::string_view text);

/// Throws ConfigInvalid when required fields are missing or out of range.
void validate(const ExperimentConfig& config);

/// Executes one subcommand. Returns 0 on success, 1 on validation errors and
/// 2 on numerical failures; the error is written to `err`.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Command-line entry point.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pwgraph::cli
