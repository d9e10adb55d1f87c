// Topology documents (YAML) and machine-readable reports (JSON).
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ivnet/freerider.hpp"
#include "ivnet/model.hpp"
#include "ivnet/propagate.hpp"
#include "ivnet/scenarios.hpp"
#include "ivnet/sim.hpp"
#include "ivnet/tree.hpp"

namespace ivnet {

/// Syntax or structure error at a 1-based line/column of the document.
class ParseError : public ModelError {
 public:
  ParseError(std::string message, int line, int column, std::string token);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  int line_, column_;
  std::string token_;
};

/// "512", "2.4G", "10Mb", "1e7", "3/2", "12 kb", "2Mbps", "5 Gb/s".
/// Suffixes k, M, G scale by powers of 1000; b, bps and b/s are optional.
Rational parse_quantity(std::string_view text);

struct TopologyDocument {
  Topology topology;
  std::optional<Partition> groups;
};

/// Top-level keys nodes, links, flows and optional groups (group -> flow ids).
/// Semantic problems are left to validate_topology.
TopologyDocument parse_document(std::string_view text);
Topology parse_topology_document(std::string_view text);

/// Exact values: integers as plain numbers, other rationals as "p/q".
std::string export_document(const Topology& topology, const Partition* groups = nullptr);

/// Every rational is written as {"exact": "p/q", "approx": double}.
std::string report_to_json(const AnalysisReport& report);
/// Throws ModelError for malformed input.
AnalysisReport report_from_json(std::string_view text);

std::string sim_to_json(const SimResult& result, const ComplianceReport& compliance);
std::string tree_to_json(const InfluenceTree& tree, const Bits& leaf_bound, const Bits& refined_bound);
std::string free_rider_to_json(const FreeRiderReport& report);
std::string golden_to_json(const std::vector<GoldenResult>& results);

}  // namespace ivnet
