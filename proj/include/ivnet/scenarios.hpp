// Built-in in-vehicle networks, their worked-bound fixtures and golden tables.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ivnet/model.hpp"
#include "ivnet/propagate.hpp"
#include "ivnet/sim.hpp"

namespace ivnet {

/// Small topology whose propagation reproduces one hand derivation: every
/// bracketed cross-traffic term becomes a flow sharing a first-stage queue.
struct Fixture {
  std::string name;
  std::string purpose;
  Topology topology;
  Partition groups;
};

enum class Quantity { delay, storage, burst };
enum class GoldenKind {
  rendered,  // |computed - printed| < one unit of the last printed digit
  relative,  // |computed - printed| <= tolerance * printed
  upper,     // computed <= printed
};

std::string_view to_string(Quantity q);
std::string_view to_string(GoldenKind k);

/// weight * (delay | storage of `link`, or burst of `group` on `link`).
struct GoldenTerm {
  std::string fixture;  // empty: the scenario topology itself
  std::string link;
  Quantity quantity = Quantity::delay;
  std::string group;
  Rational weight = 1;
};

struct GoldenRow {
  std::string key;
  int criterion = 0;  // acceptance criterion this row backs; 0 for supporting rows
  Mode mode = Mode::exact;
  std::string label;
  Quantity quantity = Quantity::delay;  // of the sum (burst and storage are bits)
  std::vector<GoldenTerm> terms;
  Rational printed;  // seconds or bits
  std::string printed_text;
  Rational resolution;  // one unit of the last printed digit
  GoldenKind kind = GoldenKind::rendered;
  Rational tolerance;  // relative rows only
  std::string citation;
};

struct ScenarioBundle {
  std::string name;
  Topology topology;
  Partition groups;
  std::vector<ShapedSource> sources;
  std::vector<Fixture> fixtures;
  std::vector<GoldenRow> golden;
  std::vector<std::string> reference_route;  // slow bridge to slow bridge, across zones
  std::vector<std::string> notes;            // discrepancies kept visible, not reconciled

  const Fixture& fixture(std::string_view name) const;
};

/// Four zones; per zone 4 fast switches with 10 slow devices each, 4 fast
/// devices, one zone core switch; a central core switch and processor.
ScenarioBundle network1();
/// Same structure with the slower downstream links and slow-only processor
/// traffic toward the fast devices.
ScenarioBundle network2();
ScenarioBundle scenario_by_name(std::string_view name);  // "network1" | "network2"
std::vector<std::string> scenario_names();

/// The scenario with slow flows removed.
Topology fast_network(const ScenarioBundle& bundle);

/// "(1)".."(11)" for scenario link ids such as "l9.z1.f0"; empty otherwise.
std::string link_class(std::string_view link_id);

struct GoldenResult {
  const GoldenRow* row = nullptr;
  Rational computed;
  bool pass = false;
  Rational deviation;  // computed - printed, relative for relative rows
};

/// Evaluates every row (optionally only those in `mode`) against fresh analyses
/// of the scenario and its fixtures.
std::vector<GoldenResult> evaluate_golden(const ScenarioBundle& bundle, std::optional<Mode> mode = {});

/// Same, taking the scenario's own analysis from `report`. Throws ModelError
/// when the report does not describe the scenario's topology.
std::vector<GoldenResult> evaluate_golden(const ScenarioBundle& bundle, const AnalysisReport& report);

/// Side-by-side computed / printed table with verdicts and citations.
std::string render_golden(const std::vector<GoldenResult>& results);
std::string render_report(const AnalysisReport& report, const ScenarioBundle& bundle);

bool all_pass(const std::vector<GoldenResult>& results);

}  // namespace ivnet
