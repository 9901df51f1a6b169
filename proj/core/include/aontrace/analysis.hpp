#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "aontrace/routing_graph.hpp"
#include "aontrace/trace.hpp"

namespace aontrace {

struct Thresholds {
  double max_drop = 0.0;  // volts; EM limits come per-layer from the tech file
};

struct PinViolation {
  std::string pin;   // instance id
  double drop = 0.0;
  double threshold = 0.0;
};

struct SegmentViolation {
  std::string segment;
  std::string layer;
  double current_ma = 0.0;
  double density = 0.0;  // mA per um of width
  double limit = 0.0;
};

struct FanoutViolation {
  std::string tap;
  int direct_fanout = 0;
  int pin_count = 0;
  int limit = 0;
};

struct ViolationReport {
  std::vector<PinViolation> pin_violations;          // sorted by pin id
  std::vector<SegmentViolation> segment_violations;  // sorted by segment id
  std::vector<FanoutViolation> fanout_violations;    // sorted by tap id

  size_t total() const {
    return pin_violations.size() + segment_violations.size() +
           fanout_violations.size();
  }
};

// Thresholds are strict: a value exactly at its limit does not violate.
// Pin: drop > max_drop. Segment: unit_current * weight / width > em_limit.
// Fanout entries come from check_topology.
ViolationReport classify(const std::vector<TraceResult>& results,
                         const RoutingGraph& graph, const TechFile& tech,
                         const Thresholds& thresholds);

// Stable key for set comparison across tools: pin instance or segment id.
struct ViolationId {
  enum class Kind { Pin, Segment };
  Kind kind = Kind::Pin;
  std::string id;

  auto operator<=>(const ViolationId&) const = default;
};

using ViolationIdSet = std::set<ViolationId>;

// Electrical violations only; fanout is topological and identical for
// every estimator, so it stays out of the comparison.
ViolationIdSet violation_ids(const ViolationReport& report);

struct ComparisonMetrics {
  long long reference_count = 0;
  long long candidate_count = 0;
  long long false_positive = 0;    // candidate \ reference
  long long missing_positive = 0;  // reference \ candidate
  double accuracy = 0.0;           // (reference - missing) / reference

  // one decimal, matching the report presentation, e.g. "83.3"
  std::string accuracy_percent() const;
};

// Throws EmptyReference when the reference set is empty.
ComparisonMetrics compare(const ViolationIdSet& reference,
                          const ViolationIdSet& candidate);

}  // namespace aontrace
