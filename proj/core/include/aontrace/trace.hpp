#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aontrace/routing_graph.hpp"

namespace aontrace {

enum class Strategy { Forward, Backward };

std::string_view strategy_name(Strategy strategy);

// Neighbor ordering used by the backward search when it picks its next
// candidate. Forward traversal order is fixed (segment-id order) so
// weights accumulate identically regardless of policy.
//   lex         segment-id order, reproducible default
//   shuffle     seeded per-node shuffle, models arbitrary candidate choice
//   adversarial explores away-from-tap subtrees first, tapward edge last
struct OrderingPolicy {
  enum class Kind { Lex, Shuffle, Adversarial };
  Kind kind = Kind::Lex;
  uint64_t seed = 0;

  static OrderingPolicy lex() { return {}; }
  static OrderingPolicy shuffle(uint64_t seed) {
    return {Kind::Shuffle, seed};
  }
  static OrderingPolicy adversarial() { return {Kind::Adversarial, 0}; }

  // "lex" | "shuffle:SEED" | "adversarial"
  static OrderingPolicy parse(std::string_view text);
  std::string to_string() const;
};

struct TraceResult {
  std::string tap;  // tap node id
  // accumulated downstream load per segment; present only on segments
  // that lie on some tap-to-pin path
  std::map<std::string, double> edge_weight;
  std::map<std::string, double> pin_drop;  // instance -> volts
  // instance -> segment ids ordered tap to pin
  std::map<std::string, std::vector<std::string>> pin_path;
  long long visit_count = 0;  // edge traversals performed by the search
};

// A "visit" is one traversal of a segment into a node being expanded;
// backtracking pops are not counted. Forward needs exactly one visit per
// segment, backward re-explores under its ordering policy.
struct SearchStats {
  Strategy strategy = Strategy::Forward;
  long long edges_in_domain = 0;
  long long visit_count = 0;
  long long pins = 0;
};

// Single pass from the tap, explicit stack, weights accumulated as each
// child subtree completes. Requires a tree component.
TraceResult forward_trace(const RoutingGraph& graph, int component,
                          const TechFile& tech);

// Per-pin search toward the tap, instrumented. Paths come from the
// search itself; weights and drops are then derived by the same
// accumulation and summation order as forward_trace, so the two
// strategies differ only in their SearchStats.
std::pair<TraceResult, SearchStats> backward_trace(const RoutingGraph& graph,
                                                   int component,
                                                   const TechFile& tech,
                                                   const OrderingPolicy& order);

struct TraceRun {
  std::vector<TraceResult> results;  // ordered by tap node id
  SearchStats stats;
};

// All traceable components, optionally in parallel; merge order is by tap
// id regardless of job count.
TraceRun trace_all(const RoutingGraph& graph, const TechFile& tech,
                   Strategy strategy,
                   const OrderingPolicy& order = OrderingPolicy::lex(),
                   int jobs = 1);

}  // namespace aontrace
