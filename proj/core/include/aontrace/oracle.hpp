#pragma once

#include <map>
#include <string>

#include "aontrace/analysis.hpp"
#include "aontrace/routing_graph.hpp"

namespace aontrace {

// Exact DC operating point of one component. Loads are ideal current
// sinks of unit_current * cell_size; the tap is an ideal voltage source.
// Drops are measured from the tap, whose own upstream drop is 0 by
// definition.
struct DcSolution {
  std::string tap;  // tap node id
  std::map<std::string, double> node_voltage;  // node id -> V
  std::map<std::string, double> edge_current;  // segment id -> mA, a->b positive
  std::map<std::string, double> pin_drop;      // instance -> V
  double tap_current_ma = 0.0;  // delivered into the component
};

// Nodal equations plus one source current unknown, solved densely by
// Gaussian elimination with partial pivoting. KCL residuals are verified
// before returning. Throws SingularSystem, NumericalError.
DcSolution solve_dc(const RoutingGraph& graph, int component,
                    const TechFile& tech);

// Same classification rules as classify(), applied to the exact solution.
ViolationIdSet oracle_violations(const DcSolution& solution,
                                 const RoutingGraph& graph,
                                 const TechFile& tech,
                                 const Thresholds& thresholds);

}  // namespace aontrace
