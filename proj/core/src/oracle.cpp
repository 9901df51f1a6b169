#include "aontrace/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace aontrace {

namespace {

// Dense Ax = b by Gaussian elimination with partial pivoting. Row-major,
// solved in place. Desk-scale components make sparse machinery pointless.
void solve_dense(std::vector<double>& a, std::vector<double>& b, int n) {
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(a[col * n + col]);
    for (int row = col + 1; row < n; ++row) {
      double v = std::abs(a[row * n + col]);
      if (v > best) {
        best = v;
        pivot = row;
      }
    }
    if (!(best > 0.0)) {
      throw Error(ErrorKind::SingularSystem,
                  "conductance system is singular at elimination step " +
                      std::to_string(col));
    }
    if (pivot != col) {
      for (int k = col; k < n; ++k)
        std::swap(a[col * n + k], a[pivot * n + k]);
      std::swap(b[col], b[pivot]);
    }
    double diag = a[col * n + col];
    for (int row = col + 1; row < n; ++row) {
      double factor = a[row * n + col] / diag;
      if (factor == 0.0) continue;
      a[row * n + col] = 0.0;
      for (int k = col + 1; k < n; ++k) a[row * n + k] -= factor * a[col * n + k];
      b[row] -= factor * b[col];
    }
  }
  for (int row = n - 1; row >= 0; --row) {
    double sum = b[row];
    for (int k = row + 1; k < n; ++k) sum -= a[row * n + k] * b[k];
    b[row] = sum / a[row * n + row];
  }
}

}  // namespace

DcSolution solve_dc(const RoutingGraph& graph, int component,
                    const TechFile& tech) {
  const Component& comp = graph.components.at(component);
  if (!comp.traceable()) {
    throw Error(ErrorKind::SingularSystem,
                "component has no tap; no DC operating point exists");
  }

  const int m = static_cast<int>(comp.nodes.size());
  std::vector<int> local(graph.nodes.size(), -1);
  for (int i = 0; i < m; ++i) local[comp.nodes[i]] = i;

  // Unknowns: node voltages (V) plus the source branch current (A).
  const int n = m + 1;
  std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
  std::vector<double> b(n, 0.0);

  for (int seg : comp.segments) {
    const GraphSegment& s = graph.segments[seg];
    double g = 1.0 / s.resistance;
    int u = local[s.a];
    int v = local[s.b];
    a[u * n + u] += g;
    a[v * n + v] += g;
    a[u * n + v] -= g;
    a[v * n + u] -= g;
  }
  const double amps_per_size = tech.unit_current * 1e-3;
  for (int p : comp.pins) {
    const GraphPin& pin = graph.pins[p];
    b[local[pin.node]] -= amps_per_size * pin.cell_size;  // sink draws out
  }
  int tap = local[comp.tap_node];
  a[tap * n + m] = -1.0;  // source current enters the tap node
  a[m * n + tap] = 1.0;   // V(tap) = tap voltage
  b[m] = comp.tap_voltage;

  solve_dense(a, b, n);

  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(b[i])) {
      throw Error(ErrorKind::NumericalError,
                  "non-finite value in DC solution");
    }
  }

  DcSolution solution;
  solution.tap = graph.nodes[comp.tap_node].id;
  solution.tap_current_ma = b[m] * 1e3;
  for (int i = 0; i < m; ++i)
    solution.node_voltage.emplace(graph.nodes[comp.nodes[i]].id, b[i]);

  std::vector<double> current_a(graph.segments.size(), 0.0);
  double max_current = 0.0;
  for (int seg : comp.segments) {
    const GraphSegment& s = graph.segments[seg];
    double i_ab = (b[local[s.a]] - b[local[s.b]]) / s.resistance;
    current_a[seg] = i_ab;
    max_current = std::max(max_current, std::abs(i_ab));
    solution.edge_current.emplace(s.id, i_ab * 1e3);
  }

  // KCL residual at every non-tap node: wire currents must balance the
  // local sink within 1e-9 of the largest branch current.
  std::vector<double> residual(m, 0.0);
  for (int seg : comp.segments) {
    const GraphSegment& s = graph.segments[seg];
    residual[local[s.a]] -= current_a[seg];
    residual[local[s.b]] += current_a[seg];
  }
  for (int p : comp.pins) {
    const GraphPin& pin = graph.pins[p];
    residual[local[pin.node]] -= amps_per_size * pin.cell_size;
  }
  double tolerance = 1e-9 * std::max(max_current, 1e-30);
  for (int i = 0; i < m; ++i) {
    if (i == tap) continue;
    if (std::abs(residual[i]) > tolerance) {
      throw Error(ErrorKind::NumericalError,
                  "KCL residual " + std::to_string(residual[i]) +
                      " A at node '" + graph.nodes[comp.nodes[i]].id + "'");
    }
  }

  for (int p : comp.pins) {
    const GraphPin& pin = graph.pins[p];
    solution.pin_drop.emplace(pin.instance,
                              comp.tap_voltage - b[local[pin.node]]);
  }
  return solution;
}

ViolationIdSet oracle_violations(const DcSolution& solution,
                                 const RoutingGraph& graph,
                                 const TechFile& tech,
                                 const Thresholds& thresholds) {
  ViolationIdSet ids;
  for (const auto& [pin, drop] : solution.pin_drop) {
    if (drop > thresholds.max_drop) ids.insert({ViolationId::Kind::Pin, pin});
  }
  for (const auto& [seg_id, current_ma] : solution.edge_current) {
    int seg = graph.segment_index(seg_id);
    const GraphSegment& segment = graph.segments[seg];
    const LayerTech* layer = tech.find_layer(segment.layer);
    if (!layer) {
      throw Error(ErrorKind::UnknownLayer,
                  "segment '" + seg_id + "' references layer '" +
                      segment.layer + "' not present in tech file");
    }
    double density = std::abs(current_ma) / segment.width;
    if (density > layer->em_limit)
      ids.insert({ViolationId::Kind::Segment, seg_id});
  }
  return ids;
}

}  // namespace aontrace
