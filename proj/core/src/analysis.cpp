#include "aontrace/analysis.hpp"

#include <algorithm>
#include <cstdio>

namespace aontrace {

ViolationReport classify(const std::vector<TraceResult>& results,
                         const RoutingGraph& graph, const TechFile& tech,
                         const Thresholds& thresholds) {
  ViolationReport report;

  for (const TraceResult& result : results) {
    for (const auto& [pin, drop] : result.pin_drop) {
      if (drop > thresholds.max_drop)
        report.pin_violations.push_back({pin, drop, thresholds.max_drop});
    }
    for (const auto& [seg_id, weight] : result.edge_weight) {
      int seg = graph.segment_index(seg_id);
      const GraphSegment& segment = graph.segments[seg];
      const LayerTech* layer = tech.find_layer(segment.layer);
      if (!layer) {
        throw Error(ErrorKind::UnknownLayer,
                    "segment '" + seg_id + "' references layer '" +
                        segment.layer + "' not present in tech file");
      }
      double current = tech.unit_current * weight;  // mA, worst case
      double density = current / segment.width;
      if (density > layer->em_limit) {
        report.segment_violations.push_back(
            {seg_id, segment.layer, current, density, layer->em_limit});
      }
    }
  }

  for (const TopologyIssue& issue : check_topology(graph, tech)) {
    if (issue.kind != TopologyIssue::Kind::FanoutExceeded) continue;
    report.fanout_violations.push_back({issue.component_tap,
                                        issue.direct_fanout, issue.pin_count,
                                        issue.limit});
  }

  std::sort(report.pin_violations.begin(), report.pin_violations.end(),
            [](const PinViolation& a, const PinViolation& b) {
              return a.pin < b.pin;
            });
  std::sort(report.segment_violations.begin(), report.segment_violations.end(),
            [](const SegmentViolation& a, const SegmentViolation& b) {
              return a.segment < b.segment;
            });
  std::sort(report.fanout_violations.begin(), report.fanout_violations.end(),
            [](const FanoutViolation& a, const FanoutViolation& b) {
              return a.tap < b.tap;
            });
  return report;
}

ViolationIdSet violation_ids(const ViolationReport& report) {
  ViolationIdSet ids;
  for (const auto& v : report.pin_violations)
    ids.insert({ViolationId::Kind::Pin, v.pin});
  for (const auto& v : report.segment_violations)
    ids.insert({ViolationId::Kind::Segment, v.segment});
  return ids;
}

std::string ComparisonMetrics::accuracy_percent() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", accuracy * 100.0);
  return buf;
}

ComparisonMetrics compare(const ViolationIdSet& reference,
                          const ViolationIdSet& candidate) {
  if (reference.empty()) {
    throw Error(ErrorKind::EmptyReference,
                "accuracy is undefined for an empty reference violation set");
  }
  ComparisonMetrics metrics;
  metrics.reference_count = static_cast<long long>(reference.size());
  metrics.candidate_count = static_cast<long long>(candidate.size());
  for (const ViolationId& id : candidate)
    if (!reference.count(id)) ++metrics.false_positive;
  for (const ViolationId& id : reference)
    if (!candidate.count(id)) ++metrics.missing_positive;
  metrics.accuracy =
      static_cast<double>(metrics.reference_count - metrics.missing_positive) /
      static_cast<double>(metrics.reference_count);
  return metrics;
}

}  // namespace aontrace
