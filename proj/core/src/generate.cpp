#include "aontrace/generate.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include "aontrace/rng.hpp"

namespace aontrace {

namespace {

std::string padded_id(const char* prefix, int n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%06d", prefix, n);
  return buf;
}

long long pow_capped(long long base, int exp, long long cap) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v >= cap) return cap;
  }
  return v;
}

struct Builder {
  const GenParams& params;
  SplitMix64 rng;
  Design design;
  int node_counter = 0;
  int segment_counter = 0;
  int pin_counter = 0;

  Builder(const GenParams& p) : params(p), rng(p.seed) {}

  const GenParams::LayerSpec& layer_for_level(int level) const {
    size_t i = std::min<size_t>(level, params.layers.size() - 1);
    return params.layers[i];
  }

  int add_node(double x, double y, const std::string& layer) {
    design.nodes.push_back({padded_id("n", node_counter++), x, y, layer});
    return static_cast<int>(design.nodes.size()) - 1;
  }

  void add_segment(int a, int b, int level) {
    const auto& layer = layer_for_level(level);
    double width =
        rng.range(layer.width_min_tenths, layer.width_max_tenths) / 10.0;
    design.segments.push_back({padded_id("s", segment_counter++),
                               design.nodes[a].id, design.nodes[b].id,
                               layer.name, width, std::nullopt, std::nullopt});
  }

  void add_pin(int node) {
    double size =
        static_cast<double>(rng.range(params.cell_size_min, params.cell_size_max));
    design.pins.push_back(
        {padded_id("u", pin_counter++), design.nodes[node].id, size});
  }

  int child_of(int parent, int level) {
    const auto& node = design.nodes[parent];
    double dx = static_cast<double>(rng.range(3, 15));
    double dy = static_cast<double>(rng.range(-8, 8));
    int child = add_node(node.x + dx, node.y + dy,
                         layer_for_level(level).name);
    add_segment(parent, child, level);
    return child;
  }

  // Places exactly `pins` loads in the subtree below `parent`, never more
  // than `depth_left` levels deep.
  void grow(int parent, int level, int depth_left, int pins) {
    long long child_cap = pow_capped(params.branching, depth_left - 1, 1 << 30);
    int c_min = static_cast<int>((pins + child_cap - 1) / child_cap);
    int c_max = std::min<int>(params.branching, pins);
    int children = static_cast<int>(rng.range(c_min, c_max));

    int remaining = pins;
    for (int i = 0; i < children; ++i) {
      int slots_after = children - i - 1;
      long long lo = std::max<long long>(1, remaining - slots_after * child_cap);
      long long hi = std::min<long long>(child_cap, remaining - slots_after);
      int share = static_cast<int>(rng.range(lo, hi));
      remaining -= share;

      int child = child_of(parent, level);
      if (share == 1 && (depth_left == 1 || rng.bounded(100) < 35)) {
        add_pin(child);
      } else {
        grow(child, level + 1, depth_left - 1, share);
      }
    }
  }

  void add_chord(int tower_first_node, int tower_last_node,
                 std::vector<std::string>& chords) {
    std::unordered_map<std::string, int> index_of;
    for (int i = tower_first_node; i <= tower_last_node; ++i)
      index_of.emplace(design.nodes[i].id, i);
    std::unordered_set<long long> adjacent;
    for (const auto& seg : design.segments) {
      auto a = index_of.find(seg.a);
      auto b = index_of.find(seg.b);
      if (a == index_of.end() || b == index_of.end()) continue;
      adjacent.insert(
          static_cast<long long>(std::min(a->second, b->second)) * 1000000 +
          std::max(a->second, b->second));
    }
    int span = tower_last_node - tower_first_node + 1;
    if (span < 3) return;
    for (int attempt = 0; attempt < 10; ++attempt) {
      int a = tower_first_node + static_cast<int>(rng.bounded(span));
      int b = tower_first_node + static_cast<int>(rng.bounded(span));
      if (a == b) continue;
      long long key = static_cast<long long>(std::min(a, b)) * 1000000 +
                      std::max(a, b);
      if (adjacent.count(key)) continue;
      std::string id = padded_id("c", segment_counter++);
      design.segments.push_back({id, design.nodes[a].id, design.nodes[b].id,
                                 params.layers.front().name, 1.0, std::nullopt,
                                 0.1});
      chords.push_back(id);
      return;
    }
  }
};

}  // namespace

TechFile GenParams::tech() const {
  TechFile tech;
  for (const auto& layer : layers)
    tech.layers.push_back({layer.name, layer.sheet_res, layer.em_limit});
  tech.unit_current = unit_current;
  tech.fanout_limit = fanout_limit;
  tech.default_tap_voltage = default_tap_voltage;
  return tech;
}

GenOutput generate(const GenParams& params) {
  if (params.towers < 1 || params.pins_per_tower < 1 || params.depth < 1 ||
      params.branching < 1) {
    throw Error(ErrorKind::InfeasibleParams,
                "towers, pins, depth and branching must all be >= 1");
  }
  if (params.chord_probability < 0.0 || params.chord_probability > 1.0) {
    throw Error(ErrorKind::InfeasibleParams,
                "chord_probability must lie in [0,1]");
  }
  if (params.layers.empty()) {
    throw Error(ErrorKind::InfeasibleParams, "layer mix must be nonempty");
  }
  long long capacity =
      pow_capped(params.branching, params.depth, 1LL << 40);
  if (capacity < params.pins_per_tower) {
    throw Error(ErrorKind::InfeasibleParams,
                "cannot place " + std::to_string(params.pins_per_tower) +
                    " pins within depth " + std::to_string(params.depth) +
                    " and branching " + std::to_string(params.branching) +
                    " (capacity " + std::to_string(capacity) + ")");
  }

  Builder builder(params);
  char name[96];
  std::snprintf(name, sizeof(name), "gen_t%d_p%d_d%d_b%d_s%llu",
                params.towers, params.pins_per_tower, params.depth,
                params.branching,
                static_cast<unsigned long long>(params.seed));
  builder.design.name = name;

  GenOutput out;
  for (int tower = 0; tower < params.towers; ++tower) {
    int first_node = builder.node_counter;
    int tap = builder.add_node(tower * 1000.0, 0.0,
                               params.layers.front().name);
    builder.design.taps.push_back({builder.design.nodes[tap].id, std::nullopt});
    builder.grow(tap, 0, params.depth, params.pins_per_tower);
    if (builder.rng.unit() < params.chord_probability) {
      builder.add_chord(first_node, builder.node_counter - 1, out.chords);
    }
  }

  out.design = std::move(builder.design);
  out.tech = params.tech();
  return out;
}

Design generate_comb(int a, int teeth_len) {
  if (a < 2) {
    throw Error(ErrorKind::InfeasibleParams,
                "comb needs at least 2 teeth, got " + std::to_string(a));
  }
  if (teeth_len < 1) {
    throw Error(ErrorKind::InfeasibleParams,
                "comb teeth length must be >= 1");
  }

  Design design;
  char name[64];
  std::snprintf(name, sizeof(name), "comb_a%d_l%d", a, teeth_len);
  design.name = name;

  design.nodes.push_back({"t0", 0.0, 0.0, "M1"});
  design.taps.push_back({"t0", std::nullopt});

  char buf[32];
  std::string prev = "t0";
  for (int i = 0; i < a; ++i) {
    std::snprintf(buf, sizeof(buf), "n%03d_00", i);
    std::string trunk = buf;
    design.nodes.push_back({trunk, 10.0 * (i + 1), 0.0, "M1"});
    std::snprintf(buf, sizeof(buf), "st%03d", i);
    design.segments.push_back({buf, prev, trunk, "M1", 1.0, std::nullopt,
                               std::nullopt});
    prev = trunk;

    std::string below = trunk;
    for (int j = 1; j <= teeth_len; ++j) {
      std::snprintf(buf, sizeof(buf), "n%03d_%02d", i, j);
      std::string tooth = buf;
      design.nodes.push_back({tooth, 10.0 * (i + 1), 10.0 * j, "M1"});
      std::snprintf(buf, sizeof(buf), "su%03d_%02d", i, j);
      design.segments.push_back({buf, below, tooth, "M1", 1.0, std::nullopt,
                                 std::nullopt});
      below = tooth;
    }
    std::snprintf(buf, sizeof(buf), "p%03d", i);
    design.pins.push_back({buf, below, 1.0});
  }
  return design;
}

}  // namespace aontrace
