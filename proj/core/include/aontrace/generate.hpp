#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aontrace/design.hpp"

namespace aontrace {

// Synthetic power-switch-tower designs: one tap per tower, fanout-limited
// trees, optional chords for cycle-rejection tests, adversarial combs for
// search-count measurements. Geometry is integer so output is
// byte-identical across runs and platforms.
struct GenParams {
  int towers = 1;
  int pins_per_tower = 4;
  int depth = 3;      // max segments between tap and any pin
  int branching = 3;  // max children per node
  double chord_probability = 0.0;  // per tower
  uint64_t seed = 0;

  // trunk-first layer mix; widths drawn in tenths of um
  struct LayerSpec {
    std::string name;
    double sheet_res;
    double em_limit;
    int width_min_tenths;
    int width_max_tenths;
  };
  std::vector<LayerSpec> layers = {
      {"M3", 0.02, 4.0, 10, 40},
      {"M2", 0.04, 2.0, 5, 20},
      {"M1", 0.08, 1.0, 2, 10},
  };

  int cell_size_min = 1;  // integer cell sizes keep weight sums exact
  int cell_size_max = 8;

  // tech knobs emitted alongside the design
  double unit_current = 0.01;
  int fanout_limit = 64;
  double default_tap_voltage = 0.75;

  TechFile tech() const;
};

struct GenOutput {
  Design design;
  TechFile tech;
  std::vector<std::string> chords;  // segment ids inserted as chords
};

// Deterministic function of (params, seed). With chord_probability 0 every
// component is a tree. Throws InfeasibleParams when pins_per_tower cannot
// fit in branching^depth leaves.
GenOutput generate(const GenParams& params);

// Trunk of `a` teeth with one pin per tooth end, the worst case for the
// per-pin backward search: from any tooth, an adversarial ordering walks
// every other tooth before reaching the tap.
Design generate_comb(int a, int teeth_len);

}  // namespace aontrace
