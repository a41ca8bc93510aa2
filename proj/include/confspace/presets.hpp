#pragma once

#include <string>
#include <vector>

#include "confspace/ce.hpp"

namespace confspace::ce {

// Directory holding presets/*.json; CONFSPACE_DATA overrides the build-time location.
std::string data_dir();

// Named manifolds. Fixed ones are read from data files; families are generated:
//   euclidean-N, punctured-surface-G-B (B >= 1 punctures), closed-surface-G,
//   handlebody-G (open, n = 3), r3-minus-M.
// Fixed: punctured-torus, twice-punctured-plane, solid-torus, s1xr2, cp2-minus-point.
CAlgebra preset(const std::string& name);

// A representative list used by checks that sweep "all presets".
std::vector<std::string> preset_catalog();

}  // namespace confspace::ce
