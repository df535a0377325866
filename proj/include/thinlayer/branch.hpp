#pragma once

#include <string>

namespace thinlayer {

/// Stability label of a point on a load curve: Stable where the inverted
/// curve rises with contact size, Unstable where it falls, Tangent at a
/// double root (the pull-off point under force control).
enum class Branch { Stable, Unstable, Tangent };

std::string to_string(Branch b);

}  // namespace thinlayer
