#include "thinlayer/branch.hpp"

namespace thinlayer {

std::string to_string(Branch b) {
    switch (b) {
        case Branch::Stable: return "stable";
        case Branch::Unstable: return "unstable";
        case Branch::Tangent: return "tangent";
    }
    return "unknown";
}

}  // namespace thinlayer
