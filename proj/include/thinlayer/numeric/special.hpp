#pragma once

namespace thinlayer::numeric {

/// Error function by adaptive quadrature of (2/sqrt(pi)) exp(-t^2) on [0, x].
/// Slow; used only to cross-check the library's erf path.
double erf_reference(double x);

}  // namespace thinlayer::numeric
