#pragma once

namespace subfvm {

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real z.
/// Series summation near the origin, an integral representation on the far
/// negative axis (alpha < 1). Relative accuracy ~1e-10 for alpha in (0, 2],
/// beta in (0, 2], z in [-50, 5]; far-negative z needs alpha < 1.
double mittag_leffler(double alpha, double beta, double z);

/// E_{alpha,1}(z).
double mittag_leffler(double alpha, double z);

}  // namespace subfvm
