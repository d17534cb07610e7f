#pragma once

#include <functional>
#include <vector>

#include "lehmer/int_poly.hpp"

namespace lehmer {

struct QuadratureResult {
  double value = 0;
  double error = 0;
  long evaluations = 0;
  int max_depth = 0;
  bool warning = false;  // target not reached within depth or evaluation budget
};

struct AdaptiveOptions {
  double target = 1e-10;
  int max_depth = 50;
  int base_points = 8;           // equal panels per gap between break points
  long max_evaluations = 4000000;
  /// Optional zero-bracketing test; panels for which it returns true are bisected
  /// up to `pre_depth` times before adaptive refinement starts.
  std::function<bool(double, double)> may_vanish;
  int pre_depth = 8;
};

/// Globally adaptive Gauss-Kronrod 7-15 integration over [0, 1]. `breaks` are extra
/// panel boundaries in (0, 1) (integrand singularities or kinks).
QuadratureResult integrate_unit_interval(const std::function<double(double)>& g, std::vector<double> breaks,
                                         const AdaptiveOptions& opt);

/// Parameters t in [0, 1) of the roots of f lying within `band` of the unit circle
/// (x = e^{2 pi i t}); computed in double precision, best effort.
std::vector<double> circle_root_parameters(const IntPoly& f, double band = 0.1);

}  // namespace lehmer
