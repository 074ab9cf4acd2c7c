#pragma once

#include <functional>
#include <span>
#include <vector>

namespace recordstats {

struct NelderMeadOptions {
  int max_evaluations = 100000;
  double tolerance = 1e-8;     // simplex diameter (inf norm) at convergence
  double initial_step = 0.25;  // per-coordinate displacement of the start simplex
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Downhill simplex minimization of f over unconstrained coordinates.
// f may return +inf to reject a point. Deterministic for a given start.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0, const NelderMeadOptions& options = {});

}  // namespace recordstats
