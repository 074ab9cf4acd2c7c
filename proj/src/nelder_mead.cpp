#include "recordstats/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace recordstats {

namespace {
constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0, const NelderMeadOptions& options) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw std::invalid_argument("nelder_mead: empty start point");

  NelderMeadResult result;
  auto eval = [&](std::span<const double> x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<std::vector<double>> simplex(dim + 1, std::vector<double>(x0.begin(), x0.end()));
  for (std::size_t i = 0; i < dim; ++i) {
    simplex[i + 1][i] += options.initial_step;
  }
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), candidate(dim);

  while (result.evaluations < options.max_evaluations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[dim];
    const std::size_t second_worst = order[dim - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= dim; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        diameter = std::max(diameter, std::fabs(simplex[i][d] - simplex[best][d]));
      }
    }
    if (diameter < options.tolerance) {
      result.converged = true;
      break;
    }

    for (std::size_t d = 0; d < dim; ++d) {
      double sum = 0.0;
      for (std::size_t i = 0; i <= dim; ++i) {
        if (i != worst) sum += simplex[i][d];
      }
      centroid[d] = sum / static_cast<double>(dim);
    }

    auto move = [&](double coeff) {
      for (std::size_t d = 0; d < dim; ++d) {
        candidate[d] = centroid[d] + coeff * (centroid[d] - simplex[worst][d]);
      }
    };

    move(kReflect);
    const double reflected = eval(candidate);
    if (reflected < values[best]) {
      std::vector<double> reflected_point = candidate;
      move(kExpand);
      const double expanded = eval(candidate);
      if (expanded < reflected) {
        simplex[worst] = candidate;
        values[worst] = expanded;
      } else {
        simplex[worst] = std::move(reflected_point);
        values[worst] = reflected;
      }
      continue;
    }
    if (reflected < values[second_worst]) {
      simplex[worst] = candidate;
      values[worst] = reflected;
      continue;
    }
    // Contract (outside when the reflection improved on the worst vertex).
    if (reflected < values[worst]) {
      move(kReflect * kContract);
    } else {
      move(-kContract);
    }
    const double contracted = eval(candidate);
    if (contracted < std::min(reflected, values[worst])) {
      simplex[worst] = candidate;
      values[worst] = contracted;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < dim; ++d) {
        simplex[i][d] = simplex[best][d] + kShrink * (simplex[i][d] - simplex[best][d]);
      }
      values[i] = eval(simplex[i]);
    }
  }

  const std::size_t best =
      static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  return result;
}

}  // namespace recordstats
