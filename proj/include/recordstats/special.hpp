#pragma once

#include <cstdint>

namespace recordstats {

// log of the binomial coefficient C(n, k), via lgamma for large n.
double log_binomial(std::int64_t n, std::int64_t k);

// Harmonic number H_n = sum_{k=1}^{n} 1/k (exact sum for moderate n,
// asymptotic expansion beyond).
double harmonic_number(std::int64_t n);

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation (double precision for the parameter ranges used here).
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace recordstats
