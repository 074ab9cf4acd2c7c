#pragma once

#include <cstdint>

#include "recordstats/distribution.hpp"
#include "recordstats/records.hpp"

namespace recordstats::analytics {

// --- i.i.d. sequences ------------------------------------------------------

// Record rate of i.i.d. variables at step n (step 0 is the first entry): 1/(n+1).
double iid_rate(std::int64_t n);

// Mean record number up to step n: the exact harmonic sum H_{n+1}.
// Asymptotically ln(n) + Euler-Mascheroni.
double iid_mean_records(std::int64_t n);

// --- symmetric random walks ------------------------------------------------

// Exact universal record rate (= survival probability) C(2n,n) 4^{-n}.
double rw_rate_exact(std::int64_t n);
double rw_rate_asymptotic(std::int64_t n);  // 1/sqrt(pi n)

// Exact mean record number 1 + sum_{k=1}^{n} C(2k,k) 4^{-k}.
double rw_mean_records_exact(std::int64_t n);
double rw_mean_records_asymptotic(std::int64_t n);  // sqrt(4n/pi)

// --- biased Gaussian walks, small-drift regime (c sqrt(n) << sigma) --------

struct BiasedSmallDrift {
  double rate = 0.0;            // large-n form 1/sqrt(pi n) +- c/(sqrt(2) sigma)
  double rate_arctan = 0.0;     // pre-asymptotic arctan variant
  double mean_records = 0.0;    // 2 sqrt(n/pi) +- c n/(sqrt(2) sigma)
  double validity_ratio = 0.0;  // c sqrt(n)/sigma; the formulas need << 1
  bool valid = false;           // validity_ratio <= 0.5
};

BiasedSmallDrift biased_small_drift(std::int64_t n, double c, double sigma,
                                    Direction d = Direction::kUpper);

// Asymptotic mean record number of the biased Gaussian walk for c > 0:
// n * exp(-sum_{k>=1} erfc(c sqrt(k) / (sigma sqrt(2)))/(2k)).
double biased_mean_records_erfc_sum(std::int64_t n, double c, double sigma);

// --- AR(1), conjectured small-(1-alpha) forms -------------------------------

// exp(-n(1-alpha)/pi) / sqrt(pi n). Conjecture, good for n(1-alpha) small.
double ar1_rate_conjecture(std::int64_t n, double alpha);

// Mean record number with the prefactor exactly as printed, 2 sqrt(n)/pi.
double ar1_mean_records_conjecture(std::int64_t n, double alpha);

// Variant with the prefactor 2 sqrt(n/pi) that reduces to the symmetric-walk
// asymptotic at alpha = 1 (the printed prefactor does not).
double ar1_mean_records_conjecture_consistent(std::int64_t n, double alpha);

// --- ensembles of N walkers --------------------------------------------------

double ensemble_mean_records(std::int64_t n, std::int64_t N);  // 2 sqrt(n ln N)
double ensemble_rate(std::int64_t n, std::int64_t N);          // sqrt(ln N / n)

// --- assorted closed forms ---------------------------------------------------

// Record-number growth exponent of the driftful Cauchy walk:
// <R_n> ~ n^Theta(c) with Theta(c) = 1/2 + arctan(c)/pi.
double cauchy_drift_exponent(double c);

// Mean windowed first-passage time of the symmetric walk, sqrt(N/pi).
double fpt_symmetric(std::int64_t window);

// Next-step conditional record probability of a weakly biased walk:
// 1/2 + f(0) c.
double conditional_prob_biased(double c, const DistributionSpec& jump);

// Half-Gaussian record-number pmf of the symmetric walk:
// P[R_n = m] ~ exp(-m^2/(4n)) / sqrt(n pi), m in [1, n].
double pmf_half_gaussian(std::int64_t m, std::int64_t n);

}  // namespace recordstats::analytics
