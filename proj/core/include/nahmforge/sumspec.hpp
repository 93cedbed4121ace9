#pragma once

#include <optional>
#include <vector>

#include "nahmforge/linalg.hpp"
#include "nahmforge/qseries.hpp"

namespace nahmforge {

// One Pochhammer factor (arg; q^(scale*base))_len inside a sum term, where
//   arg = argCoeff * q^(scale * (argExp0 + sum_i argExpN[i] * n_i))
// and len = len0 + sum_i lenN[i] * n_i, or infinite.
struct PochFactor {
  Rat argCoeff{1};
  Rat argExp0{0};
  RatVector argExpN;
  Rat base{1};
  bool infinite{false};
  Rat len0{0};
  RatVector lenN;
};

// A multi-index q-hypergeometric sum
//   sum_{n in N^k} q^(scale*(n^T Q n + L.n + c)) * prod(numer) / prod(denom).
struct SumSpec {
  std::size_t indices{1};
  Rat scale{1};
  std::vector<RatVector> quad;  // k x k symmetric
  RatVector linear;
  Rat constant{0};
  std::vector<PochFactor> numer;
  std::vector<PochFactor> denom;
};

// Static convergence check: the exponent polynomial must grow along every
// lattice direction (positive-definite quadratic part, or — when the
// quadratic part vanishes — strictly positive linear coefficients).
bool sum_spec_converges(const SumSpec& spec);

// Evaluate the sum to the given precision in the plain variable q.
// Raises DivergenceCheckFailed when the static check fails, NegativeLength
// when a factor length goes negative at an enumerated tuple, and
// VanishingDenominator when a denominator factor evaluates to zero.
QSeries eval_sum_spec(const SumSpec& spec, const Rat& prec);

}  // namespace nahmforge
