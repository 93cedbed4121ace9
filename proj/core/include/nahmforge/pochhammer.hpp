#pragma once

#include <vector>

#include "nahmforge/qseries.hpp"

namespace nahmforge {

// (a; q^base)_n = prod_{k=0}^{n-1} (1 - a*q^(base*k)).  Exact polynomial.
// base > 0 (NonPositiveBase); n >= 0 (NegativeLength).
QSeries pochhammer_finite(const Monomial& a, const Rat& base, std::int64_t n);

// (a; q^base)_inf = prod_{k>=0} (1 - a*q^(base*k)) truncated at `prec`.
// base > 0 (NonPositiveBase).  Finitely many factors may carry nonpositive
// argument exponents; the result is then a Laurent series.
QSeries pochhammer_inf(const Monomial& a, const Rat& base, const Rat& prec);

// 1/(a; q^base)_inf to precision `prec` (convenience wrapper).
QSeries inv_pochhammer_inf(const Monomial& a, const Rat& base, const Rat& prec);

// The basic hypergeometric series
//   sum_n  [(a1,...,ar; Q)_n / ((Q; Q)_n (b1,...,bs; Q)_n)]
//          * ((-1)^n Q^(n(n-1)/2))^(1+s-r) * z^n,          Q = q^base,
// truncated at `prec`.  Errors: DivergentSeries when the term valuations stop
// growing; VanishingDenominator when a denominator factor vanishes at a used
// index.
QSeries hyper_phi(const std::vector<Monomial>& numer,
                  const std::vector<Monomial>& denom, const Rat& base,
                  const Monomial& z, const Rat& prec);

}  // namespace nahmforge
