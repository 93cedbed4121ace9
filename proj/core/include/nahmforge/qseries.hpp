#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nahmforge/rational.hpp"

namespace nahmforge {

// Truncated Laurent series in q^(1/denomD) with exact rational coefficients.
//
// Stored exponents are k/denomD for integers k in [minExp, minExp + size).
// `precision` (if set) attests every exponent strictly below it: absent
// coefficients below precision are exactly zero, coefficients at or above
// precision are unknown.  An unset precision marks an exact series (a Laurent
// polynomial): all absent coefficients are zero.
class QSeries {
 public:
  QSeries();  // exact zero

  // coeffs[i] is the coefficient of q^((minExp+i)/denomD).  Terms at or above
  // `precision` are dropped on construction.
  QSeries(std::int64_t denomD, std::int64_t minExp, std::vector<Rat> coeffs,
          std::optional<Rat> precision);

  static QSeries zero() { return QSeries(); }
  static QSeries one();
  static QSeries q();  // the series q^1, exact
  static QSeries monomial(const Rat& coeff, const Rat& exponent);
  static QSeries monomial(const Monomial& m);
  // Zero series attested up to `precision`.
  static QSeries zero_to(const Rat& precision);

  std::int64_t denom() const { return denomD_; }
  const std::optional<Rat>& precision() const { return precision_; }
  bool is_exact() const { return !precision_.has_value(); }

  // True if no stored coefficient is nonzero.
  bool is_zero() const;
  // Lowest / highest exponent with a nonzero stored coefficient.
  std::optional<Rat> min_exponent() const;
  std::optional<Rat> max_exponent() const;

  // Coefficient of q^exponent.  Returns 0 for attested-absent exponents;
  // throws DegreeNotAttested for exponents at or above the precision.
  Rat coeff(const Rat& exponent) const;

  // Sorted "exponent: coefficient" lines, nonzero coefficients only.
  std::string dump() const;

  // Pairs (exponent, coefficient) for nonzero stored coefficients, ascending.
  std::vector<std::pair<Rat, Rat>> items() const;

  // --- internal access for the arithmetic kernels ---
  std::int64_t min_index() const { return minExp_; }
  const std::vector<Rat>& raw() const { return coeffs_; }

 private:
  void normalize();

  std::int64_t denomD_ = 1;   // exponent lattice denominator, > 0
  std::int64_t minExp_ = 0;   // numerator of the lowest stored exponent
  std::vector<Rat> coeffs_;   // dense from minExp_
  std::optional<Rat> precision_;  // nullopt = exact
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries neg(const QSeries& a);
QSeries mul(const QSeries& a, const QSeries& b);
QSeries mul_scalar(const QSeries& a, const Rat& c);

// Multiplicative inverse.  The input must have a nonzero leading term within
// its precision (ZeroLeadingTerm otherwise).  An exact input must be a single
// monomial — inverting an exact non-monomial series has no finite
// representation; truncate first or use the two-argument overload.
QSeries inv(const QSeries& a);
QSeries inv(const QSeries& a, const Rat& prec);  // truncates, then inverts

// q -> q^s for s > 0 (NonPositivePower otherwise); precision scales by s.
QSeries substitute_power(const QSeries& a, const Rat& s);

// Caps the precision at `prec`, dropping coefficients at or above it.
QSeries truncate(const QSeries& a, const Rat& prec);

// a^n for integer n (negative uses inv; InvalidArgument rules follow inv).
QSeries pow_int(const QSeries& a, std::int64_t n);

// Smallest exponent, below both precisions, where the two series differ;
// nullopt when they agree on the whole jointly attested range.
std::optional<Rat> first_difference(const QSeries& a, const QSeries& b);

// True when the series agree at every exponent < prec.  Requires both
// attested to at least prec (DegreeNotAttested otherwise).
bool equal_to_precision(const QSeries& a, const QSeries& b, const Rat& prec);

}  // namespace nahmforge
