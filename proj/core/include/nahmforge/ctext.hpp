#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nahmforge/qseries.hpp"

namespace nahmforge {

// A Laurent polynomial in y whose coefficients are q-series: strata y^lo..y^hi.
struct BivLaurent {
  std::int64_t lo{0};
  std::int64_t hi{0};
  std::vector<QSeries> coeffs;  // coeffs[i] multiplies y^(lo+i)
  Rat qprec{0};

  const QSeries& at(std::int64_t stratum) const;
};

// Theta-style factor: sum over n in [lo,hi] of term(n) * y^n, where term(n)
// is a monomial in q (terms at or above qprec are dropped).
BivLaurent biv_from_theta(const std::function<Monomial(std::int64_t)>& term,
                          std::int64_t lo, std::int64_t hi, const Rat& qprec);

// (c y^p; q^base)_inf and 1/(c y^p; q^base)_inf expanded stratum-wise over
// the window [lo,hi] (p != 0; the inverse needs c's q-exponent positive).
BivLaurent biv_poch_inf(const Monomial& c, std::int64_t p, const Rat& base,
                        std::int64_t lo, std::int64_t hi, const Rat& qprec);
BivLaurent biv_inv_poch_inf(const Monomial& c, std::int64_t p, const Rat& base,
                            std::int64_t lo, std::int64_t hi, const Rat& qprec);

// Product, clamped to the window [lo,hi].
BivLaurent biv_mul(const BivLaurent& a, const BivLaurent& b, std::int64_t lo,
                   std::int64_t hi);

// Constant-term extraction: the y^0 stratum. Raises DegreeNotAttested when
// the window does not contain stratum 0.
QSeries ct_y(const BivLaurent& f);

// F(u,v,w,t; q^2), the four-variable theta-quotient constant term
//   CT_y [ (-quy, -qv/y, -qw/y, -qt/y; q^2)_inf (-qy, -q/y, q^2; q^2)_inf
//          / (wt/y^2; q^2)_inf ],
// evaluated by widening the y-window until the answer stabilises.
QSeries ct_f_eval(const Monomial& u, const Monomial& v, const Monomial& w,
                  const Monomial& t, const Rat& prec);

// The same constant term with the w,t factors folded through an inner
// constant-term layer in a second variable x:
//   CT_y [ (-quy, -qv/y; q^2)_inf (-qy, -q/y, q^2; q^2)_inf G(y) ],
//   G(y) = CT_x [ (-qx, -q/x, q^2; q^2)_inf / ((wx/y; q^2)_inf (t/(xy); q^2)_inf) ]
// where the x-layer is resolved stratum-by-stratum against the x-theta.
QSeries ct_f_eval_double(const Monomial& u, const Monomial& v,
                         const Monomial& w, const Monomial& t,
                         const Rat& prec);

}  // namespace nahmforge
