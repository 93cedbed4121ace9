#include "nahmforge/ctext.hpp"

#include <cmath>

#include "nahmforge/pochhammer.hpp"

namespace nahmforge {

namespace {

const QSeries kZero{};

QSeries mono(const Monomial& m) { return QSeries::monomial(m.coeff, m.exponent); }

BivLaurent biv_blank(std::int64_t lo, std::int64_t hi, const Rat& qprec) {
  BivLaurent f;
  f.lo = lo;
  f.hi = hi;
  f.qprec = qprec;
  f.coeffs.assign(static_cast<std::size_t>(hi - lo + 1),
                  QSeries::zero_to(qprec));
  return f;
}

std::int64_t window_radius(const Rat& prec) {
  double p = prec.convert_to<double>();
  if (p < 1) p = 1;
  return static_cast<std::int64_t>(std::ceil(std::sqrt(p))) + 4;
}

}  // namespace

const QSeries& BivLaurent::at(std::int64_t stratum) const {
  if (stratum < lo || stratum > hi) return kZero;
  return coeffs[static_cast<std::size_t>(stratum - lo)];
}

BivLaurent biv_from_theta(const std::function<Monomial(std::int64_t)>& term,
                          std::int64_t lo, std::int64_t hi, const Rat& qprec) {
  BivLaurent f = biv_blank(lo, hi, qprec);
  for (std::int64_t n = lo; n <= hi; ++n) {
    Monomial m = term(n);
    if (m.coeff == 0 || m.exponent >= qprec) continue;
    f.coeffs[static_cast<std::size_t>(n - lo)] =
        add(QSeries::zero_to(qprec), mono(m));
  }
  return f;
}

BivLaurent biv_poch_inf(const Monomial& c, std::int64_t p, const Rat& base,
                        std::int64_t lo, std::int64_t hi, const Rat& qprec) {
  if (p == 0) raise("DomainError", "stratified factor needs a nonzero y power");
  if (base <= 0) raise("NonPositiveBase", "Pochhammer base must be positive");
  BivLaurent f = biv_blank(lo, hi, qprec);
  for (std::int64_t i = 0;; ++i) {
    std::int64_t stratum = p * i;
    if (p > 0 ? stratum > hi : stratum < lo) break;  // strata monotone in i
    Rat val = c.exponent * i + base * (i * (i - 1) / 2);
    Rat valNext = c.exponent * (i + 1) + base * ((i + 1) * i / 2);
    if (val >= qprec && valNext > val) break;  // past the valuation vertex
    if (stratum >= lo && stratum <= hi && val < qprec) {
      Monomial m = monomial_pow(c, i);
      m.exponent += base * (i * (i - 1) / 2);
      if (i % 2 != 0) m.coeff = -m.coeff;
      QSeries coeff = mul(mono(m), inv(pochhammer_finite(Monomial{Rat(1), base},
                                                         base, i),
                                       qprec - m.exponent));
      f.coeffs[static_cast<std::size_t>(stratum - lo)] =
          add(QSeries::zero_to(qprec), coeff);
    }
  }
  return f;
}

BivLaurent biv_inv_poch_inf(const Monomial& c, std::int64_t p, const Rat& base,
                            std::int64_t lo, std::int64_t hi,
                            const Rat& qprec) {
  if (p == 0) raise("DomainError", "stratified factor needs a nonzero y power");
  if (base <= 0) raise("NonPositiveBase", "Pochhammer base must be positive");
  BivLaurent f = biv_blank(lo, hi, qprec);
  for (std::int64_t i = 0;; ++i) {
    std::int64_t stratum = p * i;
    if (p > 0 ? stratum > hi : stratum < lo) break;
    Rat val = c.exponent * i;
    if (c.exponent > 0 && val >= qprec) break;
    if (stratum >= lo && stratum <= hi && val < qprec) {
      Monomial m = monomial_pow(c, i);
      QSeries coeff = mul(mono(m), inv(pochhammer_finite(Monomial{Rat(1), base},
                                                         base, i),
                                       qprec - m.exponent));
      f.coeffs[static_cast<std::size_t>(stratum - lo)] =
          add(QSeries::zero_to(qprec), coeff);
    }
  }
  return f;
}

BivLaurent biv_mul(const BivLaurent& a, const BivLaurent& b, std::int64_t lo,
                   std::int64_t hi) {
  Rat qprec = a.qprec < b.qprec ? a.qprec : b.qprec;
  BivLaurent f = biv_blank(lo, hi, qprec);
  for (std::int64_t i = a.lo; i <= a.hi; ++i) {
    const QSeries& ca = a.at(i);
    if (ca.is_zero()) continue;
    auto va = ca.min_exponent();
    for (std::int64_t j = b.lo; j <= b.hi; ++j) {
      std::int64_t s = i + j;
      if (s < lo || s > hi) continue;
      const QSeries& cb = b.at(j);
      if (cb.is_zero()) continue;
      // Every term of the product -- including anything hidden above either
      // factor's attested range -- has exponent at least va + vb, so a pair
      // clearing the window precision contributes nothing below it and can
      // be dropped exactly.  Folding such pairs in would only erode the
      // attested range of the stratum.
      auto vb = cb.min_exponent();
      if (va && vb && *va + *vb >= qprec) continue;
      auto& slot = f.coeffs[static_cast<std::size_t>(s - lo)];
      slot = add(slot, truncate(mul(ca, cb), qprec));
    }
  }
  return f;
}

QSeries ct_y(const BivLaurent& f) {
  if (f.lo > 0 || f.hi < 0)
    raise("DegreeNotAttested", "window does not contain the constant stratum");
  return f.at(0);
}

namespace {

// One evaluation of the single-CT form at window radius W, with the variable
// shifted y -> q^k y (a constant-term invariant) so that the inverse factor
// (wt q^(-2k) / y^2; q^2)_inf has positive q-valuation.
QSeries ct_single_at(const Monomial& u, const Monomial& v, const Monomial& w,
                     const Monomial& t, std::int64_t k, std::int64_t W,
                     const Rat& qprec) {
  const std::int64_t lo = -W, hi = W;
  auto poch = [&](const Monomial& arg, std::int64_t p) {
    Monomial c{-arg.coeff, arg.exponent};
    return biv_poch_inf(c, p, Rat(2), lo, hi, qprec);
  };
  // (-q^(1+k) u y; q^2)
  BivLaurent prod = poch(Monomial{u.coeff, u.exponent + 1 + k}, 1);
  // (-q^(1-k) v / y; q^2), (-q^(1-k) w / y; q^2), (-q^(1-k) t / y; q^2)
  prod = biv_mul(prod, poch(Monomial{v.coeff, v.exponent + 1 - k}, -1), lo, hi);
  prod = biv_mul(prod, poch(Monomial{w.coeff, w.exponent + 1 - k}, -1), lo, hi);
  prod = biv_mul(prod, poch(Monomial{t.coeff, t.exponent + 1 - k}, -1), lo, hi);
  // (-q^(1+k) y, -q^(1-k)/y, q^2; q^2) = sum_n y^n q^(n^2 + k n)
  BivLaurent theta = biv_from_theta(
      [k](std::int64_t n) { return Monomial{Rat(1), Rat(n * n + k * n)}; }, lo,
      hi, qprec);
  prod = biv_mul(prod, theta, lo, hi);
  Monomial wt = w * t;
  wt.exponent -= 2 * k;
  prod = biv_mul(prod, biv_inv_poch_inf(wt, -2, Rat(2), lo, hi, qprec), lo, hi);
  return ct_y(prod);
}

QSeries widen_until_stable(
    const std::function<QSeries(std::int64_t)>& eval, std::int64_t W0,
    const Rat& prec) {
  QSeries prev = eval(W0);
  for (std::int64_t W = W0 + 2; W <= W0 + 40; W += 2) {
    QSeries next = eval(W);
    if (equal_to_precision(prev, next, prec)) return truncate(next, prec);
    prev = next;
  }
  raise("DegreeNotAttested", "constant term did not stabilise under widening");
}

// Negative-valuation strata erode the attested range of the window products,
// so the working precision carries a guard margin; when the collapse outruns
// the margin the whole evaluation is repeated with a larger one.
QSeries with_guard_margin(const std::function<QSeries(const Rat&)>& eval) {
  for (int margin = 8;; margin *= 2) {
    try {
      return eval(Rat(margin));
    } catch (const Error& e) {
      if (margin >= 64 || e.kind() != std::string("DegreeNotAttested")) throw;
    }
  }
}

}  // namespace

QSeries ct_f_eval(const Monomial& u, const Monomial& v, const Monomial& w,
                  const Monomial& t, const Rat& prec) {
  Monomial wt = w * t;
  std::int64_t k = 0;
  if (wt.exponent < 1) k = to_i64(rat_floor((wt.exponent - 1) / 2));
  std::int64_t W0 = window_radius(prec) + (k < 0 ? -k : k);
  return with_guard_margin([&](const Rat& margin) {
    const Rat qprec = prec + margin;
    return widen_until_stable(
        [&](std::int64_t W) { return ct_single_at(u, v, w, t, k, W, qprec); },
        W0, prec);
  });
}

QSeries ct_f_eval_double(const Monomial& u, const Monomial& v,
                         const Monomial& w, const Monomial& t,
                         const Rat& prec) {
  return with_guard_margin([&](const Rat& margin) {
    const Rat qprec = prec + margin;
    auto eval = [&](std::int64_t W) {
      const std::int64_t lo = -W, hi = W;
      // Inner constant term in x, stratum by stratum: the y^(-d) coefficient is
      //   G_d = sum_{i+j=d} w^i t^j (x-theta coefficient at x^(j-i))
      //                     / ((q^2;q^2)_i (q^2;q^2)_j),
      // and the x-theta sum_m x^m q^(m^2) contributes q^((i-j)^2).
      BivLaurent G = biv_blank(lo, 0, qprec);
      for (std::int64_t d = 0; d <= W; ++d) {
        QSeries acc = QSeries::zero_to(qprec);
        for (std::int64_t i = 0; i <= d; ++i) {
          std::int64_t j = d - i;
          Monomial m = monomial_pow(w, i) * monomial_pow(t, j);
          m.exponent += Rat((i - j) * (i - j));
          if (m.exponent >= qprec) continue;
          QSeries den = mul(pochhammer_finite(Monomial{Rat(1), Rat(2)}, Rat(2), i),
                            pochhammer_finite(Monomial{Rat(1), Rat(2)}, Rat(2), j));
          acc = add(acc, mul(mono(m), inv(den, qprec - m.exponent)));
        }
        G.coeffs[static_cast<std::size_t>(-d - lo)] = acc;
      }
      auto poch = [&](const Monomial& arg, std::int64_t p) {
        Monomial c{-arg.coeff, arg.exponent};
        return biv_poch_inf(c, p, Rat(2), lo, hi, qprec);
      };
      BivLaurent prod = poch(Monomial{u.coeff, u.exponent + 1}, 1);
      prod = biv_mul(prod, poch(Monomial{v.coeff, v.exponent + 1}, -1), lo, hi);
      BivLaurent theta = biv_from_theta(
          [](std::int64_t n) { return Monomial{Rat(1), Rat(n * n)}; }, lo, hi,
          qprec);
      prod = biv_mul(prod, theta, lo, hi);
      prod = biv_mul(prod, G, lo, hi);
      return ct_y(prod);
    };
    return widen_until_stable(eval, window_radius(prec), prec);
  });
}

}  // namespace nahmforge
