#include "nahmforge/pochhammer.hpp"

#include <algorithm>

namespace nahmforge {

namespace {

// 1 - a*q^e as an exact series.
QSeries linear_factor(const Rat& coeff, const Rat& exponent) {
  return sub(QSeries::one(), QSeries::monomial(coeff, exponent));
}

}  // namespace

QSeries pochhammer_finite(const Monomial& a, const Rat& base, std::int64_t n) {
  if (base <= 0) raise("NonPositiveBase", "Pochhammer base must be positive");
  if (n < 0) raise("NegativeLength", "finite Pochhammer length must be nonnegative");
  if (a.coeff == 0) return QSeries::one();
  QSeries result = QSeries::one();
  for (std::int64_t k = 0; k < n; ++k)
    result = mul(result, linear_factor(a.coeff, a.exponent + base * k));
  return result;
}

QSeries pochhammer_inf(const Monomial& a, const Rat& base, const Rat& prec) {
  if (base <= 0) raise("NonPositiveBase", "Pochhammer base must be positive");
  if (a.coeff == 0) return truncate(QSeries::one(), prec);

  // Factors with argument exponent <= 0 form an exact Laurent prefix whose
  // lowest exponent S <= 0 shifts the precision requirement of the rest:
  // attesting the full product to `prec` needs the positive-exponent tail to
  // `prec - S`.
  Rat S = 0;
  std::int64_t k0 = 0;
  {
    Rat e = a.exponent;
    while (e <= 0) {
      if (e < 0) S += e;
      ++k0;
      e += base;
    }
  }
  Rat tailPrec = prec - S;

  QSeries prefix = QSeries::one();
  for (std::int64_t k = 0; k < k0; ++k)
    prefix = mul(prefix, linear_factor(a.coeff, a.exponent + base * k));

  QSeries tail = truncate(QSeries::one(), tailPrec);
  Rat e = a.exponent + base * k0;
  while (e < tailPrec) {
    tail = mul(tail, linear_factor(a.coeff, e));
    e += base;
  }
  return truncate(mul(prefix, tail), prec);
}

QSeries inv_pochhammer_inf(const Monomial& a, const Rat& base, const Rat& prec) {
  // The product's lowest exponent v is the sum of the negative-exponent
  // factor minima; the inverse needs input attested to prec + 2v.
  QSeries p = pochhammer_inf(a, base, prec);
  auto v = p.min_exponent();
  if (!v) raise("ZeroLeadingTerm", "Pochhammer product vanishes identically");
  if (*v < 0) p = pochhammer_inf(a, base, prec + 2 * (-*v) + 1);
  return truncate(inv(p), prec);
}

QSeries hyper_phi(const std::vector<Monomial>& numer,
                  const std::vector<Monomial>& denom, const Rat& base,
                  const Monomial& z, const Rat& prec) {
  if (base <= 0) raise("NonPositiveBase", "hypergeometric base must be positive");
  if (z.coeff == 0) return truncate(QSeries::one(), prec);
  const std::int64_t r = static_cast<std::int64_t>(numer.size());
  const std::int64_t s = static_cast<std::int64_t>(denom.size());
  const std::int64_t extra = 1 + s - r;  // power of (-1)^n q^(n(n-1)/2)

  QSeries sum = truncate(QSeries::one(), prec);
  QSeries term = truncate(QSeries::one(), prec);  // term at n = 0

  Rat lastVal = 0;
  int stall = 0;
  for (std::int64_t n = 1;; ++n) {
    // term(n) = term(n-1) * ratio where the ratio multiplies in the next
    // factor of each Pochhammer, the extra (-1)Q^(n-1) power, and z.
    QSeries ratioNum = QSeries::monomial(z.coeff, z.exponent);
    for (const Monomial& m : numer)
      ratioNum = mul(ratioNum, linear_factor(m.coeff, m.exponent + base * (n - 1)));
    if (extra != 0) {
      Monomial ex = monomial_pow(Monomial(-1, base * (n - 1)), extra);
      ratioNum = mul(ratioNum, QSeries::monomial(ex));
    }
    QSeries ratioDen = linear_factor(Rat(1), base * n);  // from (Q;Q)_n
    for (const Monomial& m : denom) {
      if (m.coeff == 1 && m.exponent + base * (n - 1) == 0)
        raise("VanishingDenominator",
              "denominator Pochhammer vanishes at index " + std::to_string(n));
      ratioDen = mul(ratioDen, linear_factor(m.coeff, m.exponent + base * (n - 1)));
    }
    term = mul(term, ratioNum);
    term = mul(term, inv(ratioDen, prec));
    term = truncate(term, prec);

    auto v = term.min_exponent();
    if (!v) break;  // term vanished below precision: all later terms follow suit
    if (*v >= prec) break;
    sum = add(sum, term);

    if (n > 1) {
      if (*v <= lastVal) {
        if (++stall > 64)
          raise("DivergentSeries",
                "hypergeometric term valuations are not increasing");
      } else {
        stall = 0;
      }
    }
    lastVal = *v;
    if (n > 100000)
      raise("DivergentSeries", "hypergeometric series failed to terminate");
  }
  return truncate(sum, prec);
}

}  // namespace nahmforge
