#include "nahmforge/bailey.hpp"

#include "nahmforge/pochhammer.hpp"

namespace nahmforge {

namespace {

QSeries mono(const Monomial& m) { return QSeries::monomial(m.coeff, m.exponent); }

Monomial q_power(const Rat& e) { return Monomial{Rat(1), e}; }

// 1/series with a friendlier error when the series is exactly zero.
QSeries safe_inv(const QSeries& s, const Rat& prec, const char* what) {
  if (s.is_exact() && s.is_zero())
    raise("VanishingDenominator", std::string(what) + " vanishes");
  return inv(s, prec);
}

}  // namespace

BaileyPair::BaileyPair(Monomial a, Rat nomeScale, Rat prec,
                       std::function<QSeries(std::int64_t)> alpha,
                       std::function<QSeries(std::int64_t)> beta)
    : a_(std::move(a)),
      s_(std::move(nomeScale)),
      prec_(std::move(prec)),
      alphaFn_(std::move(alpha)),
      betaFn_(std::move(beta)) {
  if (s_ <= 0) raise("DomainError", "nome scale must be positive");
}

const QSeries& BaileyPair::alpha(std::int64_t n) const {
  auto idx = static_cast<std::size_t>(n);
  if (alphaMemo_.size() <= idx) alphaMemo_.resize(idx + 1);
  if (!alphaMemo_[idx]) alphaMemo_[idx] = alphaFn_(n);
  return *alphaMemo_[idx];
}

const QSeries& BaileyPair::beta(std::int64_t n) const {
  auto idx = static_cast<std::size_t>(n);
  if (betaMemo_.size() <= idx) betaMemo_.resize(idx + 1);
  if (!betaMemo_[idx])
    betaMemo_[idx] = betaFn_ ? betaFn_(n) : beta_from_definition(n);
  return *betaMemo_[idx];
}

QSeries BaileyPair::beta_from_definition(std::int64_t n) const {
  const Monomial Q = q_power(s_);
  const Monomial aQ = a_ * Q;
  QSeries acc = QSeries::zero_to(prec_);
  for (std::int64_t k = 0; k <= n; ++k) {
    QSeries den = mul(pochhammer_finite(Q, s_, n - k),
                      pochhammer_finite(aQ, s_, n + k));
    acc = add(acc, mul(alpha(k), safe_inv(den, prec_, "Bailey denominator")));
  }
  return acc;
}

std::optional<std::int64_t> bp_check(const BaileyPair& pair,
                                     std::int64_t nMax) {
  for (std::int64_t n = 0; n <= nMax; ++n)
    if (first_difference(pair.beta(n), pair.beta_from_definition(n)))
      return n;
  return std::nullopt;
}

BaileyPair bp_rho_limit(const BaileyPair& pair) {
  auto src = std::make_shared<BaileyPair>(pair);
  const Rat s = src->nome_scale();
  const Rat prec = src->precision();
  const Monomial a = src->a();
  const Monomial Q = q_power(s);
  auto weight = [a, s](std::int64_t n) {
    return monomial_pow(a, n) * q_power(s * n * n);
  };
  return BaileyPair(
      a, s, prec,
      [src, weight](std::int64_t n) {
        return mul(mono(weight(n)), src->alpha(n));
      },
      [src, weight, Q, s, prec](std::int64_t n) {
        QSeries acc = QSeries::zero_to(prec);
        for (std::int64_t r = 0; r <= n; ++r) {
          QSeries term = mul(mono(weight(r)), src->beta(r));
          term = mul(term, safe_inv(pochhammer_finite(Q, s, n - r), prec,
                                    "Bailey denominator"));
          acc = add(acc, term);
        }
        return acc;
      });
}

BaileyPair bp_general_rho(const BaileyPair& pair, std::optional<Monomial> rho1,
                          std::optional<Monomial> rho2) {
  if (!rho1 && !rho2) return bp_rho_limit(pair);
  if (!rho1) std::swap(rho1, rho2);
  auto src = std::make_shared<BaileyPair>(pair);
  const Rat s = src->nome_scale();
  const Rat prec = src->precision();
  const Monomial a = src->a();
  const Monomial Q = q_power(s);
  const Monomial aQ = a * Q;

  if (!rho2) {
    // Single finite rho; the other sent to infinity.
    const Monomial rho = *rho1;
    const Monomial x = aQ * monomial_inv(rho);  // aQ/rho
    auto weight = [rho, x, s](std::int64_t k) {
      Monomial m = monomial_pow(x, k) * q_power(s * k * (k - 1) / 2);
      if (k % 2 != 0) m.coeff = -m.coeff;
      return mul(mono(m), pochhammer_finite(rho, s, k));
    };
    return BaileyPair(
        a, s, prec,
        [src, weight, x, s, prec](std::int64_t n) {
          QSeries f = mul(weight(n),
                          safe_inv(pochhammer_finite(x, s, n), prec,
                                   "Bailey denominator"));
          return mul(f, src->alpha(n));
        },
        [src, weight, x, Q, s, prec](std::int64_t n) {
          QSeries acc = QSeries::zero_to(prec);
          for (std::int64_t k = 0; k <= n; ++k) {
            QSeries term = mul(weight(k), src->beta(k));
            term = mul(term, safe_inv(pochhammer_finite(Q, s, n - k), prec,
                                      "Bailey denominator"));
            acc = add(acc, term);
          }
          return mul(acc, safe_inv(pochhammer_finite(x, s, n), prec,
                                   "Bailey denominator"));
        });
  }

  const Monomial r1 = *rho1, r2 = *rho2;
  const Monomial x1 = aQ * monomial_inv(r1);
  const Monomial x2 = aQ * monomial_inv(r2);
  const Monomial z = aQ * monomial_inv(r1 * r2);  // aQ/(r1 r2)
  return BaileyPair(
      a, s, prec,
      [src, r1, r2, x1, x2, z, s, prec](std::int64_t n) {
        QSeries num = mul(pochhammer_finite(r1, s, n),
                          pochhammer_finite(r2, s, n));
        QSeries den = mul(pochhammer_finite(x1, s, n),
                          pochhammer_finite(x2, s, n));
        QSeries f = mul(num, safe_inv(den, prec, "Bailey denominator"));
        f = mul(f, mono(monomial_pow(z, n)));
        return mul(f, src->alpha(n));
      },
      [src, r1, r2, x1, x2, z, Q, s, prec](std::int64_t n) {
        QSeries acc = QSeries::zero_to(prec);
        for (std::int64_t k = 0; k <= n; ++k) {
          QSeries term = mul(pochhammer_finite(r1, s, k),
                             pochhammer_finite(r2, s, k));
          term = mul(term, pochhammer_finite(z, s, n - k));
          term = mul(term, mono(monomial_pow(z, k)));
          term = mul(term, src->beta(k));
          term = mul(term, safe_inv(pochhammer_finite(Q, s, n - k), prec,
                                    "Bailey denominator"));
          acc = add(acc, term);
        }
        QSeries den = mul(pochhammer_finite(x1, s, n),
                          pochhammer_finite(x2, s, n));
        return mul(acc, safe_inv(den, prec, "Bailey denominator"));
      });
}

namespace {

// Shared shape of the three Lovejoy-style transforms: a -> aQ,
//   alpha'_n = front(n) / (1 - aQ) * sum_{r<=n} inner(r) alpha_r.
BaileyPair lovejoy_shaped(
    const BaileyPair& pair, std::function<QSeries(std::int64_t)> front,
    std::function<QSeries(std::int64_t)> inner,
    std::function<QSeries(std::int64_t)> betaOut) {
  auto src = std::make_shared<BaileyPair>(pair);
  const Rat s = src->nome_scale();
  const Rat prec = src->precision();
  const Monomial aQ = src->a() * q_power(s);
  QSeries oneMinusAQ = sub(QSeries::one(), mono(aQ));
  return BaileyPair(
      aQ, s, prec,
      [src, front, inner, oneMinusAQ, prec](std::int64_t n) {
        QSeries acc = QSeries::zero_to(prec);
        for (std::int64_t r = 0; r <= n; ++r)
          acc = add(acc, mul(inner(r), src->alpha(r)));
        QSeries f = mul(front(n),
                        safe_inv(oneMinusAQ, prec, "Bailey denominator"));
        return mul(f, acc);
      },
      std::move(betaOut));
}

}  // namespace

BaileyPair bp_lovejoy_b0(const BaileyPair& pair) {
  auto src = std::make_shared<BaileyPair>(pair);
  const Rat s = src->nome_scale();
  const Monomial a = src->a();
  return lovejoy_shaped(
      pair,
      [a, s](std::int64_t n) {
        Monomial lead = monomial_pow(a, n) * q_power(s * n * n);
        Monomial tail = a * q_power(s * (2 * n + 1));
        return mul(sub(QSeries::one(), mono(tail)), mono(lead));
      },
      [a, s](std::int64_t r) {
        return mono(monomial_pow(monomial_inv(a), r) * q_power(-s * r * r));
      },
      [src](std::int64_t n) { return src->beta(n); });
}

BaileyPair bp_lovejoy_binf(const BaileyPair& pair) {
  auto src = std::make_shared<BaileyPair>(pair);
  const Rat s = src->nome_scale();
  const Monomial a = src->a();
  return lovejoy_shaped(
      pair,
      [a, s](std::int64_t n) {
        Monomial tail = a * q_power(s * (2 * n + 1));
        return mul(sub(QSeries::one(), mono(tail)), mono(q_power(-s * n)));
      },
      [](std::int64_t) { return QSeries::one(); },
      [src, s](std::int64_t n) {
        return mul(mono(q_power(-s * n)), src->beta(n));
      });
}

BaileyPair bp_lovejoy_general_b(const BaileyPair& pair, const Monomial& b) {
  auto src = std::make_shared<BaileyPair>(pair);
  const Rat s = src->nome_scale();
  const Rat prec = src->precision();
  const Monomial a = src->a();
  const Monomial Q = q_power(s);
  const Monomial aQb = a * Q * monomial_inv(b);  // aQ/b
  const Monomial bQ = b * Q;
  Monomial negB = b;
  negB.coeff = -negB.coeff;
  return lovejoy_shaped(
      pair,
      [a, s, aQb, bQ, negB, prec](std::int64_t n) {
        Monomial tail = a * q_power(s * (2 * n + 1));
        QSeries f = sub(QSeries::one(), mono(tail));
        f = mul(f, pochhammer_finite(aQb, s, n));
        f = mul(f, mono(monomial_pow(negB, n) * q_power(s * n * (n - 1) / 2)));
        return mul(f, safe_inv(pochhammer_finite(bQ, s, n), prec,
                               "Bailey denominator"));
      },
      [b, s, aQb, negB, prec](std::int64_t r) {
        QSeries f = pochhammer_finite(b, s, r);
        f = mul(f, safe_inv(pochhammer_finite(aQb, s, r), prec,
                            "Bailey denominator"));
        return mul(f, mono(monomial_pow(monomial_inv(negB), r) *
                           q_power(-s * r * (r - 1) / 2)));
      },
      [src, b, bQ, s, prec](std::int64_t n) {
        QSeries f = mul(pochhammer_finite(b, s, n),
                        safe_inv(pochhammer_finite(bQ, s, n), prec,
                                 "Bailey denominator"));
        return mul(f, src->beta(n));
      });
}

BaileyPair bp_mclaughlin(const BaileyPair& pair) {
  auto src = std::make_shared<BaileyPair>(pair);
  const Rat s = src->nome_scale();
  const Rat prec = src->precision();
  const Monomial a = src->a();  // old parameter; the formula uses it
  Monomial aNew = a;
  aNew.exponent -= s;
  QSeries oneMinusA = sub(QSeries::one(), mono(a));
  auto gauge = [a, s, prec](std::int64_t n) {
    Monomial m = a * q_power(s * 2 * n);
    if (m.coeff == 1 && m.exponent == 0)
      raise("IllDefinedAtIndex",
            "a q^(2n) = 1 at n = " + std::to_string(n));
    return safe_inv(sub(QSeries::one(), mono(m)), prec, "Bailey denominator");
  };
  return BaileyPair(
      aNew, s, prec,
      [src, a, s, oneMinusA, gauge](std::int64_t n) {
        if (n == 0) return src->alpha(0);
        QSeries lhs = mul(src->alpha(n), gauge(n));
        QSeries rhs = mul(mono(a * q_power(s * (2 * n - 2))),
                          mul(src->alpha(n - 1), gauge(n - 1)));
        return mul(oneMinusA, sub(lhs, rhs));
      },
      [src](std::int64_t n) { return src->beta(n); });
}

namespace {

// sum_n a^n Q^(n^2) f(n), stopping once terms stay above the precision.
QSeries limit_sum(const BaileyPair& pair,
                  const std::function<const QSeries&(std::int64_t)>& f) {
  const Rat s = pair.nome_scale();
  const Rat prec = pair.precision();
  const Monomial a = pair.a();
  QSeries acc = QSeries::zero_to(prec);
  int quiet = 0;
  for (std::int64_t n = 0; n < 256; ++n) {
    Monomial w = monomial_pow(a, n) * Monomial{Rat(1), s * n * n};
    QSeries term = mul(mono(w), f(n));
    auto v = term.min_exponent();
    if (!v || *v >= prec) {
      if (++quiet >= 3) return acc;
      continue;
    }
    quiet = 0;
    acc = add(acc, term);
  }
  raise("DivergentSeries", "Bailey limit sum did not terminate");
}

}  // namespace

QSeries bp_limit_beta_sum(const BaileyPair& pair) {
  return limit_sum(pair, [&pair](std::int64_t n) -> const QSeries& {
    return pair.beta(n);
  });
}

std::optional<Rat> bp_limit_identity(const BaileyPair& pair) {
  QSeries lhs = bp_limit_beta_sum(pair);
  QSeries alphaSum = limit_sum(pair, [&pair](std::int64_t n) -> const QSeries& {
    return pair.alpha(n);
  });
  Monomial aQ = pair.a() * q_power(pair.nome_scale());
  QSeries rhs = mul(inv_pochhammer_inf(aQ, pair.nome_scale(), pair.precision()),
                    alphaSum);
  return first_difference(lhs, rhs);
}

BaileyChain bailey_chain(const std::string& name, const Rat& prec,
                         const std::optional<Monomial>& u) {
  BaileyChain chain;
  auto theta_pair = [&](Rat a_exp, bool shifted) {
    // cw1 seeds in nome q^2; `shifted` selects the a = q^2 variant.
    if (!u) raise("DomainError", "chain " + name + " needs a monomial u");
    Monomial uu = *u;
    return BaileyPair(
        Monomial{Rat(1), a_exp}, Rat(2), prec, [uu, shifted](std::int64_t r) {
          if (!shifted && r == 0) return QSeries::one();
          Rat base = shifted ? Rat(2 * r * r + 2 * r) : Rat(2 * r * r);
          Monomial up = monomial_pow(uu, r);
          Monomial dn = monomial_pow(monomial_inv(uu), shifted ? r + 1 : r);
          return add(mono(Monomial{Rat(1), base} * up),
                     mono(Monomial{Rat(1), base} * dn));
        });
  };
  auto simple_pair = [&](bool shifted) {
    // nome q; shifted selects a = q with alpha_n = q^(n^2+n).
    return BaileyPair(Monomial{Rat(1), shifted ? Rat(1) : Rat(0)}, Rat(1),
                      prec, [shifted](std::int64_t n) {
                        if (shifted)
                          return QSeries::monomial(Rat(1), Rat(n * n + n));
                        if (n == 0) return QSeries::one();
                        return QSeries::monomial(Rat(2), Rat(n * n));
                      });
  };

  if (name == "cw1-T0") {
    chain.stages.push_back(theta_pair(Rat(0), false));
    chain.steps = {"rho-limit"};
  } else if (name == "cw1-T1") {
    chain.stages.push_back(theta_pair(Rat(2), true));
    chain.steps = {"rho-limit"};
  } else if (name == "axb-T0") {
    chain.stages.push_back(simple_pair(false));
    chain.steps = {"lovejoy-b0", "rho-limit"};
  } else if (name == "axb-T1") {
    chain.stages.push_back(simple_pair(true));
    chain.steps = {"lovejoy-b0", "rho-limit"};
  } else if (name == "w-T0") {
    chain.stages.push_back(simple_pair(false));
    chain.steps = {"rho-limit", "lovejoy-binf", "mclaughlin"};
  } else if (name == "w-T1") {
    chain.stages.push_back(simple_pair(true));
    chain.steps = {"rho-limit", "mclaughlin"};
  } else {
    raise("UnknownId", "unknown Bailey chain: " + name);
  }

  for (const std::string& step : chain.steps) {
    const BaileyPair& cur = chain.stages.back();
    if (step == "rho-limit")
      chain.stages.push_back(bp_rho_limit(cur));
    else if (step == "lovejoy-b0")
      chain.stages.push_back(bp_lovejoy_b0(cur));
    else if (step == "lovejoy-binf")
      chain.stages.push_back(bp_lovejoy_binf(cur));
    else if (step == "mclaughlin")
      chain.stages.push_back(bp_mclaughlin(cur));
    else
      raise("UnknownId", "unknown Bailey step: " + step);
  }
  return chain;
}

}  // namespace nahmforge
