#include "nahmforge/sumspec.hpp"

#include <functional>

#include "nahmforge/pochhammer.hpp"

namespace nahmforge {

namespace {

bool quad_is_zero(const SumSpec& spec) {
  for (const auto& row : spec.quad)
    for (const Rat& v : row)
      if (v != 0) return false;
  return true;
}

Rat affine_at(const Rat& c0, const RatVector& cN,
              const std::vector<std::int64_t>& n) {
  Rat v = c0;
  for (std::size_t i = 0; i < cN.size() && i < n.size(); ++i)
    v += cN[i] * n[i];
  return v;
}

// Evaluate one factor at a fixed index tuple, to relative precision relPrec
// (in plain-q exponent units).
QSeries factor_series(const SumSpec& spec, const PochFactor& f,
                      const std::vector<std::int64_t>& n, const Rat& relPrec) {
  Rat argExp = spec.scale * affine_at(f.argExp0, f.argExpN, n);
  Monomial arg{f.argCoeff, argExp};
  Rat base = spec.scale * f.base;
  QSeries s;
  if (f.infinite) {
    s = pochhammer_inf(arg, base, relPrec);
  } else {
    Rat lenR = affine_at(f.len0, f.lenN, n);
    if (!rat_is_int(lenR) || lenR < 0)
      raise("NegativeLength", "factor length must be a nonnegative integer at "
                              "every enumerated tuple");
    s = pochhammer_finite(arg, base, to_i64(rat_num(lenR)));
  }
  if (s.min_exponent() && *s.min_exponent() < 0)
    raise("DomainError",
          "sum factors with negative valuation are not supported");
  return s;
}

}  // namespace

bool sum_spec_converges(const SumSpec& spec) {
  const std::size_t k = spec.indices;
  if (spec.scale <= 0) return false;
  if (spec.quad.size() != k || spec.linear.size() != k) return false;
  for (const auto& row : spec.quad)
    if (row.size() != k) return false;
  if (quad_is_zero(spec)) {
    for (const Rat& l : spec.linear)
      if (l <= 0) return false;
    return true;
  }
  RatMatrix Q(spec.quad);
  return is_positive_definite(Q);
}

QSeries eval_sum_spec(const SumSpec& spec, const Rat& prec) {
  if (!sum_spec_converges(spec))
    raise("DivergenceCheckFailed",
          "exponent polynomial does not grow along every direction");
  const std::size_t k = spec.indices;
  const Rat s = spec.scale;

  // Exact per-prefix lower bounds on the exponent polynomial
  //   P(n) = n^T Q n + L.n + c  (before nome scaling).
  // Positive-definite case: complete the square via LDL of Q with vertex
  // h = -Q^-1 L / 2, so P(n) = sum_i d_i w_i^2 + P(h), w = L^T (n - h).
  // Linear case: coefficients are positive, so free indices minimize at 0.
  const bool linearOnly = quad_is_zero(spec);
  RatVector h(k, Rat(0));
  std::vector<RatVector> L;
  RatVector Dd;
  Rat pMin = spec.constant;
  if (!linearOnly) {
    RatMatrix Q(spec.quad);
    auto dec = ldl(Q);
    RatVector half = spec.linear;
    for (Rat& v : half) v = -v / 2;
    h = mat_vec(inverse(Q), half);
    pMin = spec.constant + dot(spec.linear, h) / 2;
    L = dec->L;
    Dd = dec->D;
  }

  QSeries acc = QSeries::zero_to(prec);
  std::vector<std::int64_t> n(k, 0);

  // Walk indices from the last down to the first; at each level the fixed
  // indices are j >= i and the free ones (j < i) can only raise the bound.
  std::function<void(std::size_t, Rat)> walk = [&](std::size_t level,
                                                   Rat quadAbove) {
    const std::size_t i = level - 1;
    for (std::int64_t v = 0;; ++v) {
      n[i] = v;
      Rat bound;
      bool rising;
      Rat quadHere = quadAbove;
      if (linearOnly) {
        bound = spec.constant;
        for (std::size_t j = i; j < k; ++j) bound += spec.linear[j] * n[j];
        rising = true;
      } else {
        Rat wi = Rat(v) - h[i];
        for (std::size_t j = i + 1; j < k; ++j)
          wi += L[j][i] * (Rat(n[j]) - h[j]);
        quadHere += Dd[i] * wi * wi;
        bound = quadHere + pMin;
        rising = wi >= 0;
      }
      if (s * bound >= prec) {
        if (rising) break;
        continue;
      }
      if (i > 0) {
        walk(level - 1, quadHere);
        continue;
      }
      // Full tuple fixed: evaluate the term exactly.
      Rat P = spec.constant;
      for (std::size_t a = 0; a < k; ++a) {
        P += spec.linear[a] * n[a];
        for (std::size_t b = 0; b < k; ++b)
          P += spec.quad[a][b] * n[a] * n[b];
      }
      Rat e = s * P;
      if (e >= prec) continue;
      Rat rel = prec - e;
      QSeries term = QSeries::monomial(Rat(1), e);
      for (const auto& f : spec.numer)
        term = mul(term, factor_series(spec, f, n, rel));
      for (const auto& f : spec.denom) {
        QSeries d = factor_series(spec, f, n, rel);
        if (d.is_zero())
          raise("VanishingDenominator",
                "denominator factor vanishes at an enumerated tuple");
        term = mul(term, inv(d, rel));
      }
      acc = add(acc, term);
    }
    n[i] = 0;
  };

  walk(k, Rat(0));
  return acc;
}

}  // namespace nahmforge
