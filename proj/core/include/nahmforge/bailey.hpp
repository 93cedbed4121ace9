#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nahmforge/qseries.hpp"

namespace nahmforge {

// A Bailey pair (alpha_n, beta_n) relative to parameter `a` in nome Q = q^s:
//   beta_n = sum_{k=0..n} alpha_k / ((Q;Q)_{n-k} (aQ;Q)_{n+k}).
// Sequence members are series in the plain variable q, attested to `prec`.
class BaileyPair {
 public:
  BaileyPair(Monomial a, Rat nomeScale, Rat prec,
             std::function<QSeries(std::int64_t)> alpha,
             std::function<QSeries(std::int64_t)> beta = {});

  const Monomial& a() const { return a_; }
  const Rat& nome_scale() const { return s_; }
  const Rat& precision() const { return prec_; }

  // Memoized accessors.
  const QSeries& alpha(std::int64_t n) const;
  const QSeries& beta(std::int64_t n) const;

  // beta_n computed from the alphas via the defining relation.
  QSeries beta_from_definition(std::int64_t n) const;

 private:
  Monomial a_;
  Rat s_;
  Rat prec_;
  std::function<QSeries(std::int64_t)> alphaFn_;
  std::function<QSeries(std::int64_t)> betaFn_;
  mutable std::vector<std::optional<QSeries>> alphaMemo_;
  mutable std::vector<std::optional<QSeries>> betaMemo_;
};

// Verify the defining relation for n = 0..nMax. Returns the first failing
// index, or nullopt when every index matches.
std::optional<std::int64_t> bp_check(const BaileyPair& pair, std::int64_t nMax);

// Bailey's lemma with rho1, rho2 -> infinity: alpha'_n = a^n Q^(n^2) alpha_n,
// parameter unchanged.
BaileyPair bp_rho_limit(const BaileyPair& pair);

// Bailey's lemma with parameters rho1, rho2; nullopt sends that rho to
// infinity (both infinite reduces to bp_rho_limit). Parameter unchanged.
BaileyPair bp_general_rho(const BaileyPair& pair, std::optional<Monomial> rho1,
                          std::optional<Monomial> rho2);

// The b -> 0 / b -> infinity / general-b pair transforms that move the
// parameter a -> aQ.
BaileyPair bp_lovejoy_b0(const BaileyPair& pair);
BaileyPair bp_lovejoy_binf(const BaileyPair& pair);
BaileyPair bp_lovejoy_general_b(const BaileyPair& pair, const Monomial& b);

// The alpha-rewrite moving a -> a/Q (keeps beta); the formula uses the old a.
// Raises IllDefinedAtIndex when a Q^(2n) = 1 for a needed index.
BaileyPair bp_mclaughlin(const BaileyPair& pair);

// The limiting identity sum_n a^n Q^(n^2) beta_n
//   = (1 / (aQ;Q)_inf) sum_n a^n Q^(n^2) alpha_n.
// Returns nullopt when equal to the pair's precision, else the first
// differing exponent.
std::optional<Rat> bp_limit_identity(const BaileyPair& pair);

// The left side of the limiting identity as a series.
QSeries bp_limit_beta_sum(const BaileyPair& pair);

// Named transform chains. Each returns every stage from seed to final pair.
// Step names: "rho-limit", "lovejoy-b0", "lovejoy-binf", "mclaughlin".
struct BaileyChain {
  std::vector<BaileyPair> stages;
  std::vector<std::string> steps;  // steps[i] maps stages[i] -> stages[i+1]
};

// Chains in nome q^2 seeded with a free monomial u (pairs of theta type):
//   cw1-T0: a = 1,  alpha_0 = 1, alpha_r = q^(2r^2) (u^r + u^-r)
//   cw1-T1: a = q^2, alpha_r = q^(2r^2+2r) (u^r + u^-(r+1))
// Chains in nome q:
//   axb-T0: a = 1, alpha_0 = 1, alpha_n = 2 q^(n^2);   [lovejoy-b0, rho-limit]
//   axb-T1: a = q, alpha_n = q^(n^2+n);                [lovejoy-b0, rho-limit]
//   w-T0:   a = 1, alpha_0 = 1, alpha_n = 2 q^(n^2);   [rho-limit, lovejoy-binf, mclaughlin]
//   w-T1:   a = q, alpha_n = q^(n^2+n);                [rho-limit, mclaughlin]
BaileyChain bailey_chain(const std::string& name, const Rat& prec,
                         const std::optional<Monomial>& u = std::nullopt);

}  // namespace nahmforge
