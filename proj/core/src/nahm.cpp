#include "nahmforge/nahm.hpp"

#include <functional>

namespace nahmforge {

NahmTriple lift(int which, const NahmTriple& t) {
  if (t.A.rank() != 3 || t.B.size() != 3)
    raise("RankMismatch", "lift operators are defined for rank-3 triples");
  const Rat a1 = t.A.at(0, 0), a2 = t.A.at(0, 1), a3 = t.A.at(0, 2);
  const Rat a4 = t.A.at(1, 1), a5 = t.A.at(1, 2), a6 = t.A.at(2, 2);
  const Rat b1 = t.B[0], b2 = t.B[1], b3 = t.B[2];
  std::vector<RatVector> e;
  RatVector B;
  switch (which) {
    case 1:
      e = {{a1, a2, a3, a2 + a3},
           {a2, a4, a5 + 1, a4 + a5},
           {a3, a5 + 1, a6, a5 + a6},
           {a2 + a3, a4 + a5, a5 + a6, a4 + 2 * a5 + a6}};
      B = {b1, b2, b3, b2 + b3};
      break;
    case 2:
      e = {{a1, a2, a3 + 1, a1 + a3},
           {a2, a4, a5, a2 + a5},
           {a3 + 1, a5, a6, a3 + a6},
           {a1 + a3, a2 + a5, a3 + a6, a1 + 2 * a3 + a6}};
      B = {b1, b2, b3, b1 + b3};
      break;
    case 3:
      e = {{a1, a2 + 1, a3, a1 + a2},
           {a2 + 1, a4, a5, a2 + a4},
           {a3, a5, a6, a3 + a5},
           {a1 + a2, a2 + a4, a3 + a5, a1 + 2 * a2 + a4}};
      B = {b1, b2, b3, b1 + b2};
      break;
    default:
      raise("DomainError", "lift index must be 1, 2 or 3");
  }
  return NahmTriple{RatMatrix(std::move(e)), std::move(B), t.C};
}

NahmTriple dual(const NahmTriple& t) {
  RatMatrix Ainv = inverse(t.A);
  RatVector Bstar = mat_vec(Ainv, t.B);
  Rat Cstar = dot(t.B, Bstar) / 2 - Rat(Int(t.A.rank()), 24) - t.C;
  return NahmTriple{std::move(Ainv), std::move(Bstar), std::move(Cstar)};
}

QSeries nahm_sum(const NahmTriple& t, bool includeC, const Rat& prec) {
  const std::size_t r = t.A.rank();
  if (t.B.size() != r) raise("RankMismatch", "shift vector length mismatch");
  auto decomp = ldl(t.A);
  if (!decomp) raise("NotPositiveDefinite", "matrix part must be positive definite");

  // Complete the square: with z = n + A^-1 B and w = L^T z,
  //   exponent(n) = (1/2) sum_i D_i w_i^2 + base,   base = [C] - B.A^-1 B / 2.
  RatVector z0 = mat_vec(inverse(t.A), t.B);
  Rat mu = dot(t.B, z0) / 2;
  Rat base = (includeC ? t.C : Rat(0)) - mu;

  // Exponent lattice: denominators of all exponents divide this.
  Int lat = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      lat = lcm_int(lat, rat_den(t.A.at(i, j) / 2));
  for (const Rat& b : t.B) lat = lcm_int(lat, rat_den(b));
  if (includeC) lat = lcm_int(lat, rat_den(t.C));
  const std::int64_t D = to_i64(lat);

  // Result index range [lo, hi] on the lattice.
  const std::int64_t lo = to_i64(rat_floor(base * D));
  Rat capR = prec * D;
  Int cap = rat_is_int(capR) ? rat_num(capR) : rat_ceil(capR);  // first index >= prec
  if (cap <= Int(lo)) return QSeries::zero_to(prec);
  const std::int64_t hi = to_i64(cap) - 1;
  std::vector<Rat> res(static_cast<std::size_t>(hi - lo + 1));

  // Relative precision for the Pochhammer denominators.
  const std::int64_t R = to_i64(rat_ceil(prec - base)) + 1;

  const auto& L = decomp->L;
  const auto& Dd = decomp->D;

  // Recursive descent from the last index; each level keeps a running dense
  // product g = prod over fixed deeper indices of 1/(x;x)_{n_k}, updated
  // incrementally (stepping n -> n+1 multiplies by 1/(1-x^(n+1)), a strided
  // prefix sum).
  std::vector<Rat> gTop(static_cast<std::size_t>(R), Rat(0));
  gTop[0] = 1;
  RatVector zFixed(r, Rat(0));  // z_k for fixed levels k > current

  std::function<void(std::size_t, Rat, const std::vector<Rat>&)> descend =
      [&](std::size_t level, Rat quadAbove, const std::vector<Rat>& gIn) {
        const std::size_t i = level - 1;  // 0-based index of this level
        std::vector<Rat> g = gIn;
        for (std::int64_t n = 0;; ++n) {
          if (n > 0) {
            // g *= 1/(1 - x^n): strided prefix sum.
            for (std::int64_t idx = n; idx < R; ++idx)
              g[static_cast<std::size_t>(idx)] +=
                  g[static_cast<std::size_t>(idx - n)];
          }
          Rat zi = Rat(n) + z0[i];
          Rat wi = zi;
          for (std::size_t k = i + 1; k < r; ++k) wi += L[k][i] * zFixed[k];
          Rat h = Dd[i] * wi * wi / 2;
          Rat bound = quadAbove + h + base;
          if (bound >= prec) {
            if (wi >= 0) break;  // past the vertex: exponents only grow
            continue;            // still approaching the vertex
          }
          zFixed[i] = zi;
          if (i == 0) {
            // Leaf: exponent is exact here; accumulate g shifted by it.
            Rat eIdxR = bound * D;
            if (!rat_is_int(eIdxR))
              raise("DomainError", "internal: exponent off the computed lattice");
            std::int64_t e0 = to_i64(rat_num(eIdxR));
            for (std::int64_t j = 0;; ++j) {
              std::int64_t idx = e0 + j * D;
              if (idx > hi) break;
              if (j >= R) break;
              res[static_cast<std::size_t>(idx - lo)] +=
                  g[static_cast<std::size_t>(j)];
            }
          } else {
            descend(level - 1, quadAbove + h, g);
          }
        }
      };

  descend(r, Rat(0), gTop);
  return QSeries(D, lo, std::move(res), prec);
}

NahmTriple nahm_from_F(const std::vector<Monomial>& args, const RatMatrix& A,
                       const RatVector& B, const Rat& nomeScale, const Rat& C) {
  if (args.size() != A.rank() || B.size() != A.rank())
    raise("RankMismatch", "argument count must match the rank");
  if (nomeScale <= 0) raise("DomainError", "nome scale must be positive");
  RatVector Bp = B;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].coeff != 1)
      raise("NonMonomialArgument",
            "argument " + std::to_string(i) + " must be q^e with coefficient 1");
    Bp[i] += args[i].exponent / nomeScale;
  }
  return NahmTriple{A, std::move(Bp), C};
}

}  // namespace nahmforge
