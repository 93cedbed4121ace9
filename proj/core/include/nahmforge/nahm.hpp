#pragma once

#include <vector>

#include "nahmforge/linalg.hpp"
#include "nahmforge/qseries.hpp"

namespace nahmforge {

// A triple (A, B, C): symmetric rational matrix, shift vector, constant.
// Its series is sum over n in N^r of x^(n^T A n / 2 + B.n [+ C]) / prod
// (x; x)_{n_i}, where x is the triple's own nome variable.
struct NahmTriple {
  RatMatrix A;
  RatVector B;
  Rat C{0};
};

// The three rank-3 -> rank-4 lifting operators.  `which` is 1, 2 or 3; the
// input must have rank 3 (RankMismatch).  C is unchanged.
NahmTriple lift(int which, const NahmTriple& t);

// (A, B, C) -> (A^-1, A^-1 B, B^T A^-1 B / 2 - r/24 - C).  SingularMatrix
// when A is not invertible.
NahmTriple dual(const NahmTriple& t);

// Truncated evaluation in the triple's own nome variable.  A must be
// positive definite (NotPositiveDefinite).  Negative entries of B may push
// finitely many exponents below zero; the result is then a Laurent series.
QSeries nahm_sum(const NahmTriple& t, bool includeC, const Rat& prec);

// Folds monomial arguments q^(e_i) (in the plain variable q with nome q^s)
// into the shift vector: B'_i = B_i + e_i/s.  Arguments must be monomials
// with coefficient +1 (NonMonomialArgument).
NahmTriple nahm_from_F(const std::vector<Monomial>& args, const RatMatrix& A,
                       const RatVector& B, const Rat& nomeScale, const Rat& C = Rat(0));

}  // namespace nahmforge
