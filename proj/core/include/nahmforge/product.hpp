#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nahmforge/qseries.hpp"

namespace nahmforge {

// One multiplicative atom of a product expression.
//  Jm    : J[m]      = (q^m; q^m)_inf
//  Jam   : J[a,m]    = (q^a, q^(m-a), q^m; q^m)_inf,  0 < a < m
//  Poch  : P[z;b]    = (z; q^b)_inf   /  P[z;b;n] = (z; q^b)_n
//  ThetaW: TW[a;c;A;B] or TW[a;c;A;B;C] = sum_{n in Z} (a*n+c) q^(A n^2+B n+C)
//  ThetaJ: TJ[z;m]   = sum_{n in Z} (-z)^n q^(m(n^2-n)/2)
// ThetaW/ThetaJ are evaluation-only extensions (weighted theta sums appear on
// the left side of two classical identities and as Bailey-chain closed
// forms); modular_constant rejects them.
struct ProductAtom {
  enum class Kind { Jm, Jam, Poch, ThetaW, ThetaJ };
  Kind kind = Kind::Jm;
  std::int64_t power = 1;

  // Jm / Jam
  std::int64_t m = 0;
  std::int64_t a = 0;

  // Poch / ThetaJ argument and base
  Monomial arg;
  Rat base{1};
  std::optional<std::int64_t> len;  // Poch only; empty = infinite

  // ThetaW data: (wa*n + wc) q^(qa*n^2 + qb*n + qc)
  Rat wa{0}, wc{0}, qa{0}, qb{0}, qc{0};
};

struct ProductTerm {
  Rat scalar{1};
  Rat qpower{0};
  std::vector<ProductAtom> atoms;
};

struct ProductExpr {
  std::vector<ProductTerm> terms;
};

struct ModularData {
  Rat constantC;
  Rat weight;
};

// Evaluates the expression to a series attested at least to `prec`.
QSeries eval_product(const ProductExpr& expr, const Rat& prec);

// sum_{n in Z} (-z)^n q^(base(n^2-n)/2) truncated at `prec`.
QSeries theta_jtp_sum(const Monomial& z, const Rat& base, const Rat& prec);

// The constant C and weight attached to a pure J-quotient expression: for
// each term, C_term = -qpower + sum over atoms of power*(m/24) for J[m] and
// power*(m/24 + m*P2(a/m)/2) for J[a,m], P2(x) = x^2 - x + 1/6; the returned
// C is C_term/nomeScale and the weight is (1/2)*sum of powers.  All terms
// must agree (InconsistentTerms); non-J atoms are rejected
// (RawPochhammerAtom).
ModularData modular_constant(const ProductExpr& expr, const Rat& nomeScale);

// Grammar (whitespace insignificant):
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := rational | 'q^(' rational ')' | atom ['^' int]
//   atom   := 'J[' int [',' int] ']' | 'P[' monomial ';' rational [';' int] ']'
//           | 'TW[' rational ';' rational ';' rational ';' rational
//                   [';' rational] ']'
//           | 'TJ[' monomial ';' rational ']'
ProductExpr parse_product(const std::string& text);

// Canonical rendering: scalar, q-power, atoms sorted by (kind, m, a).
std::string render_product(const ProductExpr& expr);

}  // namespace nahmforge
