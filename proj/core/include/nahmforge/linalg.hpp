#pragma once

#include <optional>
#include <vector>

#include "nahmforge/rational.hpp"

namespace nahmforge {

using RatVector = std::vector<Rat>;

// Symmetric rational matrix.
struct RatMatrix {
  std::vector<RatVector> entries;  // square, symmetric

  RatMatrix() = default;
  explicit RatMatrix(std::vector<RatVector> e);

  std::size_t rank() const { return entries.size(); }
  const Rat& at(std::size_t i, std::size_t j) const { return entries[i][j]; }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.entries == b.entries;
  }
};

Rat determinant(const RatMatrix& A);

// Exact inverse; SingularMatrix when not invertible.
RatMatrix inverse(const RatMatrix& A);

RatVector mat_vec(const RatMatrix& A, const RatVector& x);
Rat dot(const RatVector& a, const RatVector& b);

// All leading principal minors positive (exact test).
bool is_positive_definite(const RatMatrix& A);

// A = L*D*L^T with unit lower-triangular L and positive diagonal D; empty
// when A is not positive definite.
struct LDLDecomp {
  std::vector<RatVector> L;
  RatVector D;
};
std::optional<LDLDecomp> ldl(const RatMatrix& A);

}  // namespace nahmforge
