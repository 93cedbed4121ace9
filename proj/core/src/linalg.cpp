#include "nahmforge/linalg.hpp"

namespace nahmforge {

RatMatrix::RatMatrix(std::vector<RatVector> e) : entries(std::move(e)) {
  const std::size_t n = entries.size();
  for (const auto& row : entries)
    if (row.size() != n) raise("RankMismatch", "matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (entries[i][j] != entries[j][i])
        raise("DomainError", "matrix is not symmetric");
}

Rat determinant(const RatMatrix& A) {
  const std::size_t n = A.rank();
  std::vector<RatVector> m = A.entries;
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rat(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rat f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& A) {
  const std::size_t n = A.rank();
  std::vector<RatVector> m = A.entries;
  std::vector<RatVector> inv(n, RatVector(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) raise("SingularMatrix", "matrix has no inverse");
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      std::swap(inv[pivot], inv[col]);
    }
    Rat p = m[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      m[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  RatMatrix out;
  out.entries = std::move(inv);
  return out;
}

RatVector mat_vec(const RatMatrix& A, const RatVector& x) {
  const std::size_t n = A.rank();
  if (x.size() != n) raise("RankMismatch", "vector length does not match matrix rank");
  RatVector y(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y[i] += A.entries[i][j] * x[j];
  return y;
}

Rat dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) raise("RankMismatch", "vector length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_positive_definite(const RatMatrix& A) {
  // Leading principal minors via the LDL pivots: all D entries positive.
  return ldl(A).has_value();
}

std::optional<LDLDecomp> ldl(const RatMatrix& A) {
  const std::size_t n = A.rank();
  LDLDecomp out;
  out.L.assign(n, RatVector(n, Rat(0)));
  out.D.assign(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) out.L[i][i] = 1;
  for (std::size_t j = 0; j < n; ++j) {
    Rat d = A.entries[j][j];
    for (std::size_t k = 0; k < j; ++k) d -= out.L[j][k] * out.L[j][k] * out.D[k];
    if (d <= 0) return std::nullopt;
    out.D[j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rat v = A.entries[i][j];
      for (std::size_t k = 0; k < j; ++k) v -= out.L[i][k] * out.L[j][k] * out.D[k];
      out.L[i][j] = v / d;
    }
  }
  return out;
}

}  // namespace nahmforge
