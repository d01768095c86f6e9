#pragma once

// Dense matrices over F_{p^t} with exact Gaussian elimination. Everything is
// a field, so plain row reduction covers rank, kernels and products; no
// normal-form machinery is needed at these sizes.

#include <vector>

#include "curvedef/errors.hpp"
#include "curvedef/fq.hpp"

namespace curvedef {

struct FqMatrix {
  Int rows = 0, cols = 0;
  std::vector<FqElem> a;

  FqMatrix() = default;
  FqMatrix(Int r, Int c) : rows(r), cols(c), a(static_cast<std::size_t>(r * c), 0) {}

  FqElem& at(Int r, Int c) { return a[static_cast<std::size_t>(r * cols + c)]; }
  FqElem at(Int r, Int c) const { return a[static_cast<std::size_t>(r * cols + c)]; }

  static FqMatrix identity(const FqContext& F, Int n) {
    FqMatrix m(n, n);
    for (Int i = 0; i < n; ++i) m.at(i, i) = F.one();
    return m;
  }
};

inline FqMatrix matmul(const FqContext& F, const FqMatrix& A, const FqMatrix& B) {
  require(A.cols == B.rows, errc::invalid_input, "matmul shape mismatch");
  FqMatrix C(A.rows, B.cols);
  for (Int i = 0; i < A.rows; ++i)
    for (Int k = 0; k < A.cols; ++k) {
      FqElem aik = A.at(i, k);
      if (aik == 0) continue;
      for (Int j = 0; j < B.cols; ++j)
        C.at(i, j) = F.add(C.at(i, j), F.mul(aik, B.at(k, j)));
    }
  return C;
}

inline FqMatrix matsub(const FqContext& F, const FqMatrix& A, const FqMatrix& B) {
  require(A.rows == B.rows && A.cols == B.cols, errc::invalid_input, "matsub shape mismatch");
  FqMatrix C(A.rows, A.cols);
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
  return C;
}

inline bool is_zero(const FqMatrix& A) {
  for (FqElem x : A.a)
    if (x != 0) return false;
  return true;
}

inline Int rank(const FqContext& F, FqMatrix m) {
  Int rk = 0;
  for (Int c = 0; c < m.cols && rk < m.rows; ++c) {
    Int piv = -1;
    for (Int r = rk; r < m.rows; ++r)
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rk)
      for (Int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rk, j));
    FqElem iv = F.inv(m.at(rk, c));
    for (Int j = c; j < m.cols; ++j) m.at(rk, j) = F.mul(iv, m.at(rk, j));
    for (Int r = 0; r < m.rows; ++r) {
      if (r == rk) continue;
      FqElem f = m.at(r, c);
      if (f == 0) continue;
      for (Int j = c; j < m.cols; ++j)
        m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(rk, j)));
    }
    ++rk;
  }
  return rk;
}

inline Int kernel_dim(const FqContext& F, const FqMatrix& m) { return m.cols - rank(F, m); }

// Incremental column-space rank: columns are fed one at a time and reduced
// against a growing echelon basis. Lets the bar-resolution boundary maps be
// streamed instead of materialized.
class RankAccumulator {
 public:
  RankAccumulator(const FqContext& F, Int height) : F_(F), height_(height) {}

  // Returns true when the column enlarged the span.
  bool add_column(std::vector<FqElem> col) {
    require(static_cast<Int>(col.size()) == height_, errc::invalid_input, "column height mismatch");
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      FqElem f = col[static_cast<std::size_t>(pivots_[b])];
      if (f == 0) continue;
      const auto& bv = basis_[b];
      for (Int i = 0; i < height_; ++i)
        col[static_cast<std::size_t>(i)] = F_.sub(col[static_cast<std::size_t>(i)], F_.mul(f, bv[static_cast<std::size_t>(i)]));
    }
    Int piv = -1;
    for (Int i = 0; i < height_; ++i)
      if (col[static_cast<std::size_t>(i)] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return false;
    FqElem iv = F_.inv(col[static_cast<std::size_t>(piv)]);
    for (Int i = 0; i < height_; ++i) col[static_cast<std::size_t>(i)] = F_.mul(iv, col[static_cast<std::size_t>(i)]);
    // Back-eliminate so no basis vector has a nonzero at another's pivot;
    // this keeps the single forward pass above exact.
    for (auto& bv : basis_) {
      FqElem f = bv[static_cast<std::size_t>(piv)];
      if (f == 0) continue;
      for (Int i = 0; i < height_; ++i)
        bv[static_cast<std::size_t>(i)] = F_.sub(bv[static_cast<std::size_t>(i)], F_.mul(f, col[static_cast<std::size_t>(i)]));
    }
    pivots_.push_back(piv);
    basis_.push_back(std::move(col));
    return true;
  }

  Int rank() const { return static_cast<Int>(basis_.size()); }
  bool full() const { return rank() == height_; }

 private:
  const FqContext& F_;
  Int height_;
  std::vector<std::vector<FqElem>> basis_;
  std::vector<Int> pivots_;
};

}  // namespace curvedef
