#pragma once

// k[Z/p^v]-module utilities: Jordan-type decomposition into the
// indecomposables V_j, covariant dimensions, induced modules, and the
// degree-zero Shapiro check. These are the independent decomposition oracles
// backing the skyscraper-module computations.

#include <vector>

#include "curvedef/errors.hpp"
#include "curvedef/fq.hpp"
#include "curvedef/linalg.hpp"

namespace curvedef {

// A module for Z/p^v given by the matrix of a generator. The generator must
// be unipotent: (sigma - 1)^(p^v) = 0.
struct CyclicModule {
  Int p = 3, v = 1;
  FqMatrix sigma;

  Int dim() const { return sigma.rows; }
};

// The regular module V: sigma e_l = e_l + e_{l-1} on a basis e_1..e_{p^v}.
inline CyclicModule regular_module(const FqContext& F, Int p, Int v) {
  Int d = pow_checked(p, v);
  CyclicModule m{p, v, FqMatrix(d, d)};
  for (Int i = 0; i < d; ++i) {
    m.sigma.at(i, i) = F.one();
    if (i + 1 < d) m.sigma.at(i, i + 1) = F.one();
  }
  return m;
}

// V_j: the unique j-dimensional indecomposable, a single unipotent block.
inline CyclicModule indecomposable_module(const FqContext& F, Int p, Int v, Int j) {
  require(j >= 1 && j <= pow_checked(p, v), errc::invalid_input, "j out of [1, p^v]");
  CyclicModule m{p, v, FqMatrix(j, j)};
  for (Int i = 0; i < j; ++i) {
    m.sigma.at(i, i) = F.one();
    if (i + 1 < j) m.sigma.at(i, i + 1) = F.one();
  }
  return m;
}

inline CyclicModule direct_sum(const FqContext&, const CyclicModule& a, const CyclicModule& b) {
  require(a.p == b.p && a.v == b.v, errc::invalid_input, "direct sum over different groups");
  CyclicModule m{a.p, a.v, FqMatrix(a.dim() + b.dim(), a.dim() + b.dim())};
  for (Int i = 0; i < a.dim(); ++i)
    for (Int j = 0; j < a.dim(); ++j) m.sigma.at(i, j) = a.sigma.at(i, j);
  for (Int i = 0; i < b.dim(); ++i)
    for (Int j = 0; j < b.dim(); ++j) m.sigma.at(a.dim() + i, a.dim() + j) = b.sigma.at(i, j);
  return m;
}

// Multiplicities m_j of V_j from ranks of powers of (sigma - 1):
// m_j = r_{j-1} - 2 r_j + r_{j+1} with r_0 = dim.
inline std::vector<Int> jordan_multiplicities(const FqContext& F, const CyclicModule& mod) {
  const Int d = mod.dim();
  const Int q = pow_checked(mod.p, mod.v);
  FqMatrix nil = matsub(F, mod.sigma, FqMatrix::identity(F, d));
  std::vector<Int> r{d};
  FqMatrix pw = FqMatrix::identity(F, d);
  for (Int i = 1; i <= q + 1; ++i) {
    pw = matmul(F, pw, nil);
    r.push_back(rank(F, pw));
    if (r.back() == 0) break;
  }
  require(static_cast<Int>(r.size()) <= q + 1 || r[static_cast<std::size_t>(q)] == 0,
          errc::not_unipotent, "(sigma - 1)^(p^v) != 0");
  while (static_cast<Int>(r.size()) <= q + 1) r.push_back(0);
  std::vector<Int> m;
  Int total = 0;
  for (Int j = 1; j <= q; ++j) {
    Int mj = r[static_cast<std::size_t>(j - 1)] - 2 * r[static_cast<std::size_t>(j)] +
             r[static_cast<std::size_t>(j + 1)];
    require(mj >= 0, errc::internal_mismatch, "negative Jordan multiplicity");
    m.push_back(mj);
    total += j * mj;
  }
  require(total == d, errc::internal_mismatch, "Jordan multiplicities do not partition the dimension");
  return m;
}

// dim of the coinvariants M_G = M / (sigma m - m): d - rank(sigma - 1), the
// number of indecomposable summands.
inline Int covariants_dim(const FqContext& F, const CyclicModule& mod) {
  FqMatrix nil = matsub(F, mod.sigma, FqMatrix::identity(F, mod.dim()));
  const Int q = pow_checked(mod.p, mod.v);
  FqMatrix pw = FqMatrix::identity(F, mod.dim());
  for (Int i = 0; i < q; ++i) pw = matmul(F, pw, nil);
  require(is_zero(pw), errc::not_unipotent, "(sigma - 1)^(p^v) != 0");
  return mod.dim() - rank(F, nil);
}

// Ind_{Z/p^s}^{Z/p^v} M as a block permutation: the generator of the big
// group cycles p^(v-s) coset blocks and feeds the base generator back in on
// the wrap-around.
inline CyclicModule induced_module(const FqContext& F, const CyclicModule& base, Int v) {
  require(v >= base.v, errc::invalid_input, "induction target must contain the subgroup");
  const Int d = base.dim();
  const Int blocks = pow_checked(base.p, v - base.v);
  CyclicModule m{base.p, v, FqMatrix(d * blocks, d * blocks)};
  for (Int b = 0; b + 1 < blocks; ++b)
    for (Int i = 0; i < d; ++i) m.sigma.at((b + 1) * d + i, b * d + i) = F.one();
  for (Int i = 0; i < d; ++i)
    for (Int j = 0; j < d; ++j) m.sigma.at(i, (blocks - 1) * d + j) = base.sigma.at(i, j);
  return m;
}

// Degree-zero Shapiro: coinvariants are preserved under induction.
inline bool shapiro_check(const FqContext& F, const CyclicModule& base, Int v) {
  return covariants_dim(F, induced_module(F, base, v)) == covariants_dim(F, base);
}

}  // namespace curvedef
