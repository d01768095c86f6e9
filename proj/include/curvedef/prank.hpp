#pragma once

// The Cartier-operator route: the semisimple/nilpotent split of the
// 2-differentials, the projective exponent B(G, D*, k), and the dimension
// formula with the nilpotent covariant count as an explicit input.

#include <optional>

#include "curvedef/cover.hpp"
#include "curvedef/errors.hpp"

namespace curvedef {

// Semisimple dimension after Subrao's support reduction:
// dim Omega(-D)^s = gamma_X + deg D_red - 1.
inline Int semisimple_dim_subrao(Int gamma_X, Int deg_dred) {
  require(deg_dred >= 1, errc::domain_error,
          "the support reduction needs a nonempty divisor (deg D*_red >= 1)");
  return gamma_X + deg_dred - 1;
}

// B(G, D*, k) = 2 (g_Y - 1) + gamma_Y - 1 + r, the exponent in
// V_{D*} = k[G]^B.
inline Int borne_invariant_B(const CoverSpec& s) {
  ensure_valid_cover(s);
  require(s.p_rank_base.has_value(), errc::invalid_input, "p_rank_base is required");
  require(s.genus_base >= 1, errc::domain_error,
          "the p-rank route needs g_Y >= 1 (for g_Y = 0 the auxiliary "
          "differential has poles and the support bookkeeping fails)");
  Int B = 2 * (s.genus_base - 1) + *s.p_rank_base - 1 + s.r();
  require(B >= 0, errc::negative_b, "B = " + std::to_string(B) + " < 0: inconsistent data");
  require(genus_top(s) >= 2, errc::invalid_input, "needs g_X >= 2");
  return B;
}

// deg D*_red = |G| (2 g_Y - 2) + sum_i |G| / e_0(b_i): one unit of degree per
// point of X over the support, counted by orbit sizes.
inline Int dred_degree(const CoverSpec& s) {
  ensure_valid_cover(s);
  require(s.genus_base >= 1, errc::domain_error, "the p-rank route needs g_Y >= 1");
  const Int G = s.group_order();
  Int deg = G * (2 * s.genus_base - 2);
  for (const auto& b : s.branch) deg += G / b.e0();
  return deg;
}

// dim of the nilpotent part: 3 g_X - 3 - |G| B.
inline Int nilpotent_dim(const CoverSpec& s) {
  Int n = total_dim_2differentials(s) - s.group_order() * borne_invariant_B(s);
  require(n >= 0, errc::negative_dimension,
          "negative nilpotent dimension: inconsistent spec");
  return n;
}

// dim H^1(G, T_X) = B + dim Omega(-D*)^n_G. The nilpotent covariant count is
// never derivable from the combinatorial data alone and must be supplied.
inline Int dim_h1_prank(const CoverSpec& s, Int n_covariants) {
  require(n_covariants >= 0, errc::invalid_input, "nilpotent covariant count must be >= 0");
  return borne_invariant_B(s) + n_covariants;
}

struct PrankReport {
  Int B = 0;
  Int semisimple_dim = 0;   // |G| B, cross-checked against the Subrao route
  Int nilpotent_dim = 0;
  Int gamma_top = 0;
  Int deg_dred = 0;
};

inline PrankReport prank_report(const CoverSpec& s) {
  PrankReport r;
  r.B = borne_invariant_B(s);
  r.gamma_top = prank_top(s);
  r.deg_dred = dred_degree(s);
  r.semisimple_dim = s.group_order() * r.B;
  Int subrao = semisimple_dim_subrao(r.gamma_top, r.deg_dred);
  require(subrao == r.semisimple_dim, errc::internal_mismatch,
          "two-route semisimple dimension mismatch: " + std::to_string(subrao) + " vs " +
              std::to_string(r.semisimple_dim));
  r.nilpotent_dim = nilpotent_dim(s);
  return r;
}

}  // namespace curvedef
