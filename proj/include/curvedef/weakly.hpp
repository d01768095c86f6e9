#pragma once

// The weakly ramified route: the 3-dimensional skyscraper module at a wild
// point with its unipotent action through (alpha_1, alpha_2), its H_0 and H_1
// over the group computed from the normalised bar resolution, and the closed
// form 3 g_Y - 3 + r + sum log_p |G(P_j)|.

#include <cstdlib>
#include <random>
#include <vector>

#include "curvedef/cover.hpp"
#include "curvedef/errors.hpp"
#include "curvedef/fq.hpp"
#include "curvedef/linalg.hpp"

namespace curvedef {

// G(P) = (Z/p)^t with elements indexed in mixed radix: the element with
// exponent vector (c_0, ..., c_{t-1}) has index sum c_i p^i; index 0 is the
// identity. alpha1 must be an injective additive map into F_{p^t}; alpha2
// must satisfy alpha2(gh) = alpha2(g) + alpha2(h) + 2 alpha1(g) alpha1(h).
struct SigmaLocal {
  Int t = 1;
  std::vector<FqElem> alpha1;  // size q = p^t, indexed by group element
  std::vector<FqElem> alpha2;
};

inline Int group_add(Int p, Int t, Int a, Int b) {
  Int out = 0, mul = 1;
  for (Int i = 0; i < t; ++i) {
    out += ((a % p + b % p) % p) * mul;
    a /= p;
    b /= p;
    mul *= p;
  }
  return out;
}

// Build alpha1, alpha2 from values on the t standard generators. alpha2 is
// alpha1^2 plus an arbitrary additive part beta: that is the general solution
// of the cocycle condition in odd characteristic, so any beta is admissible.
inline SigmaLocal make_sigma_local(const FqContext& F, Int t,
                                   const std::vector<FqElem>& alpha1_gen,
                                   const std::vector<FqElem>& beta_gen) {
  require(F.t() == t, errc::invalid_input, "field F_{p^t} must match the rank t");
  require(static_cast<Int>(alpha1_gen.size()) == t && static_cast<Int>(beta_gen.size()) == t,
          errc::invalid_input, "need one alpha1/beta value per generator");
  const Int p = F.p(), q = F.q();
  SigmaLocal loc;
  loc.t = t;
  loc.alpha1.assign(static_cast<std::size_t>(q), 0);
  loc.alpha2.assign(static_cast<std::size_t>(q), 0);
  for (Int g = 0; g < q; ++g) {
    Int x = g;
    FqElem a1 = F.zero(), beta = F.zero();
    for (Int i = 0; i < t; ++i) {
      Int c = x % p;
      x /= p;
      for (Int rep = 0; rep < c; ++rep) {
        a1 = F.add(a1, alpha1_gen[static_cast<std::size_t>(i)]);
        beta = F.add(beta, beta_gen[static_cast<std::size_t>(i)]);
      }
    }
    loc.alpha1[static_cast<std::size_t>(g)] = a1;
    loc.alpha2[static_cast<std::size_t>(g)] = F.add(F.mul(a1, a1), beta);
  }
  return loc;
}

// Default: generators to the power basis 1, x, ..., x^{t-1} and beta = 0.
inline SigmaLocal default_sigma_local(const FqContext& F, Int t) {
  std::vector<FqElem> gens, beta(static_cast<std::size_t>(t), 0);
  for (Int i = 0; i < t; ++i) {
    std::vector<Int> c(static_cast<std::size_t>(t), 0);
    c[static_cast<std::size_t>(i)] = 1;
    gens.push_back(F.encode(c));
  }
  return make_sigma_local(F, t, gens, beta);
}

inline SigmaLocal random_sigma_local(const FqContext& F, Int t, std::mt19937_64& rng) {
  std::vector<FqElem> gens, beta;
  for (Int i = 0; i < t; ++i) {
    std::vector<Int> c(static_cast<std::size_t>(t), 0);
    c[static_cast<std::size_t>(i)] = 1;
    gens.push_back(F.encode(c));
    beta.push_back(static_cast<FqElem>(rng() % static_cast<std::uint64_t>(F.q())));
  }
  return make_sigma_local(F, t, gens, beta);
}

// Action of g on the stalk basis (omega_1, omega_2, omega_3): unipotent
// lower-triangular with subdiagonal alpha_1, 2 alpha_1 and corner alpha_2.
inline FqMatrix sigma_action(const FqContext& F, const SigmaLocal& loc, Int g) {
  FqMatrix m = FqMatrix::identity(F, 3);
  FqElem a1 = loc.alpha1[static_cast<std::size_t>(g)];
  FqElem a2 = loc.alpha2[static_cast<std::size_t>(g)];
  m.at(1, 0) = a1;
  m.at(2, 0) = a2;
  m.at(2, 1) = F.add(a1, a1);
  return m;
}

// Validation: alpha1 additive, injective (nonzero off the identity, images of
// the generators F_p-independent), alpha2 the stated cocycle; the induced
// matrices then form a representation, which is checked exhaustively for
// small groups and by sampling otherwise.
inline void validate_sigma_local(const FqContext& F, const SigmaLocal& loc) {
  const Int p = F.p(), q = F.q(), t = loc.t;
  require(static_cast<Int>(loc.alpha1.size()) == q && static_cast<Int>(loc.alpha2.size()) == q,
          errc::invalid_input, "alpha tables must cover the group");
  require(loc.alpha1[0] == F.zero() && loc.alpha2[0] == F.zero(), errc::invalid_input,
          "alpha(identity) must vanish");
  for (Int g = 1; g < q; ++g)
    require(loc.alpha1[static_cast<std::size_t>(g)] != F.zero(), errc::invalid_input,
            "alpha1 must be nonzero off the identity");
  // generator images independent over F_p: t x t coefficient matrix rank t
  {
    std::vector<std::vector<Int>> rows;
    Int idx = 1;
    for (Int i = 0; i < t; ++i) {
      rows.push_back(F.coeffs(loc.alpha1[static_cast<std::size_t>(idx)]));
      idx *= p;
    }
    Int rank_p = 0;
    for (Int c = 0; c < t && rank_p < t; ++c) {
      Int piv = -1;
      for (Int r = rank_p; r < t; ++r)
        if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] % p != 0) { piv = r; break; }
      if (piv < 0) continue;
      std::swap(rows[static_cast<std::size_t>(piv)], rows[static_cast<std::size_t>(rank_p)]);
      Int lead = rows[static_cast<std::size_t>(rank_p)][static_cast<std::size_t>(c)] % p;
      Int inv = 1, b = lead, e = p - 2;
      while (e) { if (e & 1) inv = inv * b % p; b = b * b % p; e >>= 1; }
      for (Int r = 0; r < t; ++r) {
        if (r == rank_p) continue;
        Int f = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] % p;
        if (f == 0) continue;
        for (Int cc = 0; cc < t; ++cc)
          rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] =
              ((rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -
                f * inv % p * rows[static_cast<std::size_t>(rank_p)][static_cast<std::size_t>(cc)]) % p + p) % p;
      }
      ++rank_p;
    }
    require(rank_p == t, errc::invalid_input, "alpha1 generator images are F_p-dependent");
  }
  const bool exhaustive = q <= 128;
  std::mt19937_64 rng(7);
  auto pair_ok = [&](Int g, Int h) {
    Int gh = group_add(p, t, g, h);
    FqElem lhs1 = loc.alpha1[static_cast<std::size_t>(gh)];
    FqElem rhs1 = F.add(loc.alpha1[static_cast<std::size_t>(g)], loc.alpha1[static_cast<std::size_t>(h)]);
    if (lhs1 != rhs1) return false;
    FqElem prod = F.mul(loc.alpha1[static_cast<std::size_t>(g)], loc.alpha1[static_cast<std::size_t>(h)]);
    FqElem lhs2 = loc.alpha2[static_cast<std::size_t>(gh)];
    FqElem rhs2 = F.add(F.add(loc.alpha2[static_cast<std::size_t>(g)], loc.alpha2[static_cast<std::size_t>(h)]),
                        F.add(prod, prod));
    return lhs2 == rhs2;
  };
  if (exhaustive) {
    for (Int g = 0; g < q; ++g)
      for (Int h = 0; h < q; ++h)
        require(pair_ok(g, h), errc::invalid_input, "alpha2 violates the cocycle condition");
  } else {
    for (int s = 0; s < 4096; ++s) {
      Int g = static_cast<Int>(rng() % static_cast<std::uint64_t>(q));
      Int h = static_cast<Int>(rng() % static_cast<std::uint64_t>(q));
      require(pair_ok(g, h), errc::invalid_input, "alpha2 violates the cocycle condition");
    }
  }
}

inline Int bar_resolution_work_limit() {
  if (const char* env = std::getenv("WORK_LIMIT")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<Int>(v);
  }
  return 125;
}

// dim H_0(G(P), Sigma_P): the stalk modulo the span of all (g - 1) omega,
// by rank over F_{p^t}. The expected value is 1 for every p, t.
inline Int h0_sigma(const FqContext& F, const SigmaLocal& loc) {
  validate_sigma_local(F, loc);
  RankAccumulator acc(F, 3);
  const FqMatrix id = FqMatrix::identity(F, 3);
  for (Int g = 1; g < F.q(); ++g) {
    FqMatrix d = matsub(F, sigma_action(F, loc, g), id);
    for (Int c = 0; c < 3; ++c)
      acc.add_column({d.at(0, c), d.at(1, c), d.at(2, c)});
  }
  return 3 - acc.rank();
}

// dim H_1(G(P), Sigma_P) from the normalised bar resolution: boundary maps
// d1(omega (x) [g]) = (g omega - omega) (x) [], and
// d2(omega (x) [g|h]) = (g omega) (x) [h] - omega (x) [gh] + omega (x) [g]
// with [1] = 0; the answer is dim ker d1 - rank d2. Expected t - 1.
inline Int h1_sigma_bar(const FqContext& F, const SigmaLocal& loc,
                        Int work_limit = bar_resolution_work_limit()) {
  validate_sigma_local(F, loc);
  const Int p = F.p(), q = F.q(), t = loc.t;
  require(q <= work_limit, errc::work_limit_exceeded,
          "|G(P)| = " + std::to_string(q) + " exceeds the work limit " +
              std::to_string(work_limit));
  const Int n1 = q - 1;  // nontrivial symbols [g]
  std::vector<FqMatrix> act;
  act.reserve(static_cast<std::size_t>(q));
  for (Int g = 0; g < q; ++g) act.push_back(sigma_action(F, loc, g));
  const FqMatrix id = FqMatrix::identity(F, 3);

  RankAccumulator d1(F, 3);
  for (Int g = 1; g < q; ++g) {
    FqMatrix d = matsub(F, act[static_cast<std::size_t>(g)], id);
    for (Int c = 0; c < 3; ++c) d1.add_column({d.at(0, c), d.at(1, c), d.at(2, c)});
  }
  const Int ker1 = 3 * n1 - d1.rank();

  RankAccumulator d2(F, 3 * n1);
  std::vector<FqElem> col(static_cast<std::size_t>(3 * n1));
  for (Int g = 1; g < q && !d2.full(); ++g) {
    const FqMatrix& Mg = act[static_cast<std::size_t>(g)];
    for (Int h = 1; h < q && !d2.full(); ++h) {
      Int gh = group_add(p, t, g, h);
      for (Int c = 0; c < 3; ++c) {
        std::fill(col.begin(), col.end(), 0);
        const Int bh = (h - 1) * 3;
        for (Int r = 0; r < 3; ++r) col[static_cast<std::size_t>(bh + r)] = Mg.at(r, c);
        if (gh != 0) {
          const Int bgh = (gh - 1) * 3;
          col[static_cast<std::size_t>(bgh + c)] =
              F.sub(col[static_cast<std::size_t>(bgh + c)], F.one());
        }
        const Int bg = (g - 1) * 3;
        col[static_cast<std::size_t>(bg + c)] = F.add(col[static_cast<std::size_t>(bg + c)], F.one());
        d2.add_column(col);
      }
    }
  }
  return ker1 - d2.rank();
}

// dim of the coinvariants of the projective complement k[G]^a:
// 3 (g_Y - 1) + 3 r.
inline Int dim_projective_part(const CoverSpec& s) {
  ensure_valid_cover(s);
  require(weakly_ramified(s), errc::not_weakly_ramified,
          "spec has a jump above 1; the projective-part formula needs a weakly "
          "ramified cover");
  require(genus_top(s) >= 2, errc::invalid_input, "needs g_X >= 2");
  return 3 * (s.genus_base - 1) + 3 * s.r();
}

// Closed form 3 g_Y - 3 + r + sum_j log_p |G(P_j)|, checked against the exact
// sequence assembly H_1 + projective - H_0 with the closed-form per-point
// values (H_0 = 1, H_1 = t_j - 1).
inline Int dim_h1_weak(const CoverSpec& s) {
  ensure_valid_cover(s);
  for (const auto& b : s.branch)
    require(b.filt.jumps.size() == 1 && b.filt.jumps[0] == 1, errc::not_weakly_ramified,
            "branch point '" + b.label + "' has a jump above 1");
  require(genus_top(s) >= 2, errc::invalid_input, "needs g_X >= 2");
  Int sum_t = 0;
  for (const auto& b : s.branch) sum_t += b.filt.k;
  const Int r = s.r();
  Int closed = 3 * s.genus_base - 3 + r + sum_t;
  Int assembly = (sum_t - r) + dim_projective_part(s) - r;
  require(closed == assembly, errc::internal_mismatch, "closed form != exact sequence assembly");
  return closed;
}

}  // namespace curvedef
