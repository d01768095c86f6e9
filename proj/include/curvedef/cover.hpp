#pragma once

// Whole-cover arithmetic: Riemann-Hurwitz genus, Deuring-Shafarevich p-rank,
// the auxiliary divisor A, the invariant divisor D*, and the projectivity
// residue test.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvedef/errors.hpp"
#include "curvedef/filtration.hpp"

namespace curvedef {

enum class GroupKind { cyclic, elementary_abelian, generic_pgroup };

inline const char* group_kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::cyclic: return "cyclic";
    case GroupKind::elementary_abelian: return "elementary";
    case GroupKind::generic_pgroup: return "pgroup";
  }
  return "?";
}

// Cyclic(v): G = Z/p^v. ElementaryAbelian(t): G = (Z/p)^t. GenericPGroup(n):
// |G| = p^n, structure unspecified (weakly ramified formulas only).
struct GroupShape {
  GroupKind kind = GroupKind::cyclic;
  Int e = 1;  // v, t or n; |G| = p^e
};

struct BranchPoint {
  std::string label;
  LowerFiltration filt;

  Int k() const { return filt.k; }
  Int e0() const { return filt.order(); }
};

// One entry per branch orbit (per ramified point of Y); orbit sizes on X and
// on the tower levels are derived, never stored.
struct CoverSpec {
  PrimeChar p;
  GroupShape group;
  Int genus_base = 0;                  // g_Y
  std::optional<Int> p_rank_base;      // gamma_Y, needed by the p-rank route only
  std::vector<BranchPoint> branch;

  Int group_order() const { return pow_checked(p.p, group.e); }
  Int r() const { return static_cast<Int>(branch.size()); }
};

struct CoverIssue {
  std::string code;
  std::string message;
  bool hard = true;
};

struct CoverValidation {
  std::vector<CoverIssue> issues;
  bool valid() const {
    for (const auto& i : issues)
      if (i.hard) return false;
    return true;
  }
};

inline CoverValidation validate_cover(const CoverSpec& s, bool strict_schmid = false) {
  CoverValidation v;
  auto hard = [&](std::string c, std::string m) { v.issues.push_back({std::move(c), std::move(m), true}); };
  auto warn = [&](std::string c, std::string m) { v.issues.push_back({std::move(c), std::move(m), false}); };

  if (s.p.p < 3 || !is_prime(s.p.p)) hard("bad_characteristic", "characteristic must be an odd prime >= 3");
  if (s.p.p == 3) warn("p_equals_3", "p = 3: some of the source formulas were stated for p > 3");
  if (s.group.e < 1) hard("bad_group", "group exponent/rank must be >= 1");
  if (s.group.e > 12) hard("bad_group", "group exponent/rank too large (max 12)");
  if (s.genus_base < 0) hard("bad_genus", "genus_base must be >= 0");
  if (s.p_rank_base) {
    if (*s.p_rank_base < 0) hard("bad_prank", "p_rank_base must be >= 0");
    if (*s.p_rank_base > s.genus_base) hard("bad_prank", "p_rank_base must be <= genus_base");
  }
  if (s.branch.empty()) warn("no_branch", "no branch points: only etale-cover quantities apply");

  std::map<std::string, int> seen;
  for (const auto& b : s.branch) {
    std::string at = "branch point '" + b.label + "': ";
    if (b.label.empty()) hard("bad_label", "branch point with empty label");
    if (++seen[b.label] == 2) hard("dup_label", at + "duplicate label");
    if (b.filt.p != s.p.p) hard("mismatched_p", at + "filtration characteristic differs from cover characteristic");
    if (b.filt.k > s.group.e)
      hard("bad_decomposition", at + "decomposition group p^" + std::to_string(b.filt.k) +
                                    " does not embed in the group");
    bool want_cyclic = s.group.kind == GroupKind::cyclic;
    if (want_cyclic && b.filt.shape != FiltrationShape::cyclic)
      hard("bad_shape", at + "cyclic group needs a cyclic filtration");
    if (!want_cyclic && b.filt.shape != FiltrationShape::weak)
      hard("bad_shape", at + "non-cyclic p-groups are supported in weakly ramified form only "
                            "(single jump at 1)");
    auto fv = validate_filtration(b.filt, strict_schmid);
    for (auto& issue : fv.issues)
      v.issues.push_back({issue.code, at + issue.message, issue.hard});
  }
  if (v.valid()) {
    // top-genus sanity: g_X is derived, never input, so only warn here
    Int rhs = pow_checked(s.p.p, s.group.e) * (2 * s.genus_base - 2);
    for (const auto& b : s.branch)
      rhs += pow_checked(s.p.p, s.group.e - b.filt.k) * ramification_sum(b.filt);
    if (rhs < -2)
      warn("negative_genus", "Riemann-Hurwitz gives a negative top genus; no such cover");
    else if (rhs / 2 + 1 < 2)
      warn("small_genus", "top genus below 2: the dimension routes do not apply");
  }
  return v;
}

inline void ensure_valid_cover(const CoverSpec& s) {
  auto v = validate_cover(s);
  for (const auto& i : v.issues)
    if (i.hard) fail(errc::invalid_input, i.message);
}

// Number of points of X_n = X/H_n above a branch point with k(P) = k:
// p^(v - max(n, k)). Level 0 is X itself; for non-cyclic shapes only n = 0
// makes sense and gives the plain orbit size |G| / e_0.
inline Int orbit_size_at_level(const CoverSpec& s, const BranchPoint& b, Int n) {
  return pow_checked(s.p.p, s.group.e - std::max(n, b.filt.k));
}

// Degree of the ramification divisor R = sum_P sum_i (e_i(P) - 1) P on X.
inline Int ramification_divisor_degree(const CoverSpec& s) {
  Int acc = 0;
  for (const auto& b : s.branch) acc += orbit_size_at_level(s, b, 0) * ramification_sum(b.filt);
  return acc;
}

// Genus of the top curve via Riemann-Hurwitz:
// 2 g_X - 2 = |G| (2 g_Y - 2) + deg R. Always derived, never an input.
inline Int genus_top(const CoverSpec& s) {
  ensure_valid_cover(s);
  Int rhs = s.group_order() * (2 * s.genus_base - 2) + ramification_divisor_degree(s);
  require(rhs % 2 == 0, errc::non_integral_genus,
          "Riemann-Hurwitz right side is odd; inconsistent ramification data");
  Int g = rhs / 2 + 1;
  require(g >= 0, errc::non_integral_genus, "negative genus from Riemann-Hurwitz");
  return g;
}

// Genus of the top curve computed level by level down the cyclic tower,
// cross-validating the per-level jumps N^{(n)} = i_{k-n+1}.
inline Int genus_top_telescoped(const CoverSpec& s) {
  ensure_valid_cover(s);
  require(s.group.kind == GroupKind::cyclic, errc::invalid_input,
          "telescoped genus: cyclic covers only");
  const Int p = s.p.p, v = s.group.e;
  Int g = s.genus_base;  // g_{X_v}
  for (Int n = v; n >= 1; --n) {
    Int ram = 0;
    for (const auto& b : s.branch) {
      if (b.filt.k < n) continue;  // unramified at this level
      Int pts = orbit_size_at_level(s, b, n - 1);
      ram += pts * (level_jump(b.filt, n) + 1) * (p - 1);
    }
    Int rhs = p * (2 * g - 2) + ram;
    require(rhs % 2 == 0, errc::non_integral_genus, "odd Riemann-Hurwitz at tower level");
    g = rhs / 2 + 1;
  }
  return g;
}

// Deuring-Shafarevich: gamma_X - 1 = |G| (gamma_Y - 1 + sum (1 - 1/e_0(b_i))).
inline Int prank_top(const CoverSpec& s) {
  ensure_valid_cover(s);
  require(s.p_rank_base.has_value(), errc::invalid_input, "p_rank_base is required");
  const Int G = s.group_order();
  Int acc = G * (*s.p_rank_base - 1);
  for (const auto& b : s.branch) acc += G - G / b.e0();
  Int gamma = acc + 1;
  require(gamma >= 0, errc::no_such_cover,
          "Deuring-Shafarevich gives negative p-rank: no such cover exists");
  return gamma;
}

// The auxiliary effective divisor A on Y with coefficient
// floor( sum_i (e_i - 1) / e_0 ) at each branch point.
inline std::vector<std::pair<std::string, Int>> divisor_A(const CoverSpec& s) {
  ensure_valid_cover(s);
  require(genus_top(s) >= 2, errc::invalid_input, "divisor A needs g_X >= 2");
  std::vector<std::pair<std::string, Int>> a;
  for (const auto& b : s.branch)
    a.emplace_back(b.label, ramification_sum(b.filt) / b.e0());
  return a;
}

// l(K + A) = g_Y - 1 + deg A; the existence bound for the invariant effective
// differential behind D*.
inline Int ell_K_plus_A(const CoverSpec& s) {
  Int deg = 0;
  for (const auto& [label, c] : divisor_A(s)) deg += c;
  Int ell = s.genus_base - 1 + deg;
  require(ell >= 1, errc::existence_failure,
          "l(K+A) = " + std::to_string(ell) + " < 1: no invariant effective differential");
  return ell;
}

// deg D* = 2 g_X - 2 (D* is a canonical divisor).
inline Int dstar_degree(const CoverSpec& s) {
  Int g = genus_top(s);
  require(g >= 2, errc::invalid_input, "D* needs g_X >= 2");
  return 2 * g - 2;
}

// dim of global 2-differentials, 3 g_X - 3 = deg 2D* + 1 - g_X.
inline Int total_dim_2differentials(const CoverSpec& s) {
  Int g = genus_top(s);
  require(g >= 2, errc::invalid_input, "needs g_X >= 2");
  return 3 * g - 3;
}

// Projectivity residue criterion: true iff every wildly ramified point has
// coefficient n_P = -1 (mod e_0(P)). Coefficients are given per branch label;
// points absent from the cover's branch locus are vacuously fine.
inline bool koeck_projective_check(const std::map<std::string, Int>& coeff,
                                   const CoverSpec& s) {
  for (const auto& b : s.branch) {
    auto it = coeff.find(b.label);
    require(it != coeff.end(), errc::invalid_input,
            "no coefficient given at wild point '" + b.label + "'");
    Int e0 = b.e0();
    if (((it->second + 1) % e0 + e0) % e0 != 0) return false;
  }
  return true;
}

// Coefficients of D' = 2D* + sum 3P at the wild points: 4(e_0 - 1) + 3,
// which always passes the residue test in the weakly ramified case.
inline std::map<std::string, Int> weak_dprime_coefficients(const CoverSpec& s) {
  std::map<std::string, Int> c;
  for (const auto& b : s.branch) c[b.label] = 4 * (b.e0() - 1) + 3;
  return c;
}

inline bool weakly_ramified(const CoverSpec& s) {
  return std::all_of(s.branch.begin(), s.branch.end(), [](const BranchPoint& b) {
    return b.filt.jumps.size() == 1 && b.filt.jumps[0] == 1;
  });
}

}  // namespace curvedef
