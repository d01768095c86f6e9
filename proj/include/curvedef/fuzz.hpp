#pragma once

// Randomized cross-check driver: generates admissible covers, runs every
// mandatory identity, and shrinks failures to a minimal reproducing document.
// Generation is Schmid-admissible by construction: exactly the jump data
// actual cyclic towers produce, and the class on which the multiplicity sweep
// is provably non-negative.

#include <algorithm>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "curvedef/borne.hpp"
#include "curvedef/cover.hpp"
#include "curvedef/document.hpp"
#include "curvedef/prank.hpp"
#include "curvedef/report.hpp"
#include "curvedef/weakly.hpp"

namespace curvedef {

inline Int rand_int(std::mt19937_64& rng, Int lo, Int hi) {
  return lo + static_cast<Int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Random Schmid-admissible cyclic filtration: a_0 <= 5 coprime to p, then
// either the geometric step a_nu = (p-1) sigma_nu or a unit-offset above it.
inline LowerFiltration random_schmid_filtration(std::mt19937_64& rng, Int p, Int kmax) {
  Int k = rand_int(rng, 1, kmax);
  std::vector<Int> a;
  Int a0 = rand_int(rng, 1, 5);
  while (a0 % p == 0) a0 = rand_int(rng, 1, 5);
  a.push_back(a0);
  Int sigma = a0;
  for (Int nu = 1; nu < k; ++nu) {
    Int anu = (p - 1) * sigma;
    if (rand_int(rng, 0, 1)) {
      Int d = rand_int(rng, 1, 4);
      while (d % p == 0) d = rand_int(rng, 1, 4);
      anu += d;
    }
    a.push_back(anu);
    sigma += anu;
  }
  std::vector<Int> jumps;
  Int acc = 0, pw = 1;
  for (Int nu = 0; nu < k; ++nu) {
    acc += a[static_cast<std::size_t>(nu)] * pw;
    jumps.push_back(acc);
    pw *= p;
  }
  return cyclic_filtration(p, jumps);
}

struct FuzzConfig {
  std::uint64_t seed = 1;
  Int count = 100;
  DigitOrder digit_order = DigitOrder::paper;
  std::vector<Int> primes{3, 5};
  Int v_max = 3;
  Int g_max = 5;
  Int r_max = 6;
};

inline CoverSpec random_cyclic_spec(std::mt19937_64& rng, const FuzzConfig& cfg) {
  for (int tries = 0; tries < 1000; ++tries) {
    CoverSpec s;
    s.p = PrimeChar{cfg.primes[static_cast<std::size_t>(rand_int(rng, 0, static_cast<Int>(cfg.primes.size()) - 1))]};
    Int v = rand_int(rng, 1, cfg.v_max);
    s.group = GroupShape{GroupKind::cyclic, v};
    s.genus_base = rand_int(rng, 0, cfg.g_max);
    Int r = rand_int(rng, 1, cfg.r_max);
    for (Int i = 0; i < r; ++i) {
      BranchPoint b;
      b.label = "b" + std::to_string(i + 1);
      b.filt = random_schmid_filtration(rng, s.p.p, v);
      s.branch.push_back(std::move(b));
    }
    if (s.genus_base >= 1 && rand_int(rng, 0, 1)) {
      // only attach a p-rank for which Deuring-Shafarevich is consistent;
      // gamma_X is monotone in gamma_Y and gamma_Y = g_Y always works
      for (Int gamma = rand_int(rng, 0, s.genus_base); gamma <= s.genus_base; ++gamma) {
        s.p_rank_base = gamma;
        try {
          prank_top(s);
          break;
        } catch (const Error&) {
          s.p_rank_base.reset();
        }
      }
    }
    try {
      if (genus_top(s) >= 2) return s;
    } catch (const Error&) {
    }
  }
  fail(errc::internal_mismatch, "spec generation failed to hit g_X >= 2");
}

inline CoverSpec random_weak_spec(std::mt19937_64& rng, const FuzzConfig& cfg) {
  for (int tries = 0; tries < 1000; ++tries) {
    CoverSpec s;
    static const Int weak_primes[] = {3, 5, 7};
    s.p = PrimeChar{weak_primes[rand_int(rng, 0, 2)]};
    Int kind = rand_int(rng, 0, 2);
    Int e = rand_int(rng, kind == 0 ? 1 : 2, 3);
    s.group = GroupShape{kind == 0   ? GroupKind::cyclic
                         : kind == 1 ? GroupKind::elementary_abelian
                                     : GroupKind::generic_pgroup,
                         e};
    s.genus_base = rand_int(rng, 0, cfg.g_max);
    Int r = rand_int(rng, 1, cfg.r_max);
    for (Int i = 0; i < r; ++i) {
      BranchPoint b;
      b.label = "b" + std::to_string(i + 1);
      if (s.group.kind == GroupKind::cyclic)
        b.filt = cyclic_filtration(s.p.p, {1});
      else
        b.filt = weak_filtration(s.p.p, rand_int(rng, 1, std::min<Int>(e, 2)));
      s.branch.push_back(std::move(b));
    }
    try {
      if (genus_top(s) >= 2) return s;
    } catch (const Error&) {
    }
  }
  fail(errc::internal_mismatch, "weak spec generation failed to hit g_X >= 2");
}

// Every identity the build stakes its correctness on. Returns the name of the
// first failing check, or nothing.
inline std::optional<std::string> mandatory_check_failure(const CoverSpec& s,
                                                          DigitOrder order) {
  try {
    Int gX = genus_top(s);
    if (genus_top_telescoped(s) != gX) return "telescoped_riemann_hurwitz";
    for (const auto& b : s.branch) {
      Int f = upper_jumps(b.filt).f();
      Int closed = 2 + 2 * f + delta_iter(-2 * b.filt.highest_jump() - 2, b.filt.k, s.p.p);
      if (delta_k_dP(b.filt) != closed) return "delta_dP_closed_form";
    }
    auto rep = borne_multiplicities(s, order);
    if (rep.dim_covariants != rep.deg_D1 + 1 - s.genus_base) return "covariant_dim_two_routes";
    if (rep.deg_D1 + 1 - s.genus_base != dim_h1_cyclic_closed_form(s))
      return "covariant_dim_closed_form";
    if (rep.sum_j_m != 3 * gX - 3) return "total_dim_conservation";
    if (!rep.all_nonneg) return "m_nonnegative";
    if (s.p_rank_base && s.genus_base >= 1) {
      auto pr = prank_report(s);  // throws InternalMismatch if the two routes split
      (void)pr;
    }
  } catch (const Error& e) {
    return std::string("exception: ") + e.what();
  }
  return std::nullopt;
}

inline std::optional<std::string> weak_check_failure(const CoverSpec& s) {
  try {
    Int sum_t = 0;
    for (const auto& b : s.branch) sum_t += b.filt.k;
    Int closed = dim_h1_weak(s);
    Int assembly = (sum_t - s.r()) + dim_projective_part(s) - s.r();
    if (closed != assembly) return "weak_assembly";
    if (s.group.kind == GroupKind::cyclic && s.p.p == 3 &&
        closed != dim_h1_cyclic_closed_form(s))
      return "weak_vs_cyclic_p3";
  } catch (const Error& e) {
    return std::string("exception: ") + e.what();
  }
  return std::nullopt;
}

namespace fuzzdetail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Candidate simplifications of a failing spec, most aggressive first.
inline std::vector<CoverSpec> shrink_candidates(const CoverSpec& s) {
  std::vector<CoverSpec> out;
  for (std::size_t i = 0; i < s.branch.size(); ++i) {
    if (s.branch.size() == 1) break;
    CoverSpec c = s;
    c.branch.erase(c.branch.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(std::move(c));
  }
  if (s.genus_base > 0) {
    CoverSpec c = s;
    c.genus_base -= 1;
    if (c.p_rank_base && *c.p_rank_base > c.genus_base) c.p_rank_base = c.genus_base;
    out.push_back(std::move(c));
  }
  if (s.p_rank_base) {
    CoverSpec c = s;
    c.p_rank_base.reset();
    out.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < s.branch.size(); ++i) {
    const auto& f = s.branch[i].filt;
    if (f.shape != FiltrationShape::cyclic) continue;
    if (f.k > 1) {  // drop the deepest jump
      CoverSpec c = s;
      auto j = f.jumps;
      j.pop_back();
      c.branch[i].filt = LowerFiltration{f.p, f.k - 1, j, FiltrationShape::cyclic};
      out.push_back(std::move(c));
    }
    // pull each a-coefficient to its Schmid minimum
    auto a = cyclic_a_coefficients(f);
    for (std::size_t nu = 0; nu < a.size(); ++nu) {
      Int sigma = 0;
      for (std::size_t m = 0; m < nu; ++m) sigma += a[m];
      Int amin = nu == 0 ? 1 : (f.p - 1) * sigma;
      if (a[nu] <= amin) continue;
      auto a2 = a;
      a2[nu] = amin;
      std::vector<Int> jumps;
      Int acc = 0, pw = 1;
      for (std::size_t m = 0; m < a2.size(); ++m) {
        acc += a2[m] * pw;
        jumps.push_back(acc);
        pw *= f.p;
      }
      CoverSpec c = s;
      c.branch[i].filt = LowerFiltration{f.p, f.k, jumps, FiltrationShape::cyclic};
      out.push_back(std::move(c));
    }
  }
  return out;
}

inline bool spec_ok(const CoverSpec& s) {
  try {
    return validate_cover(s).valid() && genus_top(s) >= 2;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace fuzzdetail

template <typename CheckFn>
inline CoverSpec shrink_failure(CoverSpec s, CheckFn&& still_fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto& cand : fuzzdetail::shrink_candidates(s)) {
      if (!fuzzdetail::spec_ok(cand)) continue;
      if (still_fails(cand)) {
        s = std::move(cand);
        progress = true;
        break;
      }
    }
  }
  return s;
}

// Runs the sweep; returns the process exit code (0 clean, 2 on any mandatory
// identity failure). Failures are minimized and printed sorted by document
// hash so aggregation order cannot leak into the output.
inline int run_fuzz(const FuzzConfig& cfg, std::ostream& out) {
  std::mt19937_64 rng(cfg.seed);
  struct Failure {
    std::uint64_t hash;
    std::string check, doc;
  };
  std::vector<Failure> failures;
  Int weak_every = 5;  // every fifth spec exercises the weakly ramified route
  for (Int i = 0; i < cfg.count; ++i) {
    bool weak = (i % weak_every == 4);
    CoverSpec s = weak ? random_weak_spec(rng, cfg) : random_cyclic_spec(rng, cfg);
    std::optional<std::string> failed =
        weak ? weak_check_failure(s)
             : mandatory_check_failure(s, cfg.digit_order);
    if (weak && !failed && s.group.kind == GroupKind::cyclic)
      failed = mandatory_check_failure(s, cfg.digit_order);
    if (!failed) continue;
    auto still = [&](const CoverSpec& c) {
      auto f = weak ? weak_check_failure(c) : mandatory_check_failure(c, cfg.digit_order);
      return f && *f == *failed;
    };
    CoverSpec minimized = shrink_failure(s, still);
    DocumentOptions o;
    o.digit_order = cfg.digit_order;
    std::string doc = render_document(minimized, o);
    failures.push_back({fuzzdetail::fnv1a(doc), *failed, doc});
  }
  std::sort(failures.begin(), failures.end(),
            [](const Failure& a, const Failure& b) { return a.hash < b.hash; });
  if (failures.empty()) {
    out << "fuzz: " << cfg.count << " specs, all mandatory identities hold (seed "
        << cfg.seed << ", digit order " << digit_order_name(cfg.digit_order) << ")\n";
    return 0;
  }
  out << "fuzz: " << failures.size() << " of " << cfg.count
      << " specs failed a mandatory identity (seed " << cfg.seed << ")\n";
  for (const auto& f : failures) {
    out << "---- failed check: " << f.check << " (doc hash " << f.hash << ")\n";
    out << f.doc;
  }
  return 2;
}

}  // namespace curvedef
