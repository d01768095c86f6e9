#pragma once

// Lower-numbering ramification filtrations of cyclic p-groups, the Herbrand
// change of numbering, and the floor-division calculus the pushforward
// pipeline is built on.

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "curvedef/errors.hpp"

namespace curvedef {

using Int = std::int64_t;
using Rat = boost::rational<Int>;

inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Characteristic of the base field. Odd primes only; p = 3 is admitted
// even though some of the formulas were stated for p > 3 (reports carry a
// notice), since nothing below needs more than p != 2.
struct PrimeChar {
  Int p = 3;

  static PrimeChar checked(Int p) {
    require(p >= 3 && is_prime(p), errc::invalid_input,
            "characteristic must be an odd prime >= 3, got " + std::to_string(p));
    return PrimeChar{p};
  }
};

inline Int pow_checked(Int base, Int exp) {
  require(exp >= 0, errc::invalid_input, "negative exponent");
  Int r = 1;
  for (Int i = 0; i < exp; ++i) {
    require(r <= (Int{1} << 62) / base, errc::out_of_range, "power overflow");
    r *= base;
  }
  return r;
}

// floor(a / p) toward -infinity; p > 0.
inline Int delta(Int a, Int p) {
  Int q = a / p;
  if (a % p != 0 && a < 0) --q;
  return q;
}

inline Int delta(Int a, PrimeChar p) { return delta(a, p.p); }

// n-fold composite of delta. For a >= 0 this is the digit truncation
// sum_{i>=n} alpha_i p^{i-n} of the p-adic expansion of a.
inline Int delta_iter(Int a, Int n, Int p) {
  require(n >= 0, errc::invalid_input, "delta_iter: negative iteration count");
  for (Int i = 0; i < n; ++i) a = delta(a, p);
  return a;
}

inline Int delta_iter(Int a, Int n, PrimeChar p) { return delta_iter(a, n, p.p); }

// Two shapes of filtration appear: the cyclic tower case, where the order
// drops by p at each of the k jumps, and the weakly ramified case for
// elementary abelian (or unstructured p-group) decomposition groups, where
// G_0 = G_1 = p^k collapses to 1 at the single jump i = 1.
enum class FiltrationShape { cyclic, weak };

struct LowerFiltration {
  Int p = 3;
  Int k = 1;                       // |G(P)| = p^k
  std::vector<Int> jumps{1};      // lower jumps i_1 < ... (cyclic: exactly k of them)
  FiltrationShape shape = FiltrationShape::cyclic;

  Int highest_jump() const { return jumps.back(); }  // N_P
  Int order() const { return pow_checked(p, k); }    // e_0 = |G(P)|
};

inline LowerFiltration cyclic_filtration(Int p, std::vector<Int> jumps);
inline LowerFiltration weak_filtration(Int p, Int rank);

// e_i is constant on [lo, hi] with value p^order_exp.
struct FiltSegment {
  Int lo, hi, order_exp;
};

namespace detail {

inline void check_filtration_basic(const LowerFiltration& f) {
  require(f.p >= 3 && is_prime(f.p), errc::invalid_input, "bad characteristic");
  require(f.k >= 1, errc::invalid_input, "k must be >= 1");
  require(!f.jumps.empty(), errc::invalid_input, "empty jump sequence");
  require(f.jumps.front() >= 1, errc::invalid_input,
          "first jump must be >= 1 (p-group covers have no tame part)");
  for (std::size_t i = 1; i < f.jumps.size(); ++i)
    require(f.jumps[i] > f.jumps[i - 1], errc::invalid_input,
            "jumps must be strictly increasing");
  if (f.shape == FiltrationShape::cyclic) {
    require(static_cast<Int>(f.jumps.size()) == f.k, errc::invalid_input,
            "cyclic filtration of Z/p^k has exactly k jumps");
  } else {
    require(f.jumps.size() == 1 && f.jumps[0] == 1, errc::invalid_input,
            "weak filtration has the single jump i = 1");
  }
}

}  // namespace detail

// Segments of constant e_i covering [0, N_P]. Sums over i become O(k)
// segment sums, independent of the jump magnitudes.
inline std::vector<FiltSegment> filtration_segments(const LowerFiltration& f) {
  detail::check_filtration_basic(f);
  std::vector<FiltSegment> segs;
  if (f.shape == FiltrationShape::weak) {
    segs.push_back({0, 1, f.k});
    return segs;
  }
  segs.push_back({0, f.jumps[0], f.k});
  for (Int nu = 1; nu < f.k; ++nu)
    segs.push_back({f.jumps[nu - 1] + 1, f.jumps[nu], f.k - nu});
  return segs;
}

// a_0 = i_1, a_nu = (i_{nu+1} - i_nu) / p^nu; positive integrality is the
// cyclic (Hasse-Arf) admissibility condition.
inline std::vector<Int> cyclic_a_coefficients(const LowerFiltration& f) {
  detail::check_filtration_basic(f);
  require(f.shape == FiltrationShape::cyclic, errc::invalid_input,
          "a-coefficients are defined for cyclic filtrations");
  std::vector<Int> a{f.jumps[0]};
  Int pnu = 1;
  for (Int nu = 1; nu < f.k; ++nu) {
    pnu *= f.p;
    Int diff = f.jumps[nu] - f.jumps[nu - 1];
    require(diff % pnu == 0, errc::hasse_arf_violation,
            "jump gap i_" + std::to_string(nu + 1) + " - i_" + std::to_string(nu) +
                " = " + std::to_string(diff) + " is not a positive multiple of p^" +
                std::to_string(nu));
    a.push_back(diff / pnu);
  }
  return a;
}

// Full validity for the cyclic pipeline. Coprimality of the first jump is
// required: i_nu == i_1 (mod p) for all nu, and the multiplicity bookkeeping
// of the tower pushforwards needs the jump weights to be units mod p.
inline void ensure_cyclic_valid(const LowerFiltration& f) {
  cyclic_a_coefficients(f);
  require(f.jumps[0] % f.p != 0, errc::invalid_input,
          "first jump i_1 = " + std::to_string(f.jumps[0]) +
              " is divisible by p; no wild cyclic cover has such a filtration");
}

inline void ensure_valid(const LowerFiltration& f) {
  if (f.shape == FiltrationShape::cyclic)
    ensure_cyclic_valid(f);
  else
    detail::check_filtration_basic(f);
}

inline LowerFiltration cyclic_filtration(Int p, std::vector<Int> jumps) {
  LowerFiltration f{p, static_cast<Int>(jumps.size()), std::move(jumps),
                    FiltrationShape::cyclic};
  ensure_cyclic_valid(f);
  return f;
}

inline LowerFiltration weak_filtration(Int p, Int rank) {
  LowerFiltration f{p, rank, {1}, FiltrationShape::weak};
  detail::check_filtration_basic(f);
  return f;
}

// Herbrand function phi(u) = int_0^u (e_t / e_0) dt, piecewise linear with
// slopes e_i / e_0; exact rational.
inline Rat herbrand_phi(const LowerFiltration& f, Int u) {
  require(u >= 0, errc::invalid_input, "herbrand_phi: u must be >= 0");
  auto segs = filtration_segments(f);
  const Int e0 = f.order();
  Rat acc(0);
  for (const auto& s : segs) {
    Int lo = std::max<Int>(s.lo, 1), hi = std::min<Int>(s.hi, u);
    if (hi >= lo) acc += Rat(hi - lo + 1, 1) * Rat(pow_checked(f.p, s.order_exp), e0);
  }
  if (u > f.highest_jump()) acc += Rat(u - f.highest_jump(), e0);
  return acc;
}

struct UpperJumps {
  std::vector<Int> sigma;  // sigma_1 < ... < sigma_k
  Int f() const { return sigma.back(); }  // f(P), the highest upper jump
};

// sigma_nu = phi(i_nu); Hasse-Arf forces these to be integers exactly when
// the filtration is cyclic-admissible.
inline UpperJumps upper_jumps(const LowerFiltration& filt) {
  detail::check_filtration_basic(filt);
  require(filt.shape == FiltrationShape::cyclic, errc::invalid_input,
          "upper_jumps: cyclic filtrations only");
  UpperJumps u;
  for (Int i : filt.jumps) {
    Rat s = herbrand_phi(filt, i);
    require(s.denominator() == 1, errc::hasse_arf_violation,
            "upper jump phi(" + std::to_string(i) + ") = " +
                std::to_string(s.numerator()) + "/" + std::to_string(s.denominator()) +
                " is not an integer");
    u.sigma.push_back(s.numerator());
  }
  return u;
}

// d_P = sum_{i=0}^{N_P} (2 e_i - 2), evaluated segment by segment.
inline Int d_P(const LowerFiltration& f) {
  Int acc = 0;
  for (const auto& s : filtration_segments(f))
    acc += (s.hi - s.lo + 1) * (2 * pow_checked(f.p, s.order_exp) - 2);
  return acc;
}

// sum_{i=0}^{N_P} (e_i - 1) = d_P / 2, the local ramification-divisor weight.
inline Int ramification_sum(const LowerFiltration& f) { return d_P(f) / 2; }

// Delta^k(d_P). Closed form: 2 + 2 f(P) + Delta^k(-2 N_P - 2). (The additive
// constant 2 is reabsorbed downstream into the 2r term of the degree formula;
// the report surfaces both routes.)
inline Int delta_k_dP(const LowerFiltration& f) {
  ensure_cyclic_valid(f);
  return delta_iter(d_P(f), f.k, f.p);
}

// Jump of the degree-p subcover X_{n-1} -> X_n at (the image of) P, for
// 1 <= n <= k: lower numbering restricts to subgroups, upper numbering passes
// to quotients, and on the cyclic tower this gives N^{(n)} = i_{k-n+1}.
inline Int level_jump(const LowerFiltration& f, Int n) {
  ensure_cyclic_valid(f);
  require(n >= 1, errc::invalid_input, "level index must be >= 1");
  require(n <= f.k, errc::out_of_range,
          "level " + std::to_string(n) + " exceeds k = " + std::to_string(f.k) +
              "; the point is unramified there");
  return f.jumps[static_cast<std::size_t>(f.k - n)];
}

// --- structured validation -------------------------------------------------

struct FiltrationIssue {
  std::string code;     // short machine tag
  std::string message;
  bool hard = true;     // hard violations invalidate; soft ones are warnings
};

struct FiltrationValidation {
  std::vector<FiltrationIssue> issues;
  bool valid() const {
    for (const auto& i : issues)
      if (i.hard) return false;
    return true;
  }
};

// Collects violations instead of aborting. strict_schmid additionally checks
// each consecutive pair of upper jumps (with sigma_0 = 0) against
// sigma_{nu+1} = p sigma_nu, or sigma_{nu+1} >= p sigma_nu with p coprime to
// sigma_{nu+1}; failures are reported as warnings, not hard errors.
inline FiltrationValidation validate_filtration(const LowerFiltration& f,
                                                bool strict_schmid = false) {
  FiltrationValidation v;
  auto hard = [&](std::string code, std::string msg) {
    v.issues.push_back({std::move(code), std::move(msg), true});
  };
  auto warn = [&](std::string code, std::string msg) {
    v.issues.push_back({std::move(code), std::move(msg), false});
  };

  if (f.p < 3 || !is_prime(f.p)) hard("bad_characteristic", "p must be an odd prime >= 3");
  if (f.k < 1) hard("bad_order", "k must be >= 1");
  if (f.jumps.empty()) {
    hard("no_jumps", "empty jump sequence");
    return v;
  }
  if (f.jumps.front() < 1)
    hard("tame_part", "first jump must be >= 1: e_0 = e_1 for p-group covers");
  for (std::size_t i = 1; i < f.jumps.size(); ++i)
    if (f.jumps[i] <= f.jumps[i - 1]) {
      hard("not_increasing", "jumps must be strictly increasing");
      return v;
    }

  if (f.shape == FiltrationShape::weak) {
    if (f.jumps.size() != 1 || f.jumps[0] != 1)
      hard("not_weak", "weak filtration must have the single jump i = 1");
    return v;
  }

  if (static_cast<Int>(f.jumps.size()) != f.k) {
    hard("jump_count", "cyclic filtration of Z/p^k needs exactly k jumps");
    return v;
  }
  bool ha_ok = true;
  try {
    cyclic_a_coefficients(f);
  } catch (const Error& e) {
    hard("hasse_arf", e.what());
    ha_ok = false;
  }
  if (f.jumps[0] >= 1 && f.jumps[0] % f.p == 0)
    hard("first_jump_divisible",
         "first jump divisible by p; not the filtration of a wild cyclic cover");

  if (strict_schmid && ha_ok) {
    auto u = upper_jumps(f);
    Int prev = 0;  // sigma_0
    for (std::size_t nu = 0; nu < u.sigma.size(); ++nu) {
      Int s = u.sigma[nu];
      bool branch1 = (s == f.p * prev);
      bool branch2 = (s >= f.p * prev && s % f.p != 0);
      if (!branch1 && !branch2)
        warn("schmid", "upper jump pair (sigma_" + std::to_string(nu) + ", sigma_" +
                           std::to_string(nu + 1) + ") = (" + std::to_string(prev) +
                           ", " + std::to_string(s) + ") violates the jump congruences");
      prev = s;
    }
  }
  return v;
}

// A filtration is Schmid-admissible when every consecutive upper-jump pair
// satisfies the congruence conditions; exactly these occur for actual wild
// cyclic covers, and they are what makes every m_j >= 0 in the multiplicity
// sweep.
inline bool schmid_admissible(const LowerFiltration& f) {
  if (f.shape != FiltrationShape::cyclic) return true;
  auto v = validate_filtration(f, true);
  for (const auto& i : v.issues)
    if (i.hard || i.code == "schmid") return false;
  return true;
}

}  // namespace curvedef
