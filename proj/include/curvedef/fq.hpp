#pragma once

// Exact arithmetic in F_{p^t}. Elements are indices in [0, q): the element
// with coefficient vector (c_0, ..., c_{t-1}) against the power basis of
// F_p[x]/(f) has index sum c_i p^i. All products go through a table built
// once per context, so everything downstream is table lookups.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "curvedef/errors.hpp"
#include "curvedef/filtration.hpp"

namespace curvedef {

using FqElem = std::int32_t;

namespace fqdetail {

// c = a*b mod (f, p) on coefficient vectors; f monic of degree t.
inline std::vector<Int> polymulmod(const std::vector<Int>& a, const std::vector<Int>& b,
                                   const std::vector<Int>& f, Int p) {
  const std::size_t t = f.size() - 1;
  std::vector<Int> prod(2 * t - 1, 0);
  for (std::size_t i = 0; i < t; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < t; ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (std::size_t d = 2 * t - 2; d >= t && d < prod.size(); --d) {
    Int c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (std::size_t i = 0; i < t; ++i)
      prod[d - t + i] = ((prod[d - t + i] - c * f[i]) % p + p) % p;
  }
  prod.resize(t);
  return prod;
}

inline std::vector<Int> polypowmod(std::vector<Int> base, Int e, const std::vector<Int>& f,
                                   Int p) {
  const std::size_t t = f.size() - 1;
  std::vector<Int> r(t, 0);
  r[0] = 1;
  while (e > 0) {
    if (e & 1) r = polymulmod(r, base, f, p);
    base = polymulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

// x^(p^t) == x mod f, and x^(p^(t/s)) - x coprime to f for prime s | t.
inline bool poly_irreducible(const std::vector<Int>& f, Int p) {
  const Int t = static_cast<Int>(f.size()) - 1;
  if (t == 1) return true;
  std::vector<Int> x(static_cast<std::size_t>(t), 0);
  if (t >= 2)
    x[1] = 1;
  auto frob = [&](Int e) { return polypowmod(x, pow_checked(p, e), f, p); };
  auto xq = frob(t);
  if (xq != x) return false;
  for (Int s = 2; s <= t; ++s) {
    if (t % s != 0 || !is_prime(s)) continue;
    auto g = frob(t / s);
    // g - x must be a unit mod f: check gcd(g - x, f) = 1 via the roots of a
    // nonzero polynomial of degree < t; cheap polynomial gcd.
    std::vector<Int> d(static_cast<std::size_t>(t), 0);
    for (Int i = 0; i < t; ++i) d[static_cast<std::size_t>(i)] = ((g[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]) % p + p) % p;
    // gcd(d, f) over F_p
    std::vector<Int> A = f, B = d;
    auto deg = [](const std::vector<Int>& v) {
      for (std::size_t i = v.size(); i-- > 0;)
        if (v[i] != 0) return static_cast<Int>(i);
      return Int{-1};
    };
    auto inv_mod_p = [&](Int a) {
      Int r = 1, b = ((a % p) + p) % p, e = p - 2;
      while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
      }
      return r;
    };
    while (deg(B) >= 0) {
      Int da = deg(A), db = deg(B);
      if (da < db) {
        std::swap(A, B);
        continue;
      }
      Int c = A[static_cast<std::size_t>(da)] * inv_mod_p(B[static_cast<std::size_t>(db)]) % p;
      for (Int i = 0; i <= db; ++i)
        A[static_cast<std::size_t>(da - db + i)] =
            ((A[static_cast<std::size_t>(da - db + i)] - c * B[static_cast<std::size_t>(i)]) % p + p) % p;
    }
    if (deg(A) != 0) return false;
  }
  return true;
}

}  // namespace fqdetail

class FqContext {
 public:
  // Searches for a monic irreducible of degree t by seeded random sampling;
  // any irreducible works since only ranks and dimensions are consumed.
  FqContext(Int p, Int t, std::uint64_t seed = 1)
      : p_(p), t_(t), seed_(seed), q_(pow_checked(p, t)) {
    require(p >= 2 && is_prime(p), errc::invalid_input, "field characteristic must be prime");
    require(t >= 1, errc::invalid_input, "extension degree must be >= 1");
    require(q_ <= 4096, errc::work_limit_exceeded,
            "field size " + std::to_string(q_) + " exceeds the table limit");
    std::mt19937_64 rng(seed);
    poly_.assign(static_cast<std::size_t>(t) + 1, 0);
    poly_.back() = 1;
    if (t == 1) {
      poly_[0] = 0;  // F_p itself: f = x
    } else {
      for (int tries = 0; tries < 100000; ++tries) {
        for (Int i = 0; i < t; ++i) poly_[static_cast<std::size_t>(i)] = static_cast<Int>(rng() % static_cast<std::uint64_t>(p));
        if (poly_[0] != 0 && fqdetail::poly_irreducible(poly_, p)) break;
        require(tries + 1 < 100000, errc::internal_mismatch, "irreducible search failed");
      }
    }
    build_tables();
  }

  Int p() const { return p_; }
  Int t() const { return t_; }
  Int q() const { return q_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<Int>& modulus() const { return poly_; }

  FqElem zero() const { return 0; }
  FqElem one() const { return 1; }
  FqElem from_fp(Int c) const { return static_cast<FqElem>(((c % p_) + p_) % p_); }

  FqElem add(FqElem a, FqElem b) const { return add_[idx(a, b)]; }
  FqElem sub(FqElem a, FqElem b) const { return add_[idx(a, neg_[static_cast<std::size_t>(b)])]; }
  FqElem neg(FqElem a) const { return neg_[static_cast<std::size_t>(a)]; }
  FqElem mul(FqElem a, FqElem b) const { return mul_[idx(a, b)]; }
  FqElem inv(FqElem a) const {
    require(a != 0, errc::domain_error, "inverse of zero");
    return inv_[static_cast<std::size_t>(a)];
  }

  // coefficient vector <-> index
  std::vector<Int> coeffs(FqElem a) const {
    std::vector<Int> c(static_cast<std::size_t>(t_));
    Int x = a;
    for (Int i = 0; i < t_; ++i) {
      c[static_cast<std::size_t>(i)] = x % p_;
      x /= p_;
    }
    return c;
  }
  FqElem encode(const std::vector<Int>& c) const {
    Int x = 0;
    for (std::size_t i = c.size(); i-- > 0;) x = x * p_ + ((c[i] % p_ + p_) % p_);
    return static_cast<FqElem>(x);
  }

 private:
  std::size_t idx(FqElem a, FqElem b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) + static_cast<std::size_t>(b);
  }

  void build_tables() {
    const std::size_t q = static_cast<std::size_t>(q_);
    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    std::vector<std::vector<Int>> cs(q);
    for (std::size_t a = 0; a < q; ++a) cs[a] = coeffs(static_cast<FqElem>(a));
    for (std::size_t a = 0; a < q; ++a) {
      std::vector<Int> n(static_cast<std::size_t>(t_));
      for (Int i = 0; i < t_; ++i) n[static_cast<std::size_t>(i)] = (p_ - cs[a][static_cast<std::size_t>(i)]) % p_;
      neg_[a] = encode(n);
      for (std::size_t b = 0; b < q; ++b) {
        std::vector<Int> s(static_cast<std::size_t>(t_));
        for (Int i = 0; i < t_; ++i) s[static_cast<std::size_t>(i)] = (cs[a][static_cast<std::size_t>(i)] + cs[b][static_cast<std::size_t>(i)]) % p_;
        add_[a * q + b] = encode(s);
        mul_[a * q + b] = encode(fqdetail::polymulmod(cs[a], cs[b], poly_, p_));
      }
    }
    for (std::size_t a = 1; a < q; ++a) {
      if (inv_[a] != 0) continue;
      for (std::size_t b = 1; b < q; ++b)
        if (mul_[a * q + b] == 1) {
          inv_[a] = static_cast<FqElem>(b);
          inv_[b] = static_cast<FqElem>(a);
          break;
        }
    }
  }

  Int p_, t_;
  std::uint64_t seed_;
  Int q_;
  std::vector<Int> poly_;
  std::vector<FqElem> add_, mul_, neg_, inv_;
};

}  // namespace curvedef
