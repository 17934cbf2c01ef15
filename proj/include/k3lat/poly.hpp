#pragma once

#include "k3lat/numeric.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace k3lat {

// Dense univariate polynomial over Q in the variable t.
// Invariant: coefficient list has no trailing zeros; empty list is the zero
// polynomial. Degrees in this library stay small, so dense storage is fine.
struct RatPoly {
  std::vector<Rat> c;  // c[i] is the coefficient of t^i

  RatPoly() = default;
  explicit RatPoly(const Rat& r) {
    if (r != 0) c = {r};
  }
  explicit RatPoly(std::vector<Rat> cs) : c(std::move(cs)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool is_zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }  // deg 0 poly -> 0, zero -> -1
  const Rat& lead() const {
    if (is_zero()) throw error("leading coefficient of zero polynomial");
    return c.back();
  }
  Rat coeff(long i) const {
    if (i < 0 || i >= static_cast<long>(c.size())) return Rat(0);
    return c[i];
  }

  static RatPoly t_power(long k, const Rat& a = Rat(1)) {
    RatPoly p;
    if (a == 0) return p;
    p.c.assign(k + 1, Rat(0));
    p.c[k] = a;
    return p;
  }

  bool operator==(const RatPoly& o) const { return c == o.c; }
  bool operator!=(const RatPoly& o) const { return !(*this == o); }

  Rat eval(const Rat& x) const {
    Rat v(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
  }

  bool is_monic() const { return !is_zero() && lead() == 1; }
};

inline RatPoly operator+(const RatPoly& p, const RatPoly& q) {
  RatPoly r;
  r.c.resize(std::max(p.c.size(), q.c.size()));
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = p.coeff(i) + q.coeff(i);
  r.trim();
  return r;
}

inline RatPoly operator-(const RatPoly& p) {
  RatPoly r = p;
  for (auto& x : r.c) x = -x;
  return r;
}

inline RatPoly operator-(const RatPoly& p, const RatPoly& q) { return p + (-q); }

inline RatPoly operator*(const RatPoly& p, const RatPoly& q) {
  if (p.is_zero() || q.is_zero()) return RatPoly();
  RatPoly r;
  r.c.assign(p.c.size() + q.c.size() - 1, Rat(0));
  for (size_t i = 0; i < p.c.size(); ++i) {
    if (p.c[i] == 0) continue;
    for (size_t j = 0; j < q.c.size(); ++j) r.c[i + j] += p.c[i] * q.c[j];
  }
  r.trim();
  return r;
}

inline RatPoly operator*(const RatPoly& p, const Rat& s) {
  if (s == 0) return RatPoly();
  RatPoly r = p;
  for (auto& x : r.c) x *= s;
  return r;
}

inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& p, const RatPoly& q) {
  if (q.is_zero()) throw error("polynomial division by zero");
  RatPoly rem = p, quo;
  if (p.degree() >= q.degree()) quo.c.assign(p.degree() - q.degree() + 1, Rat(0));
  while (!rem.is_zero() && rem.degree() >= q.degree()) {
    long k = rem.degree() - q.degree();
    Rat f = rem.lead() / q.lead();
    quo.c[k] = f;
    for (size_t i = 0; i < q.c.size(); ++i) rem.c[i + k] -= f * q.c[i];
    rem.trim();
  }
  quo.trim();
  return {quo, rem};
}

inline RatPoly operator/(const RatPoly& p, const RatPoly& q) {
  auto [quo, rem] = divmod(p, q);
  if (!rem.is_zero()) throw error("inexact polynomial division");
  return quo;
}

inline bool divides(const RatPoly& q, const RatPoly& p) {
  return divmod(p, q).second.is_zero();
}

inline RatPoly monic(const RatPoly& p) {
  if (p.is_zero()) return p;
  return p * (Rat(1) / p.lead());
}

inline RatPoly derivative(const RatPoly& p) {
  RatPoly d;
  if (p.degree() < 1) return d;
  d.c.resize(p.c.size() - 1);
  for (size_t i = 1; i < p.c.size(); ++i) d.c[i - 1] = p.c[i] * Rat(Int(i));
  return d;
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline RatPoly pow(const RatPoly& p, long e) {
  RatPoly r = RatPoly(Rat(1));
  for (long i = 0; i < e; ++i) r = r * p;
  return r;
}

// Largest e with place^e | f; f nonzero.
inline long poly_valuation(const RatPoly& f, const RatPoly& place) {
  if (f.is_zero()) throw error("valuation of the zero polynomial is undefined");
  if (place.degree() < 1) throw error("valuation at a constant place");
  long e = 0;
  RatPoly g = f;
  while (true) {
    auto [q, r] = divmod(g, place);
    if (!r.is_zero()) return e;
    ++e;
    g = q;
  }
}

// substitute t -> s*t (s rational, nonzero)
inline RatPoly scale_var(const RatPoly& p, const Rat& s) {
  RatPoly r = p;
  Rat f(1);
  for (size_t i = 0; i < r.c.size(); ++i) {
    r.c[i] *= f;
    f *= s;
  }
  r.trim();
  return r;
}

// s^w * p(1/s): requires deg p <= w
inline RatPoly reverse_into(const RatPoly& p, long w) {
  if (p.degree() > w) throw error("degree exceeds weight in reverse_into");
  RatPoly r;
  r.c.assign(w + 1, Rat(0));
  for (size_t i = 0; i < p.c.size(); ++i) r.c[w - i] = p.c[i];
  r.trim();
  return r;
}

// p(t^k)
inline RatPoly inflate(const RatPoly& p, long k) {
  RatPoly r;
  if (p.is_zero()) return r;
  r.c.assign(static_cast<size_t>(p.degree()) * k + 1, Rat(0));
  for (size_t i = 0; i < p.c.size(); ++i) r.c[i * k] = p.c[i];
  r.trim();
  return r;
}

// If all exponents of p are multiples of k, return q with q(t^k) = p.
inline std::optional<RatPoly> deflate(const RatPoly& p, long k) {
  RatPoly q;
  if (p.is_zero()) return q;
  q.c.assign(p.degree() / k + 1, Rat(0));
  for (size_t i = 0; i < p.c.size(); ++i) {
    if (p.c[i] == 0) continue;
    if (i % k != 0) return std::nullopt;
    q.c[i / k] = p.c[i];
  }
  q.trim();
  return q;
}

inline std::optional<RatPoly> poly_sqrt(const RatPoly& p) {
  if (p.is_zero()) return RatPoly();
  if (p.degree() % 2 != 0) return std::nullopt;
  auto lead = perfect_sqrt(p.lead());
  if (!lead) return std::nullopt;
  // long-division square root from the top
  RatPoly r = RatPoly::t_power(p.degree() / 2, *lead);
  RatPoly rem = p - r * r;
  while (!rem.is_zero()) {
    long k = rem.degree() - r.degree();
    if (k < 0) return std::nullopt;
    Rat f = rem.lead() / (Rat(2) * r.lead());
    r = r + RatPoly::t_power(k, f);
    rem = p - r * r;
    if (rem.degree() >= p.degree()) return std::nullopt;
  }
  return r;
}

// Squarefree decomposition (Yun): f = lead * prod_i out[i]^(i+1), out[i] monic squarefree.
inline std::vector<RatPoly> squarefree_decomposition(const RatPoly& f) {
  if (f.is_zero()) throw error("squarefree decomposition of zero");
  std::vector<RatPoly> out;
  RatPoly p = monic(f);
  if (p.degree() < 1) return out;
  RatPoly d = derivative(p);
  RatPoly a = gcd(p, d);
  RatPoly b = p / a, c = d / a;
  while (true) {
    RatPoly z = c - derivative(b);
    if (z.is_zero()) {
      out.push_back(b);
      break;
    }
    RatPoly g = gcd(b, z);
    out.push_back(g);
    b = b / g;
    c = z / g;
  }
  return out;
}

inline RatPoly squarefree_part(const RatPoly& f) {
  RatPoly r(Rat(1));
  for (const auto& g : squarefree_decomposition(f)) r = r * g;
  return monic(r);
}

// Rational roots of p (via the rational root theorem on the primitive integer form).
inline std::vector<Rat> rational_roots(const RatPoly& p) {
  std::vector<Rat> roots;
  if (p.is_zero() || p.degree() < 1) return roots;
  // clear denominators
  Int lcm(1);
  for (const auto& x : p.c) lcm = boost::multiprecision::lcm(lcm, den(x));
  std::vector<Int> ic(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) ic[i] = num(p.c[i] * Rat(lcm));
  // strip t^k
  size_t low = 0;
  while (ic[low] == 0) ++low;
  if (low > 0) roots.push_back(Rat(0));
  Int a0 = abs_int(ic[low]), an = abs_int(ic.back());
  auto divisors = [](const Int& n) {
    std::vector<Int> ds;
    for (Int d = 1; d * d <= n; ++d)
      if (n % d == 0) {
        ds.push_back(d);
        if (d * d != n) ds.push_back(n / d);
      }
    return ds;
  };
  for (const Int& pnum : divisors(a0))
    for (const Int& qden : divisors(an))
      for (int s : {1, -1}) {
        Rat cand(s * pnum, qden);
        if (p.eval(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

struct CoprimeBasis {
  std::vector<RatPoly> basis;               // monic, squarefree, pairwise coprime
  std::vector<std::vector<long>> exponents; // exponents[i][j]: multiplicity of basis[j] in input i
  std::vector<Rat> contents;                // input i == contents[i] * prod basis[j]^exponents[i][j]
};

// Pairwise-coprime squarefree basis of a family of nonzero polynomials,
// optionally splitting off rational roots as linear places.
inline CoprimeBasis coprime_basis(const std::vector<RatPoly>& polys, bool split_rational_roots = true) {
  std::vector<RatPoly> basis;
  for (const auto& f : polys) {
    if (f.is_zero()) throw error("coprime_basis: zero polynomial input");
    for (const auto& g : squarefree_decomposition(f))
      if (g.degree() >= 1) basis.push_back(monic(g));
  }
  // gcd refinement until pairwise coprime
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < basis.size() && !changed; ++i)
      for (size_t j = i + 1; j < basis.size() && !changed; ++j) {
        RatPoly g = gcd(basis[i], basis[j]);
        if (g.degree() >= 1) {
          RatPoly qi = basis[i] / g, qj = basis[j] / g;
          std::vector<RatPoly> next;
          for (size_t k = 0; k < basis.size(); ++k)
            if (k != i && k != j) next.push_back(basis[k]);
          for (const auto& h : {g, qi, qj})
            if (h.degree() >= 1) next.push_back(h);
          basis = std::move(next);
          changed = true;
        } else if (basis[i] == basis[j]) {
          basis.erase(basis.begin() + j);
          changed = true;
        }
      }
  }
  // deduplicate
  std::sort(basis.begin(), basis.end(), [](const RatPoly& x, const RatPoly& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    return x.c < y.c;
  });
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());

  if (split_rational_roots) {
    std::vector<RatPoly> split;
    for (const auto& q : basis) {
      RatPoly rest = q;
      for (const Rat& r : rational_roots(q)) {
        RatPoly lin(std::vector<Rat>{-r, Rat(1)});
        rest = rest / lin;
        split.push_back(lin);
      }
      if (rest.degree() >= 1) split.push_back(rest);
    }
    basis = std::move(split);
    std::sort(basis.begin(), basis.end(), [](const RatPoly& x, const RatPoly& y) {
      if (x.degree() != y.degree()) return x.degree() < y.degree();
      return x.c < y.c;
    });
  }

  CoprimeBasis out;
  out.basis = basis;
  for (const auto& f : polys) {
    std::vector<long> e(basis.size(), 0);
    RatPoly g = f;
    for (size_t j = 0; j < basis.size(); ++j) {
      while (divides(basis[j], g)) {
        g = g / basis[j];
        ++e[j];
      }
    }
    if (g.degree() != 0) throw error("coprime_basis: refinement failed to exhaust an input");
    out.exponents.push_back(std::move(e));
    out.contents.push_back(g.coeff(0));
  }
  return out;
}

// Rational function in reduced form with monic denominator.
struct RatFunc {
  RatPoly num_, den_;

  RatFunc() : num_(), den_(Rat(1)) {}
  RatFunc(const Rat& r) : num_(r), den_(Rat(1)) {}
  RatFunc(RatPoly n) : num_(std::move(n)), den_(Rat(1)) {}
  RatFunc(RatPoly n, RatPoly d) { assign(std::move(n), std::move(d)); }

  void assign(RatPoly n, RatPoly d) {
    if (d.is_zero()) throw error("rational function with zero denominator");
    if (n.is_zero()) {
      num_ = RatPoly();
      den_ = RatPoly(Rat(1));
      return;
    }
    RatPoly g = gcd(n, d);
    n = n / g;
    d = d / g;
    Rat lead = d.lead();
    num_ = n * (Rat(1) / lead);
    den_ = d * (Rat(1) / lead);
  }

  const RatPoly& num() const { return num_; }
  const RatPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.degree() == 0; }

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
};

inline RatFunc operator+(const RatFunc& x, const RatFunc& y) {
  return RatFunc(x.num() * y.den() + y.num() * x.den(), x.den() * y.den());
}
inline RatFunc operator-(const RatFunc& x) { return RatFunc(-x.num(), x.den()); }
inline RatFunc operator-(const RatFunc& x, const RatFunc& y) { return x + (-y); }
inline RatFunc operator*(const RatFunc& x, const RatFunc& y) {
  return RatFunc(x.num() * y.num(), x.den() * y.den());
}
inline RatFunc operator/(const RatFunc& x, const RatFunc& y) {
  if (y.is_zero()) throw error("division by zero rational function");
  return RatFunc(x.num() * y.den(), x.den() * y.num());
}

inline std::string poly_str(const RatPoly& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::string s;
  for (long i = p.degree(); i >= 0; --i) {
    Rat c = p.coeff(i);
    if (c == 0) continue;
    if (!s.empty()) s += (c > 0) ? " + " : " - ";
    else if (c < 0) s += "-";
    Rat a = c < 0 ? Rat(-c) : c;
    bool unit = (a == 1) && i > 0;
    if (!unit) s += rat_str(a);
    if (i > 0) {
      if (!unit) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace k3lat
