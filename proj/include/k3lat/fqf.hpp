#pragma once

#include "k3lat/matrix.hpp"
#include "k3lat/numeric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace k3lat {

// Finite quadratic form (A, q): A = Z/d1 x ... x Z/dk with d1 | d2 | ... | dk,
// q with values in Q/2Z on the diagonal and the induced pairing in Q/Z off it.
struct FiniteQuadraticForm {
  std::vector<Int> invariant_factors;  // each > 1, divisibility chain
  RatMat qmat;  // diag: q(g_i) in [0,2); off-diag: b(g_i,g_j) in [0,1)

  long length() const { return static_cast<long>(invariant_factors.size()); }

  Int order() const {
    Int o(1);
    for (const auto& d : invariant_factors) o *= d;
    return o;
  }

  bool is_trivial() const { return invariant_factors.empty(); }

  // A == (Z/p)^length for a single prime p
  bool is_p_elementary(const Int& p) const {
    for (const auto& d : invariant_factors)
      if (d != p) return false;
    return true;
  }

  using Elem = std::vector<Int>;

  Elem zero() const { return Elem(invariant_factors.size(), Int(0)); }

  Elem reduce(Elem e) const {
    for (size_t i = 0; i < e.size(); ++i) {
      e[i] %= invariant_factors[i];
      if (e[i] < 0) e[i] += invariant_factors[i];
    }
    return e;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return reduce(r);
  }

  Elem scale(const Elem& a, const Int& n) const {
    Elem r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * n;
    return reduce(r);
  }

  bool is_zero_elem(const Elem& a) const {
    for (const auto& x : a)
      if (x != 0) return false;
    return true;
  }

  Int elem_order(const Elem& a) const {
    Int o(1);
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      Int d = invariant_factors[i] / boost::multiprecision::gcd(a[i], invariant_factors[i]);
      o = boost::multiprecision::lcm(o, d);
    }
    return o;
  }

  Rat q_of(const Elem& a) const {
    Rat v(0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      v += Rat(a[i] * a[i]) * qmat(i, i);
      for (size_t j = i + 1; j < a.size(); ++j)
        if (a[j] != 0) v += Rat(2 * a[i] * a[j]) * qmat(i, j);
    }
    return mod_rat(v, 2);
  }

  Rat pairing(const Elem& a, const Elem& b) const {
    Rat v(0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; j < b.size(); ++j) {
        if (b[j] == 0) continue;
        Rat bij = (i == j) ? mod_rat(qmat(i, i), 1) : qmat(std::min(i, j), std::max(i, j));
        v += Rat(a[i] * b[j]) * bij;
      }
    }
    return mod_rat(v, 1);
  }

  std::vector<Elem> all_elements() const {
    std::vector<Elem> out{zero()};
    for (size_t i = 0; i < invariant_factors.size(); ++i) {
      std::vector<Elem> next;
      next.reserve(out.size() * static_cast<size_t>(invariant_factors[i]));
      for (Int v(0); v < invariant_factors[i]; ++v)
        for (const auto& e : out) {
          Elem f = e;
          f[i] = v;
          next.push_back(std::move(f));
        }
      out = std::move(next);
    }
    return out;
  }

  FiniteQuadraticForm opposite() const {
    FiniteQuadraticForm o = *this;
    for (long i = 0; i < o.qmat.rows; ++i)
      for (long j = 0; j < o.qmat.cols; ++j)
        o.qmat(i, j) = (i == j) ? mod_rat(-o.qmat(i, j), 2) : mod_rat(-o.qmat(i, j), 1);
    return o;
  }

  std::string to_string() const {
    if (is_trivial()) return "trivial";
    std::string s = "Z/" + invariant_factors[0].str();
    for (size_t i = 1; i < invariant_factors.size(); ++i) s += " x Z/" + invariant_factors[i].str();
    s += "; q = [";
    for (long i = 0; i < qmat.rows; ++i) s += (i ? ", " : "") + rat_str(qmat(i, i));
    s += "]";
    return s;
  }
};

namespace detail {

// multiset of (order, q-value) over all elements; a cheap complete invariant filter
inline std::multiset<std::pair<std::string, std::string>> fqf_fingerprint(const FiniteQuadraticForm& f) {
  std::multiset<std::pair<std::string, std::string>> out;
  for (const auto& e : f.all_elements())
    out.insert({f.elem_order(e).str(), rat_str(f.q_of(e))});
  return out;
}

inline bool fqf_generates(const FiniteQuadraticForm& g, const std::vector<FiniteQuadraticForm::Elem>& gens) {
  std::set<FiniteQuadraticForm::Elem> seen{g.zero()};
  std::vector<FiniteQuadraticForm::Elem> frontier{g.zero()};
  while (!frontier.empty()) {
    std::vector<FiniteQuadraticForm::Elem> next;
    for (const auto& e : frontier)
      for (const auto& h : gens) {
        auto s = g.add(e, h);
        if (seen.insert(s).second) next.push_back(s);
      }
    frontier = std::move(next);
  }
  return Int(seen.size()) == g.order();
}

}  // namespace detail

// True iff there is a group isomorphism matching q and the pairing.
// Backtracking over generator images; group order capped.
inline bool fqf_isomorphic(const FiniteQuadraticForm& f, const FiniteQuadraticForm& g,
                           const Int& cap = Int(10000)) {
  if (f.order() > cap || g.order() > cap) throw error("fqf_isomorphic: group order exceeds cap");
  if (f.invariant_factors != g.invariant_factors) return false;
  if (f.is_trivial()) return true;
  if (detail::fqf_fingerprint(f) != detail::fqf_fingerprint(g)) return false;

  auto elems = g.all_elements();
  long k = f.length();
  std::vector<FiniteQuadraticForm::Elem> images(k);

  // candidates per slot: right order and right q-value
  std::vector<std::vector<FiniteQuadraticForm::Elem>> cands(k);
  for (long i = 0; i < k; ++i) {
    FiniteQuadraticForm::Elem gen = f.zero();
    gen[i] = 1;
    Rat qi = f.q_of(gen);
    for (const auto& e : elems)
      if (g.elem_order(e) == f.invariant_factors[i] && g.q_of(e) == qi) cands[i].push_back(e);
    if (cands[i].empty()) return false;
  }

  std::vector<FiniteQuadraticForm::Elem> fgens(k, f.zero());
  for (long i = 0; i < k; ++i) fgens[i][i] = 1;

  std::function<bool(long)> rec = [&](long pos) -> bool {
    if (pos == k) return detail::fqf_generates(g, images);
    for (const auto& cand : cands[pos]) {
      bool ok = true;
      for (long j = 0; j < pos && ok; ++j)
        if (g.pairing(images[j], cand) != f.pairing(fgens[j], fgens[pos])) ok = false;
      if (!ok) continue;
      images[pos] = cand;
      if (rec(pos + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace k3lat
