#pragma once

#include "k3lat/fqf.hpp"
#include "k3lat/matrix.hpp"
#include "k3lat/numeric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace k3lat {

// Even (or odd) integer lattice: free Z-module with a symmetric Gram matrix
// on a fixed basis. Basis vectors may carry labels.
struct Lattice {
  IntMat gram;
  std::vector<std::string> labels;
  std::string name;

  Lattice() = default;
  explicit Lattice(IntMat g, std::vector<std::string> lab = {}, std::string nm = {})
      : gram(std::move(g)), labels(std::move(lab)), name(std::move(nm)) {
    if (gram.rows != gram.cols) throw error("Gram matrix must be square");
    for (long i = 0; i < gram.rows; ++i)
      for (long j = i + 1; j < gram.cols; ++j)
        if (gram(i, j) != gram(j, i)) throw error("Gram matrix must be symmetric");
    if (!labels.empty() && static_cast<long>(labels.size()) != gram.rows)
      throw error("label count does not match rank");
  }

  long rank() const { return gram.rows; }

  bool is_even() const {
    for (long i = 0; i < rank(); ++i)
      if (gram(i, i) % 2 != 0) return false;
    return true;
  }

  Int determinant() const { return det(gram); }

  Int pair(const std::vector<Int>& x, const std::vector<Int>& y) const {
    Int s(0);
    for (long i = 0; i < rank(); ++i) {
      if (x[i] == 0) continue;
      for (long j = 0; j < rank(); ++j)
        if (y[j] != 0) s += x[i] * gram(i, j) * y[j];
    }
    return s;
  }

  Rat pair_q(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    Rat s(0);
    for (long i = 0; i < rank(); ++i) {
      if (x[i] == 0) continue;
      for (long j = 0; j < rank(); ++j)
        if (y[j] != 0) s += x[i] * Rat(gram(i, j)) * y[j];
    }
    return s;
  }
};

struct Signature {
  long s_plus = 0, s_minus = 0, s_zero = 0;
  bool operator==(const Signature& o) const {
    return s_plus == o.s_plus && s_minus == o.s_minus && s_zero == o.s_zero;
  }
  std::string to_string() const {
    return "(" + std::to_string(s_plus) + "," + std::to_string(s_minus) +
           (s_zero ? "," + std::to_string(s_zero) : "") + ")";
  }
};

// Exact signature by symmetric congruence diagonalization over Q.
inline Signature signature_of(const IntMat& gram) {
  long n = gram.rows;
  RatMat g = to_rat(gram);
  Signature sig;
  auto sym_addmul = [&](long i, long j, const Rat& f) {
    for (long k = 0; k < n; ++k) g(i, k) += f * g(j, k);
    for (long k = 0; k < n; ++k) g(k, i) += f * g(k, j);
  };
  auto sym_swap = [&](long i, long j) {
    for (long k = 0; k < n; ++k) std::swap(g(i, k), g(j, k));
    for (long k = 0; k < n; ++k) std::swap(g(k, i), g(k, j));
  };
  for (long k = 0; k < n; ++k) {
    if (g(k, k) == 0) {
      long p = -1;
      for (long i = k + 1; i < n; ++i)
        if (g(i, i) != 0) { p = i; break; }
      if (p >= 0) {
        sym_swap(k, p);
      } else {
        // all remaining diagonal zero; find an off-diagonal entry
        long pi = -1, pj = -1;
        for (long i = k; i < n && pi < 0; ++i)
          for (long j = i + 1; j < n; ++j)
            if (g(i, j) != 0) { pi = i; pj = j; break; }
        if (pi < 0) {
          sig.s_zero += n - k;
          return sig;
        }
        sym_addmul(pi, pj, Rat(1));  // creates 2*g(pi,pj) on the diagonal
        sym_swap(k, pi);
      }
    }
    if (g(k, k) > 0) ++sig.s_plus; else ++sig.s_minus;
    for (long i = k + 1; i < n; ++i) {
      if (g(i, k) == 0) continue;
      sym_addmul(i, k, -g(i, k) / g(k, k));
    }
  }
  return sig;
}

struct BasicInvariants {
  long rank;
  Signature sig;
  Int det;
  bool even;
};

inline BasicInvariants basic_invariants(const Lattice& l) {
  return {l.rank(), signature_of(l.gram), l.determinant(), l.is_even()};
}

inline Lattice rescale(const Lattice& l, const Int& n) {
  if (n == 0) throw error("rescale by zero");
  Lattice r = l;
  for (auto& x : r.gram.a) x *= n;
  if (!r.name.empty()) r.name += "(" + n.str() + ")";
  return r;
}

inline Lattice direct_sum(const std::vector<Lattice>& parts) {
  long n = 0;
  bool labeled = true;
  for (const auto& p : parts) {
    n += p.rank();
    if (p.labels.empty()) labeled = false;
  }
  IntMat g(n, n);
  std::vector<std::string> labels;
  long off = 0;
  for (const auto& p : parts) {
    for (long i = 0; i < p.rank(); ++i)
      for (long j = 0; j < p.rank(); ++j) g(off + i, off + j) = p.gram(i, j);
    if (labeled)
      for (const auto& s : p.labels) labels.push_back(s);
    off += p.rank();
  }
  return Lattice(std::move(g), labeled && n > 0 ? labels : std::vector<std::string>{});
}

inline Lattice diag_lattice(const std::vector<Int>& d) {
  IntMat g(static_cast<long>(d.size()), static_cast<long>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) g(i, i) = d[i];
  return Lattice(std::move(g));
}

// ---------------------------------------------------------------------------
// discriminant form

inline FiniteQuadraticForm discriminant_form(const Lattice& l) {
  if (l.determinant() == 0) throw error("discriminant form of a degenerate lattice");
  SmithForm sf = smith_form(l.gram);
  FiniteQuadraticForm f;
  std::vector<std::vector<Int>> gens;  // numerators of generators v_j (columns of V)
  long n = l.rank();
  for (long j = 0; j < n; ++j) {
    if (sf.d(j, j) <= 1) continue;
    f.invariant_factors.push_back(sf.d(j, j));
    std::vector<Int> col(n);
    for (long i = 0; i < n; ++i) col[i] = sf.v(i, j);
    gens.push_back(std::move(col));
  }
  long k = f.length();
  f.qmat = RatMat(k, k);
  for (long i = 0; i < k; ++i)
    for (long j = i; j < k; ++j) {
      Rat v = Rat(l.pair(gens[i], gens[j])) / (Rat(f.invariant_factors[i]) * Rat(f.invariant_factors[j]));
      if (i == j) f.qmat(i, i) = mod_rat(v, 2);
      else f.qmat(i, j) = f.qmat(j, i) = mod_rat(v, 1);
    }
  return f;
}

// generator lifts: rational coordinate vectors in the basis of L
inline std::vector<std::vector<Rat>> discriminant_generator_lifts(const Lattice& l) {
  SmithForm sf = smith_form(l.gram);
  std::vector<std::vector<Rat>> out;
  for (long j = 0; j < l.rank(); ++j) {
    if (sf.d(j, j) <= 1) continue;
    std::vector<Rat> col(l.rank());
    for (long i = 0; i < l.rank(); ++i) col[i] = Rat(sf.v(i, j), sf.d(j, j));
    out.push_back(std::move(col));
  }
  return out;
}

// ---------------------------------------------------------------------------
// overlattices via glue vectors

using GlueVector = std::vector<Rat>;  // rational coordinates in the basis of L

struct OverlatticeResult {
  Lattice lattice;
  IntMat base_in_new;  // coordinates of the old basis in the new one
  Int index;
};

inline bool in_dual(const Lattice& l, const GlueVector& g) {
  for (long i = 0; i < l.rank(); ++i) {
    Rat s(0);
    for (long j = 0; j < l.rank(); ++j) s += g[j] * Rat(l.gram(j, i));
    if (den(s) != 1) return false;
  }
  return true;
}

inline OverlatticeResult overlattice(const Lattice& l, const std::vector<GlueVector>& glue,
                                     bool require_even = true) {
  long n = l.rank();
  for (const auto& g : glue) {
    if (static_cast<long>(g.size()) != n) throw error("glue vector has wrong length");
    if (!in_dual(l, g)) throw error("glue vector is not in the dual lattice");
  }
  Int d(1);
  for (const auto& g : glue)
    for (const auto& x : g) d = boost::multiprecision::lcm(d, den(x));
  IntMat m(n + static_cast<long>(glue.size()), n);
  for (long i = 0; i < n; ++i) m(i, i) = d;
  for (size_t k = 0; k < glue.size(); ++k)
    for (long j = 0; j < n; ++j) m(n + k, j) = num(glue[k][j] * Rat(d));
  HermiteForm hf = hermite_form(m);
  if (hf.rank != n) throw error("overlattice basis extraction failed");
  IntMat b(n, n);  // rows: d * (new basis in old coords)
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) b(i, j) = hf.h(i, j);

  // Gram' = (B/d) G (B/d)^T
  RatMat br = to_rat(b);
  for (auto& x : br.a) x /= Rat(d);
  RatMat gr = br * to_rat(l.gram) * br.transposed();
  IntMat gram;
  try {
    gram = to_int(gr);
  } catch (const error&) {
    throw error("overlattice: resulting bilinear form is not integral");
  }
  Lattice out(std::move(gram));
  if (require_even && !out.is_even())
    throw error("overlattice: resulting lattice is odd (glue subgroup is not isotropic)");

  Int det_b = det(b);
  Int dn(1);
  for (long i = 0; i < n; ++i) dn *= d;
  if (det_b == 0 || dn % det_b != 0) throw error("overlattice index computation failed");
  Int index = abs_int(dn / det_b);

  RatMat base_new = inverse(br);  // old basis rows in new coords: I * (B/d)^-1
  return {std::move(out), to_int(base_new), index};
}

// ---------------------------------------------------------------------------
// primitive closure and orthogonal complement

struct ClosureResult {
  Lattice lattice;
  IntMat basis;  // rows: basis of the saturation in ambient coordinates
  bool primitive;
  Int index;
};

inline ClosureResult primitive_closure(const Lattice& ambient, const IntMat& sub) {
  long g = sub.rows, n = ambient.rank();
  if (sub.cols != n) throw error("sub vectors have wrong length");
  SmithForm sf = smith_form(sub);
  if (sf.rank != g) throw error("primitive_closure: input vectors are dependent");
  IntMat vinv = to_int(inverse(to_rat(sf.v)));
  IntMat w(g, n);
  for (long i = 0; i < g; ++i)
    for (long j = 0; j < n; ++j) w(i, j) = vinv(i, j);
  Int index(1);
  for (long i = 0; i < g; ++i) index *= sf.d(i, i);
  IntMat gram = to_int(to_rat(w) * to_rat(ambient.gram) * to_rat(w).transposed());
  return {Lattice(std::move(gram)), std::move(w), index == 1, index};
}

struct ComplementResult {
  Lattice lattice;
  IntMat basis;  // rows in ambient coordinates; saturated by construction
};

inline ComplementResult orthogonal_complement(const Lattice& ambient, const IntMat& sub) {
  long n = ambient.rank();
  if (sub.cols != n) throw error("sub vectors have wrong length");
  {
    SmithForm sf = smith_form(sub);
    if (sf.rank != sub.rows) throw error("orthogonal_complement: input vectors are dependent");
  }
  // rows x with x * G * sub^T = 0
  IntMat m = ambient.gram * sub.transposed();  // n x g
  IntMat k = left_kernel(m);
  IntMat gram = to_int(to_rat(k) * to_rat(ambient.gram) * to_rat(k).transposed());
  return {Lattice(std::move(gram)), std::move(k)};
}

// ---------------------------------------------------------------------------
// short vector enumeration (Fincke-Pohst with exact rational bounds)

namespace detail {

struct LdlData {
  std::vector<Rat> d;
  RatMat l;  // strictly upper part used: l(k,j), j > k
};

inline LdlData ldl(const RatMat& p) {
  long n = p.rows;
  LdlData out{std::vector<Rat>(n), RatMat(n, n)};
  RatMat a = p;
  for (long k = 0; k < n; ++k) {
    if (a(k, k) <= 0) throw error("short-vector enumeration requires a definite lattice");
    out.d[k] = a(k, k);
    for (long j = k + 1; j < n; ++j) out.l(k, j) = a(k, j) / a(k, k);
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j) a(i, j) -= a(k, i) * a(k, j) / a(k, k);
  }
  return out;
}

// integer interval { x : (x + u)^2 <= b }, empty if b < 0
inline bool square_range(const Rat& u, const Rat& b, Int& lo, Int& hi) {
  if (b < 0) return false;
  Int approx = isqrt(num(b) / den(b)) + 2;
  lo = ceil_rat(-u) - approx;
  hi = floor_rat(-u) + approx;
  auto ok = [&](const Int& x) {
    Rat s = Rat(x) + u;
    return s * s <= b;
  };
  while (lo <= hi && !ok(lo)) ++lo;
  while (lo <= hi && !ok(hi)) --hi;
  return lo <= hi;
}

}  // namespace detail

struct RootCountResult {
  Int count;
  std::vector<std::vector<Int>> vectors;  // filled only when collect = true
};

// Exact count of vectors v with b(v,v) = norm in a definite lattice.
// Counts both v and -v.
inline RootCountResult root_count(const Lattice& l, const Int& norm, bool collect = false) {
  long n = l.rank();
  Signature sig = signature_of(l.gram);
  if (sig.s_zero > 0 || (sig.s_plus > 0 && sig.s_minus > 0))
    throw error("root_count requires a definite lattice");
  bool neg = sig.s_minus > 0;
  if (n == 0 || norm == 0) throw error("root_count: empty lattice or zero norm");
  Int target = neg ? Int(-norm) : norm;
  if (target < 0) return {Int(0), {}};

  RatMat p = to_rat(l.gram);
  if (neg)
    for (auto& x : p.a) x = -x;
  detail::LdlData ld = detail::ldl(p);

  RootCountResult out{Int(0), {}};
  std::vector<Int> x(n, Int(0));
  Rat c(target);

  // recursive descent from the last coordinate
  std::function<void(long, Rat)> rec = [&](long i, Rat budget) {
    if (i < 0) {
      if (budget == 0) {
        ++out.count;
        if (collect) out.vectors.push_back(x);
      }
      return;
    }
    Rat u(0);
    for (long j = i + 1; j < n; ++j)
      if (x[j] != 0) u += ld.l(i, j) * Rat(x[j]);
    Int lo, hi;
    if (!detail::square_range(u, budget / ld.d[i], lo, hi)) return;
    for (Int v = lo; v <= hi; ++v) {
      x[i] = v;
      Rat s = Rat(v) + u;
      rec(i - 1, budget - ld.d[i] * s * s);
    }
    x[i] = 0;
  };
  rec(n - 1, c);
  return out;
}

// ---------------------------------------------------------------------------
// genus uniqueness (one-sided criterion)

enum class GenusVerdict { unique, unknown };

inline GenusVerdict genus_unique(const Signature& sig, const FiniteQuadraticForm& q) {
  long rank = sig.s_plus + sig.s_minus;
  if (sig.s_zero == 0 && sig.s_plus > 0 && sig.s_minus > 0 && q.length() <= rank - 2)
    return GenusVerdict::unique;
  return GenusVerdict::unknown;
}

// ---------------------------------------------------------------------------
// overlattice enumeration at a prime

struct OverlatticeCandidate {
  GlueVector glue;                       // lift of the glue generator to L* (coords in L basis)
  FiniteQuadraticForm::Elem generator;   // in terms of the discriminant generators
};

// All order-p isotropic subgroups of A_L whose overlattices are even, filtered by
// the requirement that the basis blocks listed in `primitive_blocks` (as index
// ranges [begin, end)) stay primitively embedded. One candidate per subgroup.
inline std::vector<OverlatticeCandidate> enumerate_overlattices(
    const Lattice& l, const Int& p,
    const std::vector<std::pair<long, long>>& primitive_blocks = {}) {
  FiniteQuadraticForm f = discriminant_form(l);
  auto lifts = discriminant_generator_lifts(l);
  std::vector<OverlatticeCandidate> out;
  if (f.order() % p != 0) return out;

  auto lift_of = [&](const FiniteQuadraticForm::Elem& e) {
    GlueVector w(l.rank(), Rat(0));
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      for (long j = 0; j < l.rank(); ++j) w[j] += Rat(e[i]) * lifts[i][j];
    }
    return w;
  };

  std::set<std::vector<Int>> seen_subgroups;
  for (const auto& e : f.all_elements()) {
    if (f.is_zero_elem(e) || f.elem_order(e) != p) continue;
    // canonical subgroup representative: lexicographically smallest multiple
    std::vector<Int> best = e;
    for (Int k(2); k < p; ++k) {
      auto m = f.scale(e, k);
      if (m < best) best = m;
    }
    if (!seen_subgroups.insert(best).second) continue;
    if (f.q_of(e) != 0) continue;  // isotropic generator <=> even overlattice

    bool ok = true;
    for (const auto& blk : primitive_blocks) {
      for (Int k(1); k < p && ok; ++k) {
        GlueVector w = lift_of(f.scale(e, k));
        bool integral_outside = true, integral_everywhere = true;
        for (long j = 0; j < l.rank(); ++j) {
          if (den(w[j]) != 1) {
            integral_everywhere = false;
            if (j < blk.first || j >= blk.second) integral_outside = false;
          }
        }
        if (!integral_everywhere && integral_outside) ok = false;  // block not primitive
      }
      if (!ok) break;
    }
    if (ok) out.push_back({lift_of(e), e});
  }
  return out;
}

// ---------------------------------------------------------------------------
// isometries

struct Isometry {
  IntMat m;  // acts on row coordinate vectors: x -> x * m

  long order(long cap = 1000) const {
    IntMat id = IntMat::identity(m.rows);
    IntMat w = m;
    for (long k = 1; k <= cap; ++k) {
      if (w == id) return k;
      w = w * m;
    }
    throw error("isometry order exceeds cap");
  }
};

// Unique linear extension of generators -> images; verified to be an integral
// Gram-preserving map of determinant +-1.
inline Isometry isometry_from_images(const Lattice& l, const IntMat& generators, const IntMat& images) {
  long n = l.rank(), g = generators.rows;
  if (images.rows != g || generators.cols != n || images.cols != n)
    throw error("isometry_from_images: shape mismatch");
  // select n independent rows
  RatMat a = to_rat(generators);
  std::vector<long> pick;
  {
    RatMat w = a;
    std::vector<long> rows(g);
    for (long i = 0; i < g; ++i) rows[i] = i;
    long r = 0;
    for (long c = 0; c < n && r < g; ++c) {
      long p = -1;
      for (long i = r; i < g; ++i)
        if (w(i, c) != 0) { p = i; break; }
      if (p < 0) continue;
      w.swap_rows(r, p);
      std::swap(rows[r], rows[p]);
      for (long i = r + 1; i < g; ++i) {
        if (w(i, c) == 0) continue;
        w.addmul_row(i, r, -w(i, c) / w(r, c));
      }
      pick.push_back(rows[r]);
      ++r;
    }
    if (static_cast<long>(pick.size()) != n)
      throw error("isometry_from_images: generators do not span the lattice over Q");
  }
  RatMat asel(n, n), bsel(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      asel(i, j) = Rat(generators(pick[i], j));
      bsel(i, j) = Rat(images(pick[i], j));
    }
  RatMat mq = inverse(asel) * bsel;
  // consistency on all generators
  RatMat lhs = to_rat(generators) * mq;
  if (!(lhs == to_rat(images))) throw error("isometry_from_images: no linear extension maps generators to images");
  IntMat m;
  try {
    m = to_int(mq);
  } catch (const error&) {
    throw error("isometry_from_images: map is not integral on the lattice");
  }
  if (!(m * l.gram * m.transposed() == l.gram))
    throw error("isometry_from_images: map does not preserve the bilinear form");
  Int d = det(m);
  if (d != 1 && d != -1) throw error("isometry_from_images: determinant is not a unit");
  return {std::move(m)};
}

struct GroupInfo {
  long order;
  bool abelian;
};

inline GroupInfo group_order(const std::vector<Isometry>& gens, long cap = 4096) {
  if (gens.empty()) return {1, true};
  long n = gens[0].m.rows;
  std::set<std::vector<Int>> seen;
  std::vector<IntMat> frontier{IntMat::identity(n)};
  seen.insert(frontier[0].a);
  while (!frontier.empty()) {
    std::vector<IntMat> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        IntMat prod = w * g.m;
        if (seen.insert(prod.a).second) {
          if (static_cast<long>(seen.size()) > cap) throw error("group_order: cap exceeded");
          next.push_back(std::move(prod));
        }
      }
    frontier = std::move(next);
  }
  bool abelian = true;
  for (size_t i = 0; i < gens.size() && abelian; ++i)
    for (size_t j = i + 1; j < gens.size() && abelian; ++j)
      if (!(gens[i].m * gens[j].m == gens[j].m * gens[i].m)) abelian = false;
  return {static_cast<long>(seen.size()), abelian};
}

// ---------------------------------------------------------------------------
// lattice presented by a generating set with a prescribed pairing matrix

struct GeneratedLattice {
  Lattice lattice;
  IntMat generator_coords;  // row i: coordinates of generator i in the new basis
};

// The pairing matrix may be degenerate; its radical is exactly the relation
// module of the generating set (the target form is nondegenerate).
inline GeneratedLattice lattice_from_generators(const IntMat& pairing,
                                                std::vector<std::string> labels = {}) {
  long g = pairing.rows;
  IntMat k = left_kernel(pairing);
  long r = g - k.rows;
  SmithForm sf = smith_form(k);
  for (long i = 0; i < sf.rank; ++i)
    if (sf.d(i, i) != 1) throw error("lattice_from_generators: relation module is not saturated");
  IntMat vinv = to_int(inverse(to_rat(sf.v)));
  // quotient basis: classes of the last r rows of V^-1
  IntMat w(r, g);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < g; ++j) w(i, j) = vinv(k.rows + i, j);
  IntMat gram = w * pairing * w.transposed();
  IntMat coords(g, r);
  for (long i = 0; i < g; ++i)
    for (long j = 0; j < r; ++j) coords(i, j) = sf.v(i, k.rows + j);
  // self-check: recomputed pairings match
  if (!(coords * gram * coords.transposed() == pairing))
    throw error("lattice_from_generators: internal consistency check failed");
  return {Lattice(std::move(gram), std::move(labels)), std::move(coords)};
}

}  // namespace k3lat
