#pragma once

#include "k3lat/lattice.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace k3lat {

// ---------------------------------------------------------------------------
// root lattices

namespace detail {

inline Lattice root_lattice_from_edges(long n, const std::vector<std::pair<long, long>>& edges,
                                       int eps, std::vector<std::string> labels = {}) {
  IntMat g(n, n);
  for (long i = 0; i < n; ++i) g(i, i) = 2 * eps;
  for (auto [i, j] : edges) g(i, j) = g(j, i) = -eps;
  return Lattice(std::move(g), std::move(labels));
}

inline std::vector<std::pair<long, long>> chain_edges(long n) {
  std::vector<std::pair<long, long>> e;
  for (long i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return e;
}

}  // namespace detail

inline Lattice lattice_U(const Int& scale = Int(1)) {
  IntMat g(2, 2);
  g(0, 1) = g(1, 0) = scale;
  return Lattice(std::move(g), {"u1", "u2"}, scale == 1 ? "U" : "U(" + scale.str() + ")");
}

inline Lattice lattice_A(long n, int eps = 1) {
  if (n < 1) throw error("A_n needs n >= 1");
  auto l = detail::root_lattice_from_edges(n, detail::chain_edges(n), eps);
  l.name = "A" + std::to_string(n) + (eps < 0 ? "(-1)" : "");
  return l;
}

inline Lattice lattice_D(long n, int eps = 1) {
  if (n < 3) throw error("D_n needs n >= 3");
  auto edges = detail::chain_edges(n - 1);
  edges.push_back({n - 1, n - 3});
  auto l = detail::root_lattice_from_edges(n, edges, eps);
  l.name = "D" + std::to_string(n) + (eps < 0 ? "(-1)" : "");
  return l;
}

// E6 on the basis e1..e6: a chain e1-e2-e3-e4-e5 with e6 attached to e3.
inline Lattice lattice_E(long r, int eps = 1) {
  std::vector<std::pair<long, long>> edges;
  if (r == 6) {
    edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}};
  } else if (r == 7) {
    // chain of six with the seventh node on the third chain node
    edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}};
  } else if (r == 8) {
    edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 7}};
  } else {
    throw error("E_r needs r in {6,7,8}");
  }
  std::vector<std::string> labels;
  for (long i = 1; i <= r; ++i) labels.push_back("e" + std::to_string(i));
  auto l = detail::root_lattice_from_edges(r, edges, eps, labels);
  l.name = "E" + std::to_string(r) + (eps < 0 ? "(-1)" : "");
  return l;
}

// ---------------------------------------------------------------------------
// glue recipes

namespace detail {

// v = (e1 + 2 e2 + e4 + 2 e5)/3, a generator of the discriminant group of E6(-1)
inline std::vector<Rat> e6_dual_generator() {
  std::vector<Rat> v(6, Rat(0));
  v[0] = Rat(1, 3);
  v[1] = Rat(2, 3);
  v[3] = Rat(1, 3);
  v[4] = Rat(2, 3);
  return v;
}

inline GlueVector block_glue(long total, long offset, const std::vector<Rat>& part,
                             GlueVector base = {}) {
  if (base.empty()) base.assign(total, Rat(0));
  for (size_t i = 0; i < part.size(); ++i) base[offset + i] += part[i];
  return base;
}

// z = (M1 + 2 M2)/3 in one copy of A2(-1)
inline std::vector<Rat> a2_dual_generator() { return {Rat(1, 3), Rat(2, 3)}; }

}  // namespace detail

// (E6(-1)^3)': index-3 overlattice of E6(-1)^3 glued by x = v^(1)+v^(2)+v^(3)
inline OverlatticeResult build_e6_triple_primed() {
  Lattice base = direct_sum({lattice_E(6, -1), lattice_E(6, -1), lattice_E(6, -1)});
  GlueVector x(18, Rat(0));
  auto v = detail::e6_dual_generator();
  for (long j = 0; j < 3; ++j)
    x = detail::block_glue(18, 6 * j, v, x);
  auto r = overlattice(base, {x});
  r.lattice.name = "E6triple_primed";
  return r;
}

// (U + A2 + E6(-1)^3)'': even unimodular of signature (3,19).
// Basis order: u1, u2, a1, a2, e_i^(j).
inline OverlatticeResult build_lambda_k3() {
  Lattice base = direct_sum({lattice_U(), lattice_A(2), lattice_E(6, -1), lattice_E(6, -1), lattice_E(6, -1)});
  auto v = detail::e6_dual_generator();
  GlueVector x(22, Rat(0));
  for (long j = 0; j < 3; ++j) x = detail::block_glue(22, 4 + 6 * j, v, x);
  GlueVector y(22, Rat(0));
  y[2] = Rat(1, 3);
  y[3] = Rat(2, 3);  // (a1 + 2 a2)/3
  y = detail::block_glue(22, 4, v, y);
  for (size_t i = 0; i < 6; ++i) y[10 + i] -= v[i];  // - v^(2)
  auto r = overlattice(base, {x, y});
  r.lattice.name = "LambdaK3";
  return r;
}

// M_{Z/2}: A1(-1)^8 glued by half the sum of all eight basis classes
inline OverlatticeResult build_nikulin_m2() {
  std::vector<Lattice> parts(8, lattice_A(1, -1));
  Lattice base = direct_sum(parts);
  GlueVector g(8, Rat(1, 2));
  auto r = overlattice(base, {g});
  r.lattice.name = "M2";
  return r;
}

// M_{Z/3}: A2(-1)^6 glued by the sum of the six dual generators z^(j)
inline OverlatticeResult build_m3() {
  std::vector<Lattice> parts(6, lattice_A(2, -1));
  Lattice base = direct_sum(parts);
  GlueVector g(12, Rat(0));
  auto z = detail::a2_dual_generator();
  for (long j = 0; j < 6; ++j) g = detail::block_glue(12, 2 * j, z, g);
  auto r = overlattice(base, {g});
  r.lattice.name = "M3";
  return r;
}

// (M_{Z/3} + E6(-1))': glued by n = v - z^(1) + z^(3) - z^(4) + z^(5)
inline OverlatticeResult build_m3e6_primed() {
  OverlatticeResult m3 = build_m3();
  Lattice base = direct_sum({m3.lattice, lattice_E(6, -1)});
  // express n in the basis of M3 + E6(-1); first write it over A2(-1)^6 + E6(-1)
  GlueVector n_old(12, Rat(0));
  auto z = detail::a2_dual_generator();
  const int signs[6] = {-1, 0, +1, -1, +1, 0};
  for (long j = 0; j < 6; ++j)
    if (signs[j] != 0)
      for (size_t i = 0; i < 2; ++i) n_old[2 * j + i] += Rat(signs[j]) * z[i];
  // convert the A2^6 part into M3 coordinates
  GlueVector n(18, Rat(0));
  for (long j = 0; j < 12; ++j) {
    if (n_old[j] == 0) continue;
    for (long k = 0; k < 12; ++k) n[k] += n_old[j] * Rat(m3.base_in_new(j, k));
  }
  auto v = detail::e6_dual_generator();
  for (size_t i = 0; i < 6; ++i) n[12 + i] = v[i];
  auto r = overlattice(base, {n});
  r.lattice.name = "M3E6_primed";
  return r;
}

// Kummer lattice of order 2: A1(-1)^16 indexed by the affine space F_2^4,
// glued by half-sums over the supports of the five affine coordinate functions
// (the four hyperplane classes and the full space).
inline OverlatticeResult build_kummer2() {
  std::vector<Lattice> parts(16, lattice_A(1, -1));
  Lattice base = direct_sum(parts);
  std::vector<GlueVector> glue;
  for (int f = 0; f < 5; ++f) {
    GlueVector g(16, Rat(0));
    for (int p = 0; p < 16; ++p) {
      int val = (f < 4) ? ((p >> f) & 1) : 1;
      if (val) g[p] = Rat(1, 2);
    }
    glue.push_back(std::move(g));
  }
  auto r = overlattice(base, glue);
  r.lattice.name = "Kummer2";
  return r;
}

// Kummer lattice of order 3: A2(-1)^9 indexed by the affine plane over F_3,
// glued by sums f(p) * z^(p) for the three affine coordinate functions f
// (two pencils of parallel lines and the full plane).
inline OverlatticeResult build_kummer3() {
  std::vector<Lattice> parts(9, lattice_A(2, -1));
  Lattice base = direct_sum(parts);
  auto z = detail::a2_dual_generator();
  std::vector<GlueVector> glue;
  for (int f = 0; f < 3; ++f) {
    GlueVector g(18, Rat(0));
    for (int p = 0; p < 9; ++p) {
      int x = p % 3, y = p / 3;
      int val = (f == 0) ? x : (f == 1) ? y : 1;
      for (size_t i = 0; i < 2; ++i) g[2 * p + i] += Rat(val) * z[i];
    }
    glue.push_back(std::move(g));
  }
  auto r = overlattice(base, glue);
  r.lattice.name = "Kummer3";
  return r;
}

// K12 (the negative Coxeter-Todd lattice) as the coinvariant sublattice of the
// order-3 isometry of the rank-22 model that cyclically permutes the three
// E6(-1) blocks and fixes U + A2.
inline Lattice build_k12() {
  OverlatticeResult lam = build_lambda_k3();
  const Lattice& L = lam.lattice;
  // generators: old basis vectors, in the coordinates of the overlattice
  IntMat gens = lam.base_in_new;
  IntMat imgs(22, 22);
  auto copy_row = [&](long dst, long src) {
    for (long j = 0; j < 22; ++j) imgs(dst, j) = gens(src, j);
  };
  for (long i = 0; i < 4; ++i) copy_row(i, i);
  for (long j = 0; j < 3; ++j)
    for (long i = 0; i < 6; ++i) copy_row(4 + 6 * j + i, 4 + 6 * ((j + 1) % 3) + i);
  Isometry r = isometry_from_images(L, gens, imgs);
  if (r.order() != 3) throw error("K12 construction: permutation isometry does not have order 3");
  IntMat rm = r.m;
  for (long i = 0; i < 22; ++i) rm(i, i) -= 1;
  IntMat invariant = left_kernel(rm);
  auto comp = orthogonal_complement(L, invariant);
  comp.lattice.name = "K12";
  return comp.lattice;
}

// ---------------------------------------------------------------------------
// catalog with certified invariants

struct CatalogExpectation {
  long rank;
  Int abs_det;
  Signature sig;
  bool even = true;
  std::optional<std::pair<Int, long>> elementary;  // (p, length)
  std::optional<Int> roots_norm_minus2;
  std::optional<Int> vectors_norm_minus4;
};

inline void validate_against(const Lattice& l, const CatalogExpectation& e) {
  auto inv = basic_invariants(l);
  if (inv.rank != e.rank) throw error(l.name + ": rank " + std::to_string(inv.rank) + " != expected " + std::to_string(e.rank));
  if (abs_int(inv.det) != e.abs_det) throw error(l.name + ": |det| " + abs_int(inv.det).str() + " != expected " + e.abs_det.str());
  if (!(inv.sig == e.sig)) throw error(l.name + ": signature " + inv.sig.to_string() + " != expected " + e.sig.to_string());
  if (inv.even != e.even) throw error(l.name + ": parity mismatch");
  if (e.elementary) {
    auto f = discriminant_form(l);
    if (!f.is_p_elementary(e.elementary->first) || f.length() != e.elementary->second)
      throw error(l.name + ": discriminant group is not " + e.elementary->first.str() +
                  "-elementary of length " + std::to_string(e.elementary->second));
  }
  if (e.roots_norm_minus2) {
    auto rc = root_count(l, Int(-2));
    if (rc.count != *e.roots_norm_minus2)
      throw error(l.name + ": root count " + rc.count.str() + " != expected " + e.roots_norm_minus2->str());
  }
  if (e.vectors_norm_minus4) {
    auto rc = root_count(l, Int(-4));
    if (rc.count != *e.vectors_norm_minus4)
      throw error(l.name + ": norm -4 count " + rc.count.str() + " != expected " + e.vectors_norm_minus4->str());
  }
}

class Catalog {
 public:
  // Names accepted: U, U(n), An, An(-1), Dn(+-1), E6/E7/E8(+-1 or -2), K12,
  // M2, M3, Kummer2, Kummer3, E6triple_primed, M3E6_primed, LambdaK3,
  // Omega2, Omega3.
  static Catalog standard() {
    Catalog c;
    c.put(lattice_U(), {2, Int(1), {1, 1, 0}});
    c.put(build_nikulin_m2().lattice, {8, Int(64), {0, 8, 0}, true, {{Int(2), 6}}, Int(16)});
    c.put(build_m3().lattice, {12, Int(81), {0, 12, 0}, true, {{Int(3), 4}}, Int(36)});
    c.put(build_kummer2().lattice, {16, Int(64), {0, 16, 0}, true, {{Int(2), 6}}, Int(32)});
    c.put(build_kummer3().lattice, {18, Int(27), {0, 18, 0}, true, {{Int(3), 3}}, Int(54)});
    c.put(build_e6_triple_primed().lattice, {18, Int(3), {0, 18, 0}, true, {{Int(3), 1}}, Int(216)});
    c.put(build_m3e6_primed().lattice, {18, Int(27), {0, 18, 0}, true, {{Int(3), 3}}, Int(108)});
    c.put(build_lambda_k3().lattice, {22, Int(1), {3, 19, 0}});
    {
      Lattice k12 = build_k12();
      validate_against(k12, {12, Int(729), {0, 12, 0}, true, {{Int(3), 6}}, Int(0), Int(756)});
      Lattice o3 = k12;
      o3.name = "Omega3";
      c.entries_.emplace("K12", std::move(k12));
      c.entries_.emplace("Omega3", std::move(o3));
    }
    {
      Lattice o2 = rescale(lattice_E(8, -1), 2);
      o2.name = "Omega2";
      validate_against(o2, {8, Int(256), {0, 8, 0}, true, {{Int(2), 8}}, Int(0)});
      c.entries_.emplace("Omega2", std::move(o2));
    }
    // Kummer glue-code certification beyond basic invariants: discriminant forms
    if (!fqf_isomorphic(discriminant_form(c.get("Kummer2")),
                        discriminant_form(direct_sum({rescale(lattice_U(), 2), rescale(lattice_U(), 2), rescale(lattice_U(), 2)}))))
      throw error("Kummer2 glue code failed discriminant-form validation");
    if (!fqf_isomorphic(discriminant_form(c.get("Kummer3")),
                        discriminant_form(direct_sum({rescale(lattice_U(), 3), lattice_A(2)})).opposite()))
      throw error("Kummer3 glue code failed discriminant-form validation");
    return c;
  }

  Lattice get(const std::string& name) const {
    auto it = entries_.find(name);
    if (it != entries_.end()) return it->second;
    auto built = parse_parametric(name);
    if (built) return *built;
    throw error("unknown catalog lattice \"" + name + "\"");
  }

  bool has(const std::string& name) const {
    if (entries_.count(name)) return true;
    try {
      return parse_parametric(name).has_value();
    } catch (const error&) {
      return false;
    }
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
  }

  // test hook: returns a copy with one entry's Gram replaced, skipping validation
  Catalog with_gram_override(const std::string& name, IntMat gram) const {
    Catalog c = *this;
    auto it = c.entries_.find(name);
    if (it == c.entries_.end()) throw error("override of unknown entry " + name);
    std::string nm = it->second.name;
    it->second = Lattice(std::move(gram));
    it->second.name = nm;
    return c;
  }

  // Named lattices the paper identifies transcendental lattices with.
  static std::vector<std::pair<std::string, Lattice>> transcendental_candidates() {
    auto U = [](const Int& n) { return lattice_U(n); };
    auto d = [](const Int& n) { return diag_lattice({n}); };
    std::vector<std::pair<std::string, Lattice>> out;
    out.push_back({"A2", lattice_A(2)});
    out.push_back({"A2(2)", rescale(lattice_A(2), 2)});
    out.push_back({"U+<6>", direct_sum({U(1), d(Int(6))})});
    out.push_back({"A2+<-2>", direct_sum({lattice_A(2), d(Int(-2))})});
    out.push_back({"A2+<-6>", direct_sum({lattice_A(2), d(Int(-6))})});
    out.push_back({"U(2)+<12>", direct_sum({U(2), d(Int(12))})});
    out.push_back({"A2(2)+<-12>", direct_sum({rescale(lattice_A(2), 2), d(Int(-12))})});
    out.push_back({"U+<2>", direct_sum({U(1), d(Int(2))})});
    out.push_back({"U(3)+<6>", direct_sum({U(3), d(Int(6))})});
    out.push_back({"U(2)+<4>", direct_sum({U(2), d(Int(4))})});
    out.push_back({"U(6)+<12>", direct_sum({U(6), d(Int(12))})});
    out.push_back({"U+A2", direct_sum({U(1), lattice_A(2)})});
    out.push_back({"U(3)+A2", direct_sum({U(3), lattice_A(2)})});
    for (auto& [n, l] : out) l.name = n;
    return out;
  }

 private:
  std::map<std::string, Lattice> entries_;

  void put(Lattice l, const CatalogExpectation& e) {
    validate_against(l, e);
    entries_.emplace(l.name, std::move(l));
  }

  static std::optional<Lattice> parse_parametric(const std::string& name) {
    auto paren = name.find('(');
    std::string base = name.substr(0, paren);
    Int arg(1);
    if (paren != std::string::npos) {
      auto close = name.find(')', paren);
      if (close == std::string::npos) throw error("malformed lattice name \"" + name + "\"");
      arg = Int(name.substr(paren + 1, close - paren - 1));
      if (arg == 0) throw error("zero scale in lattice name \"" + name + "\"");
    }
    auto series = [&](char c, long n) -> std::optional<Lattice> {
      Lattice l = (c == 'A') ? lattice_A(n) : (c == 'D') ? lattice_D(n) : lattice_E(n);
      if (arg == 1) return l;
      Lattice r = rescale(l, arg);
      r.name = name;
      return r;
    };
    if (base == "U") {
      Lattice r = lattice_U(arg);
      return r;
    }
    if (base.size() >= 2 && (base[0] == 'A' || base[0] == 'D' || base[0] == 'E')) {
      long n = std::stol(base.substr(1));
      return series(base[0], n);
    }
    return std::nullopt;
  }
};

inline const Catalog& standard_catalog() {
  static const Catalog c = Catalog::standard();
  return c;
}

inline Lattice named_lattice(const std::string& name) { return standard_catalog().get(name); }

}  // namespace k3lat
