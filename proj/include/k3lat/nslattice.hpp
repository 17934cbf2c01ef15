#pragma once

#include "k3lat/catalog.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/weierstrass.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace k3lat {

namespace detail {

// Root block of one geometric fiber, on the component basis that drops the
// identity component. For IV* the basis is C1..C6 of the fiber diagram
// O-C0-C1-C2-C3-C4 with C2-C5-C6; for I_n it is the chain C1..C_{n-1}.
inline Lattice fiber_root_block(const FiberType& t) {
  auto [series, rk] = t.root();
  if (rk == 0) return Lattice(IntMat(0, 0));
  if (t.type == KodairaType::IVstar)
    return detail::root_lattice_from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {1, 4}, {4, 5}}, -1);
  if (series == 'A') return lattice_A(rk, -1);
  if (series == 'D') return lattice_D(rk, -1);
  return lattice_E(rk, -1);
}

}  // namespace detail

struct FiberCopy {
  size_t fiber_index;  // into KodairaConfiguration::fibers
  long copy;           // 0 .. degree-1
  long offset;         // first basis index of this copy's components
  FiberType type;
};

struct TrivialLattice {
  Lattice lattice;  // basis: F, O, then the component blocks
  std::vector<FiberCopy> copies;
};

// Sublattice of NS spanned by the fiber class, the zero section and the
// non-identity fiber components: U + sum of root lattices, rank 2 + sum(m_v - 1).
inline TrivialLattice trivial_lattice(const KodairaConfiguration& cfg) {
  std::vector<FiberCopy> copies;
  long n = 2;
  for (size_t f = 0; f < cfg.fibers.size(); ++f) {
    const auto& fe = cfg.fibers[f];
    long rk = detail::fiber_root_block(fe.type).rank();
    for (long c = 0; c < fe.degree; ++c) {
      if (rk == 0) continue;
      copies.push_back({f, c, n, fe.type});
      n += rk;
    }
  }
  IntMat g(n, n);
  std::vector<std::string> labels(n);
  g(0, 0) = 0;
  g(0, 1) = g(1, 0) = 1;
  g(1, 1) = -2;
  labels[0] = "F";
  labels[1] = "O";
  for (const auto& cp : copies) {
    Lattice blk = detail::fiber_root_block(cp.type);
    for (long i = 0; i < blk.rank(); ++i) {
      for (long j = 0; j < blk.rank(); ++j) g(cp.offset + i, cp.offset + j) = blk.gram(i, j);
      labels[cp.offset + i] =
          "C" + std::to_string(i + 1) + "^(" + std::to_string(cp.fiber_index) +
          (cp.copy ? "." + std::to_string(cp.copy) : "") + ")";
    }
  }
  return {Lattice(std::move(g), std::move(labels)), std::move(copies)};
}

// One torsion section: its order and the contacted component at every fiber
// copy (0 = identity component; IV* far components are 1 and 2; I_n components
// are counted mod n). contacts must be indexed like TrivialLattice::copies.
struct TorsionSection {
  long order;
  std::vector<long> contacts;
};

struct NsLattice {
  Lattice lattice;
  TrivialLattice trivial;
  Int index;  // order of the torsion group glued in
};

inline NsLattice ns_lattice(const KodairaConfiguration& cfg, const std::vector<TorsionSection>& torsion) {
  TrivialLattice triv = trivial_lattice(cfg);
  long n = triv.lattice.rank();
  std::vector<GlueVector> glue;
  Int expected_index(1);
  for (const auto& ts : torsion) {
    if (ts.contacts.size() != triv.copies.size())
      throw error("torsion contact list does not match the reducible fiber copies");
    GlueVector g(n, Rat(0));
    g[1] = Rat(1);  // O
    Rat contr_sum(0);
    for (size_t ci = 0; ci < triv.copies.size(); ++ci) {
      long c = ts.contacts[ci];
      if (c == 0) continue;
      const FiberCopy& cp = triv.copies[ci];
      Lattice blk = detail::fiber_root_block(cp.type);
      long idx;  // component basis index within the block
      if (cp.type.type == KodairaType::In) {
        long m = cp.type.n;
        if (c < 0 || c >= m) throw error("I_n contact component out of range");
        if ((ts.order * c) % m != 0)
          throw error("contact component order does not divide the fiber data");
        idx = c - 1;
      } else if (cp.type.type == KodairaType::IVstar) {
        if (c != 1 && c != 2) throw error("IV* contact component must be 0, 1 or 2");
        if (ts.order % 3 != 0) throw error("contact component order does not divide the fiber data");
        idx = (c == 1) ? 3 : 5;  // C4 and C6 of the fiber diagram
      } else {
        throw error("torsion contact supported only on I_n and IV* fibers");
      }
      RatMat ginv = inverse(to_rat(blk.gram));
      Rat contr(0);
      for (long j = 0; j < blk.rank(); ++j) {
        g[cp.offset + j] += ginv(idx, j);
      }
      contr = -ginv(idx, idx);
      contr_sum += contr;
    }
    Rat beta = contr_sum / 2;
    if (den(beta) != 1)
      throw error("inconsistent contact data: section class pairs fractionally with the zero section");
    g[0] = beta;  // F coefficient
    glue.push_back(std::move(g));
    expected_index *= ts.order;
  }
  auto ol = overlattice(triv.lattice, glue);
  if (ol.index != expected_index)
    throw error("torsion glue produced index " + ol.index.str() + ", expected " + expected_index.str());
  return {std::move(ol.lattice), std::move(triv), ol.index};
}

inline long shioda_tate_rank(long rho, const KodairaConfiguration& cfg) {
  long s = 0;
  for (const auto& f : cfg.fibers) s += f.degree * (f.type.components() - 1);
  long r = rho - 2 - s;
  if (r < 0) throw error("Shioda-Tate rank would be negative (inconsistent rho)");
  return r;
}

// ---------------------------------------------------------------------------
// transcendental lattice report

struct TransLatticeReport {
  Signature sig;                      // (2, 20 - rank ns)
  FiniteQuadraticForm form;           // opposite of the NS discriminant form
  std::vector<std::string> matches;   // candidate lattices with equal signature and form
  GenusVerdict verdict;
};

inline TransLatticeReport transcendental_from_ns(const Lattice& ns) {
  auto inv = basic_invariants(ns);
  if (inv.rank > 20) throw error("NS rank exceeds 20");
  if (!(inv.sig == Signature{1, inv.rank - 1, 0}))
    throw error("NS lattice is not hyperbolic");
  TransLatticeReport rep;
  rep.sig = {2, 20 - inv.rank, 0};
  rep.form = discriminant_form(ns).opposite();
  for (const auto& [name, cand] : Catalog::transcendental_candidates()) {
    auto ci = basic_invariants(cand);
    if (!(ci.sig == rep.sig)) continue;
    if (abs_int(ci.det) != rep.form.order()) continue;
    if (fqf_isomorphic(discriminant_form(cand), rep.form)) rep.matches.push_back(name);
  }
  rep.verdict = genus_unique(rep.sig, rep.form);
  return rep;
}

// ---------------------------------------------------------------------------
// the pushforward gamma on sublattices of U + A2

// gamma(u_i) = w_i, gamma(a_1) = (b_1 + 2 b_2)/3, gamma(a_2) = b_2, with
// w_i^2 = 0, w_1 w_2 = 3, b_i^2 = 6, b_1 b_2 = -3. Image Gram of the four
// generator images:
inline IntMat gamma_image_gram() {
  IntMat g(4, 4);
  g(0, 1) = g(1, 0) = 3;
  g(2, 2) = 2;
  g(2, 3) = g(3, 2) = 3;
  g(3, 3) = 6;
  return g;
}

// rows: integer coordinate vectors in the basis {u1, u2, a1, a2} of U + A2
inline Lattice apply_gamma(const IntMat& rows) {
  if (rows.cols != 4) throw error("apply_gamma expects coordinates in U + A2");
  SmithForm sf = smith_form(rows);
  if (sf.rank != rows.rows) throw error("apply_gamma: input vectors are dependent");
  IntMat g = rows * gamma_image_gram() * rows.transposed();
  return Lattice(std::move(g));
}

}  // namespace k3lat
