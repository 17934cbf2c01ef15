#pragma once

#include "k3lat/nslattice.hpp"
#include "k3lat/weierstrass.hpp"

#include <string>
#include <vector>

namespace k3lat {

// ---------------------------------------------------------------------------
// the shipped elliptic K3 families

// y^2 = x^3 + (t^2 - 1)^4: three IV* fibers, 3-torsion (0, (t^2-1)^2)
inline WeierstrassModel model_iv_star_triple() {
  RatPoly t2m1(std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});
  return WeierstrassModel::short_model(RatPoly(), RatPoly(), pow(t2m1, 4));
}

inline Section model_iv_star_triple_torsion() {
  RatPoly t2m1(std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});
  return Section::at_poly(RatPoly(), t2m1 * t2m1);
}

// y^2 = x^3 + (t^2-1)^2 (x - k t^4 + k t^2)^2: 2IV* + I6 + 2I1 for generic k
inline WeierstrassModel model_two_iv_star_i6(const Rat& k) {
  RatPoly t2m1(std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});
  RatPoly b = RatPoly::t_power(4, k) - RatPoly::t_power(2, k);  // k t^4 - k t^2
  RatPoly C = t2m1 * t2m1;
  WeierstrassModel w = WeierstrassModel::short_model(C, C * b * Rat(-2), C * b * b);
  w.params["k"] = k;
  return w;
}

inline Section model_two_iv_star_i6_torsion(const Rat& k) {
  RatPoly t2m1(std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});
  RatPoly b = RatPoly::t_power(4, k) - RatPoly::t_power(2, k);
  return Section::at_poly(RatPoly(), t2m1 * b);
}

// Tate normal form y^2 + a1 x y + a3 y = x^3 with a1 = 1 + beta t, a3 = t^6:
// I18 + 6 I1 fibers, 3-torsion (0, 0). The involution quotient needs beta = 0.
inline WeierstrassModel model_i18(const Rat& beta = Rat(0)) {
  WeierstrassModel w;
  w.a1 = RatPoly(Rat(1)) + RatPoly::t_power(1, beta);
  w.a3 = RatPoly::t_power(6);
  w.chi = 2;
  w.params["beta"] = beta;
  return w;
}

inline Section model_i18_torsion() { return Section::at_poly(RatPoly(), RatPoly()); }

// ---------------------------------------------------------------------------
// labeled Neron-Severi generator assemblies (for the isometry-group checks
// and the E6-triple / E8-pair span diagrams)

struct NsGenerators {
  std::vector<std::string> names;
  IntMat pairing;
  GeneratedLattice presented;  // lattice + generator coordinates

  long index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<long>(i);
    throw error("unknown generator " + name);
  }

  // rows: coordinates (in the presented basis) of the named generators
  IntMat rows_for(const std::vector<std::string>& gens) const {
    IntMat m(static_cast<long>(gens.size()), presented.lattice.rank());
    for (size_t i = 0; i < gens.size(); ++i) {
      long g = index_of(gens[i]);
      for (long j = 0; j < presented.lattice.rank(); ++j) m(i, j) = presented.generator_coords(g, j);
    }
    return m;
  }

  // isometry defined by a permutation of the named generators
  Isometry isometry_from_permutation(const std::map<std::string, std::string>& perm) const {
    long g = static_cast<long>(names.size());
    long r = presented.lattice.rank();
    IntMat gens(g, r), imgs(g, r);
    for (long i = 0; i < g; ++i) {
      auto it = perm.find(names[i]);
      long tgt = (it == perm.end()) ? i : index_of(it->second);
      for (long j = 0; j < r; ++j) {
        gens(i, j) = presented.generator_coords(i, j);
        imgs(i, j) = presented.generator_coords(tgt, j);
      }
    }
    return isometry_from_images(presented.lattice, gens, imgs);
  }
};

namespace detail {

inline NsGenerators make_ns_generators(const std::vector<std::string>& names,
                                       const std::vector<std::tuple<std::string, std::string, int>>& pairs,
                                       const std::map<std::string, int>& self) {
  NsGenerators ns;
  ns.names = names;
  long g = static_cast<long>(names.size());
  ns.pairing = IntMat(g, g);
  auto idx = [&](const std::string& s) {
    for (long i = 0; i < g; ++i)
      if (names[i] == s) return i;
    throw error("unknown generator " + s);
  };
  for (const auto& [name, v] : self) ns.pairing(idx(name), idx(name)) = v;
  for (const auto& [a, b, v] : pairs) {
    long i = idx(a), j = idx(b);
    ns.pairing(i, j) = ns.pairing(j, i) = v;
  }
  ns.presented = lattice_from_generators(ns.pairing);
  return ns;
}

}  // namespace detail

// NS(X3) for the 3 IV* fibration: F, O, T1, T2 and the 21 fiber components.
// Fiber diagram per copy j: O-C0-C1-C2-C3-C4-T1 with C2-C5-C6-T2.
inline NsGenerators ns_generators_iv_star_triple() {
  std::vector<std::string> names{"F", "O", "T1", "T2"};
  for (int j = 1; j <= 3; ++j)
    for (int i = 0; i <= 6; ++i)
      names.push_back("C" + std::to_string(i) + "^(" + std::to_string(j) + ")");
  std::map<std::string, int> self;
  for (const auto& n : names) self[n] = (n == "F") ? 0 : -2;
  std::vector<std::tuple<std::string, std::string, int>> pairs;
  for (const auto& s : {"O", "T1", "T2"}) pairs.push_back({"F", s, 1});
  for (int j = 1; j <= 3; ++j) {
    auto c = [&](int i) { return "C" + std::to_string(i) + "^(" + std::to_string(j) + ")"; };
    pairs.push_back({"O", c(0), 1});
    pairs.push_back({"T1", c(4), 1});
    pairs.push_back({"T2", c(6), 1});
    for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {5, 6}})
      pairs.push_back({c(a), c(b), 1});
  }
  return detail::make_ns_generators(names, pairs, self);
}

// the order-3 action: fiberwise rotation induced by the 3-torsion translation
inline std::map<std::string, std::string> sigma_action_iv_star_triple() {
  std::map<std::string, std::string> p{{"O", "T1"}, {"T1", "T2"}, {"T2", "O"}};
  for (int j = 1; j <= 3; ++j) {
    auto c = [&](int i) { return "C" + std::to_string(i) + "^(" + std::to_string(j) + ")"; };
    p[c(0)] = c(4);
    p[c(4)] = c(6);
    p[c(6)] = c(0);
    p[c(1)] = c(3);
    p[c(3)] = c(5);
    p[c(5)] = c(1);
  }
  return p;
}

// the involution (x,y,t) -> (x,-y,-t): swaps the fibers over +-1, fixes the
// fiber at infinity, and acts as the elliptic involution on each fiber
inline std::map<std::string, std::string> iota_action_iv_star_triple() {
  std::map<std::string, std::string> p{{"T1", "T2"}, {"T2", "T1"}};
  auto c = [&](int i, int j) { return "C" + std::to_string(i) + "^(" + std::to_string(j) + ")"; };
  // fiber 3 (preserved): C3 <-> C5, C4 <-> C6
  p[c(3, 3)] = c(5, 3);
  p[c(5, 3)] = c(3, 3);
  p[c(4, 3)] = c(6, 3);
  p[c(6, 3)] = c(4, 3);
  // fibers 1 and 2 (swapped)
  for (int i : {0, 1, 2}) {
    p[c(i, 1)] = c(i, 2);
    p[c(i, 2)] = c(i, 1);
  }
  p[c(3, 1)] = c(5, 2); p[c(5, 2)] = c(3, 1);
  p[c(4, 1)] = c(6, 2); p[c(6, 2)] = c(4, 1);
  p[c(5, 1)] = c(3, 2); p[c(3, 2)] = c(5, 1);
  p[c(6, 1)] = c(4, 2); p[c(4, 2)] = c(6, 1);
  return p;
}

// the three orthogonal E6(-1) copies cyclically permuted by the order-3 action
inline std::vector<std::vector<std::string>> e6_triple_spans_iv_star_triple() {
  auto c = [](int i, int j) { return "C" + std::to_string(i) + "^(" + std::to_string(j) + ")"; };
  return {
      {c(1, 1), c(0, 1), "O", c(0, 2), c(1, 2), c(0, 3)},
      {c(3, 1), c(4, 1), "T1", c(4, 2), c(3, 2), c(4, 3)},
      {c(5, 1), c(6, 1), "T2", c(6, 2), c(5, 2), c(6, 3)},
  };
}

// the two orthogonal E8(-1) copies switched by the involution
inline std::vector<std::vector<std::string>> e8_pair_spans_iv_star_triple() {
  auto c = [](int i, int j) { return "C" + std::to_string(i) + "^(" + std::to_string(j) + ")"; };
  return {
      {c(3, 3), c(4, 3), "T1", c(4, 2), c(3, 2), c(2, 2), c(1, 2), c(4, 1)},
      {c(5, 3), c(6, 3), "T2", c(6, 1), c(5, 1), c(2, 1), c(1, 1), c(6, 2)},
  };
}

// NS of the I18 + 6I1 fibration: F, O, T1, T2 and the 18-cycle C0..C17 with
// O at C0, T1 at C6, T2 at C12.
inline NsGenerators ns_generators_i18() {
  std::vector<std::string> names{"F", "O", "T1", "T2"};
  for (int i = 0; i < 18; ++i) names.push_back("C" + std::to_string(i));
  std::map<std::string, int> self;
  for (const auto& n : names) self[n] = (n == "F") ? 0 : -2;
  std::vector<std::tuple<std::string, std::string, int>> pairs;
  for (const auto& s : {"O", "T1", "T2"}) pairs.push_back({"F", s, 1});
  auto c = [](int i) { return "C" + std::to_string(((i % 18) + 18) % 18); };
  for (int i = 0; i < 18; ++i) pairs.push_back({c(i), c(i + 1), 1});
  pairs.push_back({"O", c(0), 1});
  pairs.push_back({"T1", c(6), 1});
  pairs.push_back({"T2", c(12), 1});
  return detail::make_ns_generators(names, pairs, self);
}

inline std::map<std::string, std::string> sigma_action_i18() {
  std::map<std::string, std::string> p{{"O", "T1"}, {"T1", "T2"}, {"T2", "O"}};
  for (int i = 0; i < 18; ++i)
    p["C" + std::to_string(i)] = "C" + std::to_string((i + 6) % 18);
  return p;
}

inline std::map<std::string, std::string> iota_action_i18() {
  std::map<std::string, std::string> p{{"T1", "T2"}, {"T2", "T1"}};
  for (int i = 1; i < 18; ++i)
    if (i != 9) p["C" + std::to_string(i)] = "C" + std::to_string(18 - i);
  return p;
}

inline std::vector<std::vector<std::string>> e6_triple_spans_i18() {
  auto c = [](int i) { return "C" + std::to_string(((i % 18) + 18) % 18); };
  return {
      {c(2), c(1), c(0), c(17), c(16), "O"},
      {c(8), c(7), c(6), c(5), c(4), "T1"},
      {c(14), c(13), c(12), c(11), c(10), "T2"},
  };
}

inline std::vector<std::vector<std::string>> e8_pair_spans_i18() {
  auto c = [](int i) { return "C" + std::to_string(i); };
  return {
      {c(8), c(7), c(6), c(5), c(4), c(3), c(2), "T1"},
      {c(10), c(11), c(12), c(13), c(14), c(15), c(16), "T2"},
  };
}

// NS of the 2IV* + I6 fibration: fibers 1, 2 of type IV*, fiber 3 the hexagon
// C0..C5 with O at C0^(3), T1 at C2^(3), T2 at C4^(3).
inline NsGenerators ns_generators_two_iv_star_i6() {
  std::vector<std::string> names{"F", "O", "T1", "T2"};
  for (int j = 1; j <= 2; ++j)
    for (int i = 0; i <= 6; ++i)
      names.push_back("C" + std::to_string(i) + "^(" + std::to_string(j) + ")");
  for (int i = 0; i <= 5; ++i) names.push_back("C" + std::to_string(i) + "^(3)");
  std::map<std::string, int> self;
  for (const auto& n : names) self[n] = (n == "F") ? 0 : -2;
  std::vector<std::tuple<std::string, std::string, int>> pairs;
  for (const auto& s : {"O", "T1", "T2"}) pairs.push_back({"F", s, 1});
  for (int j = 1; j <= 2; ++j) {
    auto c = [&](int i) { return "C" + std::to_string(i) + "^(" + std::to_string(j) + ")"; };
    pairs.push_back({"O", c(0), 1});
    pairs.push_back({"T1", c(4), 1});
    pairs.push_back({"T2", c(6), 1});
    for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {5, 6}})
      pairs.push_back({c(a), c(b), 1});
  }
  auto h = [](int i) { return "C" + std::to_string(((i % 6) + 6) % 6) + "^(3)"; };
  for (int i = 0; i < 6; ++i) pairs.push_back({h(i), h(i + 1), 1});
  pairs.push_back({"O", h(0), 1});
  pairs.push_back({"T1", h(2), 1});
  pairs.push_back({"T2", h(4), 1});
  return detail::make_ns_generators(names, pairs, self);
}

inline std::vector<std::vector<std::string>> e6_triple_spans_two_iv_star_i6() {
  auto c = [](int i, int j) { return "C" + std::to_string(i) + "^(" + std::to_string(j) + ")"; };
  return {
      {c(1, 1), c(0, 1), "O", c(0, 2), c(1, 2), c(0, 3)},
      {c(3, 1), c(4, 1), "T1", c(4, 2), c(3, 2), c(2, 3)},
      {c(5, 1), c(6, 1), "T2", c(6, 2), c(5, 2), c(4, 3)},
  };
}

inline std::vector<std::vector<std::string>> e8_pair_spans_two_iv_star_i6() {
  auto c = [](int i, int j) { return "C" + std::to_string(i) + "^(" + std::to_string(j) + ")"; };
  return {
      {c(1, 3), c(2, 3), "T1", c(4, 2), c(3, 2), c(2, 2), c(1, 2), c(4, 1)},
      {c(5, 3), c(4, 3), "T2", c(6, 1), c(5, 1), c(2, 1), c(1, 1), c(6, 2)},
  };
}

}  // namespace k3lat
