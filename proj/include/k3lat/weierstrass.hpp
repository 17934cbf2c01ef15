#pragma once

#include "k3lat/poly.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace k3lat {

// ---------------------------------------------------------------------------
// places of P^1 over Q

struct Place {
  RatPoly finite;  // monic squarefree; ignored when at_infinity
  bool at_infinity = false;

  static Place infinity() {
    Place p;
    p.at_infinity = true;
    return p;
  }
  static Place at(const RatPoly& q) {
    Place p;
    p.finite = monic(q);
    return p;
  }
  static Place at_root(const Rat& r) { return at(RatPoly(std::vector<Rat>{-r, Rat(1)})); }

  long degree() const { return at_infinity ? 1 : finite.degree(); }

  bool operator==(const Place& o) const {
    return at_infinity == o.at_infinity && (at_infinity || finite == o.finite);
  }
  bool operator<(const Place& o) const {
    if (at_infinity != o.at_infinity) return !at_infinity;  // infinity sorts last
    if (finite.degree() != o.finite.degree()) return finite.degree() < o.finite.degree();
    return finite.c < o.finite.c;
  }
  std::string to_string() const { return at_infinity ? "t=infinity" : poly_str(finite) + " = 0"; }
};

// v_infinity(f) = weight - deg(f); finite places by exact division
inline long place_valuation(const RatPoly& f, const Place& p, long weight = 0) {
  if (f.is_zero()) throw error("valuation of the zero polynomial is undefined");
  if (p.at_infinity) return weight - f.degree();
  return poly_valuation(f, p.finite);
}

inline long place_valuation(const RatFunc& f, const Place& p, long weight = 0) {
  if (f.is_zero()) throw error("valuation of the zero rational function is undefined");
  if (p.at_infinity) return weight - (f.num().degree() - f.den().degree());
  return poly_valuation(f.num(), p.finite) - poly_valuation(f.den(), p.finite);
}

// ---------------------------------------------------------------------------
// Weierstrass models over Q(t)

// y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 with polynomial coefficients;
// chi is the Euler characteristic over 12 (2 for a K3), giving deg a_i <= i*chi.
struct WeierstrassModel {
  RatPoly a1, a2, a3, a4, a6;
  long chi = 2;
  bool short_form = false;  // presented as y^2 = x^3 + C x^2 + A x + B
  std::map<std::string, Rat> params;

  static WeierstrassModel short_model(RatPoly C, RatPoly A, RatPoly B, long chi = 2) {
    WeierstrassModel w;
    w.a2 = std::move(C);
    w.a4 = std::move(A);
    w.a6 = std::move(B);
    w.chi = chi;
    w.short_form = true;
    return w;
  }

  RatPoly b2() const { return a1 * a1 + a2 * Rat(4); }
  RatPoly b4() const { return a4 * Rat(2) + a1 * a3; }
  RatPoly b6() const { return a3 * a3 + a6 * Rat(4); }
  RatPoly b8() const {
    return a1 * a1 * a6 + a2 * a6 * Rat(4) - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  }
  RatPoly c4() const { return b2() * b2() - b4() * Rat(24); }
  RatPoly c6() const { return -(b2() * b2() * b2()) + b2() * b4() * Rat(36) - b6() * Rat(216); }
  RatPoly discriminant() const {
    RatPoly B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -(B2 * B2 * B8) - B4 * B4 * B4 * Rat(8) - B6 * B6 * Rat(27) + B2 * B4 * B6 * Rat(9);
  }

  // y -> y - (a1 x + a3)/2: the same curve as y^2 = x^3 + C x^2 + A x + B
  WeierstrassModel completed_square() const {
    WeierstrassModel w = short_model(b2() * Rat(1, 4), b4() * Rat(1, 2), b6() * Rat(1, 4), chi);
    w.params = params;
    return w;
  }

  // the model in the coordinate s = 1/t, cleared with the chi-weights
  WeierstrassModel flipped() const {
    WeierstrassModel w;
    w.a1 = reverse_into(a1, 1 * chi);
    w.a2 = reverse_into(a2, 2 * chi);
    w.a3 = reverse_into(a3, 3 * chi);
    w.a4 = reverse_into(a4, 4 * chi);
    w.a6 = reverse_into(a6, 6 * chi);
    w.chi = chi;
    w.short_form = short_form;
    return w;
  }
};

struct CInvariants {
  RatPoly c4, c6, delta;
  RatFunc j;  // 1728 c4^3 / delta
};

inline CInvariants c_invariants(const WeierstrassModel& w) {
  CInvariants out;
  out.c4 = w.c4();
  out.c6 = w.c6();
  out.delta = w.discriminant();
  if (out.delta.is_zero()) throw error("degenerate Weierstrass model (discriminant vanishes)");
  if (out.c4 * out.c4 * out.c4 - out.c6 * out.c6 != out.delta * Rat(1728))
    throw error("c-invariant identity failed");
  out.j = RatFunc(out.c4 * out.c4 * out.c4 * Rat(1728), out.delta);
  return out;
}

// ---------------------------------------------------------------------------
// Kodaira types

enum class KodairaType { In, I0star, Instar, II, III, IV, IVstar, IIIstar, IIstar };

struct FiberType {
  KodairaType type;
  long n = 0;  // the n of I_n / I_n*

  bool operator==(const FiberType& o) const { return type == o.type && n == o.n; }
  bool operator<(const FiberType& o) const {
    if (type != o.type) return type < o.type;
    return n < o.n;
  }

  long euler() const {
    switch (type) {
      case KodairaType::In: return n;
      case KodairaType::I0star: return 6;
      case KodairaType::Instar: return 6 + n;
      case KodairaType::II: return 2;
      case KodairaType::III: return 3;
      case KodairaType::IV: return 4;
      case KodairaType::IVstar: return 8;
      case KodairaType::IIIstar: return 9;
      case KodairaType::IIstar: return 10;
    }
    throw error("unreachable");
  }

  long components() const {
    switch (type) {
      case KodairaType::In: return n;
      case KodairaType::I0star: return 5;
      case KodairaType::Instar: return 5 + n;
      case KodairaType::II: return 1;
      case KodairaType::III: return 2;
      case KodairaType::IV: return 3;
      case KodairaType::IVstar: return 7;
      case KodairaType::IIIstar: return 8;
      case KodairaType::IIstar: return 9;
    }
    throw error("unreachable");
  }

  // root lattice contribution: (series, rank); rank 0 means none
  std::pair<char, long> root() const {
    switch (type) {
      case KodairaType::In: return {'A', n >= 2 ? n - 1 : 0};
      case KodairaType::I0star: return {'D', 4};
      case KodairaType::Instar: return {'D', 4 + n};
      case KodairaType::II: return {'A', 0};
      case KodairaType::III: return {'A', 1};
      case KodairaType::IV: return {'A', 2};
      case KodairaType::IVstar: return {'E', 6};
      case KodairaType::IIIstar: return {'E', 7};
      case KodairaType::IIstar: return {'E', 8};
    }
    throw error("unreachable");
  }

  std::string to_string() const {
    switch (type) {
      case KodairaType::In: return "I" + std::to_string(n);
      case KodairaType::I0star: return "I0*";
      case KodairaType::Instar: return "I" + std::to_string(n) + "*";
      case KodairaType::II: return "II";
      case KodairaType::III: return "III";
      case KodairaType::IV: return "IV";
      case KodairaType::IVstar: return "IV*";
      case KodairaType::IIIstar: return "III*";
      case KodairaType::IIstar: return "II*";
    }
    throw error("unreachable");
  }
};

namespace detail {

constexpr long VAL_INF = 1L << 40;

struct LocalVals {
  long v4, v6, vd;  // after local 12th-power reduction
  long reductions;
};

inline LocalVals local_vals(const CInvariants& ci, const Place& p, long chi) {
  long v4 = ci.c4.is_zero() ? VAL_INF : place_valuation(ci.c4, p, 4 * chi);
  long v6 = ci.c6.is_zero() ? VAL_INF : place_valuation(ci.c6, p, 6 * chi);
  long vd = place_valuation(ci.delta, p, 12 * chi);
  long k = std::min({v4 == VAL_INF ? VAL_INF : v4 / 4, v6 == VAL_INF ? VAL_INF : v6 / 6, vd / 12});
  if (k == VAL_INF) k = vd / 12;
  if (k < 0) throw error("model is not integral at " + p.to_string());
  if (v4 != VAL_INF) v4 -= 4 * k;
  if (v6 != VAL_INF) v6 -= 6 * k;
  vd -= 12 * k;
  return {v4, v6, vd, k};
}

}  // namespace detail

// Characteristic-zero Kodaira classification from the reduced valuations of
// (c4, c6, delta) at the place.
inline FiberType kodaira_type_at(const WeierstrassModel& w, const Place& p) {
  auto ci = c_invariants(w);
  auto [v4, v6, vd, k] = detail::local_vals(ci, p, w.chi);
  using KT = KodairaType;
  if (vd == 0) return {KT::In, 0};  // good reduction, displayed as I0
  if (v4 == 0) return {KT::In, vd};
  if (v6 == 1 && vd == 2 && v4 >= 1) return {KT::II, 0};
  if (v4 == 1 && vd == 3 && v6 >= 2) return {KT::III, 0};
  if (v6 == 2 && vd == 4 && v4 >= 2) return {KT::IV, 0};
  if (vd == 6 && v4 >= 2 && v6 >= 3) return {KT::I0star, 0};
  if (v4 == 2 && v6 == 3 && vd > 6) return {KT::Instar, vd - 6};
  if (v6 == 4 && vd == 8 && v4 >= 3) return {KT::IVstar, 0};
  if (v4 == 3 && vd == 9 && v6 >= 5) return {KT::IIIstar, 0};
  if (v6 == 5 && vd == 10 && v4 >= 4) return {KT::IIstar, 0};
  throw error("could not classify fiber at " + p.to_string() + " (v4=" + std::to_string(v4) +
              " v6=" + std::to_string(v6) + " vD=" + std::to_string(vd) + ")");
}

struct FiberEntry {
  Place place;
  long degree;  // number of geometric fibers at this place
  FiberType type;
};

struct KodairaConfiguration {
  std::vector<FiberEntry> fibers;  // singular fibers only
  long chi = 2;

  long euler_sum() const {
    long e = 0;
    for (const auto& f : fibers) e += f.degree * f.type.euler();
    return e;
  }

  // multiset of fiber types with multiplicities (degree-weighted)
  std::map<std::string, long> type_counts() const {
    std::map<std::string, long> out;
    for (const auto& f : fibers) out[f.type.to_string()] += f.degree;
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [t, c] : type_counts()) {
      if (!s.empty()) s += " + ";
      if (c > 1) s += std::to_string(c);
      s += t;
    }
    return s.empty() ? "(none)" : s;
  }
};

inline std::vector<Place> bad_places(const WeierstrassModel& w) {
  auto ci = c_invariants(w);
  std::vector<RatPoly> polys;
  if (!ci.c4.is_zero() && ci.c4.degree() >= 1) polys.push_back(ci.c4);
  if (!ci.c6.is_zero() && ci.c6.degree() >= 1) polys.push_back(ci.c6);
  polys.push_back(ci.delta);
  std::vector<Place> out;
  if (ci.delta.degree() >= 1) {
    auto cb = coprime_basis(polys);
    size_t delta_idx = polys.size() - 1;
    for (size_t j = 0; j < cb.basis.size(); ++j)
      if (cb.exponents[delta_idx][j] > 0) out.push_back(Place::at(cb.basis[j]));
  }
  if (place_valuation(ci.delta, Place::infinity(), 12 * w.chi) > 0) out.push_back(Place::infinity());
  std::sort(out.begin(), out.end());
  return out;
}

inline KodairaConfiguration classify(const WeierstrassModel& w) {
  KodairaConfiguration cfg;
  cfg.chi = w.chi;
  for (const auto& p : bad_places(w)) {
    FiberType t = kodaira_type_at(w, p);
    if (t.type == KodairaType::In && t.n == 0) continue;  // reduced to good
    cfg.fibers.push_back({p, p.degree(), t});
  }
  std::sort(cfg.fibers.begin(), cfg.fibers.end(),
            [](const FiberEntry& a, const FiberEntry& b) { return a.place < b.place; });
  if (cfg.euler_sum() != 12 * w.chi)
    throw error("Euler number mismatch: sum " + std::to_string(cfg.euler_sum()) + " != " +
                std::to_string(12 * w.chi) + " (non-minimal global model or classification bug)");
  return cfg;
}

// ---------------------------------------------------------------------------
// sections and the Mordell-Weil group law over Q(t)

struct Section {
  bool zero = true;
  RatFunc x, y;

  static Section zero_section() { return Section{}; }
  static Section at(RatFunc px, RatFunc py) { return Section{false, std::move(px), std::move(py)}; }
  static Section at_poly(RatPoly px, RatPoly py) {
    return Section{false, RatFunc(std::move(px)), RatFunc(std::move(py))};
  }

  bool operator==(const Section& o) const {
    if (zero != o.zero) return false;
    return zero || (x == o.x && y == o.y);
  }
};

inline bool on_curve(const WeierstrassModel& w, const Section& p) {
  if (p.zero) return true;
  RatFunc a1(w.a1), a2(w.a2), a3(w.a3), a4(w.a4), a6(w.a6);
  RatFunc lhs = p.y * p.y + a1 * p.x * p.y + a3 * p.y;
  RatFunc rhs = p.x * p.x * p.x + a2 * p.x * p.x + a4 * p.x + a6;
  return lhs == rhs;
}

inline Section section_neg(const WeierstrassModel& w, const Section& p) {
  if (p.zero) return p;
  RatFunc a1(w.a1), a3(w.a3);
  return Section::at(p.x, -p.y - a1 * p.x - a3);
}

inline Section section_add(const WeierstrassModel& w, const Section& p, const Section& q) {
  if (p.zero) return q;
  if (q.zero) return p;
  RatFunc a1(w.a1), a2(w.a2), a3(w.a3), a4(w.a4);
  if (p.x == q.x) {
    RatFunc neg_y = -q.y - a1 * q.x - a3;
    if (p.y == neg_y) return Section::zero_section();
  }
  RatFunc lam, nu;
  if (p.x == q.x && p.y == q.y) {
    RatFunc denom = p.y * Rat(2) + a1 * p.x + a3;
    if (denom.is_zero()) return Section::zero_section();  // 2-torsion
    lam = (p.x * p.x * Rat(3) + a2 * p.x * Rat(2) + a4 - a1 * p.y) / denom;
  } else {
    lam = (q.y - p.y) / (q.x - p.x);
  }
  nu = p.y - lam * p.x;
  RatFunc x3 = lam * lam + a1 * lam - a2 - p.x - q.x;
  RatFunc y3 = -(lam + a1) * x3 - nu - a3;
  return Section::at(x3, y3);
}

inline std::optional<long> section_order(const WeierstrassModel& w, const Section& p, long cap = 12) {
  if (!on_curve(w, p)) throw error("section does not lie on the curve");
  Section q = p;
  for (long k = 1; k <= cap; ++k) {
    if (q.zero) return k;
    q = section_add(w, q, p);
  }
  return std::nullopt;  // order exceeds cap
}

// ---------------------------------------------------------------------------
// contact components of sections with singular fibers

namespace detail {

inline Rat eval_at_place(const RatFunc& f, const Rat& r) {
  Rat d = f.den().eval(r);
  if (d == 0) throw error("pole while evaluating at the place");
  return f.num().eval(r) / d;
}

// value of f / place^k at the root of the degree-1 place
inline Rat shifted_value(const RatFunc& f, const RatPoly& place, long k, const Rat& root) {
  RatPoly n = f.num(), d = f.den();
  for (long i = 0; i < k; ++i) {
    if (divides(place, n)) n = n / place;
    else { d = d * place; }
  }
  Rat dv = d.eval(root);
  if (dv == 0) throw error("indeterminate value at the place");
  return n.eval(root) / dv;
}

}  // namespace detail

// Component index of the section at the place: 0 is the identity component.
// For I_n the index is counted in Z/n along the cycle; for IV* the two
// non-identity simple components are 1 and 2. Only these two types are needed.
inline long contact_component(const WeierstrassModel& w, const Section& p, const Place& place);

namespace detail {

inline long contact_component_finite(const WeierstrassModel& w, const Section& p, const Place& place) {
  if (place.finite.degree() != 1)
    throw error("contact_component supports only rational places");
  Rat root = -place.finite.coeff(0);
  FiberType ft = kodaira_type_at(w, place);
  if (!(ft.type == KodairaType::In && ft.n >= 1) && ft.type != KodairaType::IVstar)
    throw error("contact_component supports only I_n and IV* fibers (got " + ft.to_string() + ")");
  auto ci = c_invariants(w);
  auto lv = local_vals(ci, place, w.chi);
  if (lv.reductions != 0) throw error("model is not minimal at the place");

  if (p.zero) return 0;
  if (!p.x.is_zero() && place_valuation(p.x, place) < 0)
    return 0;  // reduces to the point at infinity

  // complete the square: yhat = y + (a1 x + a3)/2, curve yhat^2 = cubic(x)
  RatFunc a1(w.a1), a3(w.a3);
  RatFunc yhat = p.y + (a1 * p.x + a3) * Rat(1, 2);
  // reduced cubic x^3 + (b2/4) x^2 + (b4/2) x + b6/4 at the place
  RatPoly cubic(std::vector<Rat>{(w.b6() * Rat(1, 4)).eval(root), (w.b4() * Rat(1, 2)).eval(root),
                                 (w.b2() * Rat(1, 4)).eval(root), Rat(1)});
  RatPoly rep = gcd(cubic, derivative(cubic));
  if (rep.degree() < 1) throw error("no singular point found at the place");
  Rat x0;
  if (rep.degree() == 1) x0 = -rep.coeff(0) / rep.coeff(1);
  else x0 = -rep.coeff(1) / (Rat(2) * rep.coeff(2));  // (x - x0)^2

  Rat xval = p.x.is_zero() ? Rat(0) : eval_at_place(p.x, root);
  Rat yhat_val;
  {
    if (yhat.is_zero()) yhat_val = Rat(0);
    else if (place_valuation(yhat, place) > 0) yhat_val = Rat(0);
    else yhat_val = eval_at_place(yhat, root);
  }
  if (xval != x0 || yhat_val != 0) return 0;  // smooth point of the fiber

  if (ft.type == KodairaType::IVstar) {
    // the two far simple components are separated by the branch of yhat/place^2
    if (yhat.is_zero()) throw error("section passes through the singular point unresolved");
    long v = place_valuation(yhat, place);
    if (v < 2) throw error("unexpected contact depth at IV* fiber");
    Rat lead = shifted_value(yhat, place.finite, v, root);
    return lead > 0 ? 1 : 2;
  }

  // I_n: contact depth of the section with the opposite branch through the node
  long n = ft.n;
  if (yhat.is_zero()) {
    if (n % 2 != 0) throw error("2-torsion contact on an odd cycle");
    return n / 2;
  }
  long k0 = place_valuation(yhat, place);
  if (k0 <= 0) throw error("section passes through the singular point unresolved");
  if (2 * k0 > n) k0 = n - k0;
  if (2 * k0 == n) return k0;
  Rat lead = shifted_value(yhat, place.finite, place_valuation(yhat, place), root);
  return lead > 0 ? k0 : n - k0;
}

}  // namespace detail

inline long contact_component(const WeierstrassModel& w, const Section& p, const Place& place) {
  if (place.at_infinity) {
    WeierstrassModel wf = w.flipped();
    Section pf = p;
    if (!p.zero) {
      // x -> s^(2 chi) x(1/s), y -> s^(3 chi) y(1/s)
      auto flip_rf = [&](const RatFunc& f, long wgt) {
        long d = std::max(f.num().degree(), f.den().degree());
        RatPoly n = reverse_into(f.num(), d);
        RatPoly dd = reverse_into(f.den(), d);
        // f(1/s) = n/dd; multiply by s^wgt
        return RatFunc(n * RatPoly::t_power(wgt), dd);
      };
      pf = Section::at(flip_rf(p.x, 2 * w.chi), flip_rf(p.y, 3 * w.chi));
      if (!on_curve(wf, pf)) throw error("section flip to the infinite place failed");
    }
    return detail::contact_component_finite(wf, pf, Place::at_root(Rat(0)));
  }
  return detail::contact_component_finite(w, p, place);
}

// ---------------------------------------------------------------------------
// three-torsion normal form and the two quotient constructions

struct ThreeTorsionForm {
  bool d_case;            // y^2 = x^3 + d^2  (else y^2 = x^3 + a^2 (x-b)^2)
  bool twisted;           // the square exists only after twisting by -27
  RatFunc d;              // d-case; for twisted, d^2 = B/(-27)
  RatFunc a, b;           // a-case
  WeierstrassModel short_model;  // completed square
  std::optional<Section> torsion;  // rational 3-torsion (0, d) or (0, a b), when not twisted
};

inline ThreeTorsionForm to_three_torsion_form(const WeierstrassModel& w) {
  WeierstrassModel s = w.completed_square();
  const RatPoly &C = s.a2, &A = s.a4, &B = s.a6;
  ThreeTorsionForm out;
  out.short_model = s;
  auto sqrt_or_twist = [&](const RatPoly& f, RatFunc& root_out, bool& twist_out) {
    if (auto r = poly_sqrt(f)) {
      root_out = RatFunc(*r);
      twist_out = false;
      return true;
    }
    if (auto r = poly_sqrt(f * Rat(-1, 27))) {
      root_out = RatFunc(*r);
      twist_out = true;
      return true;
    }
    return false;
  };
  if (C.is_zero() && A.is_zero()) {
    out.d_case = true;
    if (B.is_zero()) throw error("degenerate model");
    RatFunc d;
    bool tw;
    if (!sqrt_or_twist(B, d, tw))
      throw error("no 3-torsion section visible: constant term is not a square up to the -27 twist");
    out.d = d;
    out.twisted = tw;
    if (!tw) out.torsion = Section::at(RatFunc(RatPoly()), d);
  } else {
    if (C.is_zero()) throw error("no 3-torsion section visible: x-coefficient without x^2 term");
    out.d_case = false;
    RatFunc b = RatFunc(-A, C * Rat(2));
    RatFunc Bf(B), Cf(C);
    if (Bf != Cf * b * b)
      throw error("no 3-torsion section visible: model is not of the a^2 (x-b)^2 shape");
    RatFunc a;
    bool tw;
    if (!sqrt_or_twist(C, a, tw))
      throw error("no 3-torsion section visible: x^2 coefficient is not a square up to the -27 twist");
    out.a = a;
    out.b = b;
    out.twisted = tw;
    if (!tw) out.torsion = Section::at(RatFunc(RatPoly()), a * b);
  }
  if (out.torsion) {
    auto ord = section_order(out.short_model, *out.torsion, 3);
    if (!ord || *ord != 3) throw error("candidate 3-torsion section does not have order 3");
  }
  return out;
}

namespace detail {

// clear denominators of a short model by (x,y) -> (u^2 x, u^3 y)
inline WeierstrassModel clear_short_model(const RatFunc& C, const RatFunc& A, const RatFunc& B, long chi) {
  RatPoly u(Rat(1));
  for (const RatFunc* f : {&C, &A, &B}) {
    RatPoly d = f->den();
    RatPoly g = gcd(u, d);
    u = u * (d / g);
  }
  // u^2 C, u^4 A, u^6 B
  RatFunc u2(u * u);
  RatFunc Cu = C * u2, Au = A * u2 * u2, Bu = B * u2 * u2 * u2;
  if (!Cu.is_poly() || !Au.is_poly() || !Bu.is_poly())
    throw error("denominator clearing failed");
  return WeierstrassModel::short_model(Cu.num(), Au.num(), Bu.num(), chi);
}

// remove perfect 12th-power content at finite places: (c4,c6) -> (c4/q^4, c6/q^6)
inline WeierstrassModel minimalize_short(const WeierstrassModel& w) {
  WeierstrassModel s = w;
  auto ci = c_invariants(s);
  std::vector<RatPoly> nz;
  for (const RatPoly* f : {&ci.c4, &ci.c6, &ci.delta})
    if (!f->is_zero() && f->degree() >= 1) nz.push_back(*f);
  if (nz.empty()) return s;
  auto cb = coprime_basis(nz);
  bool changed = false;
  RatPoly c4 = ci.c4, c6 = ci.c6, delta = ci.delta;
  for (const auto& q : cb.basis) {
    while (true) {
      long v4 = c4.is_zero() ? VAL_INF : poly_valuation(c4, q);
      long v6 = c6.is_zero() ? VAL_INF : poly_valuation(c6, q);
      long vd = poly_valuation(delta, q);
      if (v4 >= 4 && v6 >= 6 && vd >= 12) {
        RatPoly q4 = pow(q, 4), q6 = pow(q, 6), q12 = pow(q, 12);
        if (!c4.is_zero()) c4 = c4 / q4;
        if (!c6.is_zero()) c6 = c6 / q6;
        delta = delta / q12;
        changed = true;
      } else {
        break;
      }
    }
  }
  if (!changed) return s;
  // rebuild a model from the reduced c-invariants: y^2 = x^3 - 27 c4 x - 54 c6
  return WeierstrassModel::short_model(RatPoly(), c4 * Rat(-27), c6 * Rat(-54), w.chi);
}

}  // namespace detail

// Quotient by the translation by the 3-torsion section:
//   y^2 = x^3 + d^2            -> y^2 = x^3 - 27 d^2
//   y^2 = x^3 + a^2 (x - b)^2  -> y^2 = x^3 - 27 a^2 (x - 4 a^2 - 27 b)^2
// Both right-hand sides are rational in a^2, b, so the twisted cases stay over Q.
inline WeierstrassModel quotient_by_three_torsion(const WeierstrassModel& w) {
  ThreeTorsionForm f = to_three_torsion_form(w);
  const WeierstrassModel& s = f.short_model;
  WeierstrassModel out;
  if (f.d_case) {
    out = WeierstrassModel::short_model(RatPoly(), RatPoly(), s.a6 * Rat(-27), w.chi);
  } else {
    RatFunc C(s.a2);  // = a^2 (possibly -27 e^2)
    RatFunc g = C * Rat(4) + f.b * Rat(27);
    RatFunc Cq = C * Rat(-27);
    RatFunc Aq = C * g * Rat(54);
    RatFunc Bq = C * g * g * Rat(-27);
    out = detail::clear_short_model(Cq, Aq, Bq, w.chi);
  }
  out = detail::minimalize_short(out);
  out.params = w.params;
  if (out.discriminant().is_zero()) throw error("quotient model is degenerate");
  return out;
}

// Quotient by (x, y, t) -> (x, -y, -t): coefficient reindexing on even models.
inline WeierstrassModel quotient_by_involution(const WeierstrassModel& w) {
  WeierstrassModel s = w.completed_square();
  const RatPoly &C = s.a2, &A = s.a4, &B = s.a6;
  if (C.degree() > 2 * w.chi || A.degree() > 4 * w.chi || B.degree() > 6 * w.chi)
    throw error("model exceeds the degree bounds for its Euler characteristic");
  auto even_part = [](const RatPoly& f, const char* which) {
    auto d = deflate(f, 2);
    if (!d) throw error(std::string("the involution t -> -t is not defined: odd-degree term in ") + which);
    return *d;
  };
  RatPoly Ct = even_part(C, "the x^2 coefficient");
  RatPoly At = even_part(A, "the x coefficient");
  RatPoly Bt = even_part(B, "the constant term");
  WeierstrassModel out = WeierstrassModel::short_model(
      RatPoly::t_power(1) * Ct, RatPoly::t_power(2) * At, RatPoly::t_power(3) * Bt, w.chi);
  out = detail::minimalize_short(out);
  out.params = w.params;
  if (out.discriminant().is_zero()) throw error("quotient model is degenerate");
  return out;
}

}  // namespace k3lat
