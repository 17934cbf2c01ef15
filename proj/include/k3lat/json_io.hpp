#pragma once

#include "k3lat/lattice.hpp"
#include "k3lat/weierstrass.hpp"

#include "json.hpp"

#include <fstream>
#include <string>
#include <vector>

namespace k3lat {

using json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
  throw error("schema error at " + path + ": " + what);
}

inline Rat parse_fraction(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    schema_error(path, "expected a [\"num\",\"den\"] pair of strings");
  Int n, d;
  try {
    n = Int(j[0].get<std::string>());
    d = Int(j[1].get<std::string>());
  } catch (const std::exception&) {
    schema_error(path, "not an integer pair");
  }
  if (d == 0) schema_error(path, "fraction with zero denominator");
  return Rat(n, d);
}

inline json fraction_json(const Rat& r) { return json::array({num(r).str(), den(r).str()}); }

inline RatPoly parse_poly(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected a coefficient list");
  std::vector<Rat> c;
  for (size_t i = 0; i < j.size(); ++i)
    c.push_back(parse_fraction(j[i], path + "[" + std::to_string(i) + "]"));
  return RatPoly(std::move(c));
}

inline json poly_json(const RatPoly& p) {
  json out = json::array();
  for (long i = 0; i <= p.degree(); ++i) out.push_back(fraction_json(p.coeff(i)));
  return out;
}

inline RatFunc parse_ratfunc(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    schema_error(path, "expected {\"num\": [...], \"den\": [...]}");
  RatPoly n = parse_poly(j["num"], path + ".num");
  RatPoly d = parse_poly(j["den"], path + ".den");
  if (d.is_zero()) schema_error(path + ".den", "zero denominator polynomial");
  return RatFunc(std::move(n), std::move(d));
}

inline json ratfunc_json(const RatFunc& f) {
  return json{{"num", poly_json(f.num())}, {"den", poly_json(f.den())}};
}

}  // namespace detail

// {"name": optional, "gram": [[int]], "labels": optional}
inline Lattice lattice_from_json(const json& j) {
  if (!j.is_object() || !j.contains("gram")) detail::schema_error("$", "expected an object with \"gram\"");
  const json& g = j["gram"];
  if (!g.is_array() || g.empty()) detail::schema_error("$.gram", "expected a nonempty matrix");
  long n = static_cast<long>(g.size());
  IntMat m(n, n);
  for (long i = 0; i < n; ++i) {
    if (!g[i].is_array() || static_cast<long>(g[i].size()) != n)
      detail::schema_error("$.gram[" + std::to_string(i) + "]", "row length does not match");
    for (long k = 0; k < n; ++k) {
      const json& e = g[i][k];
      if (e.is_number_integer()) m(i, k) = Int(e.get<long long>());
      else if (e.is_string()) m(i, k) = Int(e.get<std::string>());
      else detail::schema_error("$.gram[" + std::to_string(i) + "][" + std::to_string(k) + "]",
                                "expected an integer");
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& s : j["labels"]) labels.push_back(s.get<std::string>());
    if (static_cast<long>(labels.size()) != n) detail::schema_error("$.labels", "label count mismatch");
  }
  Lattice l(std::move(m), std::move(labels));
  if (j.contains("name")) l.name = j["name"].get<std::string>();
  return l;
}

inline json lattice_to_json(const Lattice& l) {
  json out;
  if (!l.name.empty()) out["name"] = l.name;
  json g = json::array();
  for (long i = 0; i < l.rank(); ++i) {
    json row = json::array();
    for (long k = 0; k < l.rank(); ++k) {
      const Int& e = l.gram(i, k);
      long long small = 0;
      try {
        small = e.convert_to<long long>();
        row.push_back(small);
      } catch (...) {
        row.push_back(e.str());
      }
    }
    g.push_back(row);
  }
  out["gram"] = g;
  if (!l.labels.empty()) out["labels"] = l.labels;
  return out;
}

// {"coords": [["num","den"], ...]}
inline GlueVector glue_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coords")) detail::schema_error("$", "expected {\"coords\": [...]}");
  GlueVector g;
  const json& c = j["coords"];
  if (!c.is_array()) detail::schema_error("$.coords", "expected a list");
  for (size_t i = 0; i < c.size(); ++i)
    g.push_back(detail::parse_fraction(c[i], "$.coords[" + std::to_string(i) + "]"));
  return g;
}

inline json glue_to_json(const GlueVector& g) {
  json c = json::array();
  for (const auto& x : g) c.push_back(detail::fraction_json(x));
  return json{{"coords", c}};
}

// {"chi": 2, "form": "long"|"short", coefficient lists ascending in t,
//  "params": {"k": ["num","den"]}}
inline WeierstrassModel model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("form")) detail::schema_error("$", "expected a model object with \"form\"");
  WeierstrassModel w;
  if (j.contains("chi")) {
    if (!j["chi"].is_number_integer() || j["chi"].get<long>() < 1)
      detail::schema_error("$.chi", "expected a positive integer");
    w.chi = j["chi"].get<long>();
  }
  std::string form = j["form"].get<std::string>();
  auto get = [&](const char* key) {
    if (!j.contains(key)) return RatPoly();
    return detail::parse_poly(j[key], std::string("$.") + key);
  };
  if (form == "short") {
    w.short_form = true;
    w.a2 = get("C");
    w.a4 = get("A");
    w.a6 = get("B");
  } else if (form == "long") {
    w.a1 = get("a1");
    w.a2 = get("a2");
    w.a3 = get("a3");
    w.a4 = get("a4");
    w.a6 = get("a6");
  } else {
    detail::schema_error("$.form", "expected \"long\" or \"short\"");
  }
  if (j.contains("params"))
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
      w.params[it.key()] = detail::parse_fraction(it.value(), "$.params." + it.key());
  if (w.discriminant().is_zero()) throw error("model is degenerate (zero discriminant)");
  for (auto [p, i] : {std::pair<const RatPoly*, long>{&w.a1, 1}, {&w.a2, 2}, {&w.a3, 3}, {&w.a4, 4}, {&w.a6, 6}})
    if (p->degree() > i * w.chi)
      throw error("coefficient degree exceeds the bound " + std::to_string(i * w.chi) + " for a" +
                  std::to_string(i));
  return w;
}

inline json model_to_json(const WeierstrassModel& w) {
  json out;
  out["chi"] = w.chi;
  out["form"] = w.short_form ? "short" : "long";
  if (w.short_form) {
    if (!w.a2.is_zero()) out["C"] = detail::poly_json(w.a2);
    if (!w.a4.is_zero()) out["A"] = detail::poly_json(w.a4);
    out["B"] = detail::poly_json(w.a6);
  } else {
    for (auto [p, name] : {std::pair<const RatPoly*, const char*>{&w.a1, "a1"},
                           {&w.a2, "a2"},
                           {&w.a3, "a3"},
                           {&w.a4, "a4"},
                           {&w.a6, "a6"}})
      if (!p->is_zero()) out[name] = detail::poly_json(*p);
  }
  if (!w.params.empty()) {
    json pj;
    for (const auto& [k, v] : w.params) pj[k] = detail::fraction_json(v);
    out["params"] = pj;
  }
  return out;
}

// {"x": {"num": [...], "den": [...]}, "y": ...} or {"zero": true}
inline Section section_from_json(const json& j) {
  if (j.is_object() && j.contains("zero") && j["zero"].get<bool>()) return Section::zero_section();
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    detail::schema_error("$", "expected {\"x\": ..., \"y\": ...}");
  return Section::at(detail::parse_ratfunc(j["x"], "$.x"), detail::parse_ratfunc(j["y"], "$.y"));
}

inline json section_to_json(const Section& s) {
  if (s.zero) return json{{"zero", true}};
  return json{{"x", detail::ratfunc_json(s.x)}, {"y", detail::ratfunc_json(s.y)}};
}

inline json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw error("cannot open " + path);
  json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw error("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace k3lat
