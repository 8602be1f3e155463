#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "carriers/behavior.hpp"
#include "carriers/boolfun.hpp"
#include "carriers/games.hpp"
#include "carriers/interference_lp.hpp"
#include "carriers/membership.hpp"
#include "carriers/polytope.hpp"
#include "carriers/quantum.hpp"

#include "json.hpp"

namespace carriers {

using Json = nlohmann::json;

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// --- behaviors --------------------------------------------------------------
// {"n_inputs": N, "p1": [...]} with entries either numbers or "p/q" strings.

inline Json to_json(const Behavior& b) {
  Json j;
  j["n_inputs"] = b.n_inputs();
  j["p1"] = b.p1_table();
  return j;
}

inline Json to_json(const RationalBehavior& b) {
  Json j;
  j["n_inputs"] = b.n_inputs();
  Json arr = Json::array();
  for (size_t x = 0; x < b.table_size(); ++x) arr.push_back(rational_to_string(b.p1(x)));
  j["p1"] = arr;
  return j;
}

inline RationalBehavior rational_behavior_from_json(const Json& j) {
  if (!j.contains("n_inputs") || !j.contains("p1")) throw std::invalid_argument("behavior JSON needs n_inputs and p1");
  const int n = j.at("n_inputs").get<int>();
  RatVec p1;
  for (const auto& e : j.at("p1")) {
    if (e.is_string())
      p1.push_back(parse_rational(e.get<std::string>()));
    else
      p1.push_back(Rational(e.get<double>()));
  }
  return RationalBehavior(n, std::move(p1));
}

inline Behavior behavior_from_json(const Json& j) { return to_double(rational_behavior_from_json(j)); }

/// CSV rows index,bits,p0,p1; bit i of the index is printed as character i
/// of `bits` (site order).
template <class S>
std::string behavior_to_csv(const BasicBehavior<S>& b) {
  std::string out = "index,bits,p0,p1\n";
  for (size_t x = 0; x < b.table_size(); ++x) {
    std::string bits(b.n_inputs(), '0');
    for (int i = 0; i < b.n_inputs(); ++i)
      if (x >> i & 1) bits[i] = '1';
    std::string p0, p1;
    if constexpr (std::is_same_v<S, double>) {
      p0 = format_double(b.p0(x));
      p1 = format_double(b.p1(x));
    } else {
      p0 = rational_to_string(b.p0(x));
      p1 = rational_to_string(b.p1(x));
    }
    out += std::to_string(x) + "," + bits + "," + p0 + "," + p1 + "\n";
  }
  return out;
}

// --- games -------------------------------------------------------------------
// {"n_inputs", "v_truth_table_hex", "weights", "bound"}

template <class S>
Json to_json(const OracleGame<S>& g) {
  Json j;
  j["n_inputs"] = g.n_inputs;
  j["v_truth_table_hex"] = to_hex(g.target);
  Json w = Json::array();
  for (const auto& q : g.weights) {
    if constexpr (std::is_same_v<S, double>)
      w.push_back(q);
    else
      w.push_back(rational_to_string(q));
  }
  j["weights"] = w;
  if constexpr (std::is_same_v<S, double>)
    j["bound"] = g.bound;
  else
    j["bound"] = rational_to_string(g.bound);
  return j;
}

inline OracleGame<Rational> rational_game_from_json(const Json& j) {
  OracleGame<Rational> g;
  g.n_inputs = j.at("n_inputs").get<int>();
  g.target = boolean_function_from_hex(g.n_inputs, j.at("v_truth_table_hex").get<std::string>());
  for (const auto& e : j.at("weights"))
    g.weights.push_back(e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<double>()));
  const auto& b = j.at("bound");
  g.bound = b.is_string() ? parse_rational(b.get<std::string>()) : Rational(b.get<double>());
  if (g.weights.size() != size_t{1} << g.n_inputs) throw std::invalid_argument("game weights have wrong length");
  return g;
}

// --- strategies ---------------------------------------------------------------
// {"n_inputs", "internal_dim", "weights": [...], "encoded_states": [[[re,im]...]...]}

inline Json to_json(const QuantumStrategy& s) {
  Json j;
  j["n_inputs"] = s.n_inputs();
  j["internal_dim"] = s.internal_dim();
  Json w = Json::array();
  for (int i = 0; i < s.n_inputs(); ++i) w.push_back(s.weights()[i]);
  j["weights"] = w;
  Json states = Json::array();
  for (int i = 0; i < s.n_inputs(); ++i) {
    Json st = Json::array();
    for (int k = 0; k < s.internal_dim(); ++k)
      st.push_back(Json::array({s.encoded_state(i)(k).real(), s.encoded_state(i)(k).imag()}));
    states.push_back(st);
  }
  j["encoded_states"] = states;
  return j;
}

inline QuantumStrategy strategy_from_json(const Json& j) {
  const int n = j.at("n_inputs").get<int>();
  const int d = j.at("internal_dim").get<int>();
  Eigen::VectorXd w(n);
  int i = 0;
  for (const auto& e : j.at("weights")) w(i++) = e.get<double>();
  std::vector<CVector> states;
  for (const auto& st : j.at("encoded_states")) {
    CVector v(d);
    int k = 0;
    for (const auto& entry : st) v(k++) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    states.push_back(std::move(v));
  }
  return QuantumStrategy(n, d, std::move(w), std::move(states));
}

// --- polytopes & membership -----------------------------------------------------

inline Json polytope_report(const RationalPolytope& p, bool with_f_vector) {
  Json j;
  j["ambient_dim"] = p.ambient_dim();
  j["affine_dim"] = p.affine_dim();
  j["n_vertices"] = p.vertices().size();
  Json verts = Json::array();
  for (const auto& v : p.vertices()) {
    Json row = Json::array();
    for (const auto& q : v) row.push_back(rational_to_string(q));
    verts.push_back(row);
  }
  j["vertices"] = verts;
  if (p.facets_computed()) {
    Json facets = Json::array();
    for (const auto& f : p.facets()) {
      Json row;
      Json normal = Json::array();
      for (const auto& q : f.normal) normal.push_back(rational_to_string(q));
      row["normal"] = normal;
      row["offset"] = rational_to_string(f.offset);
      facets.push_back(row);
    }
    j["facets"] = facets;
    if (with_f_vector) j["f_vector"] = f_vector(p);
  }
  return j;
}

inline Json to_json(const MembershipCertificate& cert) {
  Json j;
  j["member"] = cert.member;
  if (cert.member) {
    j["boundary"] = cert.boundary;
    Json w = Json::array();
    for (const auto& q : cert.weights) w.push_back(rational_to_string(q));
    j["weights"] = w;
  } else {
    Json normal = Json::array();
    for (const auto& q : cert.separating_normal) normal.push_back(rational_to_string(q));
    j["separating_normal"] = normal;
    j["separating_offset"] = rational_to_string(cert.separating_offset);
  }
  return j;
}

// --- second-order LP --------------------------------------------------------------
// {"N", "delta": "p/q", "z": [...], "tight_constraints": [...]}

inline Json lp_report(const SecondOrderLpSolution& sol) {
  Json j;
  j["N"] = sol.n_inputs;
  j["delta"] = rational_to_string(sol.delta);
  j["z"] = Json::array({rational_to_string(sol.z.z0), rational_to_string(sol.z.z1), rational_to_string(sol.z.z2)});
  Json tight = Json::array();
  for (const auto& t : sol.tight) {
    Json e;
    e["h"] = t.h;
    e["side"] = t.side == TightSide::Upper ? "upper" : "lower";
    tight.push_back(e);
  }
  j["tight_constraints"] = tight;
  return j;
}

}  // namespace carriers
