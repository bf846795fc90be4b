#pragma once

#include <json.hpp>

#include <chrono>
#include <map>
#include <string>

#include "superbim/cech.hpp"
#include "superbim/dk.hpp"

namespace superbim {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Top-level CLI result; "schema" is versioned and stable.
struct CliReport {
  std::string command;
  uint64_t seed = 0;
  double tol = 1e-9;
  std::map<std::string, std::string> inputs;  // name -> content hash
  Report body;
  double wall_ms = 0;
};

inline Json report_to_json(const CliReport& r) {
  Json j;
  j["schema"] = "superbim-report/1";
  j["command"] = r.command;
  j["seed"] = r.seed;
  j["tol"] = r.tol;
  Json inputs = Json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  j["inputs"] = inputs;
  Json checks = Json::array();
  for (const auto& c : r.body.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["verdict"] = c.pass ? "pass" : "fail";
    if (!c.witness.empty()) cj["witness"] = c.witness;
    if (!c.dims.empty()) cj["dims"] = c.dims;
    if (c.tolerance != 0.0) cj["tolerance"] = c.tolerance;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["overall"] = r.body.overall() ? "pass" : "fail";
  j["wall_ms"] = r.wall_ms;
  return j;
}

inline CliReport report_from_json(const Json& j) {
  if (j.value("schema", "") != std::string("superbim-report/1"))
    throw Error("SCHEMA", "unknown report schema");
  CliReport r;
  r.command = j.value("command", "");
  r.seed = j.value("seed", uint64_t(0));
  r.tol = j.value("tol", 1e-9);
  if (j.contains("inputs"))
    for (auto it = j["inputs"].begin(); it != j["inputs"].end(); ++it)
      r.inputs[it.key()] = it.value().get<std::string>();
  for (const auto& cj : j.value("checks", Json::array())) {
    Check c;
    c.name = cj.value("name", "");
    c.pass = cj.value("verdict", "") == "pass";
    c.witness = cj.value("witness", "");
    if (cj.contains("dims"))
      for (const auto& d : cj["dims"]) c.dims.push_back(d.get<long>());
    c.tolerance = cj.value("tolerance", 0.0);
    r.body.checks.push_back(std::move(c));
  }
  r.wall_ms = j.value("wall_ms", 0.0);
  return r;
}

inline std::string text_report(const CliReport& r) {
  std::string out = "command: " + r.command + "\n";
  for (const auto& c : r.body.checks) {
    out += std::string(c.pass ? "  [pass] " : "  [FAIL] ") + c.name;
    if (!c.dims.empty()) {
      out += " dims=[";
      for (size_t i = 0; i < c.dims.size(); ++i)
        out += (i ? "," : "") + std::to_string(c.dims[i]);
      out += "]";
    }
    if (!c.witness.empty()) out += " -- " + c.witness;
    out += "\n";
  }
  out += std::string("overall: ") + (r.body.overall() ? "pass" : "FAIL") + "\n";
  return out;
}

/// FNV-1a over a canonical string; used to fingerprint inputs in reports.
inline std::string content_hash(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Object (de)serialization
// ---------------------------------------------------------------------------

template <class K>
Json scalar_to_json(const K& x) {
  return FieldOps<K>::to_string(x);
}

template <class K>
K scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return K(static_cast<long>(j.get<long>()));
  if (j.is_string()) return FieldOps<K>::parse(j.get<std::string>());
  throw Error("SCHEMA", "scalar must be a string or integer");
}

template <class K>
Json algebra_to_json(const SuperAlgebra<K>& a) {
  Json j;
  j["field"] = field_name(FieldOps<K>::tag);
  j["dim"] = a.dim();
  j["parity"] = a.space.parity;
  Json unit = Json::array();
  for (const auto& x : a.unit) unit.push_back(scalar_to_json(x));
  j["unit"] = unit;
  Json st = Json::array();
  for (size_t i = 0; i < a.dim(); ++i) {
    Json row = Json::array();
    for (size_t jj = 0; jj < a.dim(); ++jj) {
      Json cell = Json::array();
      for (size_t k = 0; k < a.dim(); ++k) cell.push_back(scalar_to_json(a.c(i, jj, k)));
      row.push_back(cell);
    }
    st.push_back(row);
  }
  j["structure"] = st;
  if (!a.name.empty()) j["name"] = a.name;
  return j;
}

/// Resolver for named references inside definition files.
template <class K>
struct Workspace {
  std::map<std::string, AlgebraPtr<K>> algebras;
  std::map<std::string, Bimodule<K>> bimodules;
  std::map<std::string, AlgebraHom<K>> homs;
  std::map<std::string, AlgebraBundle<K>> algebra_bundles;
  std::map<std::string, BimoduleBundle<K>> bimodule_bundles;
  std::map<std::string, FamilyBimodule<K>> families;

  AlgebraPtr<K> algebra(const std::string& name) const {
    auto it = algebras.find(name);
    if (it == algebras.end()) throw Error("REFERENCE", "unknown algebra '" + name + "'");
    return it->second;
  }
  const Bimodule<K>& bimodule(const std::string& name) const {
    auto it = bimodules.find(name);
    if (it == bimodules.end()) throw Error("REFERENCE", "unknown bimodule '" + name + "'");
    return it->second;
  }
  const AlgebraHom<K>& hom(const std::string& name) const {
    auto it = homs.find(name);
    if (it == homs.end()) throw Error("REFERENCE", "unknown homomorphism '" + name + "'");
    return it->second;
  }
};

template <class K>
AlgebraPtr<K> algebra_from_json(const Json& j, const Workspace<K>& ws, bool strict = true) {
  if (j.is_string()) return ws.algebra(j.get<std::string>());
  if (j.contains("named")) {
    std::string kind = j["named"].get<std::string>();
    auto arg = [&](size_t i) -> size_t {
      return j["args"].at(i).template get<size_t>();
    };
    if (kind == "MATRIX") return matrix_algebra<K>(arg(0));
    if (kind == "GRADED_MATRIX") return graded_matrix_algebra<K>(arg(0), arg(1));
    if (kind == "EXTERIOR") return exterior_algebra<K>(arg(0));
    if (kind == "CLIFFORD") return clifford_algebra<K>(arg(0), arg(1));
    if (kind == "COMPLEX_CLIFFORD") {
      if constexpr (FieldOps<K>::tag == FieldTag::GAUSS)
        return complex_clifford_algebra(arg(0));
      else
        throw Error("FIELD", "COMPLEX_CLIFFORD requires the GAUSS field");
    }
    if (kind == "DIRECT_SUM")
      return direct_sum(algebra_from_json(j["args"].at(0), ws),
                        algebra_from_json<K>(j["args"].at(1), ws));
    if (kind == "OPPOSITE") return opposite_algebra(algebra_from_json<K>(j["args"].at(0), ws));
    throw Error("SCHEMA", "unknown named constructor '" + kind + "'");
  }
  if (field_from_name(j.value("field", "RAT")) != FieldOps<K>::tag)
    throw Error("FIELD", "field tag mismatch");
  SuperAlgebra<K> a;
  size_t n = j.at("dim").get<size_t>();
  for (const auto& p : j.at("parity")) a.space.parity.push_back(p.get<uint8_t>());
  if (a.space.parity.size() != n) throw Error("SCHEMA", "parity length differs from dim");
  for (const auto& u : j.at("unit")) a.unit.push_back(scalar_from_json<K>(u));
  if (a.unit.size() != n) throw Error("SCHEMA", "unit length differs from dim");
  a.structure.assign(n * n * n, K(0));
  const Json& st = j.at("structure");
  if (st.size() != n) throw Error("SCHEMA", "structure tensor has wrong shape");
  for (size_t i = 0; i < n; ++i)
    for (size_t jj = 0; jj < n; ++jj)
      for (size_t k = 0; k < n; ++k) a.c(i, jj, k) = scalar_from_json<K>(st.at(i).at(jj).at(k));
  a.name = j.value("name", "");
  if (strict) {
    Report rep = validate_algebra(a);
    if (!rep.overall())
      throw Error("VALIDATION", "algebra rejected: " + rep.first_failure()->name + " " +
                                    rep.first_failure()->witness);
  }
  return make_algebra(std::move(a));
}

template <class K>
Json bimodule_to_json(const Bimodule<K>& m) {
  Json j;
  j["field"] = field_name(FieldOps<K>::tag);
  j["left"] = m.left_alg->name;
  j["right"] = m.right_alg->name;
  j["dim"] = m.dim();
  j["parity"] = m.space.parity;
  auto actions = [&](const std::vector<Matrix<K>>& act) {
    Json out = Json::array();
    for (const auto& mtx : act) {
      Json rows = Json::array();
      for (size_t r = 0; r < mtx.rows(); ++r) {
        Json row = Json::array();
        for (size_t c = 0; c < mtx.cols(); ++c) row.push_back(scalar_to_json(mtx(r, c)));
        rows.push_back(row);
      }
      out.push_back(rows);
    }
    return out;
  };
  j["left_action"] = actions(m.left);
  j["right_action"] = actions(m.right);
  if (!m.name.empty()) j["name"] = m.name;
  return j;
}

template <class K>
Bimodule<K> bimodule_from_json(const Json& j, const Workspace<K>& ws, bool strict = true) {
  if (j.is_string()) return ws.bimodule(j.get<std::string>());
  if (j.contains("field") && field_from_name(j["field"].get<std::string>()) != FieldOps<K>::tag)
    throw Error("FIELD", "field tag mismatch");
  Bimodule<K> m;
  m.left_alg = algebra_from_json<K>(j.at("left"), ws);
  m.right_alg = algebra_from_json<K>(j.at("right"), ws);
  size_t n = j.at("dim").get<size_t>();
  for (const auto& p : j.at("parity")) m.space.parity.push_back(p.get<uint8_t>());
  if (m.space.parity.size() != n) throw Error("SCHEMA", "parity length differs from dim");
  auto actions = [&](const Json& arr, size_t count) {
    std::vector<Matrix<K>> out;
    if (arr.size() != count) throw Error("SCHEMA", "action list has wrong length");
    for (const auto& mj : arr) {
      Matrix<K> mtx(n, n);
      if (mj.size() != n) throw Error("SCHEMA", "action matrix has wrong shape");
      for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) mtx(r, c) = scalar_from_json<K>(mj.at(r).at(c));
      out.push_back(std::move(mtx));
    }
    return out;
  };
  m.left = actions(j.at("left_action"), m.left_alg->dim());
  m.right = actions(j.at("right_action"), m.right_alg->dim());
  m.name = j.value("name", "");
  if (strict) {
    Report rep = validate_bimodule(m);
    if (!rep.overall())
      throw Error("VALIDATION", "bimodule rejected: " + rep.first_failure()->name + " " +
                                    rep.first_failure()->witness);
  }
  return m;
}

template <class K>
AlgebraBundle<K> bundle_from_json(const Json& j, const Workspace<K>& ws, bool strict = true) {
  Nerve nerve;
  const Json& nj = j.at("nerve");
  nerve.n_vertices = nj.at("vertices").get<size_t>();
  for (const auto& e : nj.value("edges", Json::array()))
    nerve.edges.push_back({e.at(0).get<size_t>(), e.at(1).get<size_t>()});
  for (const auto& t : nj.value("triangles", Json::array()))
    nerve.triangles.push_back({t.at(0).get<size_t>(), t.at(1).get<size_t>(), t.at(2).get<size_t>()});
  for (const auto& s : nj.value("tetrahedra", Json::array()))
    nerve.tetrahedra.push_back({s.at(0).get<size_t>(), s.at(1).get<size_t>(),
                                s.at(2).get<size_t>(), s.at(3).get<size_t>()});
  AlgebraBundle<K> d;
  d.nerve = std::make_shared<const Nerve>(std::move(nerve));
  for (const auto& f : j.at("fibers")) d.fiber.push_back(algebra_from_json<K>(f, ws));
  for (size_t e = 0; e < d.nerve->edges.size(); ++e) {
    const Json& t = j.at("transitions").at(e);
    if (t.is_string() && t.get<std::string>() == "id") {
      d.transition.push_back(identity_hom(d.fiber[d.nerve->edges[e][0]]));
    } else if (t.is_string()) {
      d.transition.push_back(ws.hom(t.get<std::string>()));
    } else {
      AlgebraPtr<K> src = d.fiber[d.nerve->edges[e][0]];
      AlgebraPtr<K> tgt = d.fiber[d.nerve->edges[e][1]];
      Matrix<K> mtx(tgt->dim(), src->dim());
      for (size_t r = 0; r < tgt->dim(); ++r)
        for (size_t c = 0; c < src->dim(); ++c) mtx(r, c) = scalar_from_json<K>(t.at(r).at(c));
      d.transition.push_back(AlgebraHom<K>{src, tgt, std::move(mtx)});
    }
  }
  if (strict) {
    Report rep = validate_algebra_bundle(d);
    if (!rep.overall())
      throw Error("VALIDATION", "bundle rejected: " + rep.first_failure()->name + " " +
                                    rep.first_failure()->witness);
  }
  return d;
}

}  // namespace superbim
