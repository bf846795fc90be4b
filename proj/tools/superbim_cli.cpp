// Command-line front end: loads definition files, runs named verification
// suites, and emits machine-readable reports.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "superbim/superbim.hpp"

namespace {

using namespace superbim;

struct Options {
  uint64_t seed = 42;
  double tol = 1e-9;
  std::string format = "text";
  std::string field = "rat";
};

int emit(const CliReport& rep, const Options& opt) {
  if (opt.format == "json")
    std::cout << report_to_json(rep).dump(2) << "\n";
  else
    std::cout << text_report(rep);
  return rep.body.overall() ? 0 : 1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IO", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Loads a definition file, auto-detecting its kind, and returns a validation
/// report plus the kind label.
template <class K>
Report validate_file(const std::string& path, Workspace<K>& ws, std::string& kind,
                     std::map<std::string, std::string>& hashes) {
  std::string text = slurp(path);
  hashes[path] = content_hash(text);
  Json j = Json::parse(text);
  Report rep;
  rep.subject = path;
  if (j.contains("nerve")) {
    kind = "algebra bundle";
    AlgebraBundle<K> b = bundle_from_json<K>(j, ws, /*strict=*/false);
    rep = validate_algebra_bundle(b);
    if (rep.overall() && j.contains("name"))
      ws.algebra_bundles[j["name"].template get<std::string>()] = std::move(b);
  } else if (j.contains("left")) {
    kind = "bimodule";
    Bimodule<K> m = bimodule_from_json<K>(j, ws, /*strict=*/false);
    rep = validate_bimodule(m);
    if (rep.overall() && !m.name.empty()) ws.bimodules[m.name] = std::move(m);
  } else {
    kind = "algebra";
    AlgebraPtr<K> a = algebra_from_json<K>(j, ws, /*strict=*/false);
    rep = validate_algebra(*a);
    if (rep.overall() && !a->name.empty()) ws.algebras[a->name] = a;
  }
  return rep;
}

template <class K>
AlgebraPtr<K> resolve_algebra(const std::string& ref, Workspace<K>& ws,
                              std::map<std::string, std::string>& hashes) {
  if (ws.algebras.count(ref)) {
    hashes[ref] = content_hash(ref);
    return ws.algebras[ref];
  }
  std::string text = slurp(ref);
  hashes[ref] = content_hash(text);
  return algebra_from_json<K>(Json::parse(text), ws);
}

template <class K>
Bimodule<K> resolve_bimodule(const std::string& ref, Workspace<K>& ws,
                             std::map<std::string, std::string>& hashes) {
  if (ws.bimodules.count(ref)) {
    hashes[ref] = content_hash(ref);
    return ws.bimodules[ref];
  }
  std::string text = slurp(ref);
  hashes[ref] = content_hash(text);
  return bimodule_from_json<K>(Json::parse(text), ws);
}

template <class K>
AlgebraBundle<K> resolve_bundle(const std::string& ref, Workspace<K>& ws,
                                std::map<std::string, std::string>& hashes) {
  if (ws.algebra_bundles.count(ref)) {
    hashes[ref] = content_hash(ref);
    return ws.algebra_bundles[ref];
  }
  std::string text = slurp(ref);
  hashes[ref] = content_hash(text);
  return bundle_from_json<K>(Json::parse(text), ws);
}

template <class K>
Report invariants_report(const AlgebraPtr<K>& a) {
  Report rep;
  rep.subject = a->name;
  Report v = validate_algebra(*a);
  rep.add("VALID", v.overall(), v.first_failure() ? v.first_failure()->witness : "");
  StructureReport<K> sr = structure_report(*a);
  auto push = [&](const std::string& nm, long val) { rep.add(nm, true).dims.push_back(val); };
  push("dim", static_cast<long>(sr.dim));
  push("dim_center", static_cast<long>(sr.dim_center));
  push("dim_even_center", static_cast<long>(sr.dim_even_center));
  push("dim_supercenter", static_cast<long>(sr.dim_supercenter));
  push("radical_dim", static_cast<long>(sr.radical_basis.size()));
  rep.add(sr.is_semisimple ? "semisimple" : "not semisimple", true);
  rep.add(sr.is_central_simple ? "central simple" : "not central simple", true);
  push("dim_der", static_cast<long>(sr.dim_der));
  push("dim_innder", static_cast<long>(sr.dim_innder));
  push("hh1_dim", static_cast<long>(sr.hh1_dim));
  return rep;
}

template <class K>
Report implement_report(const Bimodule<K>& m) {
  Report rep;
  rep.subject = m.name;
  Report v = validate_bimodule(m);
  rep.add("VALID", v.overall(), v.first_failure() ? v.first_failure()->witness : "");
  ImplementingFlags f = implementing_flags(m);
  rep.add(std::string("left ") + (f.left ? "true" : "false"), true)
      .dims = {static_cast<long>(f.left_rank), static_cast<long>(f.dim_der_left)};
  rep.add(std::string("right ") + (f.right ? "true" : "false"), true)
      .dims = {static_cast<long>(f.right_rank), static_cast<long>(f.dim_der_right)};
  rep.add("lie_dim", true).dims = {static_cast<long>(f.lie_dim)};
  return rep;
}

int run(int argc, char** argv) {
  CLI::App app{"exact calculus of super algebras, bimodules, and descent data"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand arguments
  Options opt;
  app.add_option("--seed", opt.seed, "seed for randomized subroutines");
  app.add_option("--tol", opt.tol, "tolerance for numeric exponential paths");
  app.add_option("--format", opt.format, "output format: json|text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--field", opt.field, "ground field: rat|gauss")
      ->check(CLI::IsMember({"rat", "gauss"}));

  std::string file, name, name2, check = "algebra";
  auto* validate = app.add_subcommand("validate", "validate a definition file");
  validate->add_option("file", file)->required();
  auto* invariants = app.add_subcommand("invariants", "structure report of an algebra");
  invariants->add_option("algebra", name)->required();
  auto* tensor = app.add_subcommand("tensor", "relative tensor product of two bimodules");
  tensor->add_option("m", name)->required();
  tensor->add_option("n", name2)->required();
  auto* implement = app.add_subcommand("implement", "implementing flags and Lie dimensions");
  implement->add_option("m", name)->required();
  auto* bundle = app.add_subcommand("bundle", "validate a bundle file");
  bundle->add_option("file", file)->required();
  bundle->add_option("check", check);
  auto* dk = app.add_subcommand("dk", "descent invariants of an algebra bundle");
  dk->add_option("bundle", name)->required();
  auto* combine = app.add_subcommand("combine", "combine the invariants of two bundles");
  combine->add_option("b1", name)->required();
  combine->add_option("b2", name2)->required();
  auto* replace = app.add_subcommand("replace-picard", "multiplicity-free replacement");
  replace->add_option("algebra", name)->required();
  auto* catalog = app.add_subcommand("catalog", "run the built-in example catalog");
  catalog->add_option("id", name)->required();

  CLI11_PARSE(app, argc, argv);

  auto t0 = std::chrono::steady_clock::now();
  CliReport rep;
  rep.seed = opt.seed;
  rep.tol = opt.tol;

  auto finish = [&](Report body) {
    rep.body = std::move(body);
    rep.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return emit(rep, opt);
  };

  const bool gauss = opt.field == "gauss";

  auto dispatch = [&](auto tag) -> int {
    using K = decltype(tag);
    Workspace<K> ws = builtin_workspace<K>();
    if (*validate) {
      rep.command = "validate " + file;
      std::string kind;
      Report body = validate_file<K>(file, ws, kind, rep.inputs);
      body.subject = kind + " " + file;
      return finish(std::move(body));
    }
    if (*invariants) {
      rep.command = "invariants " + name;
      return finish(invariants_report<K>(resolve_algebra<K>(name, ws, rep.inputs)));
    }
    if (*tensor) {
      rep.command = "tensor " + name + " " + name2;
      Bimodule<K> m = resolve_bimodule<K>(name, ws, rep.inputs);
      Bimodule<K> n = resolve_bimodule<K>(name2, ws, rep.inputs);
      RelTensor<K> r = relative_tensor(m, n);
      Report body;
      body.subject = "tensor";
      body.add("dim", true).dims = {static_cast<long>(r.bim.dim())};
      Report v = validate_bimodule(r.bim);
      body.add("VALID", v.overall(), v.first_failure() ? v.first_failure()->witness : "");
      return finish(std::move(body));
    }
    if (*implement) {
      rep.command = "implement " + name;
      return finish(implement_report(resolve_bimodule<K>(name, ws, rep.inputs)));
    }
    if (*bundle) {
      rep.command = "bundle " + file + " " + check;
      std::string kind;
      Report body = validate_file<K>(file, ws, kind, rep.inputs);
      body.subject = kind + " " + file;
      return finish(std::move(body));
    }
    if (*dk) {
      rep.command = "dk " + name;
      AlgebraBundle<K> b = resolve_bundle<K>(name, ws, rep.inputs);
      if constexpr (FieldOps<K>::tag == FieldTag::RAT) {
        DKData<K> data = dk_invariants(b);
        Report body = dk_cocycle_report(data);
        std::string eps;
        for (uint8_t e : data.eps) eps += e ? '1' : '0';
        body.add("eps " + eps, true);
        for (const auto& x : data.x) body.add("x " + FieldOps<K>::to_string(x), true);
        return finish(std::move(body));
      } else {
        throw Error("FIELD", "descent invariants are exposed over the rational field");
      }
    }
    if (*combine) {
      rep.command = "combine " + name + " " + name2;
      if constexpr (FieldOps<K>::tag == FieldTag::RAT) {
        DKData<K> d1 = dk_invariants(resolve_bundle<K>(name, ws, rep.inputs));
        DKData<K> d2 = dk_invariants(resolve_bundle<K>(name2, ws, rep.inputs));
        DKData<K> c = bw_combine(d1, d2);
        Report body = dk_cocycle_report(c);
        std::string eps;
        for (uint8_t e : c.eps) eps += e ? '1' : '0';
        body.add("eps " + eps, true);
        for (const auto& x : c.x) body.add("x " + FieldOps<K>::to_string(x), true);
        return finish(std::move(body));
      } else {
        throw Error("FIELD", "descent invariants are exposed over the rational field");
      }
    }
    if (*replace) {
      rep.command = "replace-picard " + name;
      PicardReplacement<K> pr = picard_replacement(resolve_algebra<K>(name, ws, rep.inputs),
                                                   opt.seed);
      return finish(pr.report);
    }
    return 2;
  };

  if (*catalog) {
    rep.command = "catalog " + name;
    Report body;
    body.subject = "catalog";
    bool found = false;
    for (const CatalogEntry& entry : catalog_entries()) {
      if (name != "all" && name != entry.id) continue;
      found = true;
      Report r = entry.run(opt.seed, opt.tol);
      body.add(entry.id, r.overall(),
               r.overall() ? "" : (r.first_failure() ? r.first_failure()->name : "failed"));
      body.merge(r, entry.id);
    }
    if (!found) throw Error("REFERENCE", "unknown catalog id '" + name + "'");
    return finish(std::move(body));
  }
  return gauss ? dispatch(Gaussian{}) : dispatch(Rational{});
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const superbim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    // Input and reference problems exit 2; mathematical failures inside
    // checks are reported through the normal report path.
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
