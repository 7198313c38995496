#pragma once

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "definition.hpp"
#include "taurec/embedded.hpp"
#include "example51.hpp"
#include "io.hpp"
#include "recollement.hpp"

namespace taurec::cli {

enum ExitCode { ok = 0, parse_error = 1, refusal = 2, mismatch = 3, internal = 4 };

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

/// An algebra to work over: a named algebra, or the triangular algebra of a named recollement.
struct Target {
  std::shared_ptr<const IndCatalog> catalog;
  ARQuiver quiver;
  std::optional<TriangularRecollement> rec;
  std::string label;

  std::string name(std::size_t id) const { return rec ? rec->name(Side::B, id) : catalog->name(id); }
  std::string name(const IdSet& s) const {
    if (rec) return rec->name(Side::B, s);
    std::string out = "{";
    for (auto id : s.ids()) out += (out.size() > 1 ? ", " : "") + name(id);
    return out + "}";
  }
  std::string name(const IdMultiset& m) const {
    if (m.empty()) return "0";
    std::string out;
    for (auto& [id, k] : m)
      for (std::size_t i = 0; i < k; ++i) out += (out.empty() ? "" : "+") + name(id);
    return out;
  }
};

struct Session {
  Definitions defs;
  std::string def_source = "embedded";
  bool json = false;
  bool actions = false;
  std::vector<std::string> echo;
  std::ostream* out = &std::cout;

  Target target(const std::string& name, const std::string& load = "") const {
    Target t;
    t.label = name;
    if (defs.recollements.count(name)) {
      if (!load.empty()) throw ParseError("--load applies to named algebras only");
      t.rec.emplace(recollement_from_definitions(defs, name, false));
      t.catalog = std::shared_ptr<const IndCatalog>(std::shared_ptr<void>(), &t.rec->catalog(Side::B));
      t.quiver = t.rec->quiver(Side::B);
      return t;
    }
    const FdAlgebra& a = defs.algebra(name).algebra;
    if (!load.empty()) {
      t.catalog = std::make_shared<IndCatalog>(load_catalog(Json::parse(read_file(load)), a));
      t.quiver = t.catalog->quiver();
    } else {
      KnitResult k = knit_ar_quiver(a);
      t.catalog = k.catalog;
      t.quiver = k.quiver;
    }
    return t;
  }

  TriangularRecollement recollement(const std::string& name, bool verify) const {
    if (!defs.recollements.count(name)) throw ParseError("unknown recollement \"" + name + "\"");
    return recollement_from_definitions(defs, name, verify);
  }

  Json document(const Json& result) const {
    return {{"schema", kSchema}, {"command", echo}, {"definitions", def_source}, {"result", result}};
  }

  void emit(const Json& result, const std::string& text) const {
    if (json) *out << document(result).dump(1) << "\n";
    else *out << text;
  }
};

inline Json modules_json(const Target& t, const IdMultiset& ids, bool actions) {
  Json mods = Json::array();
  for (auto& [id, k] : ids) {
    Json m = module_json(t.catalog->module(id), actions);
    m["id"] = id;
    m["multiplicity"] = k;
    m["name"] = t.name(id);
    mods.push_back(m);
  }
  return mods;
}

inline IdMultiset as_multiset(const IdSet& s) { return detail::as_multiset(s); }

inline Json modules_json(const Target& t, const IdSet& ids, bool actions) { return modules_json(t, as_multiset(ids), actions); }

inline Json pair_json(const Target& t, const TorsionPair& p, bool actions) {
  return {{"torsion", modules_json(t, p.torsion, actions)}, {"torsionfree", modules_json(t, p.torsionfree, actions)}};
}

inline Target side_target(const TriangularRecollement& r, Side s) {
  Target t;
  t.catalog = std::shared_ptr<const IndCatalog>(std::shared_ptr<void>(), &r.catalog(s));
  t.quiver = r.quiver(s);
  if (s == Side::B) t.rec.emplace(r);
  return t;
}

inline Json condition_json(const Target& b, const ConditionResult& c) {
  return {{"condition", condition_name(c.condition)}, {"holds", c.holds}, {"image", modules_json(b, c.image, false)}, {"failing", modules_json(b, c.failing, false)}};
}

// ---- commands ----

inline int cmd_indec(const Session& s, const std::string& alg, const std::string& dot, const std::string& save, const std::string& load) {
  Target t = s.target(alg, load);
  const IndCatalog& c = *t.catalog;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < c.size(); ++i) names.push_back(t.name(i));
  if (!dot.empty()) write_file(dot, export_dot(t.quiver, names));
  Json cat = catalog_json(c, true);
  for (std::size_t i = 0; i < c.size(); ++i) cat["modules"][i]["name"] = names[i];
  if (!save.empty()) write_file(save, cat.dump(1) + "\n");
  std::ostringstream os;
  os << alg << ": " << c.size() << " indecomposables\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    os << "  X" << i << "  " << c.dim_string(i) << "  " << names[i];
    long tau = c.tau(i);
    os << "  tau: " << (tau < 0 ? std::string("-") : "X" + std::to_string(tau)) << "\n";
  }
  Json result = s.actions ? cat : catalog_json(c, false);
  for (std::size_t i = 0; i < c.size(); ++i) result["modules"][i]["name"] = names[i];
  s.emit(result, os.str());
  return ok;
}

inline int cmd_stau(const Session& s, const std::string& alg) {
  Target t = s.target(alg);
  const IndCatalog& c = *t.catalog;
  auto st = enumerate_support_tau_tilting(c);
  auto tors = enumerate_torsion_classes(c);
  std::vector<IdSet> gens;
  for (auto& m : st) gens.push_back(gen_class(c, m));
  std::vector<IdSet> sorted_gens = gens;
  std::sort(sorted_gens.begin(), sorted_gens.end());
  bool bijective = sorted_gens == tors;
  bool inverse = true;
  for (std::size_t i = 0; i < st.size(); ++i)
    if (ext_projectives(c, gens[i]) != st[i]) inverse = false;
  for (auto& tc : tors)
    if (gen_class(c, ext_projectives(c, tc)) != tc) inverse = false;
  std::ostringstream os;
  os << alg << ": " << st.size() << " basic support tau-tilting modules\n";
  Json list = Json::array();
  for (std::size_t i = 0; i < st.size(); ++i) {
    bool tt = is_tau_tilting(c, st[i]);
    os << "  " << t.name(as_multiset(st[i])) << (tt ? "  [tau-tilting]" : "") << "  Gen: " << gens[i].size() << " indecomposables\n";
    list.push_back({{"modules", modules_json(t, st[i], s.actions)}, {"tau_tilting", tt}, {"gen", modules_json(t, gens[i], false)}});
  }
  os << "torsion classes: " << tors.size() << "\n";
  os << "T -> Gen T is a bijection onto torsion classes: " << (bijective ? "yes" : "no") << "\n";
  os << "P(Gen T) = T and Gen P(t) = t: " << (inverse ? "yes" : "no") << "\n";
  s.emit({{"support_tau_tilting", list}, {"torsion_classes", tors.size()}, {"bijective", bijective}, {"inverse", inverse}}, os.str());
  if (!bijective || !inverse) throw InternalConsistencyError("support tau-tilting modules and torsion classes are not in bijection");
  return ok;
}

inline int cmd_glue(const Session& s, const std::string& name, const std::string& left, const std::string& right, const std::string& mode) {
  TriangularRecollement r = s.recollement(name, false);
  Target ta = side_target(r, Side::A), tb = side_target(r, Side::B), tc = side_target(r, Side::C);
  IdSet tl = IdSet(ta.catalog->size()), tr = IdSet(tc.catalog->size());
  for (auto& [id, k] : parse_module_spec(*ta.catalog, left)) tl.insert(id);
  for (auto& [id, k] : parse_module_spec(*tc.catalog, right)) tr.insert(id);
  std::ostringstream os;
  Json res = {{"mode", mode}, {"left", modules_json(ta, tl, s.actions)}, {"right", modules_json(tc, tr, s.actions)}};
  if (mode == "stau") {
    GlueReport g = glue_support_tau_tilting(r, tl, tr);
    os << "left pair:  T' = " << ta.name(g.left_pair.torsion) << "  F' = " << ta.name(g.left_pair.torsionfree) << "\n";
    os << "right pair: T'' = " << tc.name(g.right_pair.torsion) << "  F'' = " << tc.name(g.right_pair.torsionfree) << "\n";
    os << "glued T = " << tb.name(g.glued.torsion) << "\n";
    os << "glued F = " << tb.name(g.glued.torsionfree) << "\n";
    os << "i^! exact: " << (g.i_shriek_exact ? "yes" : "no") << "; i^* exact: " << (g.i_star_upper_exact ? "yes" : "no") << "\n";
    os << "i_*i^!(T) in T: " << (g.condition1.holds ? "yes" : "no") << "; i_*i^*(F) in F: " << (g.condition2.holds ? "yes" : "no") << "\n";
    os << g.note << "\n";
    os << "P(T) = " << tb.name(as_multiset(g.result)) << "\n";
    os << "i_*(T') + j_!(T'') = " << tb.name(g.naive) << (g.naive_equals ? " (equal to P(T))" : " (differs from P(T))") << "\n";
    res["left_pair"] = pair_json(ta, g.left_pair, false);
    res["right_pair"] = pair_json(tc, g.right_pair, false);
    res["glued"] = pair_json(tb, g.glued, false);
    res["i_shriek_exact"] = g.i_shriek_exact;
    res["i_star_upper_exact"] = g.i_star_upper_exact;
    res["condition1"] = condition_json(tb, g.condition1);
    res["condition2"] = condition_json(tb, g.condition2);
    res["hypothesis1"] = g.hypothesis1;
    res["hypothesis2"] = g.hypothesis2;
    res["finiteness_direct"] = g.finiteness_direct;
    res["note"] = g.note;
    res["result"] = modules_json(tb, g.result, s.actions);
    res["naive"] = modules_json(tb, g.naive, s.actions);
    res["naive_equals"] = g.naive_equals;
    s.emit(res, os.str());
    return ok;
  }
  if (mode == "tau") {
    GlueTauReport g = glue_tau_tilting(r, tl, tr);
    res["refused"] = g.refused;
    if (g.refused) {
      res["reason"] = g.failed;
      os << "refused: " << g.failed << "\n";
      if (!g.condition.image.empty() || !g.condition.holds) {
        res["condition"] = condition_json(tb, g.condition);
        if (!g.condition.holds) os << "i_*i^!(T) = " << tb.name(g.condition.image) << "; outside T: " << tb.name(g.condition.failing) << "\n";
      }
      s.emit(res, os.str());
      return refusal;
    }
    os << "T = i_*(T') + j_!(T'') = " << tb.name(g.module) << "\n";
    os << "tau-tilting: " << (g.tau_tilting ? "yes" : "no") << "; Gen T equals the glued class: " << (g.gen_matches ? "yes" : "no") << "\n";
    os << "glued T = " << tb.name(g.glued.torsion) << "\n";
    os << "glued F = " << tb.name(g.glued.torsionfree) << "\n";
    res["module"] = modules_json(tb, g.module, s.actions);
    res["tau_tilting"] = g.tau_tilting;
    res["gen_matches"] = g.gen_matches;
    res["glued"] = pair_json(tb, g.glued, false);
    res["condition"] = condition_json(tb, g.condition);
    s.emit(res, os.str());
    return ok;
  }
  if (mode == "torsion") {
    TorsionPair lp{tl, torsionfree_of(*ta.catalog, tl)}, rp{tr, torsionfree_of(*tc.catalog, tr)};
    TorsionPair g = glue_torsion_pair(r, lp, rp);
    os << "glued T = " << tb.name(g.torsion) << "\n";
    os << "glued F = " << tb.name(g.torsionfree) << "\n";
    res["glued"] = pair_json(tb, g, s.actions);
    s.emit(res, os.str());
    return ok;
  }
  throw ParseError("unknown mode \"" + mode + "\"");
}

inline int cmd_restrict(const Session& s, const std::string& name, const std::string& spec, const std::string& side, const std::string& strategy, bool assert_hyp) {
  TriangularRecollement r = s.recollement(name, false);
  Target ta = side_target(r, Side::A), tb = side_target(r, Side::B), tc = side_target(r, Side::C);
  IdSet t(tb.catalog->size());
  for (auto& [id, k] : parse_module_spec(*tb.catalog, spec)) t.insert(id);
  std::ostringstream os;
  Json res = {{"side", side}, {"module", modules_json(tb, t, s.actions)}};
  TorsionPair p = pair_of(*tb.catalog, t);
  res["pair"] = pair_json(tb, p, false);
  os << "T = " << tb.name(as_multiset(t)) << "\n";
  os << "Gen T = " << tb.name(p.torsion) << "\n";
  os << "F(T) = " << tb.name(p.torsionfree) << "\n";
  if (side == "A") {
    RestrictAReport out = restrict_to_A(r, t, assert_hyp);
    os << "i^*(T) = " << ta.name(out.i_star_image) << "\n";
    os << "restricted pair: (" << ta.name(out.pair.torsion) << ", " << ta.name(out.pair.torsionfree) << ")\n";
    os << "result: " << ta.name(as_multiset(out.result)) << (out.asserted ? " (hypothesis asserted, not verified)" : "") << "\n";
    res["i_star_upper_image"] = modules_json(ta, out.i_star_image, false);
    res["restricted_pair"] = pair_json(ta, out.pair, false);
    res["result"] = modules_json(ta, out.result, s.actions);
    res["asserted"] = out.asserted;
    res["realized_checked"] = out.realized_checked;
  } else if (side == "C") {
    if (strategy.size() != 1) throw ParseError("strategy must be a, b or c");
    RestrictCReport out = restrict_to_C(r, t, strategy[0]);
    os << "j^*(T) = " << tc.name(out.j_star_image) << "\n";
    os << "(j^*(T), j^*(F)) = (" << tc.name(out.image_pair.torsion) << ", " << tc.name(out.image_pair.torsionfree) << ")\n";
    os << "result: " << tc.name(as_multiset(out.result)) << "\n";
    os << "induced pair: (" << tc.name(out.pair.torsion) << ", " << tc.name(out.pair.torsionfree) << ")\n";
    if (out.lhs) os << "j_*j^*(F) in F: " << (*out.lhs ? "yes" : "no") << "; pair realised: " << (*out.rhs ? "yes" : "no") << "\n";
    res["strategy"] = strategy;
    res["hypothesis"] = condition_json(tb, out.hypothesis);
    res["j_star_image"] = modules_json(tc, out.j_star_image, false);
    res["image_pair"] = pair_json(tc, out.image_pair, false);
    res["result"] = modules_json(tc, out.result, s.actions);
    res["induced_pair"] = pair_json(tc, out.pair, false);
    if (out.lhs) {
      res["j_star_F_condition"] = *out.lhs;
      res["realizes_image_pair"] = *out.rhs;
    }
    res["realized_checked"] = out.realized_checked;
  } else {
    throw ParseError("side must be A or C");
  }
  s.emit(res, os.str());
  return ok;
}

inline int cmd_axioms(const Session& s, const std::string& name) {
  TriangularRecollement r = s.recollement(name, false);
  VerifyReport rep = r.verify_axioms();
  std::ostringstream os;
  Json checks = report_json(rep);
  os << "recollement axioms for " << name << ":\n";
  for (auto& c : rep.checks) os << "  " << (c.passed ? "ok    " : "FAIL  ") << c.name << (c.detail.empty() || c.detail == "ok" ? "" : ": " + c.detail) << "\n";
  Json certs = Json::array();
  os << "exactness:\n";
  for (auto tag : all_functors()) {
    ExactnessCertificate cert = r.exactness_certificate(tag);
    os << "  " << functor_name(tag) << ": " << (cert.exact ? "exact" : "not exact") << " (" << cert.reason << ")\n";
    Json cj = {{"functor", functor_name(tag)}, {"exact", cert.exact}, {"reason", cert.reason}};
    if (cert.witness) {
      os << "    witness: " << cert.witness->sequence << " has image dimensions " << cert.witness->dim_left << ", " << cert.witness->dim_middle << ", " << cert.witness->dim_right << "\n";
      cj["witness"] = {{"sequence", cert.witness->sequence}, {"dims", {cert.witness->dim_left, cert.witness->dim_middle, cert.witness->dim_right}}};
    }
    certs.push_back(cj);
  }
  SimplesReport sr = simples_check(r);
  os << "simples: " << (sr.ok ? "ok" : "FAIL") << " (" << sr.detail << ")\n";
  s.emit({{"axioms", checks}, {"exactness", certs}, {"simples", {{"ok", sr.ok}, {"detail", sr.detail}}}}, os.str());
  return rep.ok() && sr.ok ? ok : mismatch;
}

inline int cmd_verify_example51(const Session& s, const std::string& part, const std::string& expected_path, bool verbose) {
  Json expected = Json::parse(expected_path.empty() ? std::string(embedded::ex51_expected) : read_file(expected_path));
  if (expected.value("schema", "") != kSchema) throw ParseError("expected-results file has an unsupported schema");
  TriangularRecollement r = s.recollement(expected.at("recollement").get<std::string>(), true);
  std::vector<int> parts = example51_parts(expected);
  if (part != "all") {
    int p = 0;
    try {
      p = std::stoi(part);
    } catch (const std::exception&) {
      throw ParseError("part must be a number or all");
    }
    if (std::find(parts.begin(), parts.end(), p) == parts.end()) throw ParseError("no part " + part + " in the expected results");
    parts = {p};
  }
  std::ostringstream os;
  Json list = Json::array();
  bool all_ok = true;
  for (int p : parts) {
    PartReport rep = run_example51_part(r, expected, p);
    all_ok = all_ok && rep.ok();
    list.push_back(part_json(rep));
    os << "part " << p << " (" << rep.operation << "): " << (rep.ok() ? "PASS" : "FAIL") << "\n";
    if (!rep.error.empty()) os << "  error: " << rep.error << "\n";
    for (auto& c : rep.checks)
      if (verbose || !c.passed) os << "  " << (c.passed ? "ok    " : "FAIL  ") << c.name << ": " << c.actual << (c.passed ? "" : " (expected " + c.expected + ")") << "\n";
  }
  s.emit({{"parts", list}, {"ok", all_ok}}, os.str());
  return all_ok ? ok : mismatch;
}

/// Parse arguments and run one command; returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Gluing and restriction of support tau-tilting modules and torsion pairs over triangular matrix algebras"};
  app.set_version_flag("--version", "taurec 1.0");
  std::string def_path;
  Session s;
  s.out = &out;
  app.add_option("--def", def_path, "definition file (default: the built-in example)");
  app.add_flag("--json", s.json, "print a JSON document instead of text");
  app.add_flag("--actions", s.actions, "include action matrices in JSON module payloads");
  app.require_subcommand(1);

  std::string alg, dot, save, load;
  auto* indec = app.add_subcommand("indec", "list the indecomposable modules of an algebra");
  indec->add_option("algebra", alg, "algebra or recollement name")->required();
  indec->add_option("--dot", dot, "write the AR quiver in DOT format");
  indec->add_option("--save", save, "write the catalog as JSON");
  indec->add_option("--load", load, "load and re-verify a saved catalog instead of knitting");

  auto* stau = app.add_subcommand("stau", "support tau-tilting modules");
  stau->require_subcommand(1);
  auto* stau_enum = stau->add_subcommand("enumerate", "enumerate basic support tau-tilting modules");
  stau_enum->add_option("algebra", alg, "algebra or recollement name")->required();

  std::string rec, left, right, mode = "stau", spec, side, strategy = "a";
  bool assert_hyp = false;
  auto* glue = app.add_subcommand("glue", "glue modules or torsion pairs along a recollement");
  glue->add_option("recollement", rec)->required();
  glue->add_option("--left-module", left, "module over the left algebra")->required();
  glue->add_option("--right-module", right, "module over the right algebra")->required();
  glue->add_option("--mode", mode, "stau, tau or torsion")->check(CLI::IsMember({"stau", "tau", "torsion"}));

  auto* restrict = app.add_subcommand("restrict", "restrict a support tau-tilting module to one side");
  restrict->add_option("recollement", rec)->required();
  restrict->add_option("--module", spec, "module over the triangular algebra")->required();
  restrict->add_option("--side", side, "A or C")->required()->check(CLI::IsMember({"A", "C"}));
  restrict->add_option("--strategy", strategy, "a, b or c (side C)")->check(CLI::IsMember({"a", "b", "c"}));
  restrict->add_flag("--assert-hypothesis", assert_hyp, "side A: proceed when the adjoint hypothesis cannot be verified");

  auto* axioms = app.add_subcommand("axioms", "verify the recollement axioms and exactness of the six functors");
  axioms->add_option("recollement", rec)->required();

  std::string part = "all", expected;
  bool verbose = false;
  auto* verify = app.add_subcommand("verify", "reproduce a worked example");
  verify->require_subcommand(1);
  auto* ex51 = verify->add_subcommand("example51", "compare every part against the stored ground truth");
  ex51->add_option("--part", part, "1-6 or all");
  ex51->add_option("--expected", expected, "expected-results file (default: built in)");
  ex51->add_flag("--verbose", verbose, "list passing checks too");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? ok : parse_error;
  }
  s.echo = args;
  try {
    if (!def_path.empty()) {
      s.defs = parse_definitions(read_file(def_path));
      s.def_source = def_path;
    } else {
      s.defs = parse_definitions(embedded::ex51_definition);
    }
    if (*indec) return cmd_indec(s, alg, dot, save, load);
    if (*stau_enum) return cmd_stau(s, alg);
    if (*glue) return cmd_glue(s, rec, left, right, mode);
    if (*restrict) return cmd_restrict(s, rec, spec, side, strategy, assert_hyp);
    if (*axioms) return cmd_axioms(s, rec);
    if (*ex51) return cmd_verify_example51(s, part, expected, verbose);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return parse_error;
  } catch (const HypothesisRefusal& e) {
    err << "refused (" << e.hypothesis << "): " << e.what() << "\n";
    return refusal;
  } catch (const VerificationMismatch& e) {
    err << "verification mismatch: " << e.what() << "\n";
    return mismatch;
  } catch (const InternalConsistencyError& e) {
    err << "internal consistency error: " << e.what() << "\n";
    return internal;
  } catch (const Inconclusive& e) {
    err << "inconclusive: " << e.what() << "\n";
    return internal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return parse_error;
  } catch (const nlohmann::json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return parse_error;
  }
  return parse_error;
}

}  // namespace taurec::cli
