#pragma once

#include <cctype>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "catalog.hpp"

namespace taurec {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "taurec/1";

inline Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).get_str());
    rows.push_back(row);
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const Field& f) {
  if (!j.is_array() || j.size() != rows) throw ParseError("matrix has the wrong number of rows");
  Matrix m(rows, cols, f);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("matrix has the wrong number of columns");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, parse_rational(j[r][c].get<std::string>()));
  }
  return m;
}

inline Json algebra_json(const FdAlgebra& a) {
  return {{"name", a.name()}, {"field", a.field().name()}, {"dim", a.dim()}, {"vertices", a.vertex_labels()}, {"digest", a.digest()}};
}

/// Dimension vector always; action matrices (one per basis element, keyed by basis index) on demand.
inline Json module_json(const Module& m, bool actions = false) {
  Json j = {{"dim_vector", m.dim_vector()}, {"dim", m.dim()}};
  if (actions) {
    Json acts = Json::array();
    for (std::size_t b = 0; b < m.algebra().dim(); ++b) acts.push_back(matrix_json(m.block(b)));
    j["actions"] = acts;
  }
  return j;
}

inline Module module_from_json(const Json& j, const FdAlgebra& a) {
  auto dims = j.at("dim_vector").get<std::vector<std::size_t>>();
  if (dims.size() != a.num_vertices()) throw ParseError("dimension vector length differs from the vertex count");
  const Json& acts = j.at("actions");
  if (!acts.is_array() || acts.size() != a.dim()) throw ParseError("one action matrix per basis element required");
  std::vector<Matrix> blocks;
  for (std::size_t b = 0; b < a.dim(); ++b) blocks.push_back(matrix_from_json(acts[b], dims[a.tgt(b)], dims[a.src(b)], a.field()));
  Module m(a, dims, blocks);
  m.validate();
  return m;
}

inline Json ids_json(const IdMultiset& ids) {
  Json j = Json::array();
  for (auto& [id, mult] : ids) j.push_back({{"id", id}, {"multiplicity", mult}});
  return j;
}

inline Json catalog_json(const IndCatalog& c, bool actions = true) {
  ARQuiver q = c.quiver();
  Json mods = Json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    Json m = module_json(c.module(i), actions);
    m["id"] = i;
    m["name"] = c.name(i);
    m["tau"] = c.tau(i);
    m["tau_inverse"] = c.tau_inverse(i);
    mods.push_back(m);
  }
  Json arrows = Json::array();
  for (auto& a : q.arrows) arrows.push_back({{"from", a.from}, {"to", a.to}, {"multiplicity", a.multiplicity}});
  return {{"schema", kSchema}, {"algebra", algebra_json(c.algebra())}, {"modules", mods}, {"arrows", arrows}};
}

/// Load a saved catalog for the given algebra and re-verify it from the definitions.
inline IndCatalog load_catalog(const Json& j, const FdAlgebra& a) {
  if (j.value("schema", "") != kSchema) throw ParseError("unsupported catalog schema");
  if (j.at("algebra").at("digest").get<std::string>() != a.digest()) throw VerificationMismatch("catalog was saved for a different algebra");
  std::vector<Module> mods;
  for (auto& m : j.at("modules")) mods.push_back(module_from_json(m, a));
  IndCatalog c(a, mods);
  auto rep = verify_catalog(c);
  for (auto& ch : rep.checks)
    if (!ch.passed) throw VerificationMismatch("loaded catalog fails " + ch.name + ": " + ch.detail);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Json& m = j.at("modules")[i];
    if (m.at("tau").get<long>() != c.tau(i) || m.at("tau_inverse").get<long>() != c.tau_inverse(i)) throw VerificationMismatch("stored tau table differs from the recomputed one");
  }
  return c;
}

inline Json report_json(const VerifyReport& r) {
  Json checks = Json::array();
  for (auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"ok", r.ok()}, {"checks", checks}};
}

/// Module specification: terms joined by '+', each optionally prefixed by "k*":
/// X<id>, P(v), S(v), I(v), or D[d1,d2,...] (the indecomposable with that dimension vector).
inline IdMultiset parse_module_spec(const IndCatalog& c, const std::string& spec) {
  const FdAlgebra& a = c.algebra();
  std::map<std::size_t, std::size_t> out;
  std::string s;
  for (char ch : spec)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty() || s == "0") return {};
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> ParseError { return ParseError("module spec '" + spec + "': " + msg, 1, static_cast<int>(pos + 1)); };
  while (pos < s.size()) {
    std::size_t mult = 1;
    std::size_t star = s.find('*', pos), plus = s.find('+', pos);
    if (star != std::string::npos && (plus == std::string::npos || star < plus)) {
      try {
        mult = std::stoul(s.substr(pos, star - pos));
      } catch (const std::exception&) {
        throw fail("bad multiplicity");
      }
      pos = star + 1;
    }
    std::size_t end = s.find('+', pos);
    if (s[pos] == 'D' && pos + 1 < s.size() && s[pos + 1] == '[') end = s.find('+', s.find(']', pos));
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    long id = -1;
    if (term.size() > 1 && term[0] == 'X') {
      try {
        id = std::stol(term.substr(1));
      } catch (const std::exception&) {
        throw fail("bad catalog id");
      }
      if (id < 0 || static_cast<std::size_t>(id) >= c.size()) throw fail("catalog id out of range");
    } else if (term.size() > 3 && (term[0] == 'P' || term[0] == 'S' || term[0] == 'I') && term[1] == '(' && term.back() == ')') {
      std::string label = term.substr(2, term.size() - 3);
      std::size_t v;
      try {
        v = a.vertex_index(label);
      } catch (const Error&) {
        throw fail("unknown vertex " + label);
      }
      id = term[0] == 'P' ? c.projective(v) : term[0] == 'S' ? c.simple(v) : c.injective(v);
      if (id < 0) throw fail("module " + term + " is not in the catalog");
    } else if (term.size() > 3 && term[0] == 'D' && term[1] == '[' && term.back() == ']') {
      std::string body = term.substr(2, term.size() - 3);
      std::vector<std::size_t> d;
      if (body.find(',') == std::string::npos) {
        for (char ch : body) {
          if (!std::isdigit(static_cast<unsigned char>(ch))) throw fail("bad dimension vector");
          d.push_back(static_cast<std::size_t>(ch - '0'));
        }
      } else {
        std::size_t p = 0;
        while (p <= body.size()) {
          std::size_t q = body.find(',', p);
          try {
            d.push_back(std::stoul(body.substr(p, q == std::string::npos ? std::string::npos : q - p)));
          } catch (const std::exception&) {
            throw fail("bad dimension vector");
          }
          if (q == std::string::npos) break;
          p = q + 1;
        }
      }
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c.module(i).dim_vector() == d) {
          if (id >= 0) throw fail("dimension vector does not determine a unique indecomposable");
          id = static_cast<long>(i);
        }
      if (id < 0) throw fail("no indecomposable with dimension vector " + IndCatalog::dim_string(d));
    } else {
      throw fail("unrecognised term '" + term + "'");
    }
    out[static_cast<std::size_t>(id)] += mult;
    if (end == std::string::npos) break;
    pos = end + 1;
    if (pos >= s.size()) throw fail("trailing '+'");
  }
  return IdMultiset(out.begin(), out.end());
}

}  // namespace taurec
