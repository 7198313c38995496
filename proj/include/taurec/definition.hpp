#pragma once

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "quiver.hpp"

namespace taurec {

struct RecollementDef {
  std::string name, left, right;
  std::string bimodule;  // "regular_twisted" or "zero"
  std::string morphism;  // for regular_twisted
  int line = 0;
};

/// Parsed contents of a definition file.
struct Definitions {
  std::vector<std::string> algebra_names;
  std::map<std::string, QuiverAlgebra> algebras;
  std::map<std::string, AlgebraMorphism> morphisms;
  std::vector<std::string> recollement_names;
  std::map<std::string, RecollementDef> recollements;

  const QuiverAlgebra& algebra(const std::string& name) const {
    auto it = algebras.find(name);
    if (it == algebras.end()) throw ParseError("unknown algebra \"" + name + "\"");
    return it->second;
  }
};

namespace detail {

struct Token {
  enum Kind { Word, String, Symbol, End } kind;
  std::string text;
  int line, column;
};

inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int l = line, cl = col;
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw ParseError("unterminated string", l, cl);
      out.push_back({Token::String, src.substr(i + 1, j - i - 1), l, cl});
      advance(j + 1 - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Token::Symbol, "->", l, cl});
      advance(2);
      continue;
    }
    if (std::string("{};*+-").find(c) != std::string::npos) {
      out.push_back({Token::Symbol, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    auto word_char = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'' || ch == '.'; };
    if (word_char(c)) {
      std::size_t j = i;
      while (j < src.size() && (word_char(src[j]) || (src[j] == '/' && std::isdigit(static_cast<unsigned char>(src[i])) && j + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[j + 1]))))) ++j;
      out.push_back({Token::Word, src.substr(i, j - i), l, cl});
      advance(j - i);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

inline bool is_number(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/') return false;
  return std::isdigit(static_cast<unsigned char>(s.front())) && std::isdigit(static_cast<unsigned char>(s.back()));
}

// linear combination of words-paths: coefficient and arrow labels in written order
using ParsedExpr = std::vector<std::pair<Rational, std::vector<std::string>>>;

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(tokenize(src)) {}

  Definitions parse() {
    Definitions d;
    while (peek().kind != Token::End) {
      const Token& t = next();
      if (t.kind == Token::Word && t.text == "algebra") parse_algebra(d);
      else if (t.kind == Token::Word && t.text == "morphism") parse_morphism(d);
      else if (t.kind == Token::Word && t.text == "recollement") parse_recollement(d);
      else fail("expected 'algebra', 'morphism' or 'recollement'", t);
    }
    return d;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  [[noreturn]] void fail(const std::string& msg, const Token& t) const { throw ParseError(msg + (t.kind == Token::End ? " at end of input" : " near '" + t.text + "'"), t.line, t.column); }
  void expect(const std::string& sym) {
    const Token& t = next();
    if (t.text != sym || t.kind == Token::String) fail("expected '" + sym + "'", t);
  }
  std::string word() {
    const Token& t = next();
    if (t.kind != Token::Word) fail("expected a name", t);
    return t.text;
  }
  std::string string() {
    const Token& t = next();
    if (t.kind != Token::String) fail("expected a quoted name", t);
    return t.text;
  }
  bool accept(const std::string& sym) {
    if (peek().kind != Token::String && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }

  ParsedExpr expr() {
    ParsedExpr e;
    Rational sign = 1;
    if (accept("-")) sign = -1;
    else accept("+");
    while (true) {
      Rational coeff = sign;
      std::vector<std::string> path;
      do {
        const Token& t = next();
        if (t.kind != Token::Word) fail("expected a coefficient or an arrow", t);
        if (is_number(t.text)) {
          if (!path.empty()) fail("coefficient after an arrow", t);
          coeff *= parse_rational(t.text);
        } else {
          path.push_back(t.text);
        }
      } while (accept("*"));
      e.push_back({coeff, path});
      if (accept("+")) sign = 1;
      else if (accept("-")) sign = -1;
      else break;
    }
    return e;
  }

  void parse_algebra(Definitions& d) {
    const Token& at = peek();
    std::string name = string();
    if (d.algebras.count(name)) fail("duplicate algebra \"" + name + "\"", at);
    QuiverPresentation q;
    q.name = name;
    expect("{");
    std::vector<std::pair<ParsedExpr, Token>> rels;
    while (!accept("}")) {
      const Token& kw = next();
      if (kw.text == "field") {
        std::string f = word();
        if (f == "rational") {
          q.field = Field::rationals();
        } else if (f == "fp") {
          const Token& pt = next();
          if (!is_number(pt.text)) fail("expected a prime", pt);
          try {
            q.field = Field::prime(std::stoull(pt.text));
          } catch (const ParseError&) {
            throw;
          } catch (const Error& e) {
            fail(e.what(), pt);
          }
        } else {
          fail("unknown field", kw);
        }
      } else if (kw.text == "vertices") {
        while (peek().kind == Token::Word) q.vertices.push_back(word());
        if (q.vertices.empty()) fail("expected vertex labels", peek());
      } else if (kw.text == "arrow") {
        const Token& lt = peek();
        std::string label = word();
        if (is_number(label)) fail("arrow labels must not be numbers", lt);
        const Token& st = peek();
        std::string s = word();
        expect("->");
        const Token& tt = peek();
        std::string t = word();
        Arrow a{label, 0, 0};
        try {
          a.src = q.vertex_index(s);
        } catch (const Error&) {
          fail("unknown vertex", st);
        }
        try {
          a.tgt = q.vertex_index(t);
        } catch (const Error&) {
          fail("unknown vertex", tt);
        }
        for (auto& b : q.arrows)
          if (b.label == label) fail("duplicate arrow", lt);
        q.arrows.push_back(a);
      } else if (kw.text == "relation") {
        const Token& rt = peek();
        rels.push_back({expr(), rt});
      } else {
        fail("unknown algebra statement", kw);
      }
      expect(";");
    }
    for (auto& [e, t] : rels) {
      Relation r;
      for (auto& [c, path] : e) {
        if (path.empty()) fail("relation term without arrows", t);
        Path p;
        for (auto& l : path) {
          try {
            p.push_back(q.arrow_index(l));
          } catch (const Error&) {
            fail("unknown arrow '" + l + "'", t);
          }
        }
        for (std::size_t k = 0; k + 1 < p.size(); ++k)
          if (q.arrows[p[k]].src != q.arrows[p[k + 1]].tgt) fail("non-composable path in relation: " + path[k] + " cannot follow " + path[k + 1], t);
        r.push_back({q.field.reduce(c), p});
      }
      q.relations.push_back(r);
    }
    try {
      d.algebras.emplace(name, compile_quiver_algebra(q));
    } catch (const InvalidAlgebra& e) {
      fail(std::string("invalid algebra: ") + e.what(), at);
    }
    d.algebra_names.push_back(name);
  }

  void parse_morphism(Definitions& d) {
    const Token& at = peek();
    std::string name = string();
    expect("from");
    std::string from = string();
    expect("to");
    std::string to = string();
    if (!d.algebras.count(from)) fail("unknown algebra \"" + from + "\"", at);
    if (!d.algebras.count(to)) fail("unknown algebra \"" + to + "\"", at);
    const QuiverAlgebra &qs = d.algebras.at(from), &qt = d.algebras.at(to);
    const FdAlgebra &s = qs.algebra, &t = qt.algebra;
    std::vector<Vec> vimg(s.num_vertices()), aimg(qs.presentation.arrows.size());
    std::vector<bool> vset(s.num_vertices(), false), aset(aimg.size(), false);
    expect("{");
    while (!accept("}")) {
      const Token& kw = next();
      if (kw.text == "vertex") {
        const Token& vt = peek();
        std::string v = word();
        expect("->");
        const Token& wt = peek();
        std::string w = word();
        std::size_t vi = 0;
        try {
          vi = s.vertex_index(v);
        } catch (const Error&) {
          fail("unknown source vertex", vt);
        }
        Vec img(t.dim());
        if (w != "0") {
          try {
            img[t.idempotent(t.vertex_index(w))] = 1;
          } catch (const Error&) {
            fail("unknown target vertex", wt);
          }
        }
        vimg[vi] = img;
        vset[vi] = true;
      } else if (kw.text == "arrow") {
        const Token& lt = peek();
        std::string label = word();
        expect("->");
        std::size_t ai = 0;
        try {
          ai = qs.presentation.arrow_index(label);
        } catch (const Error&) {
          fail("unknown source arrow", lt);
        }
        const Token& et = peek();
        ParsedExpr e = expr();
        Vec img(t.dim());
        for (auto& [c, path] : e) {
          if (path.empty()) {
            if (c != 0) fail("constant term in an arrow image", et);
            continue;
          }
          Path p;
          for (auto& l : path) {
            try {
              p.push_back(qt.presentation.arrow_index(l));
            } catch (const Error&) {
              fail("unknown target arrow '" + l + "'", et);
            }
          }
          for (std::size_t k = 0; k + 1 < p.size(); ++k)
            if (qt.presentation.arrows[p[k]].src != qt.presentation.arrows[p[k + 1]].tgt) fail("non-composable path in arrow image", et);
          Vec x = qt.path_element(p);
          for (std::size_t k = 0; k < img.size(); ++k) img[k] = t.field().reduce(img[k] + c * x[k]);
        }
        aimg[ai] = img;
        aset[ai] = true;
      } else {
        fail("unknown morphism statement", kw);
      }
      expect(";");
    }
    for (std::size_t v = 0; v < vset.size(); ++v)
      if (!vset[v]) fail("image of vertex " + s.vertex_label(v) + " not given", at);
    for (std::size_t a = 0; a < aset.size(); ++a)
      if (!aset[a]) fail("image of arrow " + qs.presentation.arrows[a].label + " not given", at);
    Matrix m(t.dim(), s.dim(), t.field());
    for (std::size_t b = 0; b < s.dim(); ++b) {
      const Path& p = qs.basis_paths[b];
      Vec x;
      if (p.empty()) {
        x = vimg[qs.basis_src[b]];
      } else {
        x = aimg[p.back()];
        for (std::size_t k = p.size() - 1; k-- > 0;) x = t.multiply(aimg[p[k]], x);
      }
      for (std::size_t r = 0; r < t.dim(); ++r) m.set(r, b, x[r]);
    }
    AlgebraMorphism phi{s, t, m};
    try {
      phi.validate();
    } catch (const Error& e) {
      fail(std::string("morphism \"") + name + "\" is not an algebra map: " + e.what(), at);
    }
    d.morphisms.emplace(name, phi);
  }

  void parse_recollement(Definitions& d) {
    const Token& at = peek();
    RecollementDef r;
    r.name = string();
    r.line = at.line;
    expect("{");
    while (!accept("}")) {
      const Token& kw = next();
      if (kw.text == "left") {
        r.left = string();
      } else if (kw.text == "right") {
        r.right = string();
      } else if (kw.text == "bimodule") {
        const Token& bt = peek();
        r.bimodule = word();
        if (r.bimodule == "regular_twisted") r.morphism = string();
        else if (r.bimodule != "zero") fail("expected 'regular_twisted' or 'zero'", bt);
      } else {
        fail("unknown recollement statement", kw);
      }
      expect(";");
    }
    if (r.left.empty() || r.right.empty() || r.bimodule.empty()) fail("recollement needs left, right and bimodule", at);
    if (!d.algebras.count(r.left) || !d.algebras.count(r.right)) fail("recollement refers to an unknown algebra", at);
    if (r.bimodule == "regular_twisted") {
      auto it = d.morphisms.find(r.morphism);
      if (it == d.morphisms.end()) fail("unknown morphism \"" + r.morphism + "\"", at);
      if (!same_algebra(it->second.source, d.algebras.at(r.right).algebra) || !same_algebra(it->second.target, d.algebras.at(r.left).algebra))
        fail("morphism must go from the right algebra to the left algebra", at);
    }
    d.recollement_names.push_back(r.name);
    d.recollements.emplace(r.name, r);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Definitions parse_definitions(const std::string& text) { return detail::Parser(text).parse(); }

}  // namespace taurec
