#include "afspin/presentation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace afspin {
namespace {

struct Token {
  enum Kind { Ident, Integer, Punct, End } kind = End;
  std::string text;
  Int value = 0;
  int line = 1, col = 1;
};

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}
bool ident_cont(unsigned char c) { return ident_start(c) || std::isdigit(c); }

[[noreturn]] void parse_fail(const Token& t, const std::string& msg) {
  std::ostringstream os;
  os << t.line << ":" << t.col << ": " << msg;
  fail(errc::parse, os.str());
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    unsigned char c = src[i];
    if (c == '#') {  // comment to end of line
      size_t j = i;
      while (j < src.size() && src[j] != '\n') ++j;
      advance(j - i);
      continue;
    }
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (ident_start(c)) {
      size_t j = i;
      while (j < src.size() && ident_cont(static_cast<unsigned char>(src[j])))
        ++j;
      t.kind = Token::Ident;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(c)) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      t.kind = Token::Integer;
      t.text = src.substr(i, j - i);
      t.value = Int(t.text);
      advance(j - i);
    } else if (std::string("{}()[],;:=^+-").find(c) != std::string::npos) {
      t.kind = Token::Punct;
      t.text = std::string(1, static_cast<char>(c));
      advance(1);
    } else {
      std::ostringstream os;
      os << line << ":" << col << ": unexpected character '" << c << "'";
      fail(errc::parse, os.str());
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;
  PcPresentation p;

  const Token& cur() const { return toks[pos]; }
  const Token& next() { return toks[pos++]; }
  bool at_punct(const char* s) const {
    return cur().kind == Token::Punct && cur().text == s;
  }
  bool at_ident(const char* s) const {
    return cur().kind == Token::Ident && cur().text == s;
  }
  void expect_punct(const char* s) {
    if (!at_punct(s)) parse_fail(cur(), std::string("expected '") + s + "'");
    ++pos;
  }
  std::string expect_ident(const char* what) {
    if (cur().kind != Token::Ident) parse_fail(cur(), std::string("expected ") + what);
    return next().text;
  }

  int gen_index_checked(const std::string& name, const Token& t) {
    auto idx = p.gen_index(name);
    if (!idx) parse_fail(t, "undeclared generator '" + name + "'");
    return *idx;
  }

  Int param_value(const std::string& name, const Token& t) {
    auto it = p.parameters.find(name);
    if (it == p.parameters.end())
      parse_fail(t, "parameter unbound: '" + name + "'");
    return it->second;
  }

  Int parse_int_literal() {
    bool neg = false;
    if (at_punct("-")) {
      ++pos;
      neg = true;
    }
    if (cur().kind != Token::Integer) parse_fail(cur(), "expected integer");
    Int v = next().value;
    return neg ? -v : v;
  }

  // expr := ['-'] term (('+'|'-') term)* ; term := factor+ ;
  // factor := integer | parameter | '(' expr ')'
  Int parse_expr() {
    Int acc;
    bool neg = at_punct("-");
    if (neg) ++pos;
    acc = parse_term();
    if (neg) acc = -acc;
    while (at_punct("+") || at_punct("-")) {
      bool minus = cur().text == "-";
      ++pos;
      Int t = parse_term();
      acc += minus ? -t : t;
    }
    return acc;
  }
  Int parse_term() {
    Int acc = parse_factor();
    while (cur().kind == Token::Integer || cur().kind == Token::Ident ||
           at_punct("("))
      acc *= parse_factor();
    return acc;
  }
  Int parse_factor() {
    if (cur().kind == Token::Integer) return next().value;
    if (cur().kind == Token::Ident) {
      Token t = next();
      return param_value(t.text, t);
    }
    if (at_punct("(")) {
      ++pos;
      Int v = parse_expr();
      expect_punct(")");
      return v;
    }
    parse_fail(cur(), "expected integer, parameter, or '('");
  }

  // after '^': sign? (integer | parameter) | '(' expr ')'
  Int parse_exponent() {
    bool neg = false;
    if (at_punct("-")) {
      ++pos;
      neg = true;
    }
    Int v;
    if (cur().kind == Token::Integer) {
      v = next().value;
    } else if (cur().kind == Token::Ident) {
      Token t = next();
      v = param_value(t.text, t);
    } else if (at_punct("(")) {
      ++pos;
      v = parse_expr();
      expect_punct(")");
    } else {
      parse_fail(cur(), "expected exponent");
    }
    return neg ? -v : v;
  }

  // word := '1' | (gen ['^' exponent])+
  Word parse_word() {
    Word w;
    if (cur().kind == Token::Integer) {
      Token t = next();
      if (t.value != 1) parse_fail(t, "only '1' denotes the identity word");
      return w;
    }
    if (cur().kind != Token::Ident) parse_fail(cur(), "expected word");
    while (cur().kind == Token::Ident) {
      Token t = next();
      int g = gen_index_checked(t.text, t);
      Int e = 1;
      if (at_punct("^")) {
        ++pos;
        e = parse_exponent();
      }
      if (e != 0) w.push_back({g, e});
    }
    return w;
  }

  void store_conj(int i, int j, ConjDir dir, Word rhs, const Token& at) {
    if (i == j) parse_fail(at, "relation conjugates a generator by itself");
    if (i > j)
      parse_fail(at,
                 "conjugation acts on an earlier generator (out-of-order "
                 "pair; restate from the other side)");
    auto key = std::make_pair(i, j);
    if (p.conj.count(key))
      parse_fail(at, "duplicate relation for pair (" + p.gen_name(i) + ", " +
                         p.gen_name(j) + ")");
    p.conj[key] = ConjRelation{i, j, dir, std::move(rhs)};
  }

  void parse_relation() {
    Token at = cur();
    if (at_punct("[")) {
      // [x, y] = w  with x deeper than y; stores y^-1 x y = x w.
      ++pos;
      Token tx = cur();
      std::string xn = expect_ident("generator");
      int x = gen_index_checked(xn, tx);
      expect_punct(",");
      Token ty = cur();
      std::string yn = expect_ident("generator");
      int y = gen_index_checked(yn, ty);
      expect_punct("]");
      expect_punct("=");
      Word rhs = parse_word();
      expect_punct(";");
      if (x == y) parse_fail(at, "commutator of a generator with itself");
      if (x < y)
        parse_fail(at,
                   "commutator must list the deeper generator first: [" +
                       p.gen_name(y) + ", " + p.gen_name(x) + "]");
      Word conv;
      conv.push_back({x, 1});
      conv.insert(conv.end(), rhs.begin(), rhs.end());
      store_conj(y, x, ConjDir::neg, std::move(conv), at);
      return;
    }
    Word lhs = parse_word();
    expect_punct("=");
    Word rhs = parse_word();
    expect_punct(";");
    if (lhs.size() == 1) {
      // power relation: head generator raised to its relative order
      const Letter& l = lhs[0];
      if (!p.is_head(l.gen))
        parse_fail(at, "power relation on a lattice generator");
      if (l.exp != p.heads[l.gen].order)
        parse_fail(at, "power relation exponent must equal the relative order");
      if (p.power_rhs.count(l.gen))
        parse_fail(at, "duplicate power relation for '" + p.gen_name(l.gen) + "'");
      p.power_rhs[l.gen] = std::move(rhs);
      return;
    }
    if (lhs.size() == 3 && lhs[0].gen == lhs[2].gen && lhs[1].exp == 1) {
      int i = lhs[0].gen, j = lhs[1].gen;
      if (lhs[0].exp == 1 && lhs[2].exp == -1) {
        store_conj(i, j, ConjDir::pos, std::move(rhs), at);
        return;
      }
      if (lhs[0].exp == -1 && lhs[2].exp == 1) {
        store_conj(i, j, ConjDir::neg, std::move(rhs), at);
        return;
      }
    }
    parse_fail(at,
               "unsupported relation shape (expected g^order = w, "
               "g h g^-1 = w, g^-1 h g = w, or [x,y] = w)");
  }

  void declare_name(const std::string& n, const Token& t) {
    if (p.gen_index(n)) parse_fail(t, "duplicate generator name '" + n + "'");
    if (p.parameters.count(n))
      parse_fail(t, "generator name '" + n + "' collides with a parameter");
  }

  void run() {
    if (!at_ident("group")) parse_fail(cur(), "expected 'group'");
    ++pos;
    p.name = expect_ident("group name");
    expect_punct("{");
    if (at_ident("params")) {
      ++pos;
      expect_punct(":");
      for (;;) {
        Token t = cur();
        std::string n = expect_ident("parameter name");
        expect_punct("=");
        Int v = parse_int_literal();
        if (p.parameters.count(n)) parse_fail(t, "duplicate parameter '" + n + "'");
        p.parameters[n] = v;
        if (at_punct(",")) {
          ++pos;
          continue;
        }
        break;
      }
      expect_punct(";");
    }
    if (!at_ident("lattice")) parse_fail(cur(), "expected 'lattice'");
    ++pos;
    std::vector<std::string> lat;
    for (;;) {
      Token t = cur();
      std::string n = expect_ident("lattice generator");
      lat.push_back(n);
      if (at_punct(",")) {
        ++pos;
        continue;
      }
      break;
    }
    expect_punct(";");
    if (at_ident("holonomy")) {
      ++pos;
      for (;;) {
        Token t = cur();
        std::string n = expect_ident("head generator");
        expect_punct(":");
        if (!at_ident("order")) parse_fail(cur(), "expected 'order'");
        ++pos;
        Int o = parse_int_literal();
        if (o < 2) parse_fail(t, "relative order must be at least 2");
        declare_name(n, t);
        p.heads.push_back({n, o});
        if (at_punct(",")) {
          ++pos;
          continue;
        }
        break;
      }
      expect_punct(";");
    }
    // lattice names are checked after heads so collisions in either
    // direction are reported
    {
      std::set<std::string> seen;
      for (const auto& n : lat) {
        Token t = cur();  // position is approximate for these
        if (seen.count(n) || std::count(lat.begin(), lat.end(), n) > 1)
          parse_fail(t, "duplicate generator name '" + n + "'");
        seen.insert(n);
        for (const auto& h : p.heads)
          if (h.name == n) parse_fail(t, "duplicate generator name '" + n + "'");
        if (p.parameters.count(n))
          parse_fail(t, "generator name '" + n + "' collides with a parameter");
      }
      p.lattice = lat;
    }
    if (!at_ident("relations")) parse_fail(cur(), "expected 'relations'");
    ++pos;
    expect_punct("{");
    while (!at_punct("}")) parse_relation();
    expect_punct("}");
    if (at_ident("series")) {
      ++pos;
      expect_punct("{");
      while (!at_punct("}")) {
        Token t = cur();
        if (cur().kind != Token::Integer) parse_fail(t, "expected series depth");
        Int depth = next().value;
        if (depth < 2) parse_fail(t, "series depth must be at least 2");
        expect_punct(":");
        std::vector<std::string> names;
        for (;;) {
          Token tn = cur();
          std::string n = expect_ident("lattice generator");
          int idx = gen_index_checked(n, tn);
          if (p.is_head(idx)) parse_fail(tn, "series layer lists a head generator");
          names.push_back(n);
          if (at_punct(",")) {
            ++pos;
            continue;
          }
          break;
        }
        expect_punct(";");
        int d = static_cast<int>(to_ll(depth));
        if (p.declared_series.count(d)) parse_fail(t, "duplicate series depth");
        p.declared_series[d] = std::move(names);
      }
      expect_punct("}");
    }
    expect_punct("}");
    if (cur().kind != Token::End) parse_fail(cur(), "trailing input after group");
  }
};

}  // namespace

std::optional<int> PcPresentation::gen_index(const std::string& n) const {
  for (int i = 0; i < head_count(); ++i)
    if (heads[i].name == n) return i;
  for (int i = 0; i < lattice_count(); ++i)
    if (lattice[i] == n) return head_count() + i;
  return std::nullopt;
}

PcPresentation parse_presentation(const std::string& source) {
  Parser parser;
  parser.toks = lex(source);
  parser.run();
  return std::move(parser.p);
}

ValidationReport validate_structure(const PcPresentation& p) {
  ValidationReport r;
  auto err = [&](const std::string& m) {
    r.valid = false;
    r.errors.push_back(m);
  };
  int H = p.head_count();
  int N = p.gen_count();

  for (const auto& h : p.heads)
    if (h.order < 2) err("relative order of '" + h.name + "' below 2");

  // Power relations: right side strictly later in the global order.
  for (int i = 0; i < H; ++i) {
    auto it = p.power_rhs.find(i);
    if (it == p.power_rhs.end()) {
      err("head '" + p.gen_name(i) + "' has no power relation");
      continue;
    }
    for (const Letter& l : it->second)
      if (l.gen <= i)
        err("power relation for '" + p.gen_name(i) +
            "' uses a generator that is not later in the order");
  }
  for (const auto& [idx, w] : p.power_rhs) {
    (void)w;
    if (idx < 0 || idx >= H) err("power relation on non-head index");
  }

  // Conjugation relations: heads act by lattice words; lattice pairs carry
  // the central filtration (value = conjugated generator times a strictly
  // deeper tail).
  for (const auto& [key, rel] : p.conj) {
    auto [i, j] = key;
    std::string pair = "(" + p.gen_name(i) + ", " + p.gen_name(j) + ")";
    if (i >= j) {
      err("conjugation pair " + pair + " out of order");
      continue;
    }
    if (p.is_head(i)) {
      for (const Letter& l : rel.rhs) {
        if (l.gen <= i)
          err("conjugate for " + pair + " not in later generators");
        if (!p.is_head(j) && p.is_head(l.gen))
          err("conjugate of lattice generator '" + p.gen_name(j) +
              "' leaves the lattice");
      }
    } else {
      if (rel.rhs.empty() || rel.rhs[0].gen != j || rel.rhs[0].exp != 1) {
        err("filtration violation: conjugate for " + pair +
            " does not start with " + p.gen_name(j));
        continue;
      }
      for (size_t t = 1; t < rel.rhs.size(); ++t)
        if (rel.rhs[t].gen <= j)
          err("filtration violation: commutator tail for " + pair +
              " is not strictly deeper");
    }
  }

  // Nilpotency class certificate via commutator weights: a tail letter of a
  // lattice pair must weigh at least the sum of the pair's weights. The
  // filtration makes the update order a DAG, so the fixed point exists.
  {
    std::vector<Int> level(N, 1);
    bool changed = true;
    int guard = 0;
    while (changed && guard++ <= p.lattice_count() + 2) {
      changed = false;
      for (const auto& [key, rel] : p.conj) {
        auto [i, j] = key;
        if (p.is_head(i)) continue;
        Int need = level[i] + level[j];
        for (size_t t = 1; t < rel.rhs.size(); ++t) {
          int g = rel.rhs[t].gen;
          if (g >= H && level[g] < need) {
            level[g] = need;
            changed = true;
          }
        }
      }
    }
    if (changed) {
      err("commutator weights do not stabilise; lattice is not nilpotent");
    } else {
      Int cls = 1;
      for (int g = H; g < N; ++g) cls = std::max(cls, level[g]);
      r.nilpotency_class = static_cast<int>(to_ll(cls));
      r.notes.push_back("lattice nilpotency class at most " +
                        std::to_string(r.nilpotency_class) +
                        " by commutator weights");
    }
  }

  // Declared series: consecutive depths from 2, nested, lattice-only.
  if (!p.declared_series.empty()) {
    int expected = 2;
    std::vector<std::string> prev = p.lattice;
    for (const auto& [depth, names] : p.declared_series) {
      if (depth != expected)
        err("series depths must be consecutive starting at 2");
      expected = depth + 1;
      if (names.empty()) err("series layer at depth " + std::to_string(depth) + " is empty");
      for (const auto& n : names) {
        if (std::find(prev.begin(), prev.end(), n) == prev.end())
          err("series layer at depth " + std::to_string(depth) +
              " is not nested inside the previous layer ('" + n + "')");
      }
      if (names.size() >= prev.size() && depth > 2)
        err("series layer at depth " + std::to_string(depth) + " does not shrink");
      prev = names;
    }
  }
  return r;
}

namespace {

std::string word_text(const PcPresentation& p, const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const Letter& l : w) {
    if (!first) os << " ";
    first = false;
    os << p.gen_name(l.gen);
    if (l.exp != 1) os << "^" << l.exp;
  }
  return os.str();
}

}  // namespace

std::string serialize(const PcPresentation& p) {
  std::ostringstream os;
  os << "group " << p.name << " {\n";
  if (!p.parameters.empty()) {
    os << "  params: ";
    bool first = true;
    for (const auto& [k, v] : p.parameters) {
      if (!first) os << ", ";
      first = false;
      os << k << "=" << v;
    }
    os << ";\n";
  }
  os << "  lattice ";
  for (size_t i = 0; i < p.lattice.size(); ++i)
    os << (i ? ", " : "") << p.lattice[i];
  os << ";\n";
  if (!p.heads.empty()) {
    os << "  holonomy ";
    for (size_t i = 0; i < p.heads.size(); ++i) {
      os << (i ? ", " : "") << p.heads[i].name << ": order " << p.heads[i].order;
    }
    os << ";\n";
  }
  os << "  relations {\n";
  for (const auto& [idx, rhs] : p.power_rhs)
    os << "    " << p.gen_name(idx) << "^" << p.heads[idx].order << " = "
       << word_text(p, rhs) << ";\n";
  for (const auto& [key, rel] : p.conj) {
    const std::string gi = p.gen_name(rel.i), gj = p.gen_name(rel.j);
    os << "    ";
    if (rel.dir == ConjDir::pos)
      os << gi << " " << gj << " " << gi << "^-1";
    else
      os << gi << "^-1 " << gj << " " << gi;
    os << " = " << word_text(p, rel.rhs) << ";\n";
  }
  os << "  }\n";
  if (!p.declared_series.empty()) {
    os << "  series {";
    for (const auto& [depth, names] : p.declared_series) {
      os << " " << depth << ": ";
      for (size_t i = 0; i < names.size(); ++i)
        os << (i ? ", " : "") << names[i];
      os << ";";
    }
    os << " }\n";
  }
  os << "}\n";
  return os.str();
}

std::string substitute_parameters(const std::string& source,
                                  const std::map<std::string, Int>& params) {
  std::vector<Token> toks = lex(source);
  std::ostringstream os;
  bool after_group = false;
  for (size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.kind == Token::End) break;
    std::string piece;
    if (t.kind == Token::Ident && t.text == "params") {
      // rewrite the clause with updated bindings
      piece = "params";
      os << piece;
      ++i;  // ':'
      os << ":";
      while (i + 1 < toks.size() && !(toks[i + 1].kind == Token::Punct &&
                                      toks[i + 1].text == ";")) {
        ++i;
        const Token& u = toks[i];
        if (u.kind == Token::Ident && params.count(u.text)) {
          os << " " << u.text << "=" << params.at(u.text);
          ++i;  // '='
          ++i;  // value (or '-' then value)
          if (toks[i].kind == Token::Punct && toks[i].text == "-") ++i;
        } else if (u.kind == Token::Punct && u.text == ",") {
          os << ",";
        } else {
          os << " " << u.text;
        }
      }
      ++i;  // ';'
      os << "; ";
      continue;
    }
    bool is_param = t.kind == Token::Ident && params.count(t.text) &&
                    after_group && !(i > 0 && toks[i - 1].kind == Token::Ident &&
                                     toks[i - 1].text == "group");
    if (t.kind == Token::Ident && t.text == "group") after_group = true;
    if (is_param)
      piece = "(" + params.at(t.text).str() + ")";
    else
      piece = t.text;
    os << piece << " ";
  }
  return os.str();
}

}  // namespace afspin
