#include "qhorn/horn/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>

#include "qhorn/errors.hpp"

namespace qhorn::horn {

namespace {

enum class Tok { Ident, Var, Number, Ket, Punct, Deco, Directive, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  std::size_t line = 1, col = 1;
};

const std::string kKetClose = "\xE2\x9F\xA9";  // ⟩
const std::string kTensor = "\xE2\x8A\x97";    // ⊗
const std::string kDagger = "\xE2\x80\xA0";    // †
const std::string kLolli = "\xE2\x8A\xB8";     // ⊸
const std::string kUp = "\xE2\x86\x91";        // ↑
const std::string kDown = "\xE2\x86\x93";      // ↓

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string s;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          s += take();
        t.kind = (std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_') ? Tok::Var : Tok::Ident;
        t.text = s;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string s;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) s += take();
        if (pos_ + 1 < src_.size() && src_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
          s += take();
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) s += take();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
          std::size_t look = pos_ + 1;
          if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
          if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
            while (pos_ < look) s += take();
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) s += take();
          }
        }
        t.kind = Tok::Number;
        t.text = s;
        t.number = std::strtod(s.c_str(), nullptr);
      } else if (c == '|') {
        take();
        std::string label;
        for (;;) {
          if (pos_ >= src_.size()) throw ParseError("unterminated ket", t.line, t.col);
          if (starts(kKetClose)) {
            advance(kKetClose.size());
            break;
          }
          if (src_[pos_] == '>') {
            take();
            break;
          }
          if (starts(kUp)) {
            advance(kUp.size());
            label += '0';
          } else if (starts(kDown)) {
            advance(kDown.size());
            label += '1';
          } else if (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_') {
            label += take();
          } else {
            throw ParseError("bad character in ket label", line_, col_);
          }
        }
        if (label.empty()) throw ParseError("empty ket label", t.line, t.col);
        t.kind = Tok::Ket;
        t.text = label;
      } else if (c == '@') {
        take();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
          throw ParseError("decoration needs a level", t.line, t.col);
        std::string s;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) s += take();
        if (s.size() != 1 || s[0] > '3') throw ParseError("unknown decoration @" + s, t.line, t.col);
        t.kind = Tok::Deco;
        t.text = s;
      } else if (c == '#') {
        take();
        std::string s;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) s += take();
        t.kind = Tok::Directive;
        t.text = s;
      } else {
        t.kind = Tok::Punct;
        if (starts(":-")) {
          advance(2);
          t.text = ":-";
        } else if (starts(kLolli)) {
          advance(kLolli.size());
          t.text = ":-";
        } else if (starts(kTensor)) {
          advance(kTensor.size());
          t.text = "⊗";
        } else if (starts(kDagger)) {
          advance(kDagger.size());
          t.text = "†";
        } else if (std::string("(),.[]=+-*/~^").find(c) != std::string::npos) {
          t.text = std::string(1, take());
        } else {
          throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.col);
        }
      }
      out.push_back(t);
    }
  }

 private:
  bool starts(const std::string& s) const { return src_.compare(pos_, s.size(), s) == 0; }
  char take() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
    return c;
  }
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) take();
  }
  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else if (c == '%' || starts("//")) {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else {
        break;
      }
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

std::optional<cplx> fold_constant(const TermPtr& t) {
  if (t->kind == TermKind::Ket && t->ket.is_scalar() && t->ket.scalar_value().is_constant())
    return t->ket.scalar_value().constant();
  if (t->kind == TermKind::Atom && t->name == "pi") return cplx(M_PI, 0.0);
  if (t->kind != TermKind::Compound) return std::nullopt;
  std::vector<cplx> v;
  for (const auto& a : t->args) {
    const auto x = fold_constant(a);
    if (!x) return std::nullopt;
    v.push_back(*x);
  }
  const auto& f = t->name;
  if (f == "+" && v.size() == 2) return v[0] + v[1];
  if (f == "-" && v.size() == 2) return v[0] - v[1];
  if (f == "*" && v.size() == 2) return v[0] * v[1];
  if (f == "/" && v.size() == 2) return v[0] / v[1];
  if (f == "neg" && v.size() == 1) return -v[0];
  if (f == "sqrt" && v.size() == 1) return std::sqrt(v[0]);
  if (f == "exp" && v.size() == 1) return std::exp(v[0]);
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program prog;
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Directive)
        directive(prog);
      else
        prog.clauses.push_back(clause());
    }
    return prog;
  }

  Query query() {
    vars_.clear();
    next_var_ = 0;
    Query q;
    if (peek().kind == Tok::End) throw error("empty query");
    for (;;) {
      q.goals.push_back(body_predicate());
      if (is_punct(",")) {
        next();
        continue;
      }
      break;
    }
    if (is_punct(".")) next();
    if (peek().kind != Tok::End) throw error("unexpected '" + peek().text + "' after query");
    for (const auto& [name, id] : vars_) q.variables.emplace_back(name, id);
    std::sort(q.variables.begin(), q.variables.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    q.num_vars = next_var_;
    return q;
  }

  TermPtr single_term() {
    vars_.clear();
    next_var_ = 0;
    TermPtr t = sum();
    if (peek().kind != Tok::End) throw error("unexpected '" + peek().text + "' after term");
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool is_punct(const std::string& p, std::size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == p;
  }
  ParseError error(const std::string& msg) const { return ParseError(msg, peek().line, peek().col); }
  void expect(const std::string& p) {
    if (!is_punct(p)) {
      const std::string got = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
      throw error("expected '" + p + "', got " + got);
    }
    next();
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) throw error("expected a name");
    return next().text;
  }

  void directive(Program& prog) {
    const Token d = next();
    const std::string name = ident();
    if (d.text == "system") {
      if (peek().kind != Tok::Number) throw error("#system needs a dimension");
      const double v = next().number;
      if (v < 1 || v != std::floor(v)) throw ParseError("bad dimension", d.line, d.col);
      prog.systems.push_back({name, static_cast<std::size_t>(v)});
    } else if (d.text == "param") {
      const Token at = peek();
      const auto v = fold_constant(sum());
      if (!v || v->imag() != 0.0) throw ParseError("#param needs a real constant", at.line, at.col);
      prog.params.push_back({name, v->real()});
    } else if (d.text == "op") {
      OpDecl decl{name, nullptr, false, d.line, d.col};
      decl.expr = sum();
      if (peek().kind == Tok::Ident && peek().text == "antiunitary") {
        next();
        decl.antiunitary = true;
      }
      prog.ops.push_back(decl);
    } else if (d.text == "state") {
      StateDecl decl{name, sum(), d.line, d.col};
      prog.states.push_back(decl);
    } else if (d.text == "fock") {
      FockDecl f{name};
      const Token at = peek();
      const auto t = fold_constant(sum());
      const auto k = fold_constant(sum());
      const auto v = fold_constant(sum());
      if (!t || !k || !v || t->real() <= 0.0 || k->real() < 1.0)
        throw ParseError("#fock needs horizon, cell count and value", at.line, at.col);
      f.horizon = t->real();
      f.cells = static_cast<std::size_t>(std::lround(k->real()));
      f.value = *v;
      prog.fock.push_back(f);
    } else {
      throw ParseError("unknown directive #" + d.text, d.line, d.col);
    }
    expect(".");
  }

  Clause clause() {
    vars_.clear();
    next_var_ = 0;
    Clause c;
    c.line = peek().line;
    if (!is_punct(":-")) {
      Predicate h = body_predicate();
      if (h.kind != PredKind::Call || h.negated) throw ParseError("clause head must be a plain predicate", h.line, h.column);
      c.head = h;
    }
    if (is_punct(":-")) {
      next();
      for (;;) {
        c.body.push_back(body_predicate());
        if (is_punct(",")) {
          next();
          continue;
        }
        break;
      }
    }
    if (!c.head && c.body.empty()) throw error("empty clause");
    expect(".");
    c.num_vars = next_var_;
    return c;
  }

  Predicate body_predicate() {
    Predicate p;
    p.line = peek().line;
    p.column = peek().col;
    if (is_punct("~")) {
      next();
      p.negated = true;
    }
    if (peek().kind == Tok::Deco) p.decoration = next().text[0] - '0';
    if (is_punct("[")) {
      next();
      TermPtr a = sum();
      expect(",");
      TermPtr b = sum();
      expect("]");
      expect("=");
      if (peek().kind != Tok::Number || peek().number != 0.0) throw error("commutator constraint must equal 0");
      next();
      p.kind = PredKind::Commutator;
      p.functor = "commutes";
      p.args = {a, b};
      return p;
    }
    TermPtr t = sum();
    if (is_punct("=")) {
      next();
      p.kind = PredKind::Equal;
      p.functor = "=";
      p.args = {t, sum()};
      return p;
    }
    if (t->kind == TermKind::Atom) {
      p.functor = t->name;
    } else if (t->kind == TermKind::Compound && !is_arithmetic_functor(t->name)) {
      p.functor = t->name;
      p.args = t->args;
    } else {
      throw ParseError("expected a predicate", p.line, p.column);
    }
    if (is_punct("†")) {
      next();
      p.dagger = true;
    }
    if (is_punct("*")) {
      next();
      p.star = true;
    }
    return p;
  }

  bool star_is_marker() const {
    // a '*' directly followed by a delimiter ends a predicate instead of multiplying
    if (!is_punct("*")) return false;
    const Token& n = peek(1);
    return n.kind == Tok::End || n.kind == Tok::Directive ||
           (n.kind == Tok::Punct && (n.text == "," || n.text == "." || n.text == ":-" || n.text == "†" || n.text == ")"));
  }

  TermPtr sum() {
    TermPtr t = product();
    while (is_punct("+") || is_punct("-")) {
      const std::string op = next().text;
      t = Term::compound(op, {t, product()});
    }
    return t;
  }

  TermPtr product() {
    TermPtr t = tensor();
    while ((is_punct("*") && !star_is_marker()) || is_punct("/")) {
      const std::string op = next().text;
      t = Term::compound(op, {t, tensor()});
    }
    return t;
  }

  TermPtr tensor() {
    TermPtr t = unary();
    while (is_punct("⊗")) {
      next();
      t = Term::compound("⊗", {t, unary()});
    }
    return t;
  }

  TermPtr unary() {
    if (is_punct("-")) {
      next();
      TermPtr inner = unary();
      if (const auto c = fold_constant(inner); c && inner->kind == TermKind::Ket) return Term::number(-*c);
      return Term::compound("neg", {inner});
    }
    TermPtr t = primary();
    // a coefficient written directly before a ket multiplies it
    while (peek().kind == Tok::Ket) t = Term::compound("*", {t, primary()});
    return t;
  }

  TermPtr primary() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Number:
        next();
        return Term::number(t.number);
      case Tok::Ket:
        next();
        return Term::ket_term(KetExpr::basis(t.text));
      case Tok::Var: {
        next();
        if (t.text == "_") return Term::var("_", next_var_++);
        const auto it = vars_.find(t.text);
        if (it != vars_.end()) return Term::var(t.text, it->second);
        vars_[t.text] = next_var_;
        return Term::var(t.text, next_var_++);
      }
      case Tok::Ident: {
        next();
        if (t.text == "i" && !is_punct("(")) return Term::number(cplx(0.0, 1.0));
        if (!is_punct("(")) return Term::atom(t.text);
        next();
        std::vector<TermPtr> args;
        if (!is_punct(")")) {
          for (;;) {
            args.push_back(sum());
            if (is_punct(",")) {
              next();
              continue;
            }
            break;
          }
        }
        expect(")");
        return Term::compound(t.text, std::move(args));
      }
      case Tok::Punct:
        if (t.text == "(") {
          next();
          TermPtr inner = sum();
          expect(")");
          return inner;
        }
        if (t.text == "[") {
          next();
          std::vector<TermPtr> items;
          for (;;) {
            items.push_back(sum());
            if (is_punct(",")) {
              next();
              continue;
            }
            break;
          }
          expect("]");
          const bool nested = std::all_of(items.begin(), items.end(), [](const TermPtr& x) {
            return x->kind == TermKind::Compound && x->name == "row";
          });
          return Term::compound(nested ? "matrix" : "row", std::move(items));
        }
        break;
      default:
        break;
    }
    const std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("expected a term, got " + got, t.line, t.col);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, int> vars_;
  int next_var_ = 0;
};

}  // namespace

Program parse_program(const std::string& src) { return Parser(Lexer(src).run()).program(); }

Query parse_query(const std::string& src) { return Parser(Lexer(src).run()).query(); }

TermPtr parse_term(const std::string& src) { return Parser(Lexer(src).run()).single_term(); }

}  // namespace qhorn::horn
