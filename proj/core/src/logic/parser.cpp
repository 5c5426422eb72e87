#include "ctfrec/logic/parser.hpp"

#include <cctype>

#include "ctfrec/util/text.hpp"

namespace ctfrec::logic {

bool is_variable_name(std::string_view name) {
  if (name.empty()) return false;
  return (name[0] >= 'a' && name[0] <= 'z') || name[0] == '_';
}

namespace {

enum class Tk {
  Ident, Num, LParen, RParen, LBrace, RBrace, Comma, Colon, Semi,
  Assign, Plus, Minus, Star, Bang, Amp, Pipe, Arrow, DoubleArrow, End
};

struct Tok {
  Tk kind;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Tok> run() {
    std::vector<Tok> out;
    for (;;) {
      skip_ws();
      Tok t;
      t.line = line_;
      t.col = col_;
      if (i_ >= s_.size()) {
        t.kind = Tk::End;
        out.push_back(t);
        return out;
      }
      const char c = s_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i_;
        while (j < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_' || s_[j] == '.')) {
          ++j;
        }
        t.kind = Tk::Ident;
        t.text = std::string(s_.substr(i_, j - i_));
        advance(j - i_);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        if (j < s_.size() && s_[j] == '.') {
          ++j;
          while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        }
        if (j < s_.size() && (s_[j] == 'e' || s_[j] == 'E')) {
          size_t k = j + 1;
          if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
          if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
            j = k;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
          }
        }
        t.kind = Tk::Num;
        t.text = std::string(s_.substr(i_, j - i_));
        advance(j - i_);
      } else {
        switch (c) {
          case '(': t.kind = Tk::LParen; advance(1); break;
          case ')': t.kind = Tk::RParen; advance(1); break;
          case '{': t.kind = Tk::LBrace; advance(1); break;
          case '}': t.kind = Tk::RBrace; advance(1); break;
          case ',': t.kind = Tk::Comma; advance(1); break;
          case ':': t.kind = Tk::Colon; advance(1); break;
          case ';': t.kind = Tk::Semi; advance(1); break;
          case '+': t.kind = Tk::Plus; advance(1); break;
          case '-': t.kind = Tk::Minus; advance(1); break;
          case '*': t.kind = Tk::Star; advance(1); break;
          case '!': t.kind = Tk::Bang; advance(1); break;
          case '&': t.kind = Tk::Amp; advance(1); break;
          case '|': t.kind = Tk::Pipe; advance(1); break;
          case '=':
            if (i_ + 1 < s_.size() && s_[i_ + 1] == '>') {
              t.kind = Tk::Arrow;
              advance(2);
            } else {
              t.kind = Tk::Assign;
              advance(1);
            }
            break;
          case '<':
            if (i_ + 2 < s_.size() && s_[i_ + 1] == '=' && s_[i_ + 2] == '>') {
              t.kind = Tk::DoubleArrow;
              advance(3);
            } else {
              throw ParseError("unexpected '<'", line_, col_);
            }
            break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void skip_ws() {
    for (;;) {
      while (i_ < s_.size() &&
             (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\r' || s_[i_] == '\n')) {
        advance(1);
      }
      if (i_ < s_.size() && s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') advance(1);
        continue;
      }
      return;
    }
  }

  void advance(size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (s_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++i_;
    }
  }

  std::string_view s_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool is_reserved(const std::string& w) {
  static const char* kw[] = {"sort", "pred",   "predvar", "func",    "weight", "hidden",
                             "observed", "hard", "soft",    "forall",  "exists", "exists1",
                             "xor",  "true",   "false",   "in"};
  for (const char* k : kw) {
    if (w == k) return true;
  }
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

  Theory theory() {
    Theory th;
    while (!at(Tk::End)) {
      item(th);
    }
    return th;
  }

  FolPtr single_fol() {
    FolPtr f = fol();
    expect(Tk::End, "end of input");
    return f;
  }

 private:
  const Tok& cur() const { return toks_[pos_]; }
  bool at(Tk k) const { return cur().kind == k; }
  bool at_word(const char* w) const { return at(Tk::Ident) && cur().text == w; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().col);
  }

  Tok take() { return toks_[pos_++]; }

  bool accept(Tk k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }

  bool accept_word(const char* w) {
    if (!at_word(w)) return false;
    ++pos_;
    return true;
  }

  Tok expect(Tk k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return take();
  }

  std::string ident(const char* what) {
    if (!at(Tk::Ident)) fail(std::string("expected ") + what);
    return take().text;
  }

  double signed_number() {
    const bool neg = accept(Tk::Minus);
    if (!neg) accept(Tk::Plus);
    if (!at(Tk::Num)) fail("expected a number");
    const auto v = util::parse_double(take().text);
    if (!v) fail("bad number literal");
    return neg ? -*v : *v;
  }

  void item(Theory& th) {
    if (at_word("sort")) {
      ++pos_;
      std::string name = ident("sort name");
      if (is_reserved(name)) fail("'" + name + "' is reserved");
      expect(Tk::Semi, "';'");
      th.sorts.push_back(std::move(name));
      return;
    }
    if (at_word("pred")) {
      ++pos_;
      PredDecl d;
      d.name = ident("predicate name");
      if (is_reserved(d.name)) fail("'" + d.name + "' is reserved");
      expect(Tk::LParen, "'('");
      if (!accept(Tk::RParen)) {
        do {
          d.arg_sorts.push_back(ident("sort name"));
        } while (accept(Tk::Comma));
        expect(Tk::RParen, "')'");
      }
      if (accept_word("hidden")) {
        d.hidden = true;
      } else if (accept_word("observed")) {
        d.hidden = false;
      } else {
        fail("expected 'hidden' or 'observed'");
      }
      expect(Tk::Semi, "';'");
      th.preds.push_back(std::move(d));
      return;
    }
    if (at_word("predvar")) {
      ++pos_;
      PredVarDecl d;
      d.name = ident("predicate variable name");
      if (is_reserved(d.name)) fail("'" + d.name + "' is reserved");
      if (!accept_word("in")) fail("expected 'in'");
      expect(Tk::LBrace, "'{'");
      do {
        d.domain.push_back(ident("predicate name"));
      } while (accept(Tk::Comma));
      expect(Tk::RBrace, "'}'");
      expect(Tk::Semi, "';'");
      th.predvars.push_back(std::move(d));
      return;
    }
    if (at_word("func")) {
      ++pos_;
      FuncDecl d;
      d.name = ident("function name");
      if (is_reserved(d.name)) fail("'" + d.name + "' is reserved");
      expect(Tk::LParen, "'('");
      do {
        d.arg_sorts.push_back(ident("sort name"));
      } while (accept(Tk::Comma));
      expect(Tk::RParen, "')'");
      expect(Tk::Semi, "';'");
      th.funcs.push_back(std::move(d));
      return;
    }
    if (at_word("weight")) {
      ++pos_;
      WeightDecl d;
      d.name = ident("weight name");
      if (is_reserved(d.name)) fail("'" + d.name + "' is reserved");
      // A bare declaration leaves the weight at zero until learning binds it.
      if (accept(Tk::Assign)) d.value = signed_number();
      expect(Tk::Semi, "';'");
      th.weights.push_back(std::move(d));
      return;
    }
    formula(th);
  }

  void formula(Theory& th) {
    Formula f;
    f.label = ident("formula label");
    expect(Tk::Colon, "':'");
    if (accept_word("hard")) {
      f.hard = true;
    } else if (accept_word("soft")) {
      if (at(Tk::Ident)) {
        f.weight_name = take().text;
        const WeightDecl* w = th.find_weight(f.weight_name);
        if (!w) fail("weight '" + f.weight_name + "' used before declaration");
        f.weight = w->value;
      } else {
        f.weight = signed_number();
      }
    } else {
      fail("expected 'hard' or 'soft'");
    }
    f.body = fol();
    if (accept(Tk::Star)) {
      f.func_name = ident("function name");
      expect(Tk::LParen, "'('");
      do {
        std::string a = ident("variable");
        if (!is_variable_name(a)) fail("function arguments must be variables");
        f.func_args.push_back(std::move(a));
      } while (accept(Tk::Comma));
      expect(Tk::RParen, "')'");
    }
    expect(Tk::Semi, "';'");
    th.formulas.push_back(std::move(f));
  }

  FolPtr fol() {
    for (const char* q : {"forall", "exists", "exists1"}) {
      if (at_word(q)) {
        ++pos_;
        std::vector<std::string> vars;
        do {
          std::string v = ident("variable");
          if (!is_variable_name(v)) fail("quantified names must be variables");
          vars.push_back(std::move(v));
        } while (accept(Tk::Comma));
        expect(Tk::Colon, "':'");
        FolPtr body = fol();
        if (q[0] == 'f') return mk_forall(std::move(vars), std::move(body));
        if (q[6] == '1') return mk_exists_one(std::move(vars), std::move(body));
        return mk_exists(std::move(vars), std::move(body));
      }
    }
    return iff();
  }

  FolPtr iff() {
    FolPtr l = impl();
    while (accept(Tk::DoubleArrow)) {
      FolPtr r = impl();
      l = mk_iff(std::move(l), std::move(r));
    }
    return l;
  }

  FolPtr impl() {
    FolPtr l = xorln();
    if (accept(Tk::Arrow)) {
      FolPtr r = impl();
      return mk_implies(std::move(l), std::move(r));
    }
    return l;
  }

  FolPtr xorln() {
    FolPtr l = orln();
    while (accept_word("xor")) {
      FolPtr r = orln();
      l = mk_xor(std::move(l), std::move(r));
    }
    return l;
  }

  FolPtr orln() {
    std::vector<FolPtr> kids;
    kids.push_back(andln());
    while (accept(Tk::Pipe)) kids.push_back(andln());
    return kids.size() == 1 ? std::move(kids[0]) : mk_or(std::move(kids));
  }

  FolPtr andln() {
    std::vector<FolPtr> kids;
    kids.push_back(unary());
    while (accept(Tk::Amp)) kids.push_back(unary());
    return kids.size() == 1 ? std::move(kids[0]) : mk_and(std::move(kids));
  }

  FolPtr unary() {
    if (accept(Tk::Bang)) return mk_not(unary());
    return primary();
  }

  Term term() {
    if (at(Tk::Num)) return Term::constant(take().text);
    std::string name = ident("term");
    if (is_reserved(name)) fail("'" + name + "' is reserved");
    if (!is_variable_name(name)) return Term::constant(std::move(name));
    int off = 0;
    if (accept(Tk::Plus)) {
      if (!at(Tk::Num)) fail("expected an integer offset");
      const auto v = util::parse_int(take().text);
      if (!v || *v < 0) fail("offsets must be non-negative integers");
      off = static_cast<int>(*v);
    }
    return Term::var(std::move(name), off);
  }

  FolPtr primary() {
    if (accept(Tk::LParen)) {
      FolPtr f = fol();
      expect(Tk::RParen, "')'");
      return f;
    }
    if (accept_word("true")) return mk_true();
    if (accept_word("false")) return mk_false();
    if (at(Tk::Num)) {
      Term l = term();
      expect(Tk::Assign, "'='");
      Term r = term();
      return mk_eq(std::move(l), std::move(r));
    }
    if (!at(Tk::Ident)) fail("expected a formula");
    // Atom (ident followed by '(') or term equality.
    if (pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == Tk::LParen &&
        !is_reserved(cur().text)) {
      Atom a;
      a.pred = take().text;
      expect(Tk::LParen, "'('");
      if (!accept(Tk::RParen)) {
        do {
          a.args.push_back(term());
        } while (accept(Tk::Comma));
        expect(Tk::RParen, "')'");
      }
      return mk_atom(std::move(a));
    }
    Term l = term();
    expect(Tk::Assign, "'=' (predicates require parentheses)");
    Term r = term();
    return mk_eq(std::move(l), std::move(r));
  }

  std::vector<Tok> toks_;
  size_t pos_ = 0;
};

}  // namespace

Theory parse_theory(std::string_view text) { return Parser(text).theory(); }

FolPtr parse_fol(std::string_view text) { return Parser(text).single_fol(); }

}  // namespace ctfrec::logic
