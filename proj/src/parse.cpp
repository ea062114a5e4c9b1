#include <cctype>

#include "adaptt/pretty.hpp"
#include "adaptt/surface.hpp"

namespace adaptt {

namespace {

struct Token {
  enum Kind { Ident, Num, Sym, End };
  Kind kind = End;
  std::string text;
  Span span;
};

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& s, const std::string& file) {
  static const char* kSyms2[] = {"->", "=>", "<|", "|-", "==", "^-", ":="};
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '-') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.span = Span{file, line, col};
    if (identStart(c)) {
      std::size_t j = i;
      while (j < s.size() && identChar(s[j])) ++j;
      if (j + 1 < s.size() && s[j] == '.' && identStart(s[j + 1])) {
        ++j;
        while (j < s.size() && identChar(s[j])) ++j;
      }
      t.text = s.substr(i, j - i);
      if (t.text == "Ty" && j < s.size() && (s[j] == '+' || s[j] == '-')) {
        t.kind = Token::Sym;
        t.text += s[j];
        ++j;
      } else {
        t.kind = Token::Ident;
      }
      advance(j - i);
      out.push_back(t);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Token::Num;
      t.text = s.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    t.kind = Token::Sym;
    for (const char* sym : kSyms2) {
      if (s.compare(i, 2, sym) == 0) t.text = sym;
    }
    if (t.text.empty()) {
      if (std::string("()[]{}:;,>*.=").find(c) == std::string::npos)
        throw SyntaxError(t.span, "a token", std::string("'") + c + "'");
      t.text = std::string(1, c);
    }
    advance(t.text.size());
    out.push_back(t);
  }
  Token end;
  end.span = Span{file, line, col};
  out.push_back(end);
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  std::vector<Decl> program() {
    std::vector<Decl> out;
    while (peek().kind != Token::End) out.push_back(decl());
    return out;
  }

  std::pair<std::vector<Hyp>, ExprP> query() {
    std::vector<Hyp> hyps;
    // Hypotheses are present exactly when a turnstile occurs.
    bool hasTurnstile = false;
    for (const auto& t : t_)
      if (t.kind == Token::Sym && t.text == "|-") hasTurnstile = true;
    if (hasTurnstile) {
      hyps = hypList();
      expect("|-");
    }
    ExprP e = expr();
    expectEnd();
    return {hyps, e};
  }

 private:
  const Token& peek(std::size_t k = 0) const { return t_[std::min(pos_ + k, t_.size() - 1)]; }
  Token next() { return t_[pos_ < t_.size() - 1 ? pos_++ : pos_]; }
  bool isSym(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Token::Sym && peek(k).text == s;
  }
  bool isKw(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Token::Ident && peek(k).text == s;
  }
  static std::string describe(const Token& t) {
    return t.kind == Token::End ? "end-of-input" : "'" + t.text + "'";
  }
  [[noreturn]] void error(const std::string& expected) {
    throw SyntaxError(peek().span, expected, describe(peek()));
  }
  Token expect(const std::string& sym) {
    if (!isSym(sym)) error("'" + sym + "'");
    return next();
  }
  void expectKw(const std::string& kw) {
    if (!isKw(kw)) error("'" + kw + "'");
    next();
  }
  void expectEnd() {
    if (peek().kind != Token::End) error("end-of-input");
  }
  std::string ident() {
    if (peek().kind != Token::Ident || isKeyword(peek().text)) error("an identifier");
    return next().text;
  }
  // `( IDENT :` starts a binder.
  bool atBinder() const {
    return isSym("(") && peek(1).kind == Token::Ident && !isKeyword(peek(1).text) && isSym(":", 2);
  }

  Binder binder() {
    Binder b;
    b.span = peek().span;
    expect("(");
    b.name = ident();
    expect(":");
    b.type = expr();
    expect(")");
    return b;
  }

  std::vector<Binder> binders() {
    std::vector<Binder> out;
    while (atBinder()) out.push_back(binder());
    return out;
  }

  std::vector<Hyp> hypList() {
    std::vector<Hyp> out;
    while (isSym("(")) out.push_back(hyp());
    return out;
  }

  static bool tySym(const Token& t) { return t.kind == Token::Sym && (t.text == "Ty+" || t.text == "Ty-"); }

  Hyp hyp() {
    Hyp h;
    h.span = peek().span;
    expect("(");
    h.name = ident();
    expect(":");
    if (tySym(peek())) {
      h.isTy = true;
      h.neg = next().text == "Ty-";
      expect(")");
      return h;
    }
    if (atBinder()) {
      std::vector<Binder> tel = binders();
      bool telNeg = false;
      if (isSym("^-")) {
        next();
        telNeg = true;
      }
      expect("->");
      if (tySym(peek())) {
        h.isTy = true;
        h.neg = next().text == "Ty-";
        h.tel = std::move(tel);
        h.telNeg = telNeg;
        expect(")");
        return h;
      }
      if (telNeg) error("'Ty+' or 'Ty-'");
      ExprP cod = expr();
      h.type = dependentChain(tel, Expr::Arrow, cod);
    } else {
      h.type = expr();
    }
    expect(")");
    if (isSym("^-")) {
      next();
      h.neg = true;
    }
    return h;
  }

  static ExprP dependentChain(const std::vector<Binder>& bs, Expr::Kind k, ExprP cod) {
    for (auto it = bs.rbegin(); it != bs.rend(); ++it) {
      auto e = std::make_shared<Expr>();
      e->kind = k;
      e->name = it->name;
      e->args = {it->type, cod};
      e->span = it->span;
      cod = e;
    }
    return cod;
  }

  Decl decl() {
    Decl d;
    d.span = peek().span;
    if (isKw("type")) {
      next();
      d.kind = Decl::BaseType;
      d.name = ident();
      expect(";");
      return d;
    }
    if (isKw("postulate")) {
      next();
      expectKw("adapter");
      d.kind = Decl::Postulate;
      d.name = ident();
      expect(":");
      d.src = expr();
      expect("=>");
      d.tgt = expr();
      expect(";");
      return d;
    }
    if (isKw("data")) return dataDecl();
    if (isKw("def")) {
      next();
      d.kind = Decl::Def;
      d.name = ident();
      expect(":");
      classifier(d);
      expect(":=");
      d.lhs = expr();
      expect(";");
      return d;
    }
    if (isKw("check")) {
      next();
      d.kind = Decl::Check;
      d.hyps = hypList();
      expect("|-");
      d.lhs = expr();
      expect(":");
      classifier(d);
      expect(";");
      return d;
    }
    if (isKw("assert")) {
      next();
      d.kind = Decl::Assert;
      d.hyps = hypList();
      expect("|-");
      d.lhs = expr();
      expect("==");
      d.rhs = expr();
      expect(":");
      classifier(d);
      expect(";");
      return d;
    }
    if (isKw("normalize")) {
      next();
      d.kind = Decl::Normalize;
      d.hyps = hypList();
      expect("|-");
      d.lhs = expr();
      expect(";");
      return d;
    }
    error("a declaration");
  }

  void classifier(Decl& d) {
    if (isKw("Type") && (isSym(";", 1) || isSym(":=", 1))) {
      next();
      d.typeCls = true;
      return;
    }
    ExprP c = expr();
    if (isSym("=>")) {
      next();
      d.src = c;
      d.tgt = expr();
      return;
    }
    d.cls = c;
  }

  Decl dataDecl() {
    Decl d;
    d.kind = Decl::Data;
    d.span = peek().span;
    next();
    d.name = ident();
    d.params = hypList();
    if (isSym(":")) {
      next();
      d.indices = binders();
      if (!d.indices.empty()) expect("->");
      expectKw("Type");
    }
    expect("{");
    while (!isSym("}")) {
      d.cons.push_back(conDecl());
      if (!isSym(";")) break;
      next();
    }
    expect("}");
    if (isSym(";")) next();
    return d;
  }

  ConDecl conDecl() {
    ConDecl c;
    c.span = peek().span;
    c.name = ident();
    if (isSym(":")) {
      next();
      c.type = expr();
      return c;
    }
    expect("=");
    c.raw = true;
    expect("{");
    expectKw("nrec");
    c.nrec = binders();
    expect(";");
    while (isKw("rec")) {
      next();
      RawRec r;
      r.name = ident();
      r.arit = binders();
      r.rind = exprList();
      expect(";");
      c.rec.push_back(std::move(r));
    }
    expectKw("ind");
    c.ind = exprList();
    if (isSym(";")) next();
    expect("}");
    return c;
  }

  std::vector<ExprP> exprList() {
    std::vector<ExprP> out;
    expect("[");
    if (!isSym("]")) {
      out.push_back(expr());
      while (isSym(",")) {
        next();
        out.push_back(expr());
      }
    }
    expect("]");
    return out;
  }

  std::shared_ptr<Expr> mk(Expr::Kind k, Span s) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->span = std::move(s);
    return e;
  }

 public:
  ExprP expr() {
    Span s = peek().span;
    if (isKw("fun")) {
      next();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Fun;
      e->span = s;
      while (!isSym("=>")) {
        if (atBinder()) {
          e->binders.push_back(binder());
        } else {
          Binder b;
          b.span = peek().span;
          b.name = ident();
          e->binders.push_back(b);
        }
      }
      if (e->binders.empty()) error("a binder");
      expect("=>");
      e->body = expr();
      return e;
    }
    if (atBinder()) {
      std::size_t save = pos_;
      std::vector<Binder> bs = binders();
      if (isSym("->") || isSym("*")) {
        Expr::Kind k = next().text == "->" ? Expr::Arrow : Expr::Prod;
        return dependentChain(bs, k, expr());
      }
      pos_ = save;
    }
    ExprP lhs = prodExpr();
    if (isSym("->")) {
      next();
      auto e = mk(Expr::Arrow, s);
      e->args = {lhs, expr()};
      return e;
    }
    return lhs;
  }

 private:
  ExprP prodExpr() {
    Span s = peek().span;
    ExprP lhs = castExpr();
    if (isSym("*")) {
      next();
      auto e = mk(Expr::Prod, s);
      e->args = {lhs, prodExpr()};
      return e;
    }
    return lhs;
  }

  ExprP castExpr() {
    Span s = peek().span;
    ExprP lhs = compExpr();
    while (isSym("<|")) {
      Span cs = next().span;
      auto e = mk(Expr::Cast, cs);
      e->args = {lhs, compExpr()};
      lhs = e;
    }
    (void)s;
    return lhs;
  }

  ExprP compExpr() {
    Span s = peek().span;
    ExprP first = appExpr();
    if (!isSym(".")) return first;
    auto e = mk(Expr::Comp, s);
    e->args.push_back(first);
    while (isSym(".")) {
      next();
      e->args.push_back(appExpr());
    }
    return e;
  }

  bool atAtom() const {
    const Token& t = peek();
    if (t.kind == Token::Num) return true;
    if (t.kind == Token::Ident) return t.text != "fun";
    return t.kind == Token::Sym && t.text == "(";
  }

  ExprP appExpr() {
    Span s = peek().span;
    ExprP head = atom();
    if (!atAtom()) return head;
    auto e = mk(Expr::App, s);
    e->args.push_back(head);
    while (atAtom()) e->args.push_back(atom());
    return e;
  }

  SpineElem elem() {
    SpineElem el;
    el.e = expr();
    if (isSym(":")) {
      next();
      el.srcAnn = expr();
      expect("=>");
      el.tgtAnn = expr();
    }
    return el;
  }

  ExprP atom() {
    Span s = peek().span;
    if (peek().kind == Token::Num) {
      auto e = mk(Expr::Num, s);
      e->num = std::stoi(next().text);
      return e;
    }
    if (isSym("(")) {
      next();
      ExprP e = expr();
      expect(")");
      return e;
    }
    if (isKw("Pi") || isKw("Sigma")) {
      auto e = mk(next().text == "Pi" ? Expr::PiSpine : Expr::SigmaSpine, s);
      expect("[");
      e->spine.push_back(SpineElem{expr(), nullptr, nullptr});
      expect(">");
      e->spine.push_back(SpineElem{expr(), nullptr, nullptr});
      if (isSym(";")) {
        next();
        e->annot = expr();
      }
      expect("]");
      return e;
    }
    if (peek().kind == Token::Ident) {
      std::string name = next().text;
      if (name == "fun") error("an atom");
      if (isSym("[") && !isKeyword(name)) {
        next();
        auto e = mk(Expr::IndSpine, s);
        e->name = name;
        if (!isSym("]")) {
          e->spine.push_back(elem());
          while (isSym(">")) {
            next();
            e->spine.push_back(elem());
          }
        }
        expect("]");
        return e;
      }
      auto e = mk(Expr::Name, s);
      e->name = name;
      return e;
    }
    error("an expression");
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Decl> parse(const std::string& text, const std::string& file) {
  Parser p(lex(text, file));
  return p.program();
}

std::pair<std::vector<Hyp>, ExprP> parseQuery(const std::string& text, const std::string& file) {
  Parser p(lex(text, file));
  return p.query();
}

}  // namespace adaptt
