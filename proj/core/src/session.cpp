#include "weilkit/session.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace weilkit {

namespace {

struct Token {
  enum class Kind { name, integer, symbol, newline, eof };
  Kind kind = Kind::eof;
  std::string text;
  long long value = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { tokenize(); }
  const std::vector<Token>& tokens() const { return toks_; }

 private:
  void tokenize() {
    int line = 1, col = 1, depth = 0;
    std::size_t i = 0;
    auto push = [&](Token::Kind k, std::string text, long long v, int l, int c) {
      toks_.push_back(Token{k, std::move(text), v, l, c});
    };
    while (i < src_.size()) {
      char ch = src_[i];
      if (ch == '#') {
        while (i < src_.size() && src_[i] != '\n') ++i;
        continue;
      }
      if (ch == '\n') {
        if (depth == 0) push(Token::Kind::newline, "\n", 0, line, col);
        ++i;
        ++line;
        col = 1;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(ch))) {
        ++i;
        ++col;
        continue;
      }
      int tl = line, tc = col;
      if (std::isalpha(static_cast<unsigned char>(ch))) {
        std::string name;
        while (i < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_')) {
          name += src_[i++];
          ++col;
        }
        push(Token::Kind::name, std::move(name), 0, tl, tc);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        long long v = 0;
        std::string text;
        while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) {
          v = v * 10 + (src_[i] - '0');
          text += src_[i++];
          ++col;
        }
        push(Token::Kind::integer, std::move(text), v, tl, tc);
        continue;
      }
      if (ch == '-' && i + 1 < src_.size() && src_[i + 1] == '>') {
        push(Token::Kind::symbol, "->", 0, tl, tc);
        i += 2;
        col += 2;
        continue;
      }
      static const std::string singles = "=,;:()[]/^*+-";
      if (singles.find(ch) != std::string::npos) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') depth = std::max(0, depth - 1);
        push(Token::Kind::symbol, std::string(1, ch), 0, tl, tc);
        ++i;
        ++col;
        continue;
      }
      throw Error(ErrorKind::syntax_error, "line " + std::to_string(line) + ", col " +
                                               std::to_string(col) + ": unexpected character '" +
                                               std::string(1, ch) + "'");
    }
    toks_.push_back(Token{Token::Kind::eof, "", 0, line, col});
  }

  const std::string& src_;
  std::vector<Token> toks_;
};

[[noreturn]] void fail_at(const Token& t, const std::string& msg, ErrorKind kind) {
  throw Error(kind,
              "line " + std::to_string(t.line) + ", col " + std::to_string(t.col) + ": " + msg);
}

class Parser {
 public:
  Parser(const std::vector<Token>& toks, Session& session) : toks_(toks), session_(session) {}

  void parse_file() {
    while (!at_end()) {
      skip_separators();
      if (at_end()) break;
      parse_statement();
      expect_separator();
    }
  }

  // expression parsing over a fixed ring (also used by parse_polynomial)
  Poly parse_expression(const RingPtr& ring) {
    Poly acc = parse_term_signed(ring);
    while (peek().kind == Token::Kind::symbol && (peek().text == "+" || peek().text == "-")) {
      bool minus = next().text == "-";
      Poly rhs = parse_term(ring);
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  // a whole-input expression, for the standalone polynomial parser
  Poly parse_expression_all(const RingPtr& ring) {
    Poly p = parse_expression(ring);
    skip_separators();
    if (!at_end())
      fail_at(peek(), "trailing input after polynomial ('" + peek().text + "')",
              ErrorKind::syntax_error);
    return p;
  }

 private:
  bool at_end() const { return toks_[pos_].kind == Token::Kind::eof; }
  const Token& peek(int ahead = 0) const {
    return toks_[std::min(pos_ + static_cast<std::size_t>(ahead), toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_++]; }

  void skip_separators() {
    while (peek().kind == Token::Kind::newline ||
           (peek().kind == Token::Kind::symbol && peek().text == ";"))
      ++pos_;
  }
  void expect_separator() {
    if (at_end()) return;
    const Token& t = peek();
    if (t.kind == Token::Kind::newline || (t.kind == Token::Kind::symbol && t.text == ";")) {
      skip_separators();
      return;
    }
    fail_at(t, "expected end of statement (newline or ';'), got '" + t.text + "'",
            ErrorKind::syntax_error);
  }

  const Token& expect_symbol(const std::string& s) {
    const Token& t = peek();
    if (t.kind != Token::Kind::symbol || t.text != s)
      fail_at(t, "expected '" + s + "', got '" + t.text + "'", ErrorKind::syntax_error);
    return next();
  }
  std::string expect_name(const char* what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::name)
      fail_at(t, std::string("expected ") + what + ", got '" + t.text + "'",
              ErrorKind::syntax_error);
    return next().text;
  }
  long long expect_integer(const char* what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::integer)
      fail_at(t, std::string("expected ") + what + ", got '" + t.text + "'",
              ErrorKind::syntax_error);
    return next().value;
  }
  void expect_keyword(const std::string& kw) {
    const Token& t = peek();
    if (t.kind != Token::Kind::name || t.text != kw)
      fail_at(t, "expected '" + kw + "', got '" + t.text + "'", ErrorKind::syntax_error);
    next();
  }
  bool peek_keyword(const std::string& kw) const {
    return peek().kind == Token::Kind::name && peek().text == kw;
  }

  void declare(const std::string& name, const Token& at) {
    if (session_.has_name(name))
      fail_at(at, "name '" + name + "' is already declared", ErrorKind::name_error);
    session_.declaration_order.push_back(name);
  }

  // hyphenated verify targets: name ('-' name)*
  std::string read_target() {
    std::string t = expect_name("verify target");
    while (peek().kind == Token::Kind::symbol && peek().text == "-" &&
           peek(1).kind == Token::Kind::name) {
      next();
      t += "-" + expect_name("target continuation");
    }
    return t;
  }

  void parse_statement() {
    const Token& head = peek();
    if (head.kind != Token::Kind::name)
      fail_at(head, "expected a declaration or command, got '" + head.text + "'",
              ErrorKind::syntax_error);
    const std::string& kw = head.text;
    if (kw == "field") return parse_field();
    if (kw == "algebra") return parse_algebra();
    if (kw == "scheme") return parse_scheme();
    if (kw == "subscheme") return parse_subscheme();
    if (kw == "open") return parse_open();
    if (kw == "morphism") return parse_morphism();
    if (kw == "bundle") return parse_bundle();
    if (kw == "restrict" || kw == "points" || kw == "verify") return parse_command();
    fail_at(head, "unknown statement '" + kw + "'", ErrorKind::syntax_error);
  }

  BaseField parse_field_literal() {
    if (peek_keyword("QQ")) {
      next();
      return BaseField::rationals();
    }
    if (peek_keyword("GF")) {
      const Token& at = next();
      expect_symbol("(");
      long long p = expect_integer("characteristic");
      expect_symbol(")");
      try {
        return BaseField::gf(static_cast<std::uint64_t>(p));
      } catch (const Error& e) {
        fail_at(at, e.what(), ErrorKind::type_mismatch);
      }
    }
    fail_at(peek(), "expected 'QQ' or 'GF(p)'", ErrorKind::syntax_error);
  }

  void parse_field() {
    next();  // field
    const Token& at = peek();
    std::string name = expect_name("field name");
    expect_symbol("=");
    BaseField f = parse_field_literal();
    declare(name, at);
    session_.fields.emplace(name, f);
  }

  const BaseField& lookup_field(const std::string& name, const Token& at) {
    auto it = session_.fields.find(name);
    if (it == session_.fields.end())
      fail_at(at, "unknown field '" + name + "'", ErrorKind::name_error);
    return it->second;
  }

  void parse_algebra() {
    next();  // algebra
    const Token& at = peek();
    std::string name = expect_name("algebra name");
    expect_symbol("=");
    const Token& base_at = peek();
    std::string base_name = expect_name("base field name");
    const BaseField& base = lookup_field(base_name, base_at);
    expect_symbol("[");
    expect_keyword("t");
    expect_symbol("]");
    expect_symbol("/");
    expect_symbol("(");
    // parse the minimal polynomial in a one-variable ring with variable t
    RingPtr tring = PolyRing::make(EtaleAlgebra::trivial(base), {"t"});
    Poly f = parse_expression(tring);
    expect_symbol(")");
    // univariate coefficients, constant first
    int deg = 0;
    for (const auto& term : f.terms()) deg = std::max(deg, static_cast<int>(term.exps[0]));
    std::vector<BaseElem> coeffs(deg + 1, base.zero());
    for (const auto& term : f.terms()) coeffs[term.exps[0]] = term.coeff[0];
    try {
      AlgebraPtr a = EtaleAlgebra::make(base, std::move(coeffs));
      declare(name, at);
      session_.algebras.emplace(name, std::move(a));
    } catch (const Error& e) {
      fail_at(at, std::string(to_string(e.kind())) + ": " + e.what(), ErrorKind::type_mismatch);
    }
  }

  AlgebraPtr coefficient_algebra(const std::string& name, const Token& at) {
    if (auto it = session_.algebras.find(name); it != session_.algebras.end()) return it->second;
    if (auto it = session_.fields.find(name); it != session_.fields.end())
      return EtaleAlgebra::trivial(it->second);
    fail_at(at, "unknown field or algebra '" + name + "'", ErrorKind::name_error);
  }

  SchemePtr lookup_scheme(const std::string& name, const Token& at) {
    auto it = session_.schemes.find(name);
    if (it == session_.schemes.end())
      fail_at(at, "unknown scheme '" + name + "'", ErrorKind::name_error);
    return it->second;
  }
  const SchemeMorphism& lookup_morphism(const std::string& name, const Token& at) {
    auto it = session_.morphisms.find(name);
    if (it == session_.morphisms.end())
      fail_at(at, "unknown morphism '" + name + "'", ErrorKind::name_error);
    return it->second;
  }
  const BundlePresentation& lookup_bundle(const std::string& name, const Token& at) {
    auto it = session_.bundles.find(name);
    if (it == session_.bundles.end())
      fail_at(at, "unknown bundle '" + name + "'", ErrorKind::name_error);
    return it->second;
  }

  void parse_scheme() {
    next();  // scheme
    const Token& at = peek();
    std::string name = expect_name("scheme name");
    expect_keyword("over");
    const Token& base_at = peek();
    std::string base_name = expect_name("base name");
    AlgebraPtr coeff = coefficient_algebra(base_name, base_at);
    expect_symbol("=");
    expect_symbol("[");
    std::vector<std::string> vars;
    while (!(peek().kind == Token::Kind::symbol && peek().text == "]")) {
      const Token& vat = peek();
      std::string v = expect_name("variable name");
      if (v == "t")
        fail_at(vat, "'t' is reserved for the algebra generator", ErrorKind::type_mismatch);
      if (v.find('_') != std::string::npos)
        fail_at(vat, "variable names may not contain '_' (reserved for generated coordinates)",
                ErrorKind::type_mismatch);
      vars.push_back(v);
      if (peek().kind == Token::Kind::symbol && peek().text == ",") {
        next();
        continue;
      }
      break;
    }
    expect_symbol("]");
    expect_symbol("/");
    expect_symbol("(");
    RingPtr ring;
    try {
      ring = PolyRing::make(coeff, vars);
    } catch (const Error& e) {
      fail_at(at, e.what(), ErrorKind::type_mismatch);
    }
    std::vector<Poly> gens = parse_poly_list(ring, ")");
    expect_symbol(")");
    try {
      SchemePtr x = AffineScheme::make(ring, std::move(gens));
      declare(name, at);
      session_.schemes.emplace(name, std::move(x));
    } catch (const Error& e) {
      fail_at(at, std::string(to_string(e.kind())) + ": " + e.what(), ErrorKind::type_mismatch);
    }
  }

  void parse_subscheme() {
    next();  // subscheme
    const Token& at = peek();
    std::string name = expect_name("subscheme name");
    expect_keyword("of");
    const Token& pat = peek();
    SchemePtr parent = lookup_scheme(expect_name("ambient scheme"), pat);
    expect_symbol("=");
    expect_symbol("(");
    std::vector<Poly> extra = parse_poly_list(parent->ring(), ")");
    expect_symbol(")");
    try {
      ClosedSubscheme z = closed_subscheme(parent, std::move(extra));
      declare(name, at);
      session_.schemes.emplace(name, z.scheme);
      std::string incl_name = name + "_incl";
      if (!session_.has_name(incl_name)) {
        session_.declaration_order.push_back(incl_name);
        session_.morphisms.emplace(incl_name, z.inclusion);
      }
    } catch (const Error& e) {
      fail_at(at, std::string(to_string(e.kind())) + ": " + e.what(), ErrorKind::type_mismatch);
    }
  }

  void parse_open() {
    next();  // open
    const Token& at = peek();
    std::string name = expect_name("open subscheme name");
    expect_keyword("of");
    const Token& pat = peek();
    SchemePtr parent = lookup_scheme(expect_name("ambient scheme"), pat);
    expect_keyword("by");
    Poly g = parse_expression(parent->ring());
    try {
      OpenSubscheme open = distinguished_open(parent, g);
      declare(name, at);
      session_.schemes.emplace(name, open.scheme);
      std::string incl_name = name + "_incl";
      if (!session_.has_name(incl_name)) {
        session_.declaration_order.push_back(incl_name);
        session_.morphisms.emplace(incl_name, open.inclusion);
      }
    } catch (const Error& e) {
      fail_at(at, std::string(to_string(e.kind())) + ": " + e.what(), ErrorKind::type_mismatch);
    }
  }

  void parse_morphism() {
    next();  // morphism
    const Token& at = peek();
    std::string name = expect_name("morphism name");
    expect_symbol(":");
    const Token& sat = peek();
    SchemePtr source = lookup_scheme(expect_name("source scheme"), sat);
    expect_symbol("->");
    const Token& tat = peek();
    SchemePtr target = lookup_scheme(expect_name("target scheme"), tat);
    expect_symbol("=");
    expect_symbol("(");
    std::vector<Poly> images = parse_poly_list(source->ring(), ")");
    expect_symbol(")");
    try {
      SchemeMorphism m = SchemeMorphism::make(source, target, std::move(images));
      declare(name, at);
      session_.morphisms.emplace(name, std::move(m));
    } catch (const Error& e) {
      fail_at(at, std::string(to_string(e.kind())) + ": " + e.what(), ErrorKind::type_mismatch);
    }
  }

  void parse_bundle() {
    next();  // bundle
    const Token& at = peek();
    std::string name = expect_name("bundle name");
    expect_keyword("on");
    const Token& sat = peek();
    SchemePtr base = lookup_scheme(expect_name("base scheme"), sat);
    expect_symbol("=");
    expect_symbol("[");
    std::vector<std::vector<Poly>> rows;
    while (true) {
      expect_symbol("[");
      std::vector<Poly> row = parse_poly_list(base->ring(), "]");
      expect_symbol("]");
      rows.push_back(std::move(row));
      if (peek().kind == Token::Kind::symbol && peek().text == ",") {
        next();
        continue;
      }
      break;
    }
    expect_symbol("]");
    expect_keyword("rank");
    long long rank = expect_integer("rank");
    try {
      BundlePresentation e = make_bundle(base, std::move(rows), static_cast<std::size_t>(rank));
      declare(name, at);
      session_.bundles.emplace(name, std::move(e));
    } catch (const Error& e) {
      fail_at(at, std::string(to_string(e.kind())) + ": " + e.what(), ErrorKind::type_mismatch);
    }
  }

  TestAlgebra parse_test_algebra() {
    const Token& at = peek();
    if (peek_keyword("dual")) {
      next();
      expect_keyword("GF");
      expect_symbol("(");
      long long q = expect_integer("field size");
      expect_symbol(")");
      auto [p, s] = split_prime_power(q, at);
      return TestAlgebra::dual_numbers(p, s);
    }
    if (peek_keyword("GF")) {
      next();
      expect_symbol("(");
      long long q = expect_integer("field size");
      expect_symbol(")");
      auto [p, s] = split_prime_power(q, at);
      return TestAlgebra::finite_field(p, s);
    }
    std::string name = expect_name("test algebra");
    auto it = session_.algebras.find(name);
    if (it == session_.algebras.end())
      fail_at(at, "unknown algebra '" + name + "'", ErrorKind::name_error);
    try {
      return TestAlgebra::etale_ring(it->second);
    } catch (const Error& e) {
      fail_at(at, e.what(), ErrorKind::type_mismatch);
    }
  }

  std::pair<std::uint64_t, std::uint32_t> split_prime_power(long long q, const Token& at) {
    if (q < 2) fail_at(at, "field size must be a prime power", ErrorKind::type_mismatch);
    std::uint64_t p = 2;
    while (static_cast<long long>(p) <= q && q % static_cast<long long>(p) != 0) ++p;
    std::uint64_t v = static_cast<std::uint64_t>(q);
    std::uint32_t s = 0;
    while (v % p == 0 && v > 1) {
      v /= p;
      ++s;
    }
    if (v != 1) fail_at(at, std::to_string(q) + " is not a prime power", ErrorKind::type_mismatch);
    return {p, s};
  }

  void parse_command() {
    Command cmd;
    cmd.line = peek().line;
    std::string verb = expect_name("command verb");
    std::ostringstream echo;
    echo << verb;
    if (verb == "restrict") {
      cmd.verb = Command::Verb::restrict;
      const Token& at = peek();
      std::string name = expect_name("scheme name");
      lookup_scheme(name, at);
      cmd.names.push_back(name);
      echo << " " << name;
    } else if (verb == "points") {
      cmd.verb = Command::Verb::points;
      const Token& at = peek();
      std::string name = expect_name("scheme name");
      lookup_scheme(name, at);
      cmd.names.push_back(name);
      expect_keyword("over");
      cmd.algebra = parse_test_algebra();
      echo << " " << name << " over " << cmd.algebra->label();
    } else if (verb == "verify") {
      cmd.verb = Command::Verb::verify;
      cmd.target = read_target();
      echo << " " << cmd.target;
      parse_verify_args(cmd, echo);
    } else {
      fail_at(peek(), "unknown command '" + verb + "'", ErrorKind::syntax_error);
    }
    cmd.text = echo.str();
    session_.commands.push_back(std::move(cmd));
  }

  void parse_verify_args(Command& cmd, std::ostringstream& echo) {
    const std::string& t = cmd.target;
    auto take_scheme = [&]() {
      const Token& at = peek();
      std::string name = expect_name("scheme name");
      lookup_scheme(name, at);
      cmd.names.push_back(name);
      echo << " " << name;
    };
    auto take_morphism = [&]() {
      const Token& at = peek();
      std::string name = expect_name("morphism name");
      lookup_morphism(name, at);
      cmd.names.push_back(name);
      echo << " " << name;
    };
    auto take_bundle = [&]() {
      const Token& at = peek();
      std::string name = expect_name("bundle name");
      lookup_bundle(name, at);
      cmd.names.push_back(name);
      echo << " " << name;
    };
    auto take_algebra = [&]() {
      expect_keyword("over");
      cmd.algebra = parse_test_algebra();
      echo << " over " << cmd.algebra->label();
    };

    if (t == "adjunction") {
      take_scheme();
      take_algebra();
    } else if (t == "triangles") {
      take_scheme();
      if (peek().kind == Token::Kind::name && session_.schemes.count(peek().text)) take_scheme();
    } else if (t == "base-change") {
      take_scheme();
      expect_keyword("with");
      echo << " with";
      take_scheme();
    } else if (t == "fiber-product") {
      take_morphism();
      take_morphism();
    } else if (t == "preserves-closed" || t == "preserves-etale") {
      take_morphism();
    } else if (t == "preserves-smooth") {
      take_scheme();
      expect_keyword("dim");
      cmd.int_arg = static_cast<int>(expect_integer("dimension"));
      echo << " dim " << cmd.int_arg;
      if (peek_keyword("expect")) {
        next();
        expect_keyword("refuted");
        cmd.expect_refuted = true;
        echo << " expect refuted";
      }
    } else if (t == "bundle" || t == "zero-section") {
      take_bundle();
    } else if (t == "normal") {
      take_scheme();
    } else if (t == "thom" || t == "step2") {
      take_bundle();
      take_algebra();
    } else if (t == "gysin-shadow") {
      take_scheme();
      take_algebra();
    } else if (t == "galois-split") {
      take_scheme();
    } else if (t == "norm-open") {
      take_scheme();
      expect_keyword("by");
      const SchemePtr& x = session_.schemes.at(cmd.names[0]);
      cmd.poly_arg = parse_expression(x->ring());
      echo << " by " << cmd.poly_arg->to_string();
    } else if (t == "affine-shadow") {
      take_scheme();
      expect_keyword("n");
      cmd.int_arg = static_cast<int>(expect_integer("number of affine factors"));
      echo << " n " << cmd.int_arg;
    } else {
      fail_at(peek(), "unknown verify target '" + t + "'", ErrorKind::syntax_error);
    }
  }

  std::vector<Poly> parse_poly_list(const RingPtr& ring, const std::string& closer) {
    std::vector<Poly> out;
    if (peek().kind == Token::Kind::symbol && peek().text == closer) return out;
    while (true) {
      out.push_back(parse_expression(ring));
      if (peek().kind == Token::Kind::symbol && peek().text == ",") {
        next();
        continue;
      }
      break;
    }
    return out;
  }

  Poly parse_term_signed(const RingPtr& ring) {
    if (peek().kind == Token::Kind::symbol && peek().text == "-") {
      next();
      return -parse_term(ring);
    }
    if (peek().kind == Token::Kind::symbol && peek().text == "+") next();
    return parse_term(ring);
  }

  Poly parse_term(const RingPtr& ring) {
    Poly acc = parse_power(ring);
    while (peek().kind == Token::Kind::symbol && peek().text == "*") {
      next();
      acc = acc * parse_power(ring);
    }
    return acc;
  }

  Poly parse_power(const RingPtr& ring) {
    Poly base = parse_atom(ring);
    if (peek().kind == Token::Kind::symbol && peek().text == "^") {
      next();
      long long e = expect_integer("exponent");
      Poly acc = Poly::from_int(ring, 1);
      for (long long i = 0; i < e; ++i) acc = acc * base;
      return acc;
    }
    return base;
  }

  Poly parse_atom(const RingPtr& ring) {
    const Token& t = peek();
    if (t.kind == Token::Kind::integer) {
      long long num = next().value;
      if (peek().kind == Token::Kind::symbol && peek().text == "/" &&
          peek(1).kind == Token::Kind::integer) {
        next();
        long long den = next().value;
        try {
          Rational q(static_cast<long>(num), static_cast<long>(den));
          q.canonicalize();
          return Poly::constant(ring, ring->coeff->from_base(
                                          ring->coeff->base().from_rational(q)));
        } catch (const Error& e) {
          fail_at(t, e.what(), ErrorKind::type_mismatch);
        }
      }
      return Poly::from_int(ring, num);
    }
    if (t.kind == Token::Kind::name) {
      std::string name = next().text;
      int idx = ring->var_index(name);
      if (idx >= 0) return Poly::variable(ring, static_cast<std::size_t>(idx));
      if (name == "t") {
        if (ring->coeff->is_trivial())
          fail_at(t, "'t' is only available over an etale algebra", ErrorKind::type_mismatch);
        return Poly::constant(ring, ring->coeff->gen());
      }
      fail_at(t, "unknown variable '" + name + "'", ErrorKind::name_error);
    }
    if (t.kind == Token::Kind::symbol && t.text == "(") {
      next();
      Poly inner = parse_expression(ring);
      expect_symbol(")");
      return inner;
    }
    fail_at(t, "expected a polynomial atom, got '" + t.text + "'", ErrorKind::syntax_error);
  }

  const std::vector<Token>& toks_;
  Session& session_;
  std::size_t pos_ = 0;
};

}  // namespace

bool Session::has_name(const std::string& n) const {
  return fields.count(n) || algebras.count(n) || schemes.count(n) || morphisms.count(n) ||
         bundles.count(n);
}

AlgebraPtr Session::coefficient_algebra(const std::string& name) const {
  if (auto it = algebras.find(name); it != algebras.end()) return it->second;
  if (auto it = fields.find(name); it != fields.end()) return EtaleAlgebra::trivial(it->second);
  throw Error(ErrorKind::name_error, "unknown field or algebra '" + name + "'");
}

Session parse_session(const std::string& text) {
  Session session;
  Lexer lexer(text);
  Parser parser(lexer.tokens(), session);
  parser.parse_file();
  return session;
}

Poly parse_polynomial(const RingPtr& ring, const std::string& text) {
  Session dummy;
  Lexer lexer(text);
  Parser parser(lexer.tokens(), dummy);
  return parser.parse_expression_all(ring);
}

}  // namespace weilkit
