// Recursive-descent parser and printer for the formula syntax:
//
//   formula := impl
//   impl    := or (("->" | "<->") impl)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := ("!" | "K" | "A") unary | atom
//   atom    := "top" | "bot" | ("Dg" | "Dl") "(" varset ";" varset ")"
//            | IDENT | "(" formula ")"
//   varset  := "{" (IDENT ("," IDENT)*)? "}" | IDENT
//
// Binary connectives other than "->" and "<->" associate to the left.

#include <cctype>
#include <optional>

#include "edl/formula.hpp"

namespace edl {

namespace {

enum class Tok {
  end, ident, lparen, rparen, lbrace, rbrace, semi, comma,
  bang, amp, bar, arrow, darrow
};

struct Token {
  Tok type = Tok::end;
  std::string text;
  std::size_t pos = 0;
};

std::string describe(const Token& t) {
  switch (t.type) {
    case Tok::end: return "end of input";
    case Tok::ident: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    Token t;
    t.pos = pos_;
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    auto single = [&](Tok type) {
      t.type = type;
      t.text = std::string(1, c);
      ++pos_;
      return t;
    };
    switch (c) {
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      case '{': return single(Tok::lbrace);
      case '}': return single(Tok::rbrace);
      case ';': return single(Tok::semi);
      case ',': return single(Tok::comma);
      case '!': return single(Tok::bang);
      case '&': return single(Tok::amp);
      case '|': return single(Tok::bar);
      default: break;
    }
    if (text_.substr(pos_, 2) == "->") {
      t.type = Tok::arrow;
      t.text = "->";
      pos_ += 2;
      return t;
    }
    if (text_.substr(pos_, 3) == "<->") {
      t.type = Tok::darrow;
      t.text = "<->";
      pos_ += 3;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_ + 1;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) ||
              text_[end] == '_'))
        ++end;
      t.type = Tok::ident;
      t.text = std::string(text_.substr(pos_, end - pos_));
      pos_ = end;
      return t;
    }
    throw ParseError("unexpected character '" + std::string(1, c) +
                         "' at position " + std::to_string(pos_),
                     pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  Formula parse() {
    Formula f = impl();
    if (cur_.type != Tok::end) fail("expected end of input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::string where = cur_.type == Tok::end
                            ? "end of input"
                            : "position " + std::to_string(cur_.pos);
    throw ParseError(expected + ", found " + describe(cur_) + " at " + where,
                     cur_.pos);
  }

  void advance() { cur_ = lexer_.next(); }

  bool is_word(std::string_view w) const {
    return cur_.type == Tok::ident && cur_.text == w;
  }

  void expect(Tok type, std::string_view what) {
    if (cur_.type != type) fail("expected " + std::string(what));
    advance();
  }

  Formula impl() {
    Formula lhs = disjunction();
    if (cur_.type == Tok::arrow) {
      advance();
      return implies(lhs, impl());
    }
    if (cur_.type == Tok::darrow) {
      advance();
      return iff(lhs, impl());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (cur_.type == Tok::bar) {
      advance();
      acc = disj(acc, conjunction());
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (cur_.type == Tok::amp) {
      advance();
      acc = conj(acc, unary());
    }
    return acc;
  }

  Formula unary() {
    if (cur_.type == Tok::bang) {
      advance();
      return neg(unary());
    }
    if (is_word("K")) {
      advance();
      return know(unary());
    }
    if (is_word("A")) {
      advance();
      return all(unary());
    }
    return atom();
  }

  Formula atom() {
    if (cur_.type == Tok::lparen) {
      advance();
      Formula f = impl();
      expect(Tok::rparen, "')'");
      return f;
    }
    if (cur_.type != Tok::ident) fail("expected a formula");
    if (is_word("top")) {
      advance();
      return Formula::top();
    }
    if (is_word("bot")) {
      advance();
      return bot();
    }
    if (is_word("Dg") || is_word("Dl")) {
      const DepKind kind = is_word("Dg") ? DepKind::global : DepKind::local;
      advance();
      expect(Tok::lparen, "'('");
      VarSet x = varset();
      expect(Tok::semi, "';'");
      VarSet y = varset();
      expect(Tok::rparen, "')'");
      return Formula::dep(kind, std::move(x), std::move(y));
    }
    std::string name = identifier();
    return Formula::prop(std::move(name));
  }

  std::string identifier() {
    if (cur_.type != Tok::ident) fail("expected an identifier");
    if (is_reserved_word(cur_.text))
      fail("reserved word cannot be used as an identifier");
    std::string name = cur_.text;
    advance();
    return name;
  }

  VarSet varset() {
    if (cur_.type == Tok::ident) return VarSet{identifier()};
    expect(Tok::lbrace, "'{' or a variable name");
    std::vector<std::string> names;
    if (cur_.type != Tok::rbrace) {
      names.push_back(identifier());
      while (cur_.type == Tok::comma) {
        advance();
        names.push_back(identifier());
      }
    }
    expect(Tok::rbrace, "'}'");
    return VarSet(std::move(names));
  }

  Lexer lexer_;
  Token cur_;
};

void render_and(const Formula& f, std::string& out);

void render_unary(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::top: out += "top"; return;
    case Formula::Kind::prop: out += f.name(); return;
    case Formula::Kind::dep:
      out += f.dep_kind() == DepKind::global ? "Dg(" : "Dl(";
      out += f.lhs().str();
      out += ';';
      out += f.rhs().str();
      out += ')';
      return;
    case Formula::Kind::neg:
      out += '!';
      render_unary(f.child(), out);
      return;
    case Formula::Kind::know:
      out += "K ";
      render_unary(f.child(), out);
      return;
    case Formula::Kind::all:
      out += "A ";
      render_unary(f.child(), out);
      return;
    case Formula::Kind::conj:
      out += '(';
      render_and(f, out);
      out += ')';
      return;
  }
}

void render_and(const Formula& f, std::string& out) {
  if (f.kind() != Formula::Kind::conj) {
    render_unary(f, out);
    return;
  }
  render_and(f.left(), out);
  out += " & ";
  render_unary(f.right(), out);
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string render(const Formula& f) {
  std::string out;
  render_and(f, out);
  return out;
}

}  // namespace edl
