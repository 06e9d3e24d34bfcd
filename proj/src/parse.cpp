#include <cctype>
#include <string>

#include "bil/error.hpp"
#include "bil/formula.hpp"

namespace bil {

namespace {

enum class Tok { end, ident, kw_false, kw_true, tilde, amp, bar, coimpl, impl, lparen, rparen };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::end: return "end of input";
    case Tok::ident: return "letter";
    case Tok::kw_false: return "'false'";
    case Tok::kw_true: return "'true'";
    case Tok::tilde: return "'~'";
    case Tok::amp: return "'&'";
    case Tok::bar: return "'|'";
    case Tok::coimpl: return "'-<'";
    case Tok::impl: return "'->'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::end, start, {}};
    const char c = src_[pos_];
    auto single = [&](Tok t) {
      ++pos_;
      return Token{t, start, std::string(1, c)};
    };
    switch (c) {
      case '~': return single(Tok::tilde);
      case '&': return single(Tok::amp);
      case '|': return single(Tok::bar);
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      case '-':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
          pos_ += 2;
          return {Tok::impl, start, "->"};
        }
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '<') {
          pos_ += 2;
          return {Tok::coimpl, start, "-<"};
        }
        throw ParseError("stray '-'", start);
      default:
        break;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    ++pos_;
    while (pos_ < src_.size()) {
      const char d = src_[pos_];
      const auto u = static_cast<unsigned char>(d);
      if (std::isalnum(u) || d == '_' || d == '+') {
        ++pos_;
      } else if (d == '-') {
        // "p->q" must lex as p, ->, q
        if (pos_ + 1 < src_.size() && (src_[pos_ + 1] == '>' || src_[pos_ + 1] == '<')) break;
        ++pos_;
      } else {
        break;
      }
    }
    std::string word(src_.substr(start, pos_ - start));
    if (word == "false") return {Tok::kw_false, start, word};
    if (word == "true") return {Tok::kw_true, start, word};
    return {Tok::ident, start, word};
  }

 private:
  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { advance(); }

  Formula parse_all() {
    Formula f = formula();
    if (cur_.kind != Tok::end) {
      if (cur_.kind == Tok::rparen) throw ParseError("unbalanced ')'", cur_.pos);
      throw ParseError(std::string("unexpected ") + describe(cur_.kind), cur_.pos);
    }
    return f;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  Formula formula() {
    Formula lhs = coimpl();
    if (cur_.kind == Tok::impl) {
      advance();
      return Formula::impl(lhs, formula());
    }
    return lhs;
  }

  Formula coimpl() {
    Formula acc = disj();
    while (cur_.kind == Tok::coimpl) {
      advance();
      acc = Formula::coimpl(acc, disj());
    }
    return acc;
  }

  Formula disj() {
    Formula acc = conj();
    while (cur_.kind == Tok::bar) {
      advance();
      acc = Formula::disj(acc, conj());
    }
    return acc;
  }

  Formula conj() {
    Formula acc = unary();
    while (cur_.kind == Tok::amp) {
      advance();
      acc = Formula::conj(acc, unary());
    }
    return acc;
  }

  Formula unary() {
    const Token t = cur_;
    switch (t.kind) {
      case Tok::tilde:
        advance();
        return Formula::neg(unary());
      case Tok::kw_false:
        advance();
        return Formula::bottom();
      case Tok::kw_true:
        advance();
        return Formula::top();
      case Tok::ident:
        advance();
        return Formula::atom(t.text);
      case Tok::lparen: {
        advance();
        Formula inner = formula();
        if (cur_.kind != Tok::rparen) {
          throw ParseError(std::string("expected ')' to close '(' at offset ") + std::to_string(t.pos) +
                               ", found " + describe(cur_.kind),
                           cur_.pos);
        }
        advance();
        return inner;
      }
      case Tok::end:
        throw ParseError("dangling operator: formula expected before end of input", t.pos);
      default:
        throw ParseError(std::string("formula expected, found ") + describe(t.kind), t.pos);
    }
  }

  Lexer lex_;
  Token cur_{Tok::end, 0, {}};
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace bil
