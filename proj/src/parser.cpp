#include "rkg/parser.hpp"

#include <cctype>

namespace rkg {

namespace {

enum class Tok {
  End,
  Int,
  Name,
  LBrack,
  RBrack,
  LParen,
  RParen,
  Comma,
  Plus,
  Minus,
  Star,
  StarStar,
  Slash,
  Caret,
};

struct Token {
  Tok kind = Tok::End;
  long long ival = 0;
  std::string text;
  SourcePos pos;
  size_t pos_index = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  // Captures raw text up to the matching ']' (no nesting in element syntax,
  // but parentheses may appear); consumes the closing bracket.
  std::string capture_until_rbrack() {
    std::string out;
    // restart from the character position of the current token
    size_t i = tok_.pos_index;
    while (i < src_.size() && src_[i] != ']') out.push_back(src_[i++]);
    if (i >= src_.size())
      throw ParseError("unterminated '['", line_of(i), col_of(i));
    pos_ = i + 1;
    advance();
    return out;
  }

  SourcePos here() const { return tok_.pos; }

 private:
  int line_of(size_t i) const {
    int line = 1;
    for (size_t k = 0; k < i && k < src_.size(); ++k)
      if (src_[k] == '\n') ++line;
    return line;
  }
  int col_of(size_t i) const {
    int col = 1;
    for (size_t k = 0; k < i && k < src_.size(); ++k)
      col = src_[k] == '\n' ? 1 : col + 1;
    return col;
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    tok_ = {};
    tok_.pos = {line_of(pos_), col_of(pos_)};
    tok_.pos_index = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      tok_.kind = Tok::Int;
      try {
        tok_.ival = std::stoll(std::string(src_.substr(start, pos_ - start)));
      } catch (const std::exception&) {
        throw ParseError("integer literal out of range", tok_.pos.line, tok_.pos.col);
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_.kind = Tok::Name;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    ++pos_;
    switch (c) {
      case '[': tok_.kind = Tok::LBrack; return;
      case ']': tok_.kind = Tok::RBrack; return;
      case '(': tok_.kind = Tok::LParen; return;
      case ')': tok_.kind = Tok::RParen; return;
      case ',': tok_.kind = Tok::Comma; return;
      case '+': tok_.kind = Tok::Plus; return;
      case '-': tok_.kind = Tok::Minus; return;
      case '/': tok_.kind = Tok::Slash; return;
      case '^': tok_.kind = Tok::Caret; return;
      case '*':
        if (pos_ < src_.size() && src_[pos_] == '*') {
          ++pos_;
          tok_.kind = Tok::StarStar;
        } else {
          tok_.kind = Tok::Star;
        }
        return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         tok_.pos.line, tok_.pos.col);
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  Expr parse() {
    Expr e = parse_star();
    if (lex_.peek().kind != Tok::End)
      throw ParseError("trailing input after expression", lex_.peek().pos.line,
                       lex_.peek().pos.col);
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, lex_.peek().pos.line, lex_.peek().pos.col);
  }

  Expr node(Expr::Kind k, SourcePos pos) {
    Expr e;
    e.kind = k;
    e.pos = pos;
    return e;
  }

  Expr parse_star() {
    Expr lhs = parse_sum();
    while (lex_.peek().kind == Tok::StarStar) {
      SourcePos pos = lex_.next().pos;
      Expr rhs = parse_sum();
      Expr e = node(Expr::Kind::Star, pos);
      e.kids.push_back(std::move(lhs));
      e.kids.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr parse_sum() {
    Expr lhs = parse_term();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k != Tok::Plus && k != Tok::Minus) return lhs;
      SourcePos pos = lex_.next().pos;
      Expr rhs = parse_term();
      Expr e = node(k == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub, pos);
      e.kids.push_back(std::move(lhs));
      e.kids.push_back(std::move(rhs));
      lhs = std::move(e);
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k != Tok::Star && k != Tok::Slash) return lhs;
      SourcePos pos = lex_.next().pos;
      Expr rhs = parse_unary();
      Expr e = node(k == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div, pos);
      e.kids.push_back(std::move(lhs));
      e.kids.push_back(std::move(rhs));
      lhs = std::move(e);
    }
  }

  Expr parse_unary() {
    if (lex_.peek().kind == Tok::Minus) {
      SourcePos pos = lex_.next().pos;
      Expr e = node(Expr::Kind::Neg, pos);
      e.kids.push_back(parse_unary());
      return e;
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (lex_.peek().kind != Tok::Caret) return base;
    SourcePos pos = lex_.next().pos;
    long long sign = 1;
    if (lex_.peek().kind == Tok::Minus) {
      lex_.next();
      sign = -1;
    }
    if (lex_.peek().kind != Tok::Int) fail("expected an integer exponent after '^'");
    long long e = lex_.next().ival * sign;
    Expr p = node(Expr::Kind::Pow, pos);
    p.ival = e;
    p.kids.push_back(std::move(base));
    return p;
  }

  Expr parse_atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Int: {
        Token tok = lex_.next();
        Expr e = node(Expr::Kind::Int, tok.pos);
        e.ival = tok.ival;
        return e;
      }
      case Tok::Name: {
        Token tok = lex_.next();
        if ((tok.text == "X" || tok.text == "x") && lex_.peek().kind == Tok::LBrack) {
          lex_.next();  // '['
          std::string raw = lex_.capture_until_rbrack();
          Expr e = node(tok.text == "X" ? Expr::Kind::XVar : Expr::Kind::CellVar,
                        tok.pos);
          if (tok.text == "x") {
            // optional trailing ",coord" inside the bracket
            auto comma = raw.rfind(',');
            e.coord = -1;
            if (comma != std::string::npos) {
              std::string tail = raw.substr(comma + 1);
              try {
                size_t used = 0;
                int c = std::stoi(tail, &used);
                while (used < tail.size() && std::isspace(static_cast<unsigned char>(tail[used])))
                  ++used;
                if (used == tail.size()) {
                  e.coord = c;
                  raw = raw.substr(0, comma);
                }
              } catch (const std::exception&) {
                // the comma belongs to a tuple element like (1,-2)
              }
            }
          }
          e.text = raw;
          return e;
        }
        Expr e = node(Expr::Kind::Name, tok.pos);
        e.text = tok.text;
        return e;
      }
      case Tok::LParen: {
        lex_.next();
        Expr e = parse_star();
        if (lex_.peek().kind != Tok::RParen) fail("expected ')'");
        lex_.next();
        return e;
      }
      case Tok::LBrack: {
        Token open = lex_.next();
        if (lex_.peek().kind == Tok::LBrack) return parse_matrix(open.pos);
        Expr e = node(Expr::Kind::Group, open.pos);
        e.text = lex_.capture_until_rbrack();
        return e;
      }
      default:
        fail("expected a value");
    }
  }

  Expr parse_matrix(SourcePos pos) {
    Expr m = node(Expr::Kind::Matrix, pos);
    m.rows = 0;
    m.cols = -1;
    for (;;) {
      if (lex_.peek().kind != Tok::LBrack) fail("expected '[' to start a matrix row");
      lex_.next();
      int cols = 0;
      for (;;) {
        m.kids.push_back(parse_star());
        ++cols;
        if (lex_.peek().kind == Tok::Comma) {
          lex_.next();
          continue;
        }
        break;
      }
      if (lex_.peek().kind != Tok::RBrack) fail("expected ']' to close a matrix row");
      lex_.next();
      if (m.cols < 0)
        m.cols = cols;
      else if (m.cols != cols)
        throw ParseError("ragged matrix rows", pos.line, pos.col);
      ++m.rows;
      if (lex_.peek().kind == Tok::Comma) {
        lex_.next();
        continue;
      }
      break;
    }
    if (lex_.peek().kind != Tok::RBrack) fail("expected ']' to close the matrix");
    lex_.next();
    if (m.rows != m.cols)
      throw ParseError("matrices must be square", pos.line, pos.col);
    return m;
  }

  Lexer lex_;
};

}  // namespace

Expr parse_expression(std::string_view src) { return Parser(src).parse(); }

std::vector<std::string> split_top_level(std::string_view src, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : src) {
    if (c == '[' || c == '(' || c == '{') ++depth;
    if (c == ']' || c == ')' || c == '}') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace rkg
