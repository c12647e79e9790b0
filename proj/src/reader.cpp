#include "logichart/reader.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <optional>

#include "operators.hpp"

namespace logichart {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

namespace {

using detail::infix_op;
using detail::is_symbol_char;
using detail::prefix_op;

struct Token {
  enum class Kind { Atom, Var, Int, Punct, End, Eof };
  Kind kind = Kind::Eof;
  std::string text;
  std::int64_t value = 0;
  bool quoted = false;
  bool layout_before = false;
  int line = 1;
  int column = 1;

  bool is_punct(std::string_view p) const { return kind == Kind::Punct && text == p; }
  bool is_name(std::string_view n) const {
    return kind == Kind::Atom && !quoted && text == n;
  }
  bool starts_term() const {
    return kind == Kind::Atom || kind == Kind::Var || kind == Kind::Int ||
           is_punct("(") || is_punct("[");
  }
  std::string describe() const {
    switch (kind) {
      case Kind::End: return "end of clause '.'";
      case Kind::Eof: return "end of input";
      case Kind::Int: return "integer " + text;
      case Kind::Var: return "variable " + text;
      case Kind::Atom: return "atom '" + text + "'";
      case Kind::Punct: return "'" + text + "'";
    }
    return text;
  }
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    for (;;) {
      bool layout = skip_layout();
      Token t;
      t.layout_before = layout;
      t.line = line_;
      t.column = column_;
      if (pos_ >= src_.size()) {
        t.kind = Token::Kind::Eof;
        out.push_back(t);
        return out;
      }
      lex_one(t);
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, column_, msg);
  }

  bool skip_layout() {
    bool any = false;
    while (pos_ < src_.size()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        any = true;
      } else if (c == '%') {
        while (pos_ < src_.size() && peek() != '\n') advance();
        any = true;
      } else if (c == '/' && peek(1) == '*') {
        int line = line_, col = column_;
        advance();
        advance();
        while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ >= src_.size()) throw ParseError(line, col, "unterminated block comment");
        advance();
        advance();
        any = true;
      } else {
        break;
      }
    }
    return any;
  }

  static bool is_alnum(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void lex_one(Token& t) {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      t.kind = Token::Kind::Int;
      t.text = std::string(src_.substr(start, pos_ - start));
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
      if (ec != std::errc()) throw ParseError(t.line, t.column, "integer out of range: " + t.text);
      if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
        fail("unexpected character '" + std::string(1, peek()) + "' after integer");
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (is_alnum(peek())) advance();
      t.text = std::string(src_.substr(start, pos_ - start));
      t.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Token::Kind::Var
                                                                        : Token::Kind::Atom;
      return;
    }
    if (c == '\'') {
      advance();
      t.kind = Token::Kind::Atom;
      t.quoted = true;
      for (;;) {
        if (pos_ >= src_.size()) throw ParseError(t.line, t.column, "unterminated quoted atom");
        char q = advance();
        if (q == '\'') {
          if (peek() == '\'') {
            advance();
            t.text += '\'';
            continue;
          }
          break;
        }
        if (q == '\\') {
          if (pos_ >= src_.size()) throw ParseError(t.line, t.column, "unterminated quoted atom");
          char e = advance();
          switch (e) {
            case 'n': t.text += '\n'; break;
            case 't': t.text += '\t'; break;
            case '\\': t.text += '\\'; break;
            case '\'': t.text += '\''; break;
            case '\n': break;
            default: fail(std::string("unknown escape sequence \\") + e);
          }
          continue;
        }
        if (q == '\n') throw ParseError(t.line, t.column, "newline in quoted atom");
        t.text += q;
      }
      return;
    }
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == '|') {
      advance();
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, c);
      return;
    }
    if (c == '!' || c == ';') {
      advance();
      t.kind = Token::Kind::Atom;
      t.text = std::string(1, c);
      return;
    }
    if (is_symbol_char(c)) {
      if (c == '.') {
        char n = peek(1);
        if (n == '\0' || n == '%' || std::isspace(static_cast<unsigned char>(n))) {
          advance();
          t.kind = Token::Kind::End;
          t.text = ".";
          return;
        }
      }
      std::size_t start = pos_;
      while (is_symbol_char(peek())) advance();
      t.kind = Token::Kind::Atom;
      t.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (c == '"') fail("strings are not supported");
    if (c == '{' || c == '}') fail("curly-brace terms are not supported");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, VarId first_var_id)
      : tokens_(std::move(tokens)), next_var_(first_var_id) {}

  bool at_eof() const { return peek().kind == Token::Kind::Eof; }
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  VarId next_var_id() const { return next_var_; }
  void skip() { take(); }

  // Reads one term at priority 1200 followed by the end token.
  Term read_clause_term() {
    vars_.clear();
    Term t = parse(1200).first;
    const Token& end = peek();
    if (end.kind != Token::Kind::End) {
      fail(end, "expected operator or end of clause '.' but found " + end.describe());
    }
    ++pos_;
    return t;
  }

  [[noreturn]] static void fail(const Token& at, const std::string& msg) {
    throw ParseError(at.line, at.column, msg);
  }

 private:
  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  void expect_punct(std::string_view p) {
    const Token& t = peek();
    if (!t.is_punct(p)) fail(t, "expected '" + std::string(p) + "' but found " + t.describe());
    ++pos_;
  }

  Term variable(const std::string& name) {
    if (name == "_") return Term::var("_", next_var_++);
    auto it = vars_.find(name);
    if (it != vars_.end()) return it->second;
    Term v = Term::var(name, next_var_++);
    vars_.emplace(name, v);
    return v;
  }

  std::vector<Term> arguments() {
    std::vector<Term> args;
    args.push_back(parse(999).first);
    while (peek().is_punct(",")) {
      ++pos_;
      args.push_back(parse(999).first);
    }
    expect_punct(")");
    return args;
  }

  // A prefix operator is applied when followed by something that can start
  // its operand, unless that token is an infix-only operator.
  bool prefix_applies() const {
    const Token& n = peek();
    if (!n.starts_term()) return false;
    if (n.kind == Token::Kind::Atom && !n.quoted && infix_op(n.text) && !prefix_op(n.text)) {
      const Token& after = peek(1);
      bool functional = after.is_punct("(") && !after.layout_before;
      return functional;
    }
    return true;
  }

  std::pair<Term, int> primary() {
    const Token& t = take();
    switch (t.kind) {
      case Token::Kind::Int:
        return {Term::integer(t.value), 0};
      case Token::Kind::Var:
        return {variable(t.text), 0};
      case Token::Kind::Punct:
        if (t.text == "(") {
          Term inner = parse(1200).first;
          expect_punct(")");
          return {inner, 0};
        }
        if (t.text == "[") {
          if (peek().is_punct("]")) {
            ++pos_;
            return {Term::nil(), 0};
          }
          std::vector<Term> items{parse(999).first};
          while (peek().is_punct(",")) {
            ++pos_;
            items.push_back(parse(999).first);
          }
          Term tail = Term::nil();
          if (peek().is_punct("|")) {
            ++pos_;
            tail = parse(999).first;
          }
          expect_punct("]");
          return {Term::list(std::move(items), tail), 0};
        }
        fail(t, "expected a term but found " + t.describe());
      case Token::Kind::Atom: {
        std::string name = t.text;
        const Token& n = peek();
        if (n.is_punct("(") && !n.layout_before) {
          ++pos_;
          return {Term::compound(name, arguments()), 0};
        }
        if (!t.quoted && name == "-" && n.kind == Token::Kind::Int && !n.layout_before) {
          ++pos_;
          return {Term::integer(-n.value), 0};
        }
        if (!t.quoted) {
          if (auto op = prefix_op(name); op && prefix_applies()) {
            Term operand = parse(detail::right_max(*op)).first;
            return {Term::compound(name, {operand}), op->priority};
          }
        }
        return {Term::atom(name), 0};
      }
      case Token::Kind::End:
      case Token::Kind::Eof:
        fail(t, "expected a term but found " + t.describe());
    }
    fail(t, "expected a term");
  }

  std::pair<Term, int> parse(int max_priority) {
    auto [left, left_priority] = primary();
    for (;;) {
      const Token& t = peek();
      std::string name;
      if (t.kind == Token::Kind::Atom && !t.quoted) {
        name = t.text;
      } else if (t.is_punct(",")) {
        name = ",";
      } else {
        break;
      }
      auto op = infix_op(name);
      if (!op || op->priority > max_priority || left_priority > detail::left_max(*op)) break;
      ++pos_;
      Term right = parse(detail::right_max(*op)).first;
      left = Term::compound(name, {left, right});
      left_priority = op->priority;
    }
    return {left, left_priority};
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  VarId next_var_;
  std::map<std::string, Term> vars_;
};

void check_goal(const Token& at, const Term& goal) {
  if (goal.is_var()) Parser::fail(at, "variable goals are not supported");
  if (!goal.is_callable()) Parser::fail(at, "body goal must be an atom or compound term");
}

}  // namespace

Program parse_program(std::string_view source) {
  Parser parser(Lexer(source).tokenize(), 1);
  Program program;
  while (!parser.at_eof()) {
    Token start = parser.peek();
    Term t = parser.read_clause_term();
    Term head = t;
    std::vector<Term> body;
    if (t.is(":-", 2)) {
      head = t.arg(0);
      body = flatten_conjunction(t.arg(1));
    }
    if (!head.is_callable()) {
      Parser::fail(start, "clause head must be an atom or compound term");
    }
    for (const Term& g : body) check_goal(start, g);
    program.add(head, std::move(body));
  }
  return program;
}

std::vector<Term> parse_query(std::string_view source, VarId first_var_id) {
  Parser parser(Lexer(source).tokenize(), first_var_id);
  if (parser.peek().is_name("?-")) parser.skip();
  Token start = parser.peek();
  Term t = parser.read_clause_term();
  if (!parser.at_eof()) {
    Parser::fail(parser.peek(), "expected a single query but found " + parser.peek().describe());
  }
  std::vector<Term> goals = flatten_conjunction(t);
  for (const Term& g : goals) check_goal(start, g);
  return goals;
}

Term parse_term(std::string_view source, VarId first_var_id) {
  Parser parser(Lexer(source).tokenize(), first_var_id);
  Term t = parser.read_clause_term();
  if (!parser.at_eof()) {
    Parser::fail(parser.peek(), "unexpected " + parser.peek().describe());
  }
  return t;
}

}  // namespace logichart
