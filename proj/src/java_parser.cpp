#include "redustat/java_parser.hpp"

#include <cctype>
#include <set>
#include <utility>

#include "redustat/error.hpp"

namespace redustat {
namespace {

enum class Tok : std::uint8_t { Ident, Number, String, Char, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80; }
bool ident_part(unsigned char c) { return ident_start(c) || std::isdigit(c); }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    Token end;
    end.kind = Tok::End;
    end.begin = end.end = src_.size();
    end.line = line_;
    end.column = col_;
    out.push_back(end);
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t line, std::size_t col) const {
    throw SyntaxError(msg, line, col);
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        const std::size_t l = line_, k = col_;
        advance();
        advance();
        while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ >= src_.size()) fail("unterminated block comment", l, k);
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    Token t;
    t.begin = pos_;
    t.line = line_;
    t.column = col_;
    const auto c = static_cast<unsigned char>(peek());
    if (ident_start(c)) {
      t.kind = Tok::Ident;
      while (pos_ < src_.size() && ident_part(static_cast<unsigned char>(peek()))) advance();
    } else if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      t.kind = Tok::Number;
      const bool hex = c == '0' && (peek(1) == 'x' || peek(1) == 'X');
      while (pos_ < src_.size()) {
        const auto d = static_cast<unsigned char>(peek());
        if (std::isalnum(d) || d == '_' || d == '.') {
          const bool exponent = hex ? (d == 'p' || d == 'P') : (d == 'e' || d == 'E');
          advance();
          if (exponent && (peek() == '+' || peek() == '-')) advance();
        } else {
          break;
        }
      }
    } else if (c == '"') {
      t.kind = Tok::String;
      if (peek(1) == '"' && peek(2) == '"') {
        for (int i = 0; i < 3; ++i) advance();
        while (pos_ < src_.size() && !(peek() == '"' && peek(1) == '"' && peek(2) == '"')) {
          if (peek() == '\\') advance();
          if (pos_ < src_.size()) advance();
        }
        if (pos_ >= src_.size()) fail("unterminated text block", t.line, t.column);
        for (int i = 0; i < 3; ++i) advance();
      } else {
        quoted('"', t);
      }
    } else if (c == '\'') {
      t.kind = Tok::Char;
      quoted('\'', t);
    } else {
      t.kind = Tok::Punct;
      if ((c == ':' && peek(1) == ':') || (c == '-' && peek(1) == '>')) {
        advance();
      } else if (c == '.' && peek(1) == '.' && peek(2) == '.') {
        advance();
        advance();
      }
      advance();
    }
    t.end = pos_;
    t.text = src_.substr(t.begin, t.end - t.begin);
    return t;
  }

  void quoted(char quote, const Token& t) {
    advance();
    while (pos_ < src_.size() && peek() != quote) {
      if (peek() == '\n') break;
      if (peek() == '\\') advance();
      if (pos_ < src_.size()) advance();
    }
    if (pos_ >= src_.size() || peek() != quote)
      fail(quote == '"' ? "unterminated string literal" : "unterminated character literal", t.line,
           t.column);
    advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

const std::set<std::string_view> kKeywords{
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",     "catch",
    "char",     "class",      "const",     "continue",  "default",   "do",       "double",
    "else",     "enum",       "extends",   "final",     "finally",   "float",    "for",
    "goto",     "if",         "implements", "import",   "instanceof", "int",     "interface",
    "long",     "native",     "new",       "package",   "private",   "protected", "public",
    "return",   "short",      "static",    "strictfp",  "super",     "switch",   "synchronized",
    "this",     "throw",      "throws",    "transient", "try",       "void",     "volatile",
    "while",    "true",       "false",     "null"};

const std::set<std::string_view> kPrimitives{"boolean", "byte",  "short",  "int",
                                              "long",    "char",  "float",  "double"};

const std::set<std::string_view> kModifiers{"public",   "protected", "private",      "static",
                                             "final",    "abstract",  "synchronized", "strictfp",
                                             "default",  "native"};

class Parser {
 public:
  Parser(std::string_view src, std::vector<Token> toks) : src_(src), toks_(std::move(toks)) {}

  std::optional<std::string> parse(std::vector<StatementNode>& nodes, std::vector<StmtId>& roots) {
    std::optional<std::string> name;
    if (auto header = match_method_header()) {
      name = std::string(toks_[*header].text);
      expect("{");
      parse_contents(roots, /*until_brace=*/true);
    } else {
      parse_contents(roots, /*until_brace=*/false);
    }
    if (cur().kind != Tok::End) fail_here("unexpected '" + std::string(cur().text) + "' after method body");
    nodes = std::move(nodes_);
    return name;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& at(std::size_t i) const { return toks_[std::min(i, toks_.size() - 1)]; }
  bool is(std::string_view text) const { return cur().kind != Tok::End && cur().text == text; }
  bool is_at(std::size_t i, std::string_view text) const {
    return at(i).kind != Tok::End && at(i).text == text;
  }
  bool punct_at(std::size_t i, std::string_view text) const {
    return at(i).kind == Tok::Punct && at(i).text == text;
  }

  [[noreturn]] void fail_here(const std::string& msg) const {
    throw SyntaxError(msg, cur().line, cur().column);
  }

  [[noreturn]] void unsupported(const std::string& what) const {
    throw UnsupportedConstruct(what, cur().line, cur().column);
  }

  const Token& expect(std::string_view text) {
    if (cur().kind == Tok::End) fail_here("expected '" + std::string(text) + "' before end of input");
    if (cur().text != text)
      fail_here("expected '" + std::string(text) + "' but found '" + std::string(cur().text) + "'");
    return toks_[pos_++];
  }

  bool is_type_name(std::size_t i) const {
    const auto& t = at(i);
    if (t.kind != Tok::Ident) return false;
    return kPrimitives.contains(t.text) || !kKeywords.contains(t.text);
  }

  // Skips `<...>` starting at i; returns index after the closing '>' or npos.
  std::size_t skip_type_args(std::size_t i) const {
    if (!punct_at(i, "<")) return i;
    int depth = 0;
    for (; at(i).kind != Tok::End; ++i) {
      const auto& t = at(i);
      if (t.kind == Tok::Punct) {
        if (t.text == "<") {
          ++depth;
        } else if (t.text == ">") {
          if (--depth == 0) return i + 1;
        } else if (t.text != "," && t.text != "." && t.text != "?" && t.text != "[" &&
                   t.text != "]" && t.text != "&" && t.text != "@") {
          return std::string::npos;
        }
      } else if (t.kind != Tok::Ident) {
        return std::string::npos;
      }
    }
    return std::string::npos;
  }

  // Matches `Type` at i (qualified name, type args, array dims); returns the
  // index after it or npos.
  std::size_t match_type(std::size_t i) const {
    if (!is_type_name(i)) return std::string::npos;
    ++i;
    for (;;) {
      i = skip_type_args(i);
      if (i == std::string::npos) return i;
      if (punct_at(i, ".") && is_type_name(i + 1)) {
        i += 2;
        continue;
      }
      break;
    }
    while (punct_at(i, "[") && punct_at(i + 1, "]")) i += 2;
    if (punct_at(i, "...")) ++i;
    return i;
  }

  std::size_t skip_balanced(std::size_t i) const {
    // i points at an opener; returns index after its closer or npos.
    int depth = 0;
    for (; at(i).kind != Tok::End; ++i) {
      const auto& t = at(i);
      if (t.kind != Tok::Punct) continue;
      if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
      if (t.text == ")" || t.text == "]" || t.text == "}") {
        if (--depth == 0) return i + 1;
      }
    }
    return std::string::npos;
  }

  std::size_t skip_annotation(std::size_t i) const {
    // i points at '@'
    if (!punct_at(i, "@") || at(i + 1).kind != Tok::Ident || is_at(i + 1, "interface")) return i;
    i += 2;
    while (punct_at(i, ".") && at(i + 1).kind == Tok::Ident) i += 2;
    if (punct_at(i, "(")) {
      i = skip_balanced(i);
      if (i == std::string::npos) return i;
    }
    return i;
  }

  // Recognizes `[annotations] [modifiers] [<T>] Type name(params) [throws X, Y]`
  // and leaves pos_ at the body's '{'. Returns the token index of the name.
  std::optional<std::size_t> match_method_header() {
    std::size_t i = pos_;
    for (;;) {
      if (punct_at(i, "@")) {
        const std::size_t next = skip_annotation(i);
        if (next == std::string::npos || next == i) return std::nullopt;
        i = next;
      } else if (at(i).kind == Tok::Ident && kModifiers.contains(at(i).text)) {
        ++i;
      } else {
        break;
      }
    }
    if (punct_at(i, "<")) {
      i = skip_type_args(i);
      if (i == std::string::npos) return std::nullopt;
    }
    if (is_at(i, "void")) {
      ++i;
    } else {
      i = match_type(i);
      if (i == std::string::npos) return std::nullopt;
    }
    if (at(i).kind != Tok::Ident || kKeywords.contains(at(i).text) || !punct_at(i + 1, "("))
      return std::nullopt;
    const std::size_t name = i;
    i = skip_balanced(i + 1);
    if (i == std::string::npos) return std::nullopt;
    if (is_at(i, "throws")) {
      ++i;
      for (;;) {
        i = match_type(i);
        if (i == std::string::npos) return std::nullopt;
        if (!punct_at(i, ",")) break;
        ++i;
      }
    }
    if (!punct_at(i, "{")) return std::nullopt;
    pos_ = i;
    return name;
  }

  StmtId alloc(StatementKind kind) {
    StatementNode node;
    node.id = static_cast<StmtId>(nodes_.size());
    node.kind = kind;
    node.span.begin = cur().begin;
    nodes_.push_back(std::move(node));
    return nodes_.back().id;
  }

  void finish(StmtId id) { nodes_[id].span.end = toks_[pos_ - 1].end; }

  // Statements up to a closing '}' (consumed) or end of input.
  void parse_contents(std::vector<StmtId>& into, bool until_brace) {
    for (;;) {
      if (cur().kind == Tok::End) {
        if (until_brace) fail_here("expected '}' before end of input");
        return;
      }
      if (until_brace && is("}") && cur().kind == Tok::Punct) {
        ++pos_;
        return;
      }
      into.push_back(parse_statement());
    }
  }

  void parse_owned_block(StmtId owner) {
    expect("{");
    std::vector<StmtId> children;
    parse_contents(children, true);
    auto& dst = nodes_[owner].children;
    dst.insert(dst.end(), children.begin(), children.end());
  }

  // The body of if/else/loops/labels: braces belong to the construct.
  void parse_slot(StmtId owner) {
    if (cur().kind == Tok::Punct && is("{")) {
      parse_owned_block(owner);
      return;
    }
    if (cur().kind == Tok::End) fail_here("expected statement before end of input");
    const StmtId child = parse_statement();
    nodes_[child].braceless_slot = true;
    nodes_[owner].children.push_back(child);
  }

  void parenthesized() {
    if (!(cur().kind == Tok::Punct && is("("))) {
      if (cur().kind == Tok::End) fail_here("expected '(' before end of input");
      fail_here("expected '(' but found '" + std::string(cur().text) + "'");
    }
    balanced();
  }

  // Consumes a bracketed group starting at the current opener.
  void balanced() {
    std::vector<char> stack;
    do {
      const auto& t = cur();
      if (t.kind == Tok::End) {
        throw SyntaxError(std::string("unclosed '") + stack.front() + "'", toks_[pos_ - 1].line,
                          toks_[pos_ - 1].column);
      }
      if (t.kind == Tok::Punct) {
        const char c = t.text[0];
        if (t.text.size() == 1 && (c == '(' || c == '[' || c == '{')) {
          stack.push_back(c);
        } else if (t.text.size() == 1 && (c == ')' || c == ']' || c == '}')) {
          const char open = c == ')' ? '(' : c == ']' ? '[' : '{';
          if (stack.back() != open) fail_here(std::string("mismatched '") + c + "'");
          stack.pop_back();
        }
      }
      ++pos_;
    } while (!stack.empty());
  }

  // Consumes an opaque expression through its terminating ';'.
  void expression_to_semicolon() {
    for (;;) {
      const auto& t = cur();
      if (t.kind == Tok::End) fail_here("expected ';' before end of input");
      if (t.kind == Tok::Punct && t.text.size() == 1) {
        const char c = t.text[0];
        if (c == ';') {
          ++pos_;
          return;
        }
        if (c == '(' || c == '[' || c == '{') {
          balanced();
          continue;
        }
        if (c == ')' || c == ']' || c == '}') fail_here(std::string("unbalanced '") + c + "'");
      }
      ++pos_;
    }
  }

  bool looks_like_declaration() const {
    std::size_t i = pos_;
    if (is_at(i, "final") || punct_at(i, "@")) return true;
    if (is_at(i, "var") && at(i + 1).kind == Tok::Ident) return true;
    i = match_type(i);
    if (i == std::string::npos || at(i).kind != Tok::Ident || kKeywords.contains(at(i).text))
      return false;
    return punct_at(i + 1, "=") || punct_at(i + 1, ";") || punct_at(i + 1, ",") ||
           punct_at(i + 1, "[");
  }

  bool local_type_declaration() const {
    std::size_t i = pos_;
    while (at(i).kind == Tok::Ident && kModifiers.contains(at(i).text)) ++i;
    if (is_at(i, "class") || is_at(i, "interface") || is_at(i, "enum")) return true;
    return is_at(i, "record") && at(i + 1).kind == Tok::Ident &&
           (punct_at(i + 2, "(") || punct_at(i + 2, "<"));
  }

  StmtId parse_statement() {
    const Token& t = cur();
    const std::string_view w = t.text;

    if (t.kind == Tok::Punct) {
      if (w == "{") {
        const StmtId id = alloc(StatementKind::Block);
        parse_owned_block(id);
        finish(id);
        return id;
      }
      if (w == ";") {
        const StmtId id = alloc(StatementKind::EmptyStmt);
        ++pos_;
        finish(id);
        return id;
      }
      if (w == "}" || w == ")" || w == "]") fail_here("unexpected '" + std::string(w) + "'");
    }

    if (t.kind == Tok::Ident) {
      if (local_type_declaration()) unsupported("local type declaration");
      if (w == "switch") unsupported("switch statement");
      if (w == "else" || w == "catch" || w == "finally" || w == "case" || w == "default")
        fail_here("unexpected '" + std::string(w) + "'");

      if (w == "if") {
        const StmtId id = alloc(StatementKind::If);
        ++pos_;
        parenthesized();
        parse_slot(id);
        if (is("else")) {
          ++pos_;
          parse_slot(id);
        }
        finish(id);
        return id;
      }
      if (w == "for") {
        ++pos_;
        if (!(cur().kind == Tok::Punct && is("("))) fail_here("expected '(' after 'for'");
        const StmtId id = alloc(StatementKind::For);
        nodes_[id].span.begin = t.begin;
        nodes_[id].kind = classify_for();
        parenthesized();
        parse_slot(id);
        finish(id);
        return id;
      }
      if (w == "while") {
        const StmtId id = alloc(StatementKind::While);
        ++pos_;
        parenthesized();
        parse_slot(id);
        finish(id);
        return id;
      }
      if (w == "do") {
        const StmtId id = alloc(StatementKind::DoWhile);
        ++pos_;
        parse_slot(id);
        expect("while");
        parenthesized();
        expect(";");
        finish(id);
        return id;
      }
      if (w == "try") {
        const StmtId id = alloc(StatementKind::Try);
        ++pos_;
        bool resources = false;
        if (cur().kind == Tok::Punct && is("(")) {
          parenthesized();
          resources = true;
        }
        parse_owned_block(id);
        bool handlers = false;
        while (is("catch")) {
          ++pos_;
          parenthesized();
          parse_owned_block(id);
          handlers = true;
        }
        if (is("finally")) {
          ++pos_;
          parse_owned_block(id);
          handlers = true;
        }
        if (!handlers && !resources) fail_here("'try' without 'catch' or 'finally'");
        finish(id);
        return id;
      }
      if (w == "synchronized") {
        const StmtId id = alloc(StatementKind::SynchronizedBlock);
        ++pos_;
        parenthesized();
        parse_owned_block(id);
        finish(id);
        return id;
      }
      if (w == "return" || w == "throw") {
        const StmtId id = alloc(w == "return" ? StatementKind::Return : StatementKind::Throw);
        ++pos_;
        if (w == "throw" && cur().kind == Tok::Punct && is(";")) fail_here("'throw' needs an expression");
        expression_to_semicolon();
        finish(id);
        return id;
      }
      if (w == "break" || w == "continue") {
        const StmtId id = alloc(w == "break" ? StatementKind::Break : StatementKind::Continue);
        ++pos_;
        if (cur().kind == Tok::Ident) ++pos_;
        expect(";");
        finish(id);
        return id;
      }
      if (!kKeywords.contains(w) && punct_at(pos_ + 1, ":")) {
        const StmtId id = alloc(StatementKind::LabeledStmt);
        pos_ += 2;
        parse_slot(id);
        finish(id);
        return id;
      }
    }

    const StmtId id = alloc(looks_like_declaration() ? StatementKind::LocalDeclaration
                                                     : StatementKind::ExpressionStmt);
    expression_to_semicolon();
    finish(id);
    return id;
  }

  // pos_ at the '(' of a for header.
  StatementKind classify_for() const {
    int depth = 0;
    bool colon = false;
    for (std::size_t i = pos_; at(i).kind != Tok::End; ++i) {
      const auto& t = at(i);
      if (t.kind != Tok::Punct) continue;
      if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
      if (t.text == ")" || t.text == "]" || t.text == "}") {
        if (--depth == 0) break;
      }
      if (depth == 1 && t.text == ";") return StatementKind::For;
      if (depth == 1 && t.text == ":") colon = true;
    }
    return colon ? StatementKind::ForEach : StatementKind::For;
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<StatementNode> nodes_;
};

}  // namespace

TestCaseAst parse_test(std::string source, const ParseOptions& options) {
  std::vector<StatementNode> nodes;
  std::vector<StmtId> roots;
  std::optional<std::string> name;
  {
    Parser parser(source, Lexer(source).run());
    name = parser.parse(nodes, roots);
  }
  return TestCaseAst(name.value_or(options.test_name), options.project, std::move(source),
                     std::move(nodes), std::move(roots));
}

std::vector<std::string> code_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : Lexer(text).run()) {
    if (t.kind != Tok::End) out.emplace_back(t.text);
  }
  return out;
}

bool same_tokens(std::string_view a, std::string_view b) { return code_tokens(a) == code_tokens(b); }

}  // namespace redustat
