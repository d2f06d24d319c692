#include "lexer.hpp"

#include <cctype>
#include <optional>

#include "enrvar/errors.hpp"

namespace enrvar::dsl {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
bool op_char(char c) {
  switch (c) {
    case '<': case '>': case '=': case '~': case '!': case '&': case '|':
    case '+': case '*': case '-': case '/': case '^': case '%': case '?': case '.':
      return true;
    default:
      return false;
  }
}

struct Fold {
  std::string_view utf8, ascii;
};
constexpr Fold kFolds[] = {{"≤", "<="}, {"≐", "=="}, {"⟹", "=>"}, {"→", "->"}, {"◁", "<|"}};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      Token t;
      t.line = line_;
      t.column = col_;
      t.begin = i_;
      if (i_ >= s_.size()) {
        t.end = i_;
        out.push_back(t);
        return out;
      }
      char c = s_[i_];
      if (ident_start(c)) {
        t.kind = Tok::Name;
        t.text = ident();
        if (peek() == '@') {
          advance(1);
          t.text += '@';
          if (i_ < s_.size() && s_[i_] == '"') t.text += string_body();
          else if (i_ < s_.size() && (ident_char(s_[i_]) || std::isdigit(static_cast<unsigned char>(s_[i_])))) t.text += ident();
          else fail("expected a parameter element after '@'");
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Number;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) t.text += take();
        // Numbers glued to letters ("2x") read as one name-like element id.
        if (i_ < s_.size() && ident_char(s_[i_])) {
          t.kind = Tok::Name;
          t.text += ident();
        }
      } else if (c == '"') {
        t.kind = Tok::String;
        t.text = string_body();
      } else if (auto f = fold()) {
        t.kind = Tok::Symbol;
        t.text = std::string(*f);
      } else if (op_char(c)) {
        t.kind = Tok::Symbol;
        while (i_ < s_.size() && op_char(s_[i_])) t.text += take();
        if (t.text == "~")
          while (i_ < s_.size() && ident_char(s_[i_])) t.text += take();
      } else if (std::string_view("{}()[],:;@").find(c) != std::string_view::npos) {
        t.kind = Tok::Punct;
        t.text = std::string(1, take());
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      t.end = i_;
      out.push_back(std::move(t));
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  char take() {
    char c = s_[i_];
    advance(1);
    return c;
  }
  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i_) {
      if (s_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(s_[i_]) & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void skip() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) advance(1);
      else if (c == '#' || (c == '/' && i_ + 1 < s_.size() && s_[i_ + 1] == '/'))
        while (i_ < s_.size() && s_[i_] != '\n') advance(1);
      else
        return;
    }
  }

  std::string ident() {
    std::string out;
    while (i_ < s_.size() && ident_char(s_[i_])) out += take();
    return out;
  }

  std::string string_body() {
    advance(1);
    std::string out;
    for (;;) {
      if (i_ >= s_.size() || s_[i_] == '\n') fail("unterminated string");
      char c = take();
      if (c == '"') return out;
      if (c == '\\') {
        if (i_ >= s_.size()) fail("unterminated string");
        out += take();
      } else {
        out += c;
      }
    }
  }

  std::optional<std::string_view> fold() {
    for (const auto& f : kFolds)
      if (s_.substr(i_).starts_with(f.utf8)) {
        advance(f.utf8.size());
        return f.ascii;
      }
    return std::nullopt;
  }

  std::string_view s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

}  // namespace

std::vector<Token> lex(std::string_view src) { return Lexer(src).run(); }

bool is_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return true;
}

bool is_symbol_run(std::string_view s) {
  if (s.empty()) return false;
  if (s[0] == '~') {
    for (char c : s.substr(1))
      if (!ident_char(c)) return false;
    return s.size() == 1 || !op_char(s[1]);
  }
  for (char c : s)
    if (!op_char(c)) return false;
  return true;
}

}  // namespace enrvar::dsl
