#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace enrvar::dsl {

enum class Tok { Name, Number, String, Symbol, Punct, End };

// Name covers identifiers and symbol references "op@id" (value joined).
// Symbol is a run of operator characters such as "<=", "->" or "~q0".
// Unicode ≤ ≐ ⟹ → ◁ are folded to their ASCII spellings.
struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1, column = 1;
  std::size_t begin = 0, end = 0;  // byte offsets, for adjacency
  bool is(Tok k, std::string_view t) const { return kind == k && text == t; }
};

std::vector<Token> lex(std::string_view src);

bool is_identifier(std::string_view s);
bool is_symbol_run(std::string_view s);

}  // namespace enrvar::dsl
