#ifndef FBP_LEXER_HPP
#define FBP_LEXER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fbp/errors.hpp"

namespace fbp {

/// Shared tokenizer for the group-language and additive surface syntaxes.
struct Token {
  enum class Type { Ident, Int, Sym, End };
  Type type;
  std::string text;
  std::int64_t value = 0;  // Int payload
  std::size_t pos = 0;
};

/// Tokenizes the whole input; the final token has type End. Symbols are
/// `<=`, `->`, and the single characters `* ^ ( ) [ ] = & | ! . - + ,`.
std::vector<Token> lex(const std::string& text);

}  // namespace fbp

#endif  // FBP_LEXER_HPP
