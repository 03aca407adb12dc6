#include "fbp/lexer.hpp"

#include <cctype>

namespace fbp {

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (true) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) {
      out.push_back({Token::Type::End, "", 0, i});
      return out;
    }
    char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      out.push_back({Token::Type::Ident, text.substr(start, i - start), 0, start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      std::string digits = text.substr(start, i - start);
      if (digits.size() > 18) throw ParseError("integer literal too large", start);
      out.push_back({Token::Type::Int, digits, std::stoll(digits), start});
      continue;
    }
    if (c == '<' && i + 1 < text.size() && text[i + 1] == '=') {
      out.push_back({Token::Type::Sym, "<=", 0, i});
      i += 2;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Token::Type::Sym, "->", 0, i});
      i += 2;
      continue;
    }
    static const std::string singles = "*^()[]=&|!.-+,";
    if (singles.find(c) != std::string::npos) {
      out.push_back({Token::Type::Sym, std::string(1, c), 0, i});
      ++i;
      continue;
    }
    throw ParseError(std::string("unknown symbol '") + c + "'", i);
  }
}

}  // namespace fbp
