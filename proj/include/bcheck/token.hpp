#pragma once

#include <string>
#include <vector>

#include "bcheck/errors.hpp"

namespace bcheck {

enum class TokenKind {
    Keyword,
    Ident,
    QualIdent,  // File!Column, one token
    IntLit,
    StrLit,     // text holds the unquoted content
    Op,
    Punct,
    End,        // sentinel appended by tokenize
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    SourceLoc loc;
};

// Splits UTF-8 source text into tokens. Whitespace and //-comments are
// dropped. Multi-character operators are maximal-munch. Throws LexError.
std::vector<Token> tokenize(const std::string& source);

bool is_keyword(const std::string& word);

}  // namespace bcheck
