#include "bcheck/token.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <unordered_set>

namespace bcheck {

namespace {

const std::unordered_set<std::string>& keyword_set() {
    static const std::unordered_set<std::string> kws = {
        // rule files
        "RULE", "COUNTEREXAMPLE", "ANY", "WHERE", "EXPECTED", "END", "DEFINITION",
        // declaration files
        "DATA", "SOURCE", "COLUMN", "seq",
        // types and literals
        "INT", "BOOL", "STRING", "TRUE", "FALSE",
        // predicate / expression words
        "not", "or", "mod",
        "card", "min", "max", "dom", "ran",
        "prj1", "prj2", "size", "first", "last",
    };
    return kws;
}

constexpr std::array<const char*, 5> kOps3 = {"|->", "<=>", "<<|", "|>>", "/<:"};
constexpr std::array<const char*, 13> kOps2 = {"..", "\\/", "/\\", "/:", "/=", "<:",
                                               "<=", ">=", "=>", "<|", "|>", "<+", "=="};
const char* kOps1 = "+-*/=<>:;,.(){}[]%&!#~|";
const char* kPunct = "(){},.";

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_cont(unsigned char c) { return std::isalnum(c) || c == '_'; }

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    std::vector<Token> run() {
        validate_utf8();
        std::vector<Token> out;
        while (!at_end()) {
            skip_ws_and_comments();
            if (at_end()) break;
            out.push_back(next_token());
        }
        out.push_back(Token{TokenKind::End, "", loc()});
        return out;
    }

private:
    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    bool at_end() const { return pos_ >= src_.size(); }
    char peek(size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }
    SourceLoc loc() const { return SourceLoc{line_, col_}; }

    void advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            // continuation bytes of a UTF-8 sequence do not advance the column
            ++col_;
        }
    }

    void validate_utf8() {
        int line = 1, col = 1;
        size_t i = 0;
        auto fail = [&]() { throw LexError("invalid UTF-8 byte sequence", SourceLoc{line, col}); };
        while (i < src_.size()) {
            unsigned char c = src_[i];
            int extra = 0;
            if (c < 0x80) {
                extra = 0;
            } else if ((c & 0xE0) == 0xC0) {
                extra = 1;
            } else if ((c & 0xF0) == 0xE0) {
                extra = 2;
            } else if ((c & 0xF8) == 0xF0) {
                extra = 3;
            } else {
                fail();
            }
            for (int k = 1; k <= extra; ++k) {
                if (i + k >= src_.size() || (static_cast<unsigned char>(src_[i + k]) & 0xC0) != 0x80) fail();
            }
            if (c == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            i += 1 + extra;
        }
    }

    void skip_ws_and_comments() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token next_token() {
        SourceLoc start = loc();
        unsigned char c = peek();

        if (ident_start(c)) return lex_word(start);
        if (std::isdigit(c)) return lex_int(start);
        if (c == '"') return lex_string(start);

        for (const char* op : kOps3) {
            if (match(op)) return Token{TokenKind::Op, op, start};
        }
        for (const char* op : kOps2) {
            if (match(op)) return Token{TokenKind::Op, op, start};
        }
        for (const char* p = kOps1; *p; ++p) {
            if (c == *p) {
                advance();
                bool punct = std::strchr(kPunct, c) != nullptr;
                return Token{punct ? TokenKind::Punct : TokenKind::Op, std::string(1, c), start};
            }
        }
        throw LexError(std::string("illegal character '") + static_cast<char>(c) + "'", start);
    }

    bool match(const char* s) {
        size_t n = std::strlen(s);
        if (src_.compare(pos_, n, s) != 0) return false;
        for (size_t i = 0; i < n; ++i) advance();
        return true;
    }

    std::string read_ident() {
        std::string word;
        while (!at_end() && ident_cont(peek())) {
            word.push_back(peek());
            advance();
        }
        return word;
    }

    Token lex_word(SourceLoc start) {
        std::string word = read_ident();
        // File!Column is a single qualified-identifier token
        if (peek() == '!' && ident_start(peek(1))) {
            advance();  // '!'
            std::string column = read_ident();
            return Token{TokenKind::QualIdent, word + "!" + column, start};
        }
        if (keyword_set().count(word)) return Token{TokenKind::Keyword, word, start};
        return Token{TokenKind::Ident, word, start};
    }

    Token lex_int(SourceLoc start) {
        std::string digits;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            digits.push_back(peek());
            advance();
        }
        return Token{TokenKind::IntLit, digits, start};
    }

    Token lex_string(SourceLoc start) {
        advance();  // opening quote
        std::string content;
        while (true) {
            if (at_end() || peek() == '\n') {
                throw LexError("unterminated string literal", start);
            }
            char c = peek();
            advance();
            if (c == '"') break;
            content.push_back(c);
        }
        return Token{TokenKind::StrLit, content, start};
    }
};

}  // namespace

std::vector<Token> tokenize(const std::string& source) { return Lexer(source).run(); }

bool is_keyword(const std::string& word) { return keyword_set().count(word) != 0; }

const char* eval_error_kind_name(EvalErrorKind kind) {
    switch (kind) {
        case EvalErrorKind::WdApplyOutsideDomain: return "wd-apply-outside-domain";
        case EvalErrorKind::WdNotFunctional: return "wd-not-functional";
        case EvalErrorKind::WdEmptyMinMax: return "wd-empty-min-max";
        case EvalErrorKind::WdNotASequence: return "wd-not-a-sequence";
        case EvalErrorKind::WdDivByZero: return "wd-div-by-zero";
        case EvalErrorKind::IntOverflow: return "int-overflow";
        case EvalErrorKind::UnboundedVariable: return "unbounded-variable";
        case EvalErrorKind::ResourceLimit: return "resource-limit";
    }
    return "unknown";
}

}  // namespace bcheck
