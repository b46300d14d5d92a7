#include "asg/error.hpp"
#include "asg/frontend.hpp"

#include <array>
#include <cctype>

namespace asg {

namespace {

constexpr std::array<std::string_view, 10> kKeywords = {
    "int", "float", "char", "str", "void", "if", "else", "while", "for", "return",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            if (at_end()) break;
            out.push_back(next());
        }
        return out;
    }

private:
    bool at_end() const { return pos_.offset >= src_.size(); }
    char peek(std::size_t ahead = 0) const {
        std::size_t i = pos_.offset + ahead;
        return i < src_.size() ? src_[i] : '\0';
    }

    void advance() {
        if (src_[pos_.offset] == '\n') {
            ++pos_.line;
            pos_.col = 1;
        } else {
            ++pos_.col;
        }
        ++pos_.offset;
    }

    [[noreturn]] void fail(const std::string& what, const SourcePos& at) const {
        throw LexError(what, at.line, at.col);
    }

    void skip_trivia() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n') advance();
            } else if (c == '/' && peek(1) == '*') {
                SourcePos start = pos_;
                advance();
                advance();
                while (!(peek() == '*' && peek(1) == '/')) {
                    if (at_end()) fail("unterminated comment", start);
                    advance();
                }
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    Token make(TokenKind kind, const SourcePos& start) const {
        return Token{kind, std::string(src_.substr(start.offset, pos_.offset - start.offset)),
                     Span{start, pos_}};
    }

    Token next() {
        SourcePos start = pos_;
        char c = peek();

        if (ident_start(c)) {
            while (ident_char(peek())) advance();
            Token t = make(TokenKind::Ident, start);
            if (is_keyword(t.text)) t.kind = TokenKind::Keyword;
            return t;
        }
        if (digit(c)) return number(start);
        if (c == '"' || c == '\'') return quoted(start, c);

        switch (c) {
        case '(': case ')': case '{': case '}': case '[': case ']': case ';': case ',':
            advance();
            return make(TokenKind::Punct, start);
        case '+': case '-': case '*': case '/': case '%':
            advance();
            return make(TokenKind::Op, start);
        case '<': case '>': case '=': case '!':
            advance();
            if (peek() == '=') advance();
            return make(TokenKind::Op, start);
        case '&': case '|':
            if (peek(1) != c) fail(std::string("unexpected character '") + c + "'", start);
            advance();
            advance();
            return make(TokenKind::Op, start);
        default:
            break;
        }
        if (static_cast<unsigned char>(c) >= 0x80) fail("non-ASCII character outside literal", start);
        fail(std::string("unexpected character '") + c + "'", start);
    }

    Token number(const SourcePos& start) {
        TokenKind kind = TokenKind::IntLit;
        while (digit(peek())) advance();
        if (peek() == '.' && digit(peek(1))) {
            kind = TokenKind::FloatLit;
            advance();
            while (digit(peek())) advance();
        }
        if ((peek() == 'e' || peek() == 'E') &&
            (digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && digit(peek(2))))) {
            kind = TokenKind::FloatLit;
            advance();
            if (peek() == '+' || peek() == '-') advance();
            while (digit(peek())) advance();
        }
        if (ident_char(peek()) || peek() == '.') fail("malformed number", start);
        return make(kind, start);
    }

    Token quoted(const SourcePos& start, char quote) {
        advance();
        for (;;) {
            if (at_end() || peek() == '\n')
                fail(quote == '"' ? "unterminated string literal" : "unterminated char literal", start);
            char c = peek();
            advance();
            if (c == '\\') {
                if (at_end() || peek() == '\n') continue;
                advance();
            } else if (c == quote) {
                break;
            }
        }
        Token t = make(quote == '"' ? TokenKind::StrLit : TokenKind::CharLit, start);
        if (t.kind == TokenKind::CharLit && t.text.size() == 2) fail("empty char literal", start);
        return t;
    }

    std::string_view src_;
    SourcePos pos_;
};

} // namespace

bool is_keyword(std::string_view word) {
    for (auto k : kKeywords)
        if (k == word) return true;
    return false;
}

std::string_view to_string(TokenKind kind) {
    switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Ident: return "ident";
    case TokenKind::IntLit: return "int-lit";
    case TokenKind::FloatLit: return "float-lit";
    case TokenKind::StrLit: return "str-lit";
    case TokenKind::CharLit: return "char-lit";
    case TokenKind::Punct: return "punct";
    case TokenKind::Op: return "op";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

} // namespace asg
