#pragma once

// MiniC front end: lexer, recursive-descent parser and construct classifier.
// The grammar is published in docs/grammar.ebnf.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asg {

struct SourcePos {
    int line = 1;
    int col = 1;
    std::size_t offset = 0;

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

/// Half-open byte range [begin.offset, end.offset) with line/col of both ends.
struct Span {
    SourcePos begin;
    SourcePos end;

    std::size_t size() const noexcept { return end.offset - begin.offset; }
    bool contains(const Span& other) const noexcept {
        return begin.offset <= other.begin.offset && other.end.offset <= end.offset;
    }

    friend bool operator==(const Span&, const Span&) = default;
};

enum class TokenKind : std::uint8_t { Keyword, Ident, IntLit, FloatLit, StrLit, CharLit, Punct, Op };

std::string_view to_string(TokenKind kind);

struct Token {
    TokenKind kind;
    std::string text;
    Span span;

    int line() const noexcept { return span.begin.line; }
    int col() const noexcept { return span.begin.col; }
};

/// Lexes MiniC with maximal munch. Whitespace and comments are dropped;
/// each token keeps its exact source span. Throws LexError.
std::vector<Token> tokenize(std::string_view source);

enum class BaseType : std::uint8_t { Int, Float, Char, Str, Void };

std::string_view to_string(BaseType base);

struct TypeExpr {
    BaseType base = BaseType::Int;
    std::optional<std::int64_t> array_len;

    bool is_array() const noexcept { return array_len.has_value(); }
    /// Source spelling: `int`, `char[8]`.
    std::string spelling() const;

    friend bool operator==(const TypeExpr&, const TypeExpr&) = default;
};

enum class ConstructClass : std::uint8_t {
    Func,
    Param,
    VarDecl,
    Block,
    Control,
    MathOp,
    CmpOp,
    LogicOp,
    Assign,
    Call,
    Ident,
    Literal,
    Index,
};

/// Token spelling used in encodings: `varDecl`, `mathOp`, ...
std::string_view to_string(ConstructClass cls);
std::optional<ConstructClass> construct_class_from_string(std::string_view text);

struct AstNode {
    int id = 0;
    ConstructClass cls = ConstructClass::Block;
    std::optional<std::string> name;
    std::optional<TypeExpr> data_type;
    std::vector<int> children;
    Span span;
};

/// A parsed translation unit. Nodes are stored in DFS pre-order so that
/// `nodes[i].id == i`; node 0 is the root.
struct Ast {
    std::vector<AstNode> nodes;
    std::vector<int> parent; // -1 for the root

    const AstNode& root() const { return nodes.front(); }
    const AstNode& at(int id) const { return nodes.at(static_cast<std::size_t>(id)); }
    std::size_t size() const noexcept { return nodes.size(); }
    /// Largest id in the subtree rooted at `id` (pre-order makes subtrees contiguous).
    int subtree_end(int id) const;
};

/// Grammar productions as the parser sees them, before classification.
enum class Production : std::uint8_t {
    FuncDef,
    ParamDecl,
    VarDecl,
    Block,
    If,
    While,
    For,
    Return,
    Assign,
    Call,
    Ident,
    Literal,
    Index,
    Binary, // lexeme carries the operator
    Unary,  // lexeme carries the operator
    Unit,   // wrapper around several functions
};

struct RawConstruct {
    Production production;
    std::string_view lexeme;                 // operator, identifier or literal text
    std::optional<TypeExpr> declared_type;   // declarations and function return types
    TokenKind literal_kind = TokenKind::IntLit;
};

struct Classified {
    ConstructClass cls;
    std::optional<std::string> name;
    std::optional<TypeExpr> data_type;

    friend bool operator==(const Classified&, const Classified&) = default;
};

Classified classify(const RawConstruct& raw);

/// Parses a token stream into an AST. A single function is the root
/// itself; several functions hang off a nameless `block` wrapper.
/// Throws ParseError; never returns a partial tree.
Ast parse(const std::vector<Token>& tokens, std::string_view source);

inline Ast parse_source(std::string_view source) { return parse(tokenize(source), source); }

/// Stable one-line-per-node dump (id, class, name, type, children, span).
std::string dump(const Ast& ast);

bool is_keyword(std::string_view word);

} // namespace asg
