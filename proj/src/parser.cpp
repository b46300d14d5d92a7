#include "asg/error.hpp"
#include "asg/frontend.hpp"

#include <charconv>
#include <memory>
#include <sstream>

namespace asg {

namespace {

struct RawNode {
    Production production;
    std::string lexeme;
    std::optional<TypeExpr> declared_type;
    TokenKind literal_kind = TokenKind::IntLit;
    Span span;
    std::vector<std::unique_ptr<RawNode>> kids;
};

using RawPtr = std::unique_ptr<RawNode>;

RawPtr make_raw(Production p, std::string lexeme = {}) {
    auto n = std::make_unique<RawNode>();
    n->production = p;
    n->lexeme = std::move(lexeme);
    return n;
}

int binary_precedence(std::string_view op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == ">" || op == "<=" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    if (op == "*" || op == "/" || op == "%") return 6;
    return 0;
}

std::optional<BaseType> base_type(std::string_view word) {
    if (word == "int") return BaseType::Int;
    if (word == "float") return BaseType::Float;
    if (word == "char") return BaseType::Char;
    if (word == "str") return BaseType::Str;
    if (word == "void") return BaseType::Void;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

    RawPtr unit() {
        std::vector<RawPtr> funcs;
        do {
            funcs.push_back(function());
        } while (!at_end());
        if (funcs.size() == 1) return std::move(funcs.front());
        auto u = make_raw(Production::Unit);
        u->span = Span{funcs.front()->span.begin, funcs.back()->span.end};
        u->kids = std::move(funcs);
        return u;
    }

private:
    bool at_end() const { return pos_ >= toks_.size(); }
    const Token* peek_tok(std::size_t ahead = 0) const {
        return pos_ + ahead < toks_.size() ? &toks_[pos_ + ahead] : nullptr;
    }
    bool is(std::string_view text, std::size_t ahead = 0) const {
        const Token* t = peek_tok(ahead);
        return t && t->kind != TokenKind::StrLit && t->kind != TokenKind::CharLit && t->text == text;
    }
    bool is_kind(TokenKind k) const { return !at_end() && toks_[pos_].kind == k; }
    bool is_type_keyword() const {
        return is_kind(TokenKind::Keyword) && base_type(toks_[pos_].text).has_value();
    }

    [[noreturn]] void fail(const std::string& expected) const {
        if (at_end()) {
            SourcePos end = toks_.empty() ? SourcePos{} : toks_.back().span.end;
            throw ParseError("unexpected end of input", end.line, end.col, expected);
        }
        const Token& t = toks_[pos_];
        throw ParseError("unexpected '" + t.text + "'", t.line(), t.col(), expected);
    }

    const Token& take() { return toks_[pos_++]; }
    const Token& expect(std::string_view text) {
        if (!is(text)) fail("'" + std::string(text) + "'");
        return take();
    }
    const Token& expect_ident() {
        if (!is_kind(TokenKind::Ident)) fail("identifier");
        return take();
    }

    SourcePos begin_pos() const {
        if (at_end()) fail("token");
        return toks_[pos_].span.begin;
    }
    SourcePos last_end() const { return toks_[pos_ - 1].span.end; }
    void finish(RawNode& n, const SourcePos& begin) const { n.span = Span{begin, last_end()}; }

    TypeExpr type(bool allow_void) {
        if (!is_type_keyword()) fail("type");
        const Token& kw = take();
        TypeExpr t{*base_type(kw.text), std::nullopt};
        if (t.base == BaseType::Void && !allow_void) {
            --pos_;
            fail("non-void type");
        }
        if (is("[")) {
            if (t.base == BaseType::Void) fail("identifier");
            take();
            if (!is_kind(TokenKind::IntLit)) fail("array length");
            const Token& len = take();
            std::int64_t n = 0;
            auto [p, ec] = std::from_chars(len.text.data(), len.text.data() + len.text.size(), n);
            if (ec != std::errc{}) {
                --pos_;
                fail("array length");
            }
            t.array_len = n;
            expect("]");
        }
        return t;
    }

    RawPtr function() {
        SourcePos begin = begin_pos();
        TypeExpr ret = type(true);
        const Token& name = expect_ident();
        auto fn = make_raw(Production::FuncDef, name.text);
        fn->declared_type = ret;
        expect("(");
        if (!is(")")) {
            do {
                SourcePos pb = begin_pos();
                TypeExpr pt = type(false);
                const Token& pname = expect_ident();
                auto p = make_raw(Production::ParamDecl, pname.text);
                p->declared_type = pt;
                finish(*p, pb);
                fn->kids.push_back(std::move(p));
            } while (is(",") && (take(), true));
        }
        expect(")");
        fn->kids.push_back(block());
        finish(*fn, begin);
        return fn;
    }

    RawPtr block() {
        SourcePos begin = begin_pos();
        expect("{");
        auto b = make_raw(Production::Block);
        while (!is("}")) {
            if (at_end()) fail("'}'");
            b->kids.push_back(statement());
        }
        take();
        finish(*b, begin);
        return b;
    }

    RawPtr declaration(bool with_semicolon) {
        SourcePos begin = begin_pos();
        TypeExpr t = type(false);
        const Token& name = expect_ident();
        auto d = make_raw(Production::VarDecl, name.text);
        d->declared_type = t;
        if (is("=")) {
            take();
            d->kids.push_back(expression());
        }
        if (with_semicolon) expect(";");
        finish(*d, begin);
        return d;
    }

    // assignment or expression, without the trailing ';'
    RawPtr simple() {
        SourcePos begin = begin_pos();
        RawPtr lhs = expression();
        if (!is("=")) return lhs;
        if (lhs->production != Production::Ident && lhs->production != Production::Index)
            fail("';'");
        take();
        auto a = make_raw(Production::Assign, "=");
        a->kids.push_back(std::move(lhs));
        a->kids.push_back(expression());
        finish(*a, begin);
        return a;
    }

    RawPtr statement() {
        if (is("{")) return block();
        if (is_type_keyword()) return declaration(true);
        SourcePos begin = begin_pos();
        if (is("if")) {
            take();
            auto n = make_raw(Production::If, "if");
            expect("(");
            n->kids.push_back(expression());
            expect(")");
            n->kids.push_back(statement());
            if (is("else")) {
                take();
                n->kids.push_back(statement());
            }
            finish(*n, begin);
            return n;
        }
        if (is("while")) {
            take();
            auto n = make_raw(Production::While, "while");
            expect("(");
            n->kids.push_back(expression());
            expect(")");
            n->kids.push_back(statement());
            finish(*n, begin);
            return n;
        }
        if (is("for")) {
            take();
            auto n = make_raw(Production::For, "for");
            expect("(");
            n->kids.push_back(is_type_keyword() ? declaration(false) : simple());
            expect(";");
            n->kids.push_back(expression());
            expect(";");
            n->kids.push_back(simple());
            expect(")");
            n->kids.push_back(statement());
            finish(*n, begin);
            return n;
        }
        if (is("return")) {
            take();
            auto n = make_raw(Production::Return, "return");
            if (!is(";")) n->kids.push_back(expression());
            expect(";");
            finish(*n, begin);
            return n;
        }
        if (is_kind(TokenKind::Keyword)) fail("statement");
        RawPtr s = simple();
        expect(";");
        return s;
    }

    RawPtr expression(int min_prec = 1) {
        SourcePos begin = begin_pos();
        RawPtr lhs = unary();
        for (;;) {
            if (at_end() || toks_[pos_].kind != TokenKind::Op) break;
            int prec = binary_precedence(toks_[pos_].text);
            if (prec < min_prec || prec == 0) break;
            const Token& op = take();
            RawPtr rhs = expression(prec + 1);
            auto b = make_raw(Production::Binary, op.text);
            b->kids.push_back(std::move(lhs));
            b->kids.push_back(std::move(rhs));
            finish(*b, begin);
            lhs = std::move(b);
        }
        return lhs;
    }

    RawPtr unary() {
        if (is("-") || is("!")) {
            SourcePos begin = begin_pos();
            const Token& op = take();
            auto u = make_raw(Production::Unary, op.text);
            u->kids.push_back(unary());
            finish(*u, begin);
            return u;
        }
        return primary();
    }

    RawPtr primary() {
        SourcePos begin = begin_pos();
        if (is("(")) {
            take();
            RawPtr inner = expression();
            expect(")");
            return inner;
        }
        if (is_kind(TokenKind::Ident)) {
            const Token& name = take();
            if (is("(")) {
                take();
                auto c = make_raw(Production::Call, name.text);
                if (!is(")")) {
                    do {
                        c->kids.push_back(expression());
                    } while (is(",") && (take(), true));
                }
                expect(")");
                finish(*c, begin);
                return c;
            }
            auto id = make_raw(Production::Ident, name.text);
            finish(*id, begin);
            if (!is("[")) return id;
            take();
            auto ix = make_raw(Production::Index, "[]");
            ix->kids.push_back(std::move(id));
            ix->kids.push_back(expression());
            expect("]");
            finish(*ix, begin);
            return ix;
        }
        switch (at_end() ? TokenKind::Punct : toks_[pos_].kind) {
        case TokenKind::IntLit:
        case TokenKind::FloatLit:
        case TokenKind::StrLit:
        case TokenKind::CharLit: {
            const Token& lit = take();
            auto l = make_raw(Production::Literal, lit.text);
            l->literal_kind = lit.kind;
            finish(*l, begin);
            return l;
        }
        default:
            fail("expression");
        }
    }

    const std::vector<Token>& toks_;
    std::size_t pos_ = 0;
};

void flatten(const RawNode& raw, int parent, Ast& out) {
    int id = static_cast<int>(out.nodes.size());
    Classified c = classify(RawConstruct{raw.production, raw.lexeme, raw.declared_type, raw.literal_kind});
    AstNode node;
    node.id = id;
    node.cls = c.cls;
    node.name = std::move(c.name);
    node.data_type = std::move(c.data_type);
    node.span = raw.span;
    out.nodes.push_back(std::move(node));
    out.parent.push_back(parent);
    for (const auto& k : raw.kids) {
        out.nodes[static_cast<std::size_t>(id)].children.push_back(static_cast<int>(out.nodes.size()));
        flatten(*k, id, out);
    }
}

} // namespace

Ast parse(const std::vector<Token>& tokens, std::string_view /*source*/) {
    if (tokens.empty()) throw ParseError("empty input", 1, 1, "function definition");
    Parser p(tokens);
    RawPtr root = p.unit();
    Ast ast;
    flatten(*root, -1, ast);
    return ast;
}

int Ast::subtree_end(int id) const {
    int last = id;
    while (!nodes.at(static_cast<std::size_t>(last)).children.empty())
        last = nodes[static_cast<std::size_t>(last)].children.back();
    return last;
}

std::string TypeExpr::spelling() const {
    std::string s(to_string(base));
    if (array_len) s += "[" + std::to_string(*array_len) + "]";
    return s;
}

std::string dump(const Ast& ast) {
    std::ostringstream os;
    for (const auto& n : ast.nodes) {
        os << n.id << ' ' << to_string(n.cls) << ' ' << (n.name ? *n.name : "-") << ' '
           << (n.data_type ? n.data_type->spelling() : "-") << " [";
        for (std::size_t i = 0; i < n.children.size(); ++i) os << (i ? "," : "") << n.children[i];
        os << "] " << n.span.begin.line << ':' << n.span.begin.col << '-' << n.span.end.line << ':'
           << n.span.end.col << '\n';
    }
    return os.str();
}

} // namespace asg
