#include "asg/frontend.hpp"

#include <array>
#include <utility>

namespace asg {

namespace {

struct OpEntry {
    std::string_view lexeme;
    ConstructClass cls;
    std::string_view name;
};

constexpr std::array<OpEntry, 13> kBinaryOps = {{
    {"+", ConstructClass::MathOp, "ADD"},
    {"-", ConstructClass::MathOp, "SUB"},
    {"*", ConstructClass::MathOp, "MUL"},
    {"/", ConstructClass::MathOp, "DIV"},
    {"%", ConstructClass::MathOp, "MOD"},
    {"<", ConstructClass::CmpOp, "LT"},
    {">", ConstructClass::CmpOp, "GT"},
    {"<=", ConstructClass::CmpOp, "LE"},
    {">=", ConstructClass::CmpOp, "GE"},
    {"==", ConstructClass::CmpOp, "EQ"},
    {"!=", ConstructClass::CmpOp, "NE"},
    {"&&", ConstructClass::LogicOp, "AND"},
    {"||", ConstructClass::LogicOp, "OR"},
}};

BaseType literal_type(TokenKind kind) {
    switch (kind) {
    case TokenKind::FloatLit: return BaseType::Float;
    case TokenKind::StrLit: return BaseType::Str;
    case TokenKind::CharLit: return BaseType::Char;
    default: return BaseType::Int;
    }
}

} // namespace

std::string_view to_string(BaseType base) {
    switch (base) {
    case BaseType::Int: return "int";
    case BaseType::Float: return "float";
    case BaseType::Char: return "char";
    case BaseType::Str: return "str";
    case BaseType::Void: return "void";
    }
    return "?";
}

std::string_view to_string(ConstructClass cls) {
    switch (cls) {
    case ConstructClass::Func: return "func";
    case ConstructClass::Param: return "param";
    case ConstructClass::VarDecl: return "varDecl";
    case ConstructClass::Block: return "block";
    case ConstructClass::Control: return "control";
    case ConstructClass::MathOp: return "mathOp";
    case ConstructClass::CmpOp: return "cmpOp";
    case ConstructClass::LogicOp: return "logicOp";
    case ConstructClass::Assign: return "assign";
    case ConstructClass::Call: return "call";
    case ConstructClass::Ident: return "ident";
    case ConstructClass::Literal: return "literal";
    case ConstructClass::Index: return "index";
    }
    return "?";
}

std::optional<ConstructClass> construct_class_from_string(std::string_view text) {
    for (int i = 0; i <= static_cast<int>(ConstructClass::Index); ++i) {
        auto cls = static_cast<ConstructClass>(i);
        if (to_string(cls) == text) return cls;
    }
    return std::nullopt;
}

Classified classify(const RawConstruct& raw) {
    auto named = [&](ConstructClass cls, std::string_view name,
                     std::optional<TypeExpr> type = std::nullopt) {
        return Classified{cls, std::string(name), std::move(type)};
    };
    switch (raw.production) {
    case Production::FuncDef: return named(ConstructClass::Func, raw.lexeme, raw.declared_type);
    case Production::ParamDecl: return named(ConstructClass::Param, raw.lexeme, raw.declared_type);
    case Production::VarDecl: return named(ConstructClass::VarDecl, raw.lexeme, raw.declared_type);
    case Production::Block:
    case Production::Unit: return Classified{ConstructClass::Block, std::nullopt, std::nullopt};
    case Production::If: return named(ConstructClass::Control, "IF");
    case Production::While: return named(ConstructClass::Control, "WHILE");
    case Production::For: return named(ConstructClass::Control, "FOR");
    case Production::Return: return named(ConstructClass::Control, "RETURN");
    case Production::Assign: return named(ConstructClass::Assign, "ASSIGN");
    case Production::Index: return named(ConstructClass::Index, "INDEX");
    case Production::Call: return named(ConstructClass::Call, raw.lexeme);
    // identifier types come from their declaration, attached after resolution
    case Production::Ident: return named(ConstructClass::Ident, raw.lexeme);
    case Production::Literal:
        return named(ConstructClass::Literal, raw.lexeme, TypeExpr{literal_type(raw.literal_kind), std::nullopt});
    case Production::Unary:
        if (raw.lexeme == "!") return named(ConstructClass::LogicOp, "NOT");
        return named(ConstructClass::MathOp, "SUB");
    case Production::Binary:
        for (const auto& op : kBinaryOps)
            if (op.lexeme == raw.lexeme) return named(op.cls, op.name);
        break;
    }
    // unreachable for parser-produced constructs
    return Classified{ConstructClass::Block, std::nullopt, std::nullopt};
}

} // namespace asg
