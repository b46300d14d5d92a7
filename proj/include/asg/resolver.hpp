#pragma once

#include "asg/frontend.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace asg {

struct Scope {
    int id = 0;
    std::optional<int> parent;
    int owner = 0; // AST node that opened the scope
    std::map<std::string, int> bindings; // name -> varDecl/param node id
};

/// Lexical scopes of one AST. Scope 0 is the root; a function's top-level
/// block shares the function scope; nested blocks and `for` open new ones.
struct ScopeTree {
    std::vector<Scope> scopes;
    std::vector<int> scope_of; // innermost scope enclosing each AST node

    const Scope& at(int id) const { return scopes.at(static_cast<std::size_t>(id)); }
};

/// Use (ident) -> declaration (varDecl or param).
struct NameDepEdge {
    int use_node = 0;
    int decl_node = 0;

    friend auto operator<=>(const NameDepEdge&, const NameDepEdge&) = default;
};

struct Resolution {
    std::vector<NameDepEdge> edges; // sorted by use_node
    std::vector<int> unresolved;    // ident node ids, ascending
    std::vector<int> decl_of;       // per AST node; -1 when not a resolved ident

    std::optional<int> declaration(int use) const {
        int d = decl_of.at(static_cast<std::size_t>(use));
        return d < 0 ? std::nullopt : std::optional<int>(d);
    }
};

/// Throws DuplicateDeclaration on a same-scope redeclaration.
ScopeTree build_scope_tree(const Ast& ast);

/// Binds every ident to its innermost visible declaration. A declaration is
/// visible after its declarator (initializer included) ends. Call targets
/// are not idents and never resolve.
Resolution resolve_names(const Ast& ast, const ScopeTree& scopes);

} // namespace asg
