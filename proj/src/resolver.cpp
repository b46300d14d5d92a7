#include "asg/resolver.hpp"

#include "asg/error.hpp"

namespace asg {

namespace {

class ScopeBuilder {
public:
    explicit ScopeBuilder(const Ast& ast) : ast_(ast) {
        tree_.scope_of.assign(ast.size(), 0);
    }

    ScopeTree run() {
        open(std::nullopt, 0);
        walk(0, 0);
        return std::move(tree_);
    }

private:
    int open(std::optional<int> parent, int owner) {
        int id = static_cast<int>(tree_.scopes.size());
        tree_.scopes.push_back(Scope{id, parent, owner, {}});
        return id;
    }

    void bind(int scope, const AstNode& decl) {
        auto& bindings = tree_.scopes[static_cast<std::size_t>(scope)].bindings;
        if (!bindings.emplace(*decl.name, decl.id).second)
            throw DuplicateDeclaration(*decl.name, decl.span.begin.line, decl.span.begin.col);
    }

    void walk_children(const AstNode& n, int scope) {
        for (int c : n.children) walk(c, scope);
    }

    void walk(int id, int scope) {
        const AstNode& n = ast_.at(id);
        tree_.scope_of[static_cast<std::size_t>(id)] = scope;
        switch (n.cls) {
        case ConstructClass::Func: {
            int fs = open(scope, id);
            for (int c : n.children) {
                const AstNode& child = ast_.at(c);
                tree_.scope_of[static_cast<std::size_t>(c)] = fs;
                if (child.cls == ConstructClass::Param) {
                    bind(fs, child);
                } else {
                    walk_children(child, fs); // body block shares the function scope
                }
            }
            return;
        }
        case ConstructClass::Block:
            if (id == 0 && ast_.parent[0] < 0 && !n.children.empty() &&
                ast_.at(n.children.front()).cls == ConstructClass::Func) {
                walk_children(n, scope); // translation-unit wrapper
                return;
            }
            walk_children(n, open(scope, id));
            return;
        case ConstructClass::Control:
            if (n.name == "FOR") {
                walk_children(n, open(scope, id));
                return;
            }
            walk_children(n, scope);
            return;
        case ConstructClass::VarDecl:
            walk_children(n, scope);
            bind(scope, n);
            return;
        default:
            walk_children(n, scope);
            return;
        }
    }

    const Ast& ast_;
    ScopeTree tree_;
};

} // namespace

ScopeTree build_scope_tree(const Ast& ast) { return ScopeBuilder(ast).run(); }

Resolution resolve_names(const Ast& ast, const ScopeTree& scopes) {
    Resolution r;
    r.decl_of.assign(ast.size(), -1);
    for (const auto& n : ast.nodes) {
        if (n.cls != ConstructClass::Ident) continue;
        std::optional<int> scope = scopes.scope_of.at(static_cast<std::size_t>(n.id));
        int found = -1;
        while (scope && found < 0) {
            const Scope& s = scopes.at(*scope);
            if (auto it = s.bindings.find(*n.name); it != s.bindings.end()) {
                if (n.id > ast.subtree_end(it->second)) found = it->second;
            }
            scope = s.parent;
        }
        if (found < 0) {
            r.unresolved.push_back(n.id);
        } else {
            r.decl_of[static_cast<std::size_t>(n.id)] = found;
            r.edges.push_back(NameDepEdge{n.id, found});
        }
    }
    return r;
}

} // namespace asg
