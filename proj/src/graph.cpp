#include "asg/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace asg {

namespace {

bool is_unit_wrapper(const Ast& ast, int id) {
    const AstNode& n = ast.at(id);
    return id == 0 && n.cls == ConstructClass::Block && !n.children.empty() &&
           ast.at(n.children.front()).cls == ConstructClass::Func;
}

std::vector<int> functions(const Ast& ast) {
    if (ast.root().cls == ConstructClass::Func) return {0};
    if (is_unit_wrapper(ast, 0)) return ast.root().children;
    return {};
}

class FlowBuilder {
public:
    explicit FlowBuilder(const Ast& ast) : ast_(ast) {}

    // Links `stmt` so that control continues at `follow`; returns the entry.
    int build(int stmt, int follow) {
        const AstNode& n = ast_.at(stmt);
        if (n.cls == ConstructClass::Block) {
            int next = follow;
            for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) next = build(*it, next);
            return next;
        }
        if (n.cls != ConstructClass::Control) {
            link(stmt, follow);
            return stmt;
        }
        const auto& k = n.children;
        if (n.name == "IF") {
            link(stmt, build(k[1], follow));
            link(stmt, k.size() > 2 ? build(k[2], follow) : follow);
            return stmt;
        }
        if (n.name == "WHILE") {
            link(stmt, build(k[1], stmt));
            link(stmt, follow);
            return stmt;
        }
        if (n.name == "FOR") {
            int step = build(k[2], stmt);
            link(stmt, build(k[3], step));
            link(stmt, follow);
            return build(k[0], stmt);
        }
        return stmt; // RETURN
    }

    std::vector<Edge> edges() const { return {edges_.begin(), edges_.end()}; }

private:
    void link(int from, int to) { edges_.insert(Edge{EdgeKind::CFlow, from, to}); }

    const Ast& ast_;
    std::set<Edge> edges_;
};

void collect_statements(const Ast& ast, int id, std::vector<int>& out) {
    const AstNode& n = ast.at(id);
    if (n.cls == ConstructClass::Block) {
        for (int c : n.children) collect_statements(ast, c, out);
        return;
    }
    out.push_back(id);
    if (n.cls != ConstructClass::Control) return;
    if (n.name == "IF" || n.name == "WHILE") {
        for (std::size_t i = 1; i < n.children.size(); ++i) collect_statements(ast, n.children[i], out);
    } else if (n.name == "FOR") {
        collect_statements(ast, n.children[0], out);
        collect_statements(ast, n.children[2], out);
        collect_statements(ast, n.children[3], out);
    }
}

void collect_idents(const Ast& ast, int id, std::vector<int>& out) {
    const AstNode& n = ast.at(id);
    if (n.cls == ConstructClass::Ident) out.push_back(id);
    for (int c : n.children) collect_idents(ast, c, out);
}

// Ident nodes read by a statement (condition only, for control statements).
std::vector<int> statement_uses(const Ast& ast, int stmt) {
    const AstNode& n = ast.at(stmt);
    std::vector<int> out;
    switch (n.cls) {
    case ConstructClass::VarDecl:
        for (int c : n.children) collect_idents(ast, c, out);
        break;
    case ConstructClass::Assign: {
        const AstNode& target = ast.at(n.children[0]);
        if (target.cls == ConstructClass::Index) collect_idents(ast, target.children[1], out);
        collect_idents(ast, n.children[1], out);
        break;
    }
    case ConstructClass::Control:
        if (n.name == "FOR") {
            collect_idents(ast, n.children[1], out);
        } else if (!n.children.empty()) {
            collect_idents(ast, n.children[0], out);
        }
        break;
    default:
        collect_idents(ast, stmt, out);
        break;
    }
    return out;
}

// Declaration written by a statement, if any. Writing an element defines the whole array.
std::optional<int> defined_declaration(const Ast& ast, int stmt, const Resolution& names) {
    const AstNode& n = ast.at(stmt);
    if (n.cls == ConstructClass::VarDecl) return stmt;
    if (n.cls != ConstructClass::Assign) return std::nullopt;
    int target = n.children[0];
    if (ast.at(target).cls == ConstructClass::Index) target = ast.at(target).children[0];
    return names.declaration(target);
}

bool generates_definition(const Ast& ast, int stmt) {
    const AstNode& n = ast.at(stmt);
    return n.cls == ConstructClass::Assign || (n.cls == ConstructClass::VarDecl && !n.children.empty());
}

std::optional<TypeExpr> element_type(const std::optional<TypeExpr>& t) {
    if (!t) return std::nullopt;
    return TypeExpr{t->base, std::nullopt};
}

} // namespace

std::string_view to_string(Variant v) {
    switch (v) {
    case Variant::Ast: return "AST";
    case Variant::AstPlus: return "AST_PLUS";
    case Variant::Asg: return "ASG";
    case Variant::AsgPlus: return "ASG_PLUS";
    }
    return "?";
}

std::optional<Variant> variant_from_string(std::string_view text) {
    if (text == "AST" || text == "ast") return Variant::Ast;
    if (text == "AST_PLUS" || text == "ast+") return Variant::AstPlus;
    if (text == "ASG" || text == "asg") return Variant::Asg;
    if (text == "ASG_PLUS" || text == "asg+") return Variant::AsgPlus;
    return std::nullopt;
}

std::string_view to_string(EdgeKind k) {
    switch (k) {
    case EdgeKind::AstChild: return "AST_CHILD";
    case EdgeKind::NameDep: return "NAME_DEP";
    case EdgeKind::CFlow: return "CFLOW";
    case EdgeKind::DataDep: return "DATA_DEP";
    }
    return "?";
}

std::optional<EdgeKind> edge_kind_from_string(std::string_view text) {
    for (auto k : {EdgeKind::AstChild, EdgeKind::NameDep, EdgeKind::CFlow, EdgeKind::DataDep})
        if (to_string(k) == text) return k;
    return std::nullopt;
}

std::vector<Edge> CodeGraph::edges_of(EdgeKind kind) const {
    std::vector<Edge> out;
    std::copy_if(edges.begin(), edges.end(), std::back_inserter(out),
                 [kind](const Edge& e) { return e.kind == kind; });
    return out;
}

Analysis analyze(std::string_view source) {
    Analysis a;
    a.ast = parse_source(source);
    a.scopes = build_scope_tree(a.ast);
    a.names = resolve_names(a.ast, a.scopes);
    return a;
}

CodeGraph build_ast_graph(const Ast& ast, std::string_view source, const Resolution& names) {
    CodeGraph g;
    g.variant = Variant::Ast;
    g.nodes.reserve(ast.size());
    for (const auto& n : ast.nodes) {
        GraphNode gn;
        gn.id = n.id;
        gn.cls = n.cls;
        gn.name = n.name;
        gn.type = n.data_type;
        gn.span = n.span;
        gn.code_text = std::string(source.substr(n.span.begin.offset, n.span.size()));
        if (n.cls == ConstructClass::Ident) {
            if (auto d = names.declaration(n.id)) {
                gn.resolved = true;
                gn.type = ast.at(*d).data_type;
            }
        } else if (n.cls == ConstructClass::Index) {
            if (auto d = names.declaration(n.children.front())) gn.type = element_type(ast.at(*d).data_type);
        }
        g.nodes.push_back(std::move(gn));
        for (int c : n.children) g.edges.push_back(Edge{EdgeKind::AstChild, n.id, c});
    }
    return g;
}

std::vector<int> statement_nodes(const Ast& ast) {
    std::vector<int> out;
    for (int f : functions(ast)) collect_statements(ast, ast.at(f).children.back(), out);
    return out;
}

int flow_entry(const Ast& ast, int stmt, int follow) {
    const AstNode& n = ast.at(stmt);
    if (n.cls == ConstructClass::Block) {
        int next = follow;
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) next = flow_entry(ast, *it, next);
        return next;
    }
    if (n.cls == ConstructClass::Control && n.name == "FOR") return n.children.front();
    return stmt;
}

std::vector<Edge> build_cfg_edges(const Ast& ast) {
    FlowBuilder fb(ast);
    for (int f : functions(ast)) fb.build(ast.at(f).children.back(), f);
    return fb.edges();
}

std::vector<Edge> build_data_dep_edges(const Ast& ast, const std::vector<Edge>& cfg,
                                       const Resolution& names) {
    std::map<int, std::vector<int>> preds;
    for (const auto& e : cfg)
        if (e.kind == EdgeKind::CFlow) preds[e.dst].push_back(e.src);

    std::set<Edge> out;
    for (int f : functions(ast)) {
        const AstNode& fn = ast.at(f);
        std::vector<int> stmts;
        collect_statements(ast, fn.children.back(), stmts);
        if (stmts.empty()) continue;

        std::map<int, int> decl_of_def; // def node -> declaration
        std::set<int> entry_defs;
        for (int c : fn.children) {
            if (ast.at(c).cls == ConstructClass::Param) {
                decl_of_def[c] = c;
                entry_defs.insert(c);
            }
        }
        std::map<int, std::optional<int>> writes;
        for (int s : stmts) {
            writes[s] = defined_declaration(ast, s, names);
            if (writes[s] && generates_definition(ast, s)) decl_of_def[s] = *writes[s];
        }

        int entry = flow_entry(ast, fn.children.back(), f);
        std::map<int, std::set<int>> in, outset;
        auto transfer = [&](int s, const std::set<int>& reach) {
            std::set<int> result;
            const auto& w = writes[s];
            for (int d : reach)
                if (!w || decl_of_def.at(d) != *w) result.insert(d);
            if (w && generates_definition(ast, s)) result.insert(s);
            return result;
        };

        bool changed = true;
        while (changed) {
            changed = false;
            for (int s : stmts) {
                std::set<int> reach = s == entry ? entry_defs : std::set<int>{};
                for (int p : preds[s])
                    if (auto it = outset.find(p); it != outset.end()) reach.insert(it->second.begin(), it->second.end());
                std::set<int> next = transfer(s, reach);
                if (next != outset[s] || reach != in[s]) {
                    in[s] = std::move(reach);
                    outset[s] = std::move(next);
                    changed = true;
                }
            }
        }

        for (int s : stmts) {
            for (int use : statement_uses(ast, s)) {
                auto decl = names.declaration(use);
                if (!decl) continue;
                for (int d : in[s])
                    if (decl_of_def.at(d) == *decl) out.insert(Edge{EdgeKind::DataDep, d, use});
            }
        }
    }
    return {out.begin(), out.end()};
}

CodeGraph build_variant(const Analysis& a, std::string_view source, Variant variant,
                        const BuildOptions& opts) {
    CodeGraph g = build_ast_graph(a.ast, source, a.names);
    g.variant = variant;
    if (has_name_dependence(variant)) {
        for (const auto& e : a.names.edges) g.edges.push_back(Edge{EdgeKind::NameDep, e.use_node, e.decl_node});
        for (auto& n : g.nodes) {
            bool erase = n.cls == ConstructClass::VarDecl || n.cls == ConstructClass::Param ||
                         (n.cls == ConstructClass::Ident && n.resolved) ||
                         (n.cls == ConstructClass::Literal && !opts.keep_literals);
            if (erase) n.name.reset();
        }
    }
    if (has_flow(variant)) {
        std::vector<Edge> cfg = build_cfg_edges(a.ast);
        std::vector<Edge> dd = build_data_dep_edges(a.ast, cfg, a.names);
        g.edges.insert(g.edges.end(), cfg.begin(), cfg.end());
        g.edges.insert(g.edges.end(), dd.begin(), dd.end());
    }
    return g;
}

CodeGraph build_variant(std::string_view source, Variant variant, const BuildOptions& opts) {
    return build_variant(analyze(source), source, variant, opts);
}

} // namespace asg
