#pragma once

// Code graphs: AST, AST+ (control flow and def-use), ASG (name dependence,
// variable names erased) and ASG+.

#include "asg/frontend.hpp"
#include "asg/resolver.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asg {

enum class Variant : std::uint8_t { Ast, AstPlus, Asg, AsgPlus };

/// `AST`, `AST_PLUS`, `ASG`, `ASG_PLUS`.
std::string_view to_string(Variant v);
/// Accepts both the record spelling and the CLI spelling (`ast+`, `asg`).
std::optional<Variant> variant_from_string(std::string_view text);

constexpr bool has_name_dependence(Variant v) { return v == Variant::Asg || v == Variant::AsgPlus; }
constexpr bool has_flow(Variant v) { return v == Variant::AstPlus || v == Variant::AsgPlus; }

enum class EdgeKind : std::uint8_t { AstChild, NameDep, CFlow, DataDep };

std::string_view to_string(EdgeKind k);
std::optional<EdgeKind> edge_kind_from_string(std::string_view text);

struct Edge {
    EdgeKind kind = EdgeKind::AstChild;
    int src = 0;
    int dst = 0;

    // orders by (kind, src, dst)
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct GraphNode {
    int id = 0;
    ConstructClass cls = ConstructClass::Block;
    std::optional<std::string> name;
    std::optional<TypeExpr> type;
    bool resolved = false; // ident bound to a declaration
    Span span;
    std::string code_text;
};

struct CodeGraph {
    Variant variant = Variant::Ast;
    std::vector<GraphNode> nodes;
    std::vector<Edge> edges;
    std::optional<int> label;

    std::vector<Edge> edges_of(EdgeKind kind) const;
};

struct BuildOptions {
    /// Keep literal values in ASG/ASG+ (they are erased by default).
    bool keep_literals = false;
};

/// Front-end products for one source text.
struct Analysis {
    Ast ast;
    ScopeTree scopes;
    Resolution names;
};

Analysis analyze(std::string_view source);

/// Tree-only graph with every name kept. Ident and index nodes take their
/// type from the resolved declaration.
CodeGraph build_ast_graph(const Ast& ast, std::string_view source, const Resolution& names);

/// Non-block statements, in pre-order: the nodes the control-flow graph runs over.
std::vector<int> statement_nodes(const Ast& ast);

/// First statement executed when control enters `stmt`, or `follow` when
/// `stmt` is an empty block.
int flow_entry(const Ast& ast, int stmt, int follow);

/// Statement-level control flow. Falling off the end of a function flows
/// to the func node; RETURN has no successor.
std::vector<Edge> build_cfg_edges(const Ast& ast);

/// Reaching definitions: edge from each defining statement (initialised
/// varDecl, assign, or param) to every ident use it reaches.
std::vector<Edge> build_data_dep_edges(const Ast& ast, const std::vector<Edge>& cfg,
                                       const Resolution& names);

CodeGraph build_variant(std::string_view source, Variant variant, const BuildOptions& opts = {});
CodeGraph build_variant(const Analysis& analysis, std::string_view source, Variant variant,
                        const BuildOptions& opts = {});

} // namespace asg
