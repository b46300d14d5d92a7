#include "asg/corpus.hpp"
#include "asg/graph.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <set>

using namespace asg;
using asg::test::cflow;
using asg::test::find_node;
using asg::test::sorted;

namespace {

std::set<EdgeKind> kinds(const CodeGraph& g) {
    std::set<EdgeKind> out;
    for (const auto& e : g.edges) out.insert(e.kind);
    return out;
}

bool subset(const std::vector<Edge>& a, const std::vector<Edge>& b) {
    std::set<Edge> sb(b.begin(), b.end());
    for (const auto& e : a)
        if (!sb.count(e)) return false;
    return true;
}

int func_of(const Ast& ast, int id) {
    while (id >= 0 && ast.at(id).cls != ConstructClass::Func) id = ast.parent[static_cast<std::size_t>(id)];
    return id;
}

} // namespace

TEST_CASE("ast graph: single return") {
    CodeGraph g = build_variant("void f() { return; }", Variant::Ast);
    REQUIRE(g.nodes.size() == 3);
    CHECK(g.nodes[0].cls == ConstructClass::Func);
    CHECK(g.nodes[1].cls == ConstructClass::Block);
    CHECK(g.nodes[2].cls == ConstructClass::Control);
    CHECK(g.nodes[2].name == "RETURN");
    CHECK(g.edges.size() == 2);
}

TEST_CASE("ast graph: empty function") {
    CodeGraph g = build_variant("void f() { }", Variant::Ast);
    CHECK(g.nodes.size() == 2);
    CHECK(g.edges == std::vector<Edge>{{EdgeKind::AstChild, 0, 1}});
}

TEST_CASE("ast graph: child edges in child order, code text from spans") {
    std::string src = "int f(int x) { return x * 2; }";
    CodeGraph g = build_variant(src, Variant::Ast);
    Ast ast = parse_source(src);
    std::vector<Edge> want;
    for (const auto& n : ast.nodes)
        for (int c : n.children) want.push_back({EdgeKind::AstChild, n.id, c});
    CHECK(g.edges == want);
    CHECK(g.nodes[0].code_text == src);
    int mul = find_node(ast, ConstructClass::MathOp);
    CHECK(g.nodes[static_cast<std::size_t>(mul)].code_text == "x * 2");
}

TEST_CASE("ast graph: reference constructs get their classes") {
    std::string src = "void f() { int a; int[8] b; if (a >= 0) { f(a); } a * 0.01; g(stdout, 10.01, \"Hi\"); }";
    Ast ast = parse_source(src);
    using CC = ConstructClass;
    const std::vector<std::pair<std::string, CC>> rows = {
        {"int a;", CC::VarDecl}, {"if (a >= 0) { f(a); }", CC::Control}, {"a * 0.01", CC::MathOp},
        {"f(a)", CC::Call},      {"stdout", CC::Ident},                   {"{ f(a); }", CC::Block},
        {"10.01", CC::Literal},  {"\"Hi\"", CC::Literal},                 {"int[8] b;", CC::VarDecl},
    };
    for (const auto& [text, cls] : rows) {
        CAPTURE(text);
        CHECK(asg::test::node_with_text(ast, src, cls, text) >= 0);
    }
    int a_use = asg::test::node_with_text(ast, src, CC::Ident, "a", 1);
    CHECK(a_use >= 0);
}

TEST_CASE("cfg: sequence") {
    std::string src = "void f() { g(); h(); }";
    Ast ast = parse_source(src);
    int s1 = find_node(ast, ConstructClass::Call, "g");
    int s2 = find_node(ast, ConstructClass::Call, "h");
    CHECK(sorted(build_cfg_edges(ast)) == sorted({cflow(s1, s2), cflow(s2, 0)}));
}

TEST_CASE("cfg: if/else joins") {
    Ast ast = parse_source("void f(int c) { if (c) { g(); } else { h(); } k(); }");
    int i = find_node(ast, ConstructClass::Control, "IF");
    int s1 = find_node(ast, ConstructClass::Call, "g");
    int s2 = find_node(ast, ConstructClass::Call, "h");
    int s3 = find_node(ast, ConstructClass::Call, "k");
    CHECK(sorted(build_cfg_edges(ast)) ==
          sorted({cflow(i, s1), cflow(i, s2), cflow(s1, s3), cflow(s2, s3), cflow(s3, 0)}));
}

TEST_CASE("cfg: if without else falls through") {
    Ast ast = parse_source("void f(int c) { if (c) { g(); } k(); }");
    int i = find_node(ast, ConstructClass::Control, "IF");
    int s1 = find_node(ast, ConstructClass::Call, "g");
    int s3 = find_node(ast, ConstructClass::Call, "k");
    CHECK(sorted(build_cfg_edges(ast)) == sorted({cflow(i, s1), cflow(i, s3), cflow(s1, s3), cflow(s3, 0)}));
}

TEST_CASE("cfg: while loop") {
    Ast ast = parse_source("void f(int c) { while (c) { g(); } h(); }");
    int w = find_node(ast, ConstructClass::Control, "WHILE");
    int s1 = find_node(ast, ConstructClass::Call, "g");
    int s2 = find_node(ast, ConstructClass::Call, "h");
    CHECK(sorted(build_cfg_edges(ast)) == sorted({cflow(w, s1), cflow(s1, w), cflow(w, s2), cflow(s2, 0)}));
}

TEST_CASE("cfg: for loop runs init, test, body, step") {
    std::string src = "void f() { for (int i = 0; i < 3; i = i + 1) { g(); } }";
    Ast ast = parse_source(src);
    int loop = find_node(ast, ConstructClass::Control, "FOR");
    int init = find_node(ast, ConstructClass::VarDecl, "i");
    int step = find_node(ast, ConstructClass::Assign);
    int body = find_node(ast, ConstructClass::Call, "g");
    CHECK(sorted(build_cfg_edges(ast)) ==
          sorted({cflow(init, loop), cflow(loop, body), cflow(body, step), cflow(step, loop), cflow(loop, 0)}));
}

TEST_CASE("cfg: return ends the path, empty loop body loops to its head") {
    Ast ast = parse_source("int f(int c) { while (c) { } if (c) { return 1; } return 0; }");
    int w = find_node(ast, ConstructClass::Control, "WHILE");
    int i = find_node(ast, ConstructClass::Control, "IF");
    int r1 = find_node(ast, ConstructClass::Control, "RETURN", 0);
    int r2 = find_node(ast, ConstructClass::Control, "RETURN", 1);
    CHECK(sorted(build_cfg_edges(ast)) == sorted({cflow(w, w), cflow(w, i), cflow(i, r1), cflow(i, r2)}));
}

TEST_CASE("cfg: functions stay separate") {
    Ast ast = parse_source("void f() { g(); } void h() { k(); }");
    int f = find_node(ast, ConstructClass::Func, "f");
    int h = find_node(ast, ConstructClass::Func, "h");
    int s1 = find_node(ast, ConstructClass::Call, "g");
    int s2 = find_node(ast, ConstructClass::Call, "k");
    CHECK(sorted(build_cfg_edges(ast)) == sorted({cflow(s1, f), cflow(s2, h)}));
}

TEST_CASE("cfg sanity over generated programs") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::string src = random_program(seed);
        CAPTURE(src);
        Ast ast = parse_source(src);
        auto cfg = build_cfg_edges(ast);
        std::vector<int> out(ast.size(), 0);
        for (const auto& e : cfg) {
            ++out[static_cast<std::size_t>(e.src)];
            CHECK(func_of(ast, e.src) == func_of(ast, e.dst));
        }
        for (int s : statement_nodes(ast)) {
            const AstNode& n = ast.at(s);
            if (n.cls == ConstructClass::Control && n.name == "RETURN")
                CHECK(out[static_cast<std::size_t>(s)] == 0);
            else
                CHECK(out[static_cast<std::size_t>(s)] >= 1);
        }
    }
}

TEST_CASE("variants: edge kinds") {
    std::string src = "void f() { int a; f(a); }";
    CHECK(kinds(build_variant(src, Variant::Ast)) == std::set<EdgeKind>{EdgeKind::AstChild});
    CHECK(kinds(build_variant(src, Variant::Asg)) == std::set<EdgeKind>{EdgeKind::AstChild, EdgeKind::NameDep});
    CHECK(kinds(build_variant(src, Variant::AstPlus)) == std::set<EdgeKind>{EdgeKind::AstChild, EdgeKind::CFlow});
}

TEST_CASE("variants: ASG of int a; f(a);") {
    std::string src = "void h() { int a; f(a); }";
    CodeGraph g = build_variant(src, Variant::Asg);
    auto nd = g.edges_of(EdgeKind::NameDep);
    REQUIRE(nd.size() == 1);
    const GraphNode& use = g.nodes[static_cast<std::size_t>(nd[0].src)];
    const GraphNode& decl = g.nodes[static_cast<std::size_t>(nd[0].dst)];
    CHECK(use.cls == ConstructClass::Ident);
    CHECK(decl.cls == ConstructClass::VarDecl);
    CHECK_FALSE(use.name);
    CHECK_FALSE(decl.name);
    CHECK(use.type == TypeExpr{BaseType::Int, std::nullopt});
    int call = find_node(parse_source(src), ConstructClass::Call);
    CHECK(g.nodes[static_cast<std::size_t>(call)].name == "f");
    CHECK(g.nodes[0].name == "h");

    // ASG+ adds exactly the flow edges of the standalone builders
    Analysis an = analyze(src);
    auto cfg = build_cfg_edges(an.ast);
    auto dd = build_data_dep_edges(an.ast, cfg, an.names);
    CodeGraph plus = build_variant(src, Variant::AsgPlus);
    CHECK(plus.edges.size() == g.edges.size() + cfg.size() + dd.size());
    CHECK(cfg.size() == 2);
    CHECK(dd.empty()); // a declaration without initializer defines nothing
}

TEST_CASE("variants: monotone edge sets and exact name erasure") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::string src = random_program(seed);
        CAPTURE(src);
        Analysis an = analyze(src);
        CodeGraph ast = build_variant(an, src, Variant::Ast);
        CodeGraph astp = build_variant(an, src, Variant::AstPlus);
        CodeGraph asg = build_variant(an, src, Variant::Asg);
        CodeGraph asgp = build_variant(an, src, Variant::AsgPlus);
        CHECK(subset(ast.edges, asg.edges));
        CHECK(subset(asg.edges, asgp.edges));
        CHECK(subset(ast.edges, astp.edges));
        CHECK(astp.edges_of(EdgeKind::NameDep).empty());
        CHECK(asgp.edges.size() == asg.edges.size() + astp.edges.size() - ast.edges.size());

        for (const CodeGraph* g : {&asg, &asgp}) {
            for (std::size_t i = 0; i < g->nodes.size(); ++i) {
                const GraphNode& before = ast.nodes[i];
                const GraphNode& after = g->nodes[i];
                CHECK(before.type == after.type);
                if (!before.name || before.cls == ConstructClass::Literal) continue;
                bool erase = before.cls == ConstructClass::VarDecl || before.cls == ConstructClass::Param ||
                             (before.cls == ConstructClass::Ident && before.resolved);
                CHECK(after.name.has_value() == !erase);
                if (after.name) CHECK(after.name == before.name);
            }
        }
        for (const auto& n : astp.nodes) CHECK(n.name == ast.nodes[static_cast<std::size_t>(n.id)].name);
    }
}

TEST_CASE("variants: literal values drop unless kept") {
    std::string src = "void f() { g(1, 'c'); }";
    CodeGraph plain = build_variant(src, Variant::Asg);
    CodeGraph kept = build_variant(src, Variant::Asg, BuildOptions{true});
    int lit = find_node(parse_source(src), ConstructClass::Literal);
    CHECK_FALSE(plain.nodes[static_cast<std::size_t>(lit)].name);
    CHECK(kept.nodes[static_cast<std::size_t>(lit)].name == "1");
    CHECK(plain.nodes[static_cast<std::size_t>(lit)].type == TypeExpr{BaseType::Int, std::nullopt});
}

TEST_CASE("variants: names round-trip through strings") {
    for (Variant v : {Variant::Ast, Variant::AstPlus, Variant::Asg, Variant::AsgPlus})
        CHECK(variant_from_string(to_string(v)) == v);
    CHECK(variant_from_string("asg+") == Variant::AsgPlus);
    CHECK_FALSE(variant_from_string("cpg"));
}
