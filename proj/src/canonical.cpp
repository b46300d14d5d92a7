#include "asg/canonical.hpp"

#include "asg/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace asg {

CanonicalForm canonical_form(const EncodedGraph& g) {
    std::ostringstream os;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto& n = g.nodes[i];
        os << i << '|' << n.class_token << '|' << n.name_token << '|' << n.type_token << '\n';
    }
    std::vector<Edge> edges = g.edges;
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) os << to_string(e.kind) << '|' << e.src << '|' << e.dst << '\n';
    return CanonicalForm{os.str()};
}

CanonicalForm canonical_asg(std::string_view source, Variant variant, const BuildOptions& opts) {
    EncodeOptions enc = EncodeOptions::for_variant(variant);
    enc.keep_literals = opts.keep_literals;
    return canonical_form(encode_graph(build_variant(source, variant, opts), enc));
}

bool alpha_equivalent(std::string_view src_a, std::string_view src_b, Variant variant,
                      const BuildOptions& opts) {
    if (!has_name_dependence(variant)) throw ConfigError("alpha equivalence needs an ASG variant");
    return canonical_asg(src_a, variant, opts) == canonical_asg(src_b, variant, opts);
}

namespace {

std::string_view operator_lexeme(ConstructClass cls, std::string_view name) {
    static const std::map<std::string_view, std::string_view> ops = {
        {"ADD", "+"}, {"SUB", "-"}, {"MUL", "*"}, {"DIV", "/"}, {"MOD", "%"},
        {"LT", "<"},  {"GT", ">"},  {"LE", "<="}, {"GE", ">="}, {"EQ", "=="},
        {"NE", "!="}, {"AND", "&&"}, {"OR", "||"}, {"NOT", "!"},
    };
    auto it = ops.find(name);
    if (it == ops.end()) throw MalformedAsg("unknown operator " + std::string(name) + " on " + std::string(to_string(cls)));
    return it->second;
}

std::string placeholder(const std::optional<TypeExpr>& t) {
    switch (t ? t->base : BaseType::Int) {
    case BaseType::Float: return "0.0";
    case BaseType::Char: return "'?'";
    case BaseType::Str: return "\"\"";
    default: return "0";
    }
}

class Printer {
public:
    explicit Printer(const CodeGraph& g) : g_(g), kids_(g.nodes.size()), names_(g.nodes.size()) {
        std::vector<int> decl_of(g.nodes.size(), -1);
        for (const auto& e : g.edges) {
            check(e.src);
            check(e.dst);
            if (e.kind == EdgeKind::AstChild) kids_[static_cast<std::size_t>(e.src)].push_back(e.dst);
            if (e.kind == EdgeKind::NameDep) decl_of[static_cast<std::size_t>(e.src)] = e.dst;
        }
        for (auto& k : kids_) std::sort(k.begin(), k.end());

        int fresh = 0;
        int fresh_fn = 0;
        for (const auto& n : g.nodes) {
            auto& slot = names_[static_cast<std::size_t>(n.id)];
            if (n.cls == ConstructClass::VarDecl || n.cls == ConstructClass::Param) {
                slot = "v" + std::to_string(fresh++);
            } else if (n.cls == ConstructClass::Func) {
                slot = n.name ? *n.name : "v_fn" + (fresh_fn ? std::to_string(fresh_fn) : "");
                ++fresh_fn;
            }
        }
        for (const auto& n : g.nodes) {
            if (n.cls != ConstructClass::Ident) continue;
            int d = decl_of[static_cast<std::size_t>(n.id)];
            if (d >= 0) {
                const auto& target = g.nodes[static_cast<std::size_t>(d)];
                if (target.cls != ConstructClass::VarDecl && target.cls != ConstructClass::Param)
                    throw MalformedAsg("NAME_DEP edge from " + std::to_string(n.id) + " does not reach a declaration");
                names_[static_cast<std::size_t>(n.id)] = names_[static_cast<std::size_t>(d)];
            } else if (n.name) {
                names_[static_cast<std::size_t>(n.id)] = *n.name;
            } else {
                throw MalformedAsg("ident " + std::to_string(n.id) + " has neither a name nor a NAME_DEP edge");
            }
        }
    }

    std::string run() {
        if (g_.nodes.empty()) throw MalformedAsg("empty graph");
        const GraphNode& root = g_.nodes.front();
        if (root.cls == ConstructClass::Func) {
            function(0);
        } else {
            for (int f : kids(0)) function(f);
        }
        return os_.str();
    }

private:
    void check(int id) const {
        if (id < 0 || static_cast<std::size_t>(id) >= g_.nodes.size())
            throw MalformedAsg("edge endpoint out of range: " + std::to_string(id));
    }
    const GraphNode& node(int id) const { return g_.nodes[static_cast<std::size_t>(id)]; }
    const std::vector<int>& kids(int id) const { return kids_[static_cast<std::size_t>(id)]; }
    const std::string& name(int id) const { return names_[static_cast<std::size_t>(id)]; }
    int kid(int id, std::size_t i) const {
        const auto& k = kids(id);
        if (i >= k.size()) throw MalformedAsg("node " + std::to_string(id) + " is missing child " + std::to_string(i));
        return k[i];
    }

    std::string type_of(int id) const {
        const auto& t = node(id).type;
        if (!t) throw MalformedAsg("declaration " + std::to_string(id) + " has no type");
        return t->spelling();
    }

    void indent(int depth) { os_ << std::string(static_cast<std::size_t>(depth) * 4, ' '); }

    void function(int id) {
        if (node(id).cls != ConstructClass::Func) throw MalformedAsg("expected a function at node " + std::to_string(id));
        os_ << type_of(id) << ' ' << name(id) << '(';
        const auto& k = kids(id);
        if (k.empty()) throw MalformedAsg("function without body");
        for (std::size_t i = 0; i + 1 < k.size(); ++i)
            os_ << (i ? ", " : "") << type_of(k[i]) << ' ' << name(k[i]);
        os_ << ") ";
        statement(k.back(), 0);
        os_ << '\n';
    }

    std::string declaration(int id) {
        std::string s = type_of(id) + " " + name(id);
        if (!kids(id).empty()) s += " = " + expr(kid(id, 0));
        return s;
    }

    std::string simple(int id) {
        const GraphNode& n = node(id);
        if (n.cls == ConstructClass::VarDecl) return declaration(id);
        if (n.cls == ConstructClass::Assign) return expr(kid(id, 0)) + " = " + expr(kid(id, 1));
        return expr(id);
    }

    // Writes one statement starting at the current column (no leading indent).
    void statement(int id, int depth) {
        const GraphNode& n = node(id);
        if (n.cls == ConstructClass::Block) {
            os_ << "{\n";
            for (int c : kids(id)) {
                indent(depth + 1);
                statement(c, depth + 1);
                os_ << '\n';
            }
            indent(depth);
            os_ << '}';
            return;
        }
        if (n.cls != ConstructClass::Control) {
            os_ << simple(id) << ';';
            return;
        }
        const std::string& kw = n.name ? *n.name : std::string();
        if (kw == "IF") {
            os_ << "if (" << expr(kid(id, 0)) << ") ";
            statement(kid(id, 1), depth);
            if (kids(id).size() > 2) {
                os_ << " else ";
                statement(kid(id, 2), depth);
            }
        } else if (kw == "WHILE") {
            os_ << "while (" << expr(kid(id, 0)) << ") ";
            statement(kid(id, 1), depth);
        } else if (kw == "FOR") {
            os_ << "for (" << simple(kid(id, 0)) << "; " << expr(kid(id, 1)) << "; " << simple(kid(id, 2)) << ") ";
            statement(kid(id, 3), depth);
        } else if (kw == "RETURN") {
            os_ << "return";
            if (!kids(id).empty()) os_ << ' ' << expr(kid(id, 0));
            os_ << ';';
        } else {
            throw MalformedAsg("unknown control construct at node " + std::to_string(id));
        }
    }

    std::string expr(int id) {
        const GraphNode& n = node(id);
        switch (n.cls) {
        case ConstructClass::Ident: return name(id);
        case ConstructClass::Literal: return n.name ? *n.name : placeholder(n.type);
        case ConstructClass::Index: return expr(kid(id, 0)) + "[" + expr(kid(id, 1)) + "]";
        case ConstructClass::Call: {
            if (!n.name) throw MalformedAsg("call without target name");
            std::string s = *n.name + "(";
            const auto& k = kids(id);
            for (std::size_t i = 0; i < k.size(); ++i) s += (i ? ", " : "") + expr(k[i]);
            return s + ")";
        }
        case ConstructClass::MathOp:
        case ConstructClass::CmpOp:
        case ConstructClass::LogicOp: {
            std::string op(operator_lexeme(n.cls, n.name ? *n.name : ""));
            if (kids(id).size() == 1) return op + "(" + expr(kid(id, 0)) + ")";
            return "(" + expr(kid(id, 0)) + " " + op + " " + expr(kid(id, 1)) + ")";
        }
        default:
            throw MalformedAsg("node " + std::to_string(id) + " is not an expression");
        }
    }

    const CodeGraph& g_;
    std::vector<std::vector<int>> kids_;
    std::vector<std::string> names_;
    std::ostringstream os_;
};

} // namespace

std::string reconstruct(const CodeGraph& g) { return Printer(g).run(); }

} // namespace asg
