#include "asg/encoder.hpp"

#include "asg/error.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>

namespace asg {

std::optional<TypeNorm> type_norm_from_string(std::string_view text) {
    if (text == "raw") return TypeNorm::Raw;
    if (text == "flat") return TypeNorm::Flat;
    if (text == "bucketed") return TypeNorm::Bucketed;
    return std::nullopt;
}

EncodeOptions EncodeOptions::for_variant(Variant v) {
    if (has_name_dependence(v)) return EncodeOptions{NameMode::Nameless, TypeNorm::Flat, false};
    return EncodeOptions{NameMode::WithNames, TypeNorm::Raw, false};
}

std::string normalize_type(const TypeExpr& t, TypeNorm norm) {
    if (!t.is_array() || norm == TypeNorm::Raw) return t.spelling();
    std::string base(to_string(t.base));
    if (norm == TypeNorm::Flat) return base + "[N]";
    std::int64_t len = *t.array_len;
    if (len < 256) return base + "[int8]";
    if (len < 65536) return base + "[int16]";
    return base + "[int32]";
}

EncodedNode encode_3prop(const GraphNode& node, const EncodeOptions& opts) {
    EncodedNode out;
    out.class_token = std::string(to_string(node.cls));
    out.type_token = node.type ? normalize_type(*node.type, opts.types) : std::string(kBlankToken);

    std::optional<std::string> name = node.name;
    if (opts.mode == NameMode::Nameless) {
        switch (node.cls) {
        case ConstructClass::VarDecl:
        case ConstructClass::Param:
            name.reset();
            break;
        case ConstructClass::Ident:
            if (node.resolved || !name) name = std::string(kVarToken);
            break;
        case ConstructClass::Literal:
            if (!opts.keep_literals) name.reset();
            break;
        default:
            break;
        }
    }
    out.name_token = name ? *name : std::string(kBlankToken);
    return out;
}

std::vector<std::string> encode_code_based(const GraphNode& node) {
    std::vector<std::string> out;
    for (auto& t : tokenize(node.code_text)) out.push_back(std::move(t.text));
    return out;
}

EncodedGraph encode_graph(const CodeGraph& graph, const EncodeOptions& opts) {
    EncodedGraph eg;
    eg.variant = graph.variant;
    eg.label = graph.label;
    eg.edges = graph.edges;
    eg.nodes.reserve(graph.nodes.size());
    for (const auto& n : graph.nodes) eg.nodes.push_back(encode_3prop(n, opts));

    if (graph.nodes.empty()) return eg;
    // The root slice covers every node, so one lexer pass yields all counts.
    const GraphNode& root = graph.nodes.front();
    std::vector<std::size_t> starts;
    for (const auto& t : tokenize(root.code_text)) starts.push_back(root.span.begin.offset + t.span.begin.offset);
    eg.token_counts.reserve(graph.nodes.size());
    for (const auto& n : graph.nodes) {
        auto lo = std::lower_bound(starts.begin(), starts.end(), n.span.begin.offset);
        auto hi = std::lower_bound(starts.begin(), starts.end(), n.span.end.offset);
        eg.token_counts.push_back(static_cast<int>(hi - lo));
    }
    return eg;
}

Vocab::Vocab() {
    add(std::string(kPadToken));
    add(std::string(kUnkToken));
    add(std::string(kBlankToken));
}

void Vocab::add(std::string token) {
    int id = static_cast<int>(tokens_.size());
    if (ids_.emplace(token, id).second) tokens_.push_back(std::move(token));
}

int Vocab::id(std::string_view token) const {
    auto it = ids_.find(std::string(token));
    return it == ids_.end() ? kUnk : it->second;
}

void Vocab::write(std::ostream& os) const {
    for (std::size_t i = 0; i < tokens_.size(); ++i) os << i << '\t' << tokens_[i] << '\n';
}

Vocab Vocab::read(std::istream& is) {
    Vocab v;
    v.tokens_.clear();
    v.ids_.clear();
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw Error("malformed vocab line: " + line);
        int id = std::stoi(line.substr(0, tab));
        if (id != static_cast<int>(v.tokens_.size())) throw Error("vocab ids must be dense and ordered");
        v.add(line.substr(tab + 1));
        if (v.tokens_.size() != static_cast<std::size_t>(id) + 1) throw Error("duplicate vocab token");
    }
    if (v.tokens_.size() < 3 || v.tokens_[0] != kPadToken || v.tokens_[1] != kUnkToken ||
        v.tokens_[2] != kBlankToken)
        throw Error("vocab is missing reserved tokens");
    return v;
}

Vocab vocab_from_tokens(const std::vector<std::string>& tokens) {
    if (tokens.empty()) throw EmptyCorpus();
    std::set<std::string> content(tokens.begin(), tokens.end());
    Vocab v;
    for (const auto& t : content) v.add(t);
    return v;
}

Vocab build_vocab(const std::vector<EncodedGraph>& corpus) {
    std::vector<std::string> tokens;
    for (const auto& g : corpus) {
        for (const auto& n : g.nodes) {
            tokens.push_back(n.class_token);
            tokens.push_back(n.name_token);
            tokens.push_back(n.type_token);
        }
    }
    return vocab_from_tokens(tokens);
}

MemoryEstimate estimate_memory(std::int64_t node_count, std::int64_t max_tokens_per_node,
                               EncodingScheme scheme, std::int64_t embed_dim,
                               std::int64_t bytes_per_scalar) {
    MemoryEstimate m;
    m.node_count = node_count;
    m.max_tokens_per_node = scheme == EncodingScheme::ThreeProp ? 3 : max_tokens_per_node;
    m.embed_dim = embed_dim;
    m.bytes_per_scalar = bytes_per_scalar;
    m.total_bytes = m.node_count * m.max_tokens_per_node * m.embed_dim * m.bytes_per_scalar;
    return m;
}

std::int64_t memory_ratio(const MemoryEstimate& code_based, const MemoryEstimate& three_prop) {
    // round-half-up on exact integers
    std::int64_t num = code_based.total_bytes;
    std::int64_t den = three_prop.total_bytes;
    return (2 * num + den) / (2 * den);
}

std::string format_bytes(std::int64_t bytes) {
    char buf[32];
    if (bytes >= 1'000'000'000) {
        std::snprintf(buf, sizeof buf, "%.0fG", static_cast<double>(bytes) / 1e9);
    } else if (bytes >= 1'000'000) {
        std::snprintf(buf, sizeof buf, "%.1fM", static_cast<double>(bytes) / 1e6);
    } else if (bytes >= 1'000) {
        std::snprintf(buf, sizeof buf, "%.1fK", static_cast<double>(bytes) / 1e3);
    } else {
        std::snprintf(buf, sizeof buf, "%lldB", static_cast<long long>(bytes));
    }
    return buf;
}

} // namespace asg
