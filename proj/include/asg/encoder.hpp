#pragma once

// 3-property node encoding (class, name, type), the code-token baseline,
// vocabularies and the memory model that compares the two.

#include "asg/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace asg {

inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kUnkToken = "<unk>";
inline constexpr std::string_view kBlankToken = "<blank>";
/// Name token of an ident whose variable name was erased.
inline constexpr std::string_view kVarToken = "VAR";

enum class NameMode : std::uint8_t { WithNames, Nameless };

/// Raw keeps `int[8]`; Flat gives `int[N]`; Bucketed gives `int[int8]` etc.
enum class TypeNorm : std::uint8_t { Raw, Flat, Bucketed };

std::optional<TypeNorm> type_norm_from_string(std::string_view text);

struct EncodeOptions {
    NameMode mode = NameMode::Nameless;
    TypeNorm types = TypeNorm::Flat;
    bool keep_literals = false;

    /// Names kept and raw types for AST/AST+; nameless and flat for ASG/ASG+.
    static EncodeOptions for_variant(Variant v);
};

struct EncodedNode {
    std::string class_token;
    std::string name_token;
    std::string type_token;

    friend bool operator==(const EncodedNode&, const EncodedNode&) = default;
    friend auto operator<=>(const EncodedNode&, const EncodedNode&) = default;
};

struct EncodedGraph {
    std::string sample_id;
    Variant variant = Variant::Ast;
    std::optional<int> label;
    std::vector<EncodedNode> nodes;
    std::vector<int> token_counts; // code tokens per node
    std::vector<Edge> edges;
};

std::string normalize_type(const TypeExpr& t, TypeNorm norm);

EncodedNode encode_3prop(const GraphNode& node, const EncodeOptions& opts);

/// The node's source slice split by the MiniC lexer.
std::vector<std::string> encode_code_based(const GraphNode& node);

EncodedGraph encode_graph(const CodeGraph& graph, const EncodeOptions& opts);

/// Token <-> id bijection. Ids 0..2 are PAD, UNK and BLANK; content tokens
/// follow in lexicographic order.
class Vocab {
public:
    static constexpr int kPad = 0;
    static constexpr int kUnk = 1;
    static constexpr int kBlank = 2;

    Vocab();

    int id(std::string_view token) const;
    const std::string& token(int id) const { return tokens_.at(static_cast<std::size_t>(id)); }
    std::size_t size() const noexcept { return tokens_.size(); }
    const std::vector<std::string>& tokens() const noexcept { return tokens_; }

    /// `<id>\t<token>` per line, reserved ids first.
    void write(std::ostream& os) const;
    static Vocab read(std::istream& is);

    friend bool operator==(const Vocab& a, const Vocab& b) { return a.tokens_ == b.tokens_; }

private:
    friend Vocab vocab_from_tokens(const std::vector<std::string>& tokens);
    void add(std::string token);

    std::vector<std::string> tokens_;
    std::unordered_map<std::string, int> ids_;
};

/// Throws EmptyCorpus when there is no token at all.
Vocab vocab_from_tokens(const std::vector<std::string>& tokens);
/// Vocabulary over every 3-property token of the corpus. Throws EmptyCorpus.
Vocab build_vocab(const std::vector<EncodedGraph>& corpus);

enum class EncodingScheme : std::uint8_t { CodeBased, ThreeProp };

struct MemoryEstimate {
    std::int64_t node_count = 0;
    std::int64_t max_tokens_per_node = 0;
    std::int64_t embed_dim = 0;
    std::int64_t bytes_per_scalar = 0;
    std::int64_t total_bytes = 0;
};

/// Every node is padded to the widest node; 3-property nodes are always 3 wide.
MemoryEstimate estimate_memory(std::int64_t node_count, std::int64_t max_tokens_per_node,
                               EncodingScheme scheme, std::int64_t embed_dim = 100,
                               std::int64_t bytes_per_scalar = 4);

/// code-based / 3-property, rounded to the nearest integer.
std::int64_t memory_ratio(const MemoryEstimate& code_based, const MemoryEstimate& three_prop);

/// Decimal units: whole gigabytes (`59G`), one-decimal megabytes and
/// kilobytes (`5.3M`), plain bytes below that.
std::string format_bytes(std::int64_t bytes);

} // namespace asg
