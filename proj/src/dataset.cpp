#include "asg/dataset.hpp"

#include "asg/canonical.hpp"
#include "asg/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace asg {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

ordered_json token_or_null(const std::string& token) {
    return token == kBlankToken ? ordered_json(nullptr) : ordered_json(token);
}

std::string null_or_token(const nlohmann::json& j) {
    return j.is_null() ? std::string(kBlankToken) : j.get<std::string>();
}

// `file:line:col: message` for syntax errors, `file: message` otherwise.
std::string located(const fs::path& path, const std::exception& e) {
    if (const auto* se = dynamic_cast<const SyntaxError*>(&e))
        return path.string() + ":" + std::to_string(se->line()) + ":" + std::to_string(se->col()) + ": " + e.what();
    return path.string() + ": " + e.what();
}

struct BuiltSample {
    std::optional<std::string> line;
    std::optional<std::string> code_tokens;
    std::vector<EncodedNode> nodes;
    std::string error;
};

BuiltSample build_sample(const ManifestRow& row, const BuildFlags& flags) {
    BuiltSample out;
    try {
        std::string source = read_file(row.path);
        BuildOptions bopts{flags.keep_literals};
        CodeGraph g = build_variant(source, flags.variant, bopts);
        g.label = row.label;
        EncodeOptions eopts = EncodeOptions::for_variant(flags.variant);
        if (flags.normalize) eopts.types = *flags.normalize;
        eopts.keep_literals = flags.keep_literals;
        EncodedGraph eg = encode_graph(g, eopts);
        eg.sample_id = row.sample_id;
        out.line = record_line(eg);
        out.nodes = std::move(eg.nodes);
        if (flags.code_tokens) {
            ordered_json per_node = ordered_json::array();
            for (const auto& n : g.nodes) per_node.push_back(encode_code_based(n));
            ordered_json rec;
            rec["sample_id"] = row.sample_id;
            rec["code_tokens"] = std::move(per_node);
            out.code_tokens = rec.dump();
        }
    } catch (const std::exception& e) {
        out.error = located(row.path, e);
    }
    return out;
}

} // namespace

std::vector<ManifestRow> load_manifest(const fs::path& manifest) {
    std::ifstream in(manifest, std::ios::binary);
    if (!in) throw ManifestError("cannot read manifest " + manifest.string());
    std::string line;
    if (!std::getline(in, line)) throw EmptyCorpus();
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "sample_id,path,label") throw ManifestError("manifest header must be 'sample_id,path,label'");

    fs::path base = manifest.parent_path();
    std::vector<ManifestRow> rows;
    std::set<std::string> ids;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv(line);
        auto where = manifest.string() + ":" + std::to_string(lineno);
        if (cells.size() != 3) throw ManifestError(where + ": expected 3 fields");
        if (cells[0].empty() || !ids.insert(cells[0]).second)
            throw ManifestError(where + ": missing or duplicate sample_id '" + cells[0] + "'");
        if (cells[2] != "0" && cells[2] != "1") throw ManifestError(where + ": label must be 0 or 1");
        fs::path p = fs::path(cells[1]).is_absolute() ? fs::path(cells[1]) : base / cells[1];
        if (!fs::exists(p)) throw ManifestError(where + ": no such file " + p.string());
        rows.push_back(ManifestRow{cells[0], p, cells[2] == "1" ? 1 : 0});
    }
    if (rows.empty()) throw EmptyCorpus();
    return rows;
}

std::string record_line(const EncodedGraph& g) {
    ordered_json j;
    j["sample_id"] = g.sample_id;
    j["variant"] = std::string(to_string(g.variant));
    j["label"] = g.label ? ordered_json(*g.label) : ordered_json(nullptr);
    ordered_json nodes = ordered_json::array();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto& n = g.nodes[i];
        ordered_json count = i < g.token_counts.size() ? ordered_json(g.token_counts[i]) : ordered_json(nullptr);
        nodes.push_back(ordered_json::array(
            {static_cast<int>(i), n.class_token, token_or_null(n.name_token), token_or_null(n.type_token), count}));
    }
    j["nodes"] = std::move(nodes);
    std::vector<Edge> edges = g.edges;
    std::sort(edges.begin(), edges.end());
    ordered_json ej = ordered_json::array();
    for (const auto& e : edges) ej.push_back(ordered_json::array({e.src, e.dst, std::string(to_string(e.kind))}));
    j["edges"] = std::move(ej);
    return j.dump();
}

EncodedGraph parse_record(std::string_view line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed graph record: ") + e.what());
    }
    auto fail = [](const std::string& what) -> Error { return Error("graph record: " + what); };
    static const std::set<std::string> fields = {"sample_id", "variant", "label", "nodes", "edges"};
    if (!j.is_object() || j.size() != fields.size()) throw fail("expected exactly 5 fields");
    for (const auto& f : fields)
        if (!j.contains(f)) throw fail("missing field " + f);

    EncodedGraph g;
    if (!j["sample_id"].is_string()) throw fail("sample_id must be a string");
    g.sample_id = j["sample_id"].get<std::string>();
    auto variant = j["variant"].is_string() ? variant_from_string(j["variant"].get<std::string>()) : std::nullopt;
    if (!variant) throw fail("unknown variant");
    g.variant = *variant;
    if (!j["label"].is_null()) {
        if (!j["label"].is_number_integer() || (j["label"] != 0 && j["label"] != 1)) throw fail("label must be 0, 1 or null");
        g.label = j["label"].get<int>();
    }

    if (!j["nodes"].is_array()) throw fail("nodes must be an array");
    bool counts = true;
    for (std::size_t i = 0; i < j["nodes"].size(); ++i) {
        const auto& n = j["nodes"][i];
        if (!n.is_array() || n.size() != 5) throw fail("node entries have 5 elements");
        if (!n[0].is_number_integer() || n[0].get<std::size_t>() != i) throw fail("node ids must be dense from 0");
        if (!n[1].is_string() || !construct_class_from_string(n[1].get<std::string>())) throw fail("bad node class");
        for (int k : {2, 3})
            if (!n[k].is_null() && !n[k].is_string()) throw fail("name/type must be string or null");
        g.nodes.push_back(EncodedNode{n[1].get<std::string>(), null_or_token(n[2]), null_or_token(n[3])});
        if (n[4].is_null()) {
            counts = false;
        } else if (n[4].is_number_integer() && n[4].get<int>() >= 0) {
            g.token_counts.push_back(n[4].get<int>());
        } else {
            throw fail("token_count must be a non-negative integer or null");
        }
    }
    if (!counts) g.token_counts.clear();

    if (!j["edges"].is_array()) throw fail("edges must be an array");
    auto node_count = static_cast<std::int64_t>(g.nodes.size());
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() || !e[2].is_string())
            throw fail("edge entries are [src, dst, kind]");
        auto kind = edge_kind_from_string(e[2].get<std::string>());
        if (!kind) throw fail("unknown edge kind");
        auto src = e[0].get<std::int64_t>();
        auto dst = e[1].get<std::int64_t>();
        if (src < 0 || dst < 0 || src >= node_count || dst >= node_count) throw fail("edge endpoint out of range");
        g.edges.push_back(Edge{*kind, static_cast<int>(src), static_cast<int>(dst)});
    }
    return g;
}

std::vector<EncodedGraph> read_graph_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::vector<EncodedGraph> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            out.push_back(parse_record(line));
        } catch (const Error& e) {
            throw Error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

int cmd_build(const fs::path& manifest, const BuildFlags& flags, std::ostream& err) {
    std::vector<ManifestRow> rows;
    try {
        rows = load_manifest(manifest);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    std::vector<BuiltSample> built(rows.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) built[i] = build_sample(rows[i], flags);
    };
    {
        std::vector<std::jthread> pool;
        int jobs = std::max(1, flags.jobs);
        for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
        worker();
    }

    try {
        std::ofstream out = open_out(flags.out);
        std::ostringstream report;
        std::optional<std::ofstream> code_out;
        if (flags.code_tokens) code_out = open_out(*flags.code_tokens);
        std::vector<EncodedGraph> for_vocab;
        std::size_t ok = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!built[i].line) {
                report << rows[i].sample_id << '\t' << built[i].error << '\n';
                continue;
            }
            ++ok;
            out << *built[i].line << '\n';
            if (code_out) *code_out << *built[i].code_tokens << '\n';
            if (flags.vocab) {
                EncodedGraph g;
                g.nodes = std::move(built[i].nodes);
                for_vocab.push_back(std::move(g));
            }
        }
        if (flags.report) {
            open_out(*flags.report) << report.str();
        } else {
            err << report.str();
        }
        if (ok == 0) {
            err << "error: every sample failed\n";
            return kExitInputError;
        }
        if (flags.vocab) {
            std::ofstream vocab_out = open_out(*flags.vocab);
            build_vocab(for_vocab).write(vocab_out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitOk;
}

int cmd_memcmp(const fs::path& graph_file, std::int64_t embed_dim, std::int64_t bytes_per_scalar,
               std::ostream& out, std::ostream& err) {
    if (embed_dim <= 0 || bytes_per_scalar <= 0) {
        err << "error: --embed-dim and --bytes-per-scalar must be positive\n";
        return kExitInputError;
    }
    try {
        auto graphs = read_graph_file(graph_file);
        for (const auto& g : graphs)
            if (g.token_counts.empty() && !g.nodes.empty()) throw MissingTokenCounts(g.sample_id);
        out << "sample_id\tnodes\tmax_tokens\tcode_based\tthree_prop\tratio\n";
        std::int64_t nodes = 0, widest = 0, code_bytes = 0, prop_bytes = 0;
        for (const auto& g : graphs) {
            auto n = static_cast<std::int64_t>(g.nodes.size());
            std::int64_t t = g.token_counts.empty() ? 0 : *std::max_element(g.token_counts.begin(), g.token_counts.end());
            auto code = estimate_memory(n, t, EncodingScheme::CodeBased, embed_dim, bytes_per_scalar);
            auto prop = estimate_memory(n, t, EncodingScheme::ThreeProp, embed_dim, bytes_per_scalar);
            out << g.sample_id << '\t' << n << '\t' << t << '\t' << format_bytes(code.total_bytes) << '\t'
                << format_bytes(prop.total_bytes) << '\t' << (n ? std::to_string(memory_ratio(code, prop)) : "-") << '\n';
            nodes += n;
            widest = std::max(widest, t);
            code_bytes += code.total_bytes;
            prop_bytes += prop.total_bytes;
        }
        MemoryEstimate code{nodes, widest, embed_dim, bytes_per_scalar, code_bytes};
        MemoryEstimate prop{nodes, 3, embed_dim, bytes_per_scalar, prop_bytes};
        out << "TOTAL\t" << nodes << '\t' << widest << '\t' << format_bytes(code_bytes) << '\t'
            << format_bytes(prop_bytes) << '\t' << (prop_bytes ? std::to_string(memory_ratio(code, prop)) : "-") << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitOk;
}

int cmd_check_alpha(const fs::path& file_a, const fs::path& file_b, Variant variant, bool keep_literals,
                    std::ostream& out, std::ostream& err) {
    if (!has_name_dependence(variant)) {
        err << "error: check-alpha needs --variant asg or asg+\n";
        return kExitInputError;
    }
    std::array<CanonicalForm, 2> forms;
    std::array<const fs::path*, 2> files = {&file_a, &file_b};
    for (std::size_t i = 0; i < 2; ++i) {
        try {
            forms[i] = canonical_asg(read_file(*files[i]), variant, BuildOptions{keep_literals});
        } catch (const Error& e) {
            err << "error: " << located(*files[i], e) << '\n';
            return kExitInputError;
        }
    }
    bool same = forms[0] == forms[1];
    out << (same ? "EQUIVALENT" : "DIFFERENT") << '\n';
    return same ? kExitOk : kExitDifferent;
}

int cmd_stats(const fs::path& graph_file, std::ostream& out, std::ostream& err) {
    try {
        auto graphs = read_graph_file(graph_file);
        std::map<std::string, std::int64_t> classes;
        for (int c = 0; c <= static_cast<int>(ConstructClass::Index); ++c)
            classes[std::string(to_string(static_cast<ConstructClass>(c)))] = 0;
        std::array<std::int64_t, 4> kinds{};
        std::int64_t nodes = 0, edges = 0, bad = 0, good = 0, unlabeled = 0;
        std::vector<std::string> tokens;
        for (const auto& g : graphs) {
            nodes += static_cast<std::int64_t>(g.nodes.size());
            edges += static_cast<std::int64_t>(g.edges.size());
            for (const auto& n : g.nodes) {
                ++classes[n.class_token];
                tokens.insert(tokens.end(), {n.class_token, n.name_token, n.type_token});
            }
            for (const auto& e : g.edges) ++kinds[static_cast<std::size_t>(e.kind)];
            if (!g.label) ++unlabeled;
            else if (*g.label == 1) ++bad;
            else ++good;
        }
        auto pct = [](std::int64_t part, std::int64_t whole) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2f%%", whole ? 100.0 * static_cast<double>(part) / static_cast<double>(whole) : 0.0);
            return std::string(buf);
        };
        out << "samples\t" << graphs.size() << '\n';
        out << "nodes\t" << nodes << '\n';
        out << "edges\t" << edges << '\n';
        out << "bad " << pct(bad, bad + good) << '\t' << bad << '\n';
        out << "good " << pct(good, bad + good) << '\t' << good << '\n';
        out << "unlabeled\t" << unlabeled << '\n';
        for (int c = 0; c <= static_cast<int>(ConstructClass::Index); ++c) {
            std::string name(to_string(static_cast<ConstructClass>(c)));
            out << "node_class\t" << name << '\t' << classes[name] << '\n';
        }
        for (auto k : {EdgeKind::AstChild, EdgeKind::NameDep, EdgeKind::CFlow, EdgeKind::DataDep})
            out << "edge_kind\t" << to_string(k) << '\t' << kinds[static_cast<std::size_t>(k)] << '\n';
        out << "vocab_size\t" << (tokens.empty() ? Vocab().size() : vocab_from_tokens(tokens).size()) << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitOk;
}

int cmd_gen(const GenConfig& cfg, const fs::path& dir, std::ostream& out, std::ostream& err) {
    try {
        auto samples = generate_corpus(cfg);
        write_corpus(dir, samples);
        auto flawed = std::count_if(samples.begin(), samples.end(), [](const Sample& s) { return s.label == 1; });
        out << "wrote " << samples.size() << " samples (" << flawed << " flawed) to " << dir.string() << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitOk;
}

} // namespace asg
