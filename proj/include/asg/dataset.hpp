#pragma once

// Manifest and graph-file I/O plus the command implementations behind asgc.
//
// Manifest: CSV with header `sample_id,path,label`; paths relative to the
// manifest's directory.
// Graph file: one JSON object per line with fields sample_id, variant,
// label, nodes ([id, class, name|null, type|null, token_count]) and edges
// ([src, dst, kind]).

#include "asg/corpus.hpp"
#include "asg/encoder.hpp"
#include "asg/graph.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace asg {

struct ManifestRow {
    std::string sample_id;
    std::filesystem::path path;
    int label = 0;
};

/// Throws ManifestError (bad header, duplicate id, bad label, missing file)
/// or EmptyCorpus.
std::vector<ManifestRow> load_manifest(const std::filesystem::path& manifest);

/// One graph-file line (no trailing newline). BLANK tokens become null.
std::string record_line(const EncodedGraph& g);

/// Parses and validates one graph-file line. Missing token counts leave
/// `token_counts` empty. Throws Error on schema violations.
EncodedGraph parse_record(std::string_view line);

std::vector<EncodedGraph> read_graph_file(const std::filesystem::path& path);

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDifferent = 1;
inline constexpr int kExitInputError = 2;

struct BuildFlags {
    Variant variant = Variant::Asg;
    std::optional<TypeNorm> normalize; // default per variant
    bool keep_literals = false;
    int jobs = 1;
    std::filesystem::path out;
    std::optional<std::filesystem::path> report;
    std::optional<std::filesystem::path> vocab;
    std::optional<std::filesystem::path> code_tokens;
};

/// Builds one record per manifest row, in manifest order. Per-sample
/// failures go to the report (or `err`); exits non-zero only when every
/// sample fails or the input itself is invalid.
int cmd_build(const std::filesystem::path& manifest, const BuildFlags& flags, std::ostream& err);

int cmd_memcmp(const std::filesystem::path& graph_file, std::int64_t embed_dim, std::int64_t bytes_per_scalar,
               std::ostream& out, std::ostream& err);

int cmd_check_alpha(const std::filesystem::path& file_a, const std::filesystem::path& file_b, Variant variant,
                    bool keep_literals, std::ostream& out, std::ostream& err);

int cmd_stats(const std::filesystem::path& graph_file, std::ostream& out, std::ostream& err);

int cmd_gen(const GenConfig& cfg, const std::filesystem::path& dir, std::ostream& out, std::ostream& err);

} // namespace asg
