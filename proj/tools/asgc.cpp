// asgc: MiniC source -> code graphs (AST, AST+, ASG, ASG+) and 3-property encodings.

#include "asg/dataset.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <thread>

namespace {

const std::map<std::string, asg::Variant> kVariants = {
    {"ast", asg::Variant::Ast},
    {"ast+", asg::Variant::AstPlus},
    {"asg", asg::Variant::Asg},
    {"asg+", asg::Variant::AsgPlus},
};

const std::map<std::string, asg::TypeNorm> kNorms = {
    {"raw", asg::TypeNorm::Raw},
    {"flat", asg::TypeNorm::Flat},
    {"bucketed", asg::TypeNorm::Bucketed},
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Build name-dependence code graphs and 3-property encodings from MiniC sources"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "Build one graph record per manifest row");
    std::string manifest;
    asg::BuildFlags flags;
    std::string norm;
    std::string report, vocab, code_tokens;
    std::string out_path;
    flags.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    build->add_option("manifest", manifest, "CSV manifest (sample_id,path,label)")->required();
    std::string variant = "asg";
    build->add_option("--variant", variant, "Graph variant: ast, ast+, asg, asg+")
        ->check(CLI::IsMember({"ast", "ast+", "asg", "asg+"}))
        ->capture_default_str();
    build->add_option("--normalize", norm, "Array type normalization (default: raw for AST, flat for ASG)")
        ->check(CLI::IsMember({"raw", "flat", "bucketed"}));
    build->add_flag("--keep-literals", flags.keep_literals, "Keep literal values in ASG/ASG+");
    build->add_option("--out", out_path, "Graph file (one JSON record per line)")->required();
    build->add_option("--report", report, "Per-sample diagnostics file");
    build->add_option("--vocab", vocab, "Also write the 3-property vocabulary");
    build->add_option("--code-tokens", code_tokens, "Also write per-node code tokens (line-delimited JSON)");
    build->add_option("--jobs", flags.jobs, "Worker threads")->check(CLI::PositiveNumber);

    // memcmp
    auto* memcmp = app.add_subcommand("memcmp", "Memory need of code-based vs 3-property node features");
    std::string graph_file;
    std::int64_t embed_dim = 100;
    std::int64_t bytes_per_scalar = 4;
    memcmp->add_option("graphs", graph_file, "Graph file")->required();
    memcmp->add_option("--embed-dim", embed_dim, "Embedding width")->capture_default_str();
    memcmp->add_option("--bytes-per-scalar", bytes_per_scalar, "Bytes per embedding scalar")->capture_default_str();

    // check-alpha
    auto* check = app.add_subcommand("check-alpha", "Decide alpha-equivalence of two MiniC files");
    std::string file_a, file_b;
    std::string check_variant = "asg";
    bool check_keep_literals = false;
    check->add_option("file_a", file_a)->required();
    check->add_option("file_b", file_b)->required();
    check->add_option("--variant", check_variant, "asg or asg+")
        ->check(CLI::IsMember({"ast", "ast+", "asg", "asg+"}))
        ->capture_default_str();
    check->add_flag("--keep-literals", check_keep_literals, "Literal values must match too");

    // stats
    auto* stats = app.add_subcommand("stats", "Corpus statistics of a graph file");
    std::string stats_file;
    stats->add_option("graphs", stats_file, "Graph file")->required();

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a labelled synthetic corpus");
    asg::GenConfig cfg;
    std::string gen_dir;
    gen->add_option("--seed", cfg.seed)->capture_default_str();
    gen->add_option("--count", cfg.sample_count)->capture_default_str();
    gen->add_option("--flaw-rate", cfg.flaw_rate)->capture_default_str();
    gen->add_option("--max-statements", cfg.max_statements)->capture_default_str();
    gen->add_option("--rename-salt", cfg.rename_salt)->capture_default_str();
    gen->add_option("--out", gen_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : asg::kExitInputError;
    }

    if (*build) {
        flags.variant = kVariants.at(variant);
        if (!norm.empty()) flags.normalize = kNorms.at(norm);
        flags.out = out_path;
        if (!report.empty()) flags.report = report;
        if (!vocab.empty()) flags.vocab = vocab;
        if (!code_tokens.empty()) flags.code_tokens = code_tokens;
        return asg::cmd_build(manifest, flags, std::cerr);
    }
    if (*memcmp) return asg::cmd_memcmp(graph_file, embed_dim, bytes_per_scalar, std::cout, std::cerr);
    if (*check) return asg::cmd_check_alpha(file_a, file_b, kVariants.at(check_variant), check_keep_literals, std::cout, std::cerr);
    if (*stats) return asg::cmd_stats(stats_file, std::cout, std::cerr);
    if (*gen) return asg::cmd_gen(cfg, gen_dir, std::cout, std::cerr);
    return asg::kExitInputError;
}
