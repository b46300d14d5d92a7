#include "asg/dataset.hpp"
#include "asg/error.hpp"

#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace asg;
namespace fs = std::filesystem;

namespace {

const fs::path kData = ASG_TEST_DATA;

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / "asg_dataset_test" / name;
    fs::create_directories(p.parent_path());
    return p;
}

std::vector<std::string> lines_of(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

EncodedGraph synthetic(const std::string& id, std::size_t nodes, int max_tokens, std::optional<int> label = 0) {
    EncodedGraph g;
    g.sample_id = id;
    g.variant = Variant::Asg;
    g.label = label;
    g.nodes.assign(nodes, EncodedNode{"block", std::string(kBlankToken), std::string(kBlankToken)});
    g.token_counts.assign(nodes, 1);
    g.token_counts[0] = max_tokens;
    for (std::size_t i = 1; i < nodes; ++i) g.edges.push_back({EdgeKind::AstChild, 0, static_cast<int>(i)});
    return g;
}

void write_records(const fs::path& p, const std::vector<EncodedGraph>& gs) {
    std::ofstream out(p);
    for (const auto& g : gs) out << record_line(g) << '\n';
}

} // namespace

TEST_CASE("manifest loading") {
    auto rows = load_manifest(kData / "manifest3.csv");
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].sample_id == "t2");
    CHECK(rows[1].label == 1);
    CHECK(rows[1].path == kData / "flow_branches.mc");
    CHECK_THROWS_AS(load_manifest(kData / "manifest_empty.csv"), EmptyCorpus);

    fs::path bad = scratch("bad_manifest.csv");
    auto expect_error = [&](const std::string& body) {
        std::ofstream(bad) << body;
        CHECK_THROWS_AS(load_manifest(bad), ManifestError);
    };
    fs::copy_file(kData / "sum_ab.mc", scratch("sum_ab.mc"), fs::copy_options::overwrite_existing);
    expect_error("id,path,label\na,sum_ab.mc,0\n");
    expect_error("sample_id,path,label\na,sum_ab.mc,0\na,sum_ab.mc,1\n");
    expect_error("sample_id,path,label\na,sum_ab.mc,2\n");
    expect_error("sample_id,path,label\na,missing.mc,0\n");
    expect_error("sample_id,path,label\na,sum_ab.mc\n");
}

TEST_CASE("build: three samples with name dependence") {
    BuildFlags flags;
    flags.variant = Variant::Asg;
    flags.out = scratch("three.jsonl");
    flags.vocab = scratch("three.vocab");
    flags.jobs = 3;
    std::ostringstream err;
    REQUIRE(cmd_build(kData / "manifest3.csv", flags, err) == kExitOk);
    CHECK(err.str().empty());
    auto graphs = read_graph_file(flags.out);
    REQUIRE(graphs.size() == 3);
    const char* ids[] = {"t1", "t2", "t3"};
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(graphs[i].sample_id == ids[i]);
        CHECK(graphs[i].variant == Variant::Asg);
        CHECK(std::any_of(graphs[i].edges.begin(), graphs[i].edges.end(),
                          [](const Edge& e) { return e.kind == EdgeKind::NameDep; }));
        CHECK(graphs[i].token_counts.size() == graphs[i].nodes.size());
    }
    CHECK(graphs[1].label == 1);
    std::ifstream vin(*flags.vocab);
    Vocab v = Vocab::read(vin);
    CHECK(v.id("VAR") > 2);
    CHECK(v.id("int[N]") > 2);
}

TEST_CASE("build: byte-identical across runs and thread counts") {
    BuildFlags flags;
    flags.variant = Variant::AsgPlus;
    flags.out = scratch("det1.jsonl");
    std::ostringstream err;
    flags.jobs = 1;
    REQUIRE(cmd_build(kData / "manifest3.csv", flags, err) == kExitOk);
    flags.out = scratch("det2.jsonl");
    flags.jobs = 4;
    REQUIRE(cmd_build(kData / "manifest3.csv", flags, err) == kExitOk);
    CHECK(lines_of(scratch("det1.jsonl")) == lines_of(scratch("det2.jsonl")));
}

TEST_CASE("build: empty manifest") {
    BuildFlags flags;
    flags.out = scratch("empty.jsonl");
    std::ostringstream err;
    CHECK(cmd_build(kData / "manifest_empty.csv", flags, err) == kExitInputError);
    CHECK(err.str().find("empty") != std::string::npos);
}

TEST_CASE("build: one unparseable sample of three") {
    BuildFlags flags;
    flags.out = scratch("partial.jsonl");
    flags.report = scratch("partial.report");
    std::ostringstream err;
    CHECK(cmd_build(kData / "manifest_bad.csv", flags, err) == kExitOk);
    auto graphs = read_graph_file(flags.out);
    REQUIRE(graphs.size() == 2);
    CHECK(graphs[0].sample_id == "ok1");
    CHECK(graphs[1].sample_id == "ok2");
    auto report = lines_of(*flags.report);
    REQUIRE(report.size() == 1);
    CHECK(report[0].rfind("broken\t", 0) == 0);
    CHECK(report[0].find(":2:") != std::string::npos);
}

TEST_CASE("build: every sample failing is an error") {
    fs::path dir = scratch("allbad");
    fs::create_directories(dir);
    fs::copy_file(kData / "bad_syntax.mc", dir / "x.mc", fs::copy_options::overwrite_existing);
    std::ofstream(dir / "m.csv") << "sample_id,path,label\nx,x.mc,1\n";
    BuildFlags flags;
    flags.out = dir / "out.jsonl";
    std::ostringstream err;
    CHECK(cmd_build(dir / "m.csv", flags, err) == kExitInputError);
}

TEST_CASE("records: schema round trip and validation") {
    EncodedGraph g = synthetic("r1", 3, 7, 1);
    g.nodes[1] = {"ident", "VAR", "int"};
    g.edges.push_back({EdgeKind::NameDep, 1, 2});
    std::string line = record_line(g);
    auto j = nlohmann::json::parse(line);
    CHECK(j.size() == 5);
    CHECK(j["nodes"][0] == nlohmann::json::parse(R"([0,"block",null,null,7])"));
    CHECK(j["edges"].back() == nlohmann::json::parse(R"([1,2,"NAME_DEP"])"));

    EncodedGraph back = parse_record(line);
    CHECK(back.nodes == g.nodes);
    CHECK(back.token_counts == g.token_counts);
    CHECK(back.label == 1);
    CHECK(record_line(back) == line);

    const char* bad[] = {
        R"({"sample_id":"a","variant":"ASG","label":0,"nodes":[],"edges":[],"extra":1})",
        R"({"sample_id":"a","variant":"CPG","label":0,"nodes":[],"edges":[]})",
        R"({"sample_id":"a","variant":"ASG","label":3,"nodes":[],"edges":[]})",
        R"({"sample_id":"a","variant":"ASG","label":0,"nodes":[[1,"block",null,null,1]],"edges":[]})",
        R"({"sample_id":"a","variant":"ASG","label":0,"nodes":[[0,"thing",null,null,1]],"edges":[]})",
        R"({"sample_id":"a","variant":"ASG","label":0,"nodes":[[0,"block",null,null,1]],"edges":[[0,1,"AST_CHILD"]]})",
        R"({"sample_id":"a","variant":"ASG","label":0,"nodes":[[0,"block",null,null,1]],"edges":[[0,0,"CALLS"]]})",
        "not json",
    };
    for (const char* b : bad) {
        CAPTURE(b);
        CHECK_THROWS_AS(parse_record(b), Error);
    }
    auto missing = parse_record(R"({"sample_id":"a","variant":"ASG","label":null,"nodes":[[0,"block",null,null,null]],"edges":[]})");
    CHECK(missing.token_counts.empty());
    CHECK_FALSE(missing.label);
}

TEST_CASE("memcmp: reference rows from synthetic records") {
    fs::path p = scratch("reference_rows.jsonl");
    write_records(p, {synthetic("-6552851419396579257", 4409, 33659), synthetic("row2", 7012, 54157),
                      synthetic("row3", 12077, 96805)});
    std::ostringstream out, err;
    REQUIRE(cmd_memcmp(p, 100, 4, out, err) == kExitOk);
    std::istringstream rows(out.str());
    std::vector<std::string> l;
    for (std::string s; std::getline(rows, s);) l.push_back(s);
    REQUIRE(l.size() == 5);
    CHECK(l[0] == "sample_id\tnodes\tmax_tokens\tcode_based\tthree_prop\tratio");
    CHECK(l[1] == "-6552851419396579257\t4409\t33659\t59G\t5.3M\t11220");
    CHECK(l[2] == "row2\t7012\t54157\t152G\t8.4M\t18052");
    CHECK(l[3] == "row3\t12077\t96805\t468G\t14.5M\t32268");
    CHECK(l[4].rfind("TOTAL\t23498\t96805\t", 0) == 0);
}

TEST_CASE("memcmp: single node, missing counts, bad flags") {
    fs::path p = scratch("one.jsonl");
    write_records(p, {synthetic("one", 1, 3)});
    std::ostringstream out, err;
    REQUIRE(cmd_memcmp(p, 100, 4, out, err) == kExitOk);
    CHECK(out.str().find("one\t1\t3\t1.2K\t1.2K\t1\n") != std::string::npos);

    std::ofstream(scratch("nocount.jsonl"))
        << R"({"sample_id":"a","variant":"ASG","label":0,"nodes":[[0,"block",null,null,null]],"edges":[]})" << '\n';
    std::ostringstream out2, err2;
    CHECK(cmd_memcmp(scratch("nocount.jsonl"), 100, 4, out2, err2) == kExitInputError);
    CHECK(err2.str().find("token") != std::string::npos);
    CHECK(out2.str().empty());
    CHECK(cmd_memcmp(p, 0, 4, out2, err2) == kExitInputError);
}

TEST_CASE("stats: label balance and histograms") {
    fs::path p = scratch("balance.jsonl");
    {
        std::ofstream out(p);
        for (int i = 0; i < 10699; ++i)
            out << record_line(synthetic("s" + std::to_string(i), 1, 1, i < 754 ? 1 : 0)) << '\n';
    }
    std::ostringstream out, err;
    REQUIRE(cmd_stats(p, out, err) == kExitOk);
    CHECK(out.str().find("samples\t10699\n") != std::string::npos);
    CHECK(out.str().find("bad 7.05%\t754\n") != std::string::npos);
    CHECK(out.str().find("good 92.95%\t9945\n") != std::string::npos);

    write_records(p, {synthetic("only", 2, 1, 1)});
    std::ostringstream one, err1;
    REQUIRE(cmd_stats(p, one, err1) == kExitOk);
    CHECK(one.str().find("bad 100.00%\t1\n") != std::string::npos);
    CHECK(one.str().find("good 0.00%\t0\n") != std::string::npos);
}

TEST_CASE("stats: hand-counted histogram of the fixture corpus") {
    BuildFlags flags;
    flags.variant = Variant::Asg;
    flags.out = scratch("fixture.jsonl");
    std::ostringstream err;
    REQUIRE(cmd_build(kData / "manifest3.csv", flags, err) == kExitOk);
    std::ostringstream out;
    REQUIRE(cmd_stats(flags.out, out, err) == kExitOk);
    const std::string s = out.str();
    // counted by hand:
    //   flow_loops:    varDecl 3 (total, i, sq), param 1
    //   flow_branches: varDecl 2 (r, buf), param 2
    //   shadow:        varDecl 2
    CHECK(s.find("node_class\tvarDecl\t7\n") != std::string::npos);
    CHECK(s.find("node_class\tparam\t3\n") != std::string::npos);
    CHECK(s.find("node_class\tfunc\t3\n") != std::string::npos);
    // returns: 2 in flow_loops; ifs: 1 + 2; whiles: 1; fors: 1
    CHECK(s.find("node_class\tcontrol\t7\n") != std::string::npos);
    // call nodes: emit, put, put
    CHECK(s.find("node_class\tcall\t3\n") != std::string::npos);
    CHECK(s.find("edge_kind\tCFLOW\t0\n") != std::string::npos);
    CHECK(s.find("bad 33.33%\t1\n") != std::string::npos);
}

TEST_CASE("check-alpha: verdicts and exit codes") {
    std::ostringstream out, err;
    CHECK(cmd_check_alpha(kData / "sum_ab.mc", kData / "sum_x1x2.mc", Variant::Asg, false, out, err) == kExitOk);
    CHECK(out.str() == "EQUIVALENT\n");
    std::ostringstream out2;
    CHECK(cmd_check_alpha(kData / "sum_ab.mc", kData / "sum_ab.mc", Variant::AsgPlus, false, out2, err) == kExitOk);
    std::ostringstream out3;
    CHECK(cmd_check_alpha(kData / "sum_ab.mc", kData / "diff_ab.mc", Variant::Asg, false, out3, err) ==
          kExitDifferent);
    CHECK(out3.str() == "DIFFERENT\n");
    std::ostringstream out4, err4;
    CHECK(cmd_check_alpha(kData / "sum_ab.mc", kData / "bad_syntax.mc", Variant::Asg, false, out4, err4) ==
          kExitInputError);
    CHECK(err4.str().find("bad_syntax.mc") != std::string::npos);
    CHECK(cmd_check_alpha(kData / "sum_ab.mc", kData / "nope.mc", Variant::Asg, false, out4, err4) == kExitInputError);
    CHECK(cmd_check_alpha(kData / "sum_ab.mc", kData / "sum_ab.mc", Variant::Ast, false, out4, err4) ==
          kExitInputError);
}
