#include "asg/corpus.hpp"

#include "asg/error.hpp"
#include "asg/frontend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace asg {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    for (;;) {
        std::uint64_t x = engine_();
        if (x < limit) return x % n;
    }
}

bool Rng::chance(double p) {
    double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return u < p;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

namespace {

const std::vector<std::string> kExternalCalls = {"printf", "puts",   "memcpy", "strlen", "malloc",
                                                 "free",   "read",   "write",  "abs",    "rand",
                                                 "memset", "strcpy", "getc",   "atoi"};
const std::vector<std::string> kExternalIdents = {"stdout", "stderr", "errno", "stdin"};
const std::vector<std::string> kFunctionNames = {"process", "handle", "parse_input", "update",
                                                 "compute", "copy_data", "fill", "run"};
const std::vector<std::int64_t> kArrayLengths = {4, 8, 16, 32, 64, 100, 128, 256, 512, 1024};
const std::vector<std::string> kBinaryOps = {"+", "-", "*", "/", "%", "<", ">", "<=", ">=",
                                             "==", "!=", "&&", "||"};

constexpr char kSlotOpen = '\x01';
constexpr char kSlotClose = '\x02';

bool reserved_name(const std::string& s) {
    if (is_keyword(s)) return true;
    auto in = [&](const std::vector<std::string>& v) { return std::find(v.begin(), v.end(), s) != v.end(); };
    if (in(kExternalCalls) || in(kExternalIdents) || in(kFunctionNames)) return true;
    // v<digits> is the reconstruction namespace
    return s.size() > 1 && s[0] == 'v' && std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string random_identifier(Rng& rng) {
    static constexpr std::string_view first = "abcdefghijklmnopqrstuvwxyz";
    static constexpr std::string_view rest = "abcdefghijklmnopqrstuvwxyz0123456789_";
    std::string s(1, first[rng.below(first.size())]);
    int extra = rng.range(0, 7);
    for (int i = 0; i < extra; ++i) s += rest[rng.below(rest.size())];
    return s;
}

/// Draws `count` distinct names, none colliding with `taken`.
std::vector<std::string> fresh_names(Rng& rng, std::size_t count, std::set<std::string> taken) {
    std::vector<std::string> out;
    while (out.size() < count) {
        std::string s = random_identifier(rng);
        if (reserved_name(s) || !taken.insert(s).second) continue;
        out.push_back(std::move(s));
    }
    return out;
}

struct VarInfo {
    int slot;
    BaseType base;
    std::optional<std::int64_t> len;
    bool reserved = false; // planted-pattern variables: filler may read, never write or index
};

class ProgramWriter {
public:
    ProgramWriter(Rng& rng, bool allow_arrays) : rng_(rng), allow_arrays_(allow_arrays) {}

    int slots() const { return next_slot_; }
    std::string& out() { return out_; }

    std::string slot(int s) const { return std::string(1, kSlotOpen) + std::to_string(s) + kSlotClose; }

    void open_scope() { scopes_.emplace_back(); }
    void close_scope() { scopes_.pop_back(); }

    std::vector<VarInfo> visible() const {
        std::vector<VarInfo> out;
        std::set<int> seen;
        for (auto s = scopes_.rbegin(); s != scopes_.rend(); ++s)
            for (const auto& v : *s)
                if (seen.insert(v.slot).second) out.push_back(v);
        return out;
    }

    // New slot, or an outer slot to shadow.
    int pick_decl_slot() {
        if (rng_.chance(0.2)) {
            std::vector<int> candidates;
            for (const auto& v : visible()) {
                bool here = std::any_of(scopes_.back().begin(), scopes_.back().end(),
                                        [&](const VarInfo& w) { return w.slot == v.slot; });
                if (!here && !v.reserved) candidates.push_back(v.slot);
            }
            if (!candidates.empty()) return candidates[rng_.below(candidates.size())];
        }
        return next_slot_++;
    }

    VarInfo declare(BaseType base, std::optional<std::int64_t> len, bool reserved = false) {
        VarInfo v{reserved ? next_slot_++ : pick_decl_slot(), base, len, reserved};
        scopes_.back().push_back(v);
        return v;
    }

    std::string type_spelling(BaseType base, std::optional<std::int64_t> len) const {
        std::string s(to_string(base));
        if (len) s += "[" + std::to_string(*len) + "]";
        return s;
    }

    std::pair<BaseType, std::optional<std::int64_t>> random_type() {
        int r = rng_.range(0, 99);
        if (allow_arrays_ && r < 12) return {BaseType::Int, rng_.pick(kArrayLengths)};
        if (r < 70) return {BaseType::Int, std::nullopt};
        if (r < 84) return {BaseType::Float, std::nullopt};
        if (r < 94) return {BaseType::Char, std::nullopt};
        return {BaseType::Str, std::nullopt};
    }

    std::string literal() {
        switch (rng_.range(0, 9)) {
        case 0: {
            int whole = rng_.range(0, 99);
            return std::to_string(whole) + "." + std::to_string(rng_.range(0, 99));
        }
        case 1: return std::string("'") + static_cast<char>('a' + rng_.below(26)) + "'";
        case 2: return "\"" + random_identifier(rng_) + "\"";
        default: return std::to_string(rng_.range(0, 1000));
        }
    }

    std::string call(int depth) {
        std::string s = rng_.pick(kExternalCalls) + "(";
        int argc = rng_.range(0, 2);
        for (int i = 0; i < argc; ++i) s += (i ? ", " : "") + expr(depth + 1);
        return s + ")";
    }

    std::string leaf(int depth) {
        std::vector<VarInfo> scalars, arrays;
        for (const auto& v : visible()) (v.len ? arrays : scalars).push_back(v);
        int r = rng_.range(0, 99);
        if (r < 50 && !scalars.empty()) return slot(rng_.pick(scalars).slot);
        if (r < 58 && depth < 3) return call(depth);
        if (r < 64) return rng_.pick(kExternalIdents);
        if (r < 70 && depth < 3) {
            auto usable = arrays;
            usable.erase(std::remove_if(usable.begin(), usable.end(), [](const VarInfo& v) { return v.reserved; }),
                         usable.end());
            if (!usable.empty()) {
                std::string base = slot(rng_.pick(usable).slot);
                return base + "[" + expr(depth + 1) + "]";
            }
        }
        return literal();
    }

    std::string expr(int depth = 0) {
        if (depth >= 2 || rng_.chance(0.45)) return leaf(depth);
        int r = rng_.range(0, 99);
        // operands of + are unsequenced: draw in statement order
        if (r < 10) {
            std::string op = rng_.chance(0.5) ? "-" : "!";
            return op + "(" + expr(depth + 1) + ")";
        }
        if (r < 20) return call(depth);
        std::string lhs = expr(depth + 1);
        std::string op = rng_.pick(kBinaryOps);
        return "(" + lhs + " " + op + " " + expr(depth + 1) + ")";
    }

    void line(int depth, const std::string& text) {
        out_ += std::string(static_cast<std::size_t>(depth) * 4, ' ') + text + "\n";
    }

    void declaration(int depth) {
        auto [base, len] = random_type();
        std::string init = !len && rng_.chance(0.6) ? " = " + expr() : "";
        VarInfo v = declare(base, len);
        line(depth, type_spelling(base, len) + " " + slot(v.slot) + init + ";");
    }

    bool assignment(int depth) {
        std::vector<VarInfo> targets;
        for (const auto& v : visible())
            if (!v.reserved) targets.push_back(v);
        if (targets.empty()) return false;
        const VarInfo& t = rng_.pick(targets);
        std::string lhs = slot(t.slot);
        if (t.len) lhs += "[" + expr(1) + "]";
        line(depth, lhs + " = " + expr() + ";");
        return true;
    }

    // Fills a block body; `budget` counts CFG statements.
    void statements(int depth, int& budget) {
        while (budget > 0 && rng_.chance(0.8)) statement(depth, budget);
    }

    void nested_block(int depth, int& budget) {
        open_scope();
        statements(depth + 1, budget);
        close_scope();
    }

    void statement(int depth, int& budget) {
        --budget;
        int r = rng_.range(0, 99);
        if (depth < 4 && r < 14) {
            line(depth, "if (" + expr() + ") {");
            nested_block(depth, budget);
            if (rng_.chance(0.4)) {
                line(depth, "} else {");
                nested_block(depth, budget);
            }
            line(depth, "}");
        } else if (depth < 4 && r < 21) {
            line(depth, "while (" + expr() + ") {");
            nested_block(depth, budget);
            line(depth, "}");
        } else if (depth < 4 && r < 27 && budget >= 2) {
            budget -= 2;
            open_scope();
            VarInfo i = declare(BaseType::Int, std::nullopt);
            std::string iv = slot(i.slot);
            line(depth, "for (int " + iv + " = 0; " + iv + " < " + expr(1) + "; " + iv + " = " + iv + " + 1) {");
            nested_block(depth, budget);
            line(depth, "}");
            close_scope();
        } else if (depth < 4 && r < 32) {
            line(depth, "{");
            nested_block(depth, budget);
            line(depth, "}");
        } else if (r < 55) {
            declaration(depth);
        } else if (r < 80) {
            if (!assignment(depth)) declaration(depth);
        } else {
            line(depth, call(0) + ";");
        }
    }

    void params() {
        int n = rng_.range(0, 3);
        std::string s;
        for (int i = 0; i < n; ++i) {
            auto [base, len] = random_type();
            VarInfo v = declare(base, len);
            s += (i ? ", " : "") + type_spelling(base, len) + " " + slot(v.slot);
        }
        out_ += s;
    }

private:
    Rng& rng_;
    bool allow_arrays_;
    std::string out_;
    int next_slot_ = 0;
    std::vector<std::vector<VarInfo>> scopes_;
};

std::string substitute_slots(const std::string& text, const std::vector<std::string>& names) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != kSlotOpen) {
            out += text[i];
            continue;
        }
        std::size_t close = text.find(kSlotClose, i);
        out += names.at(static_cast<std::size_t>(std::stoi(text.substr(i + 1, close - i - 1))));
        i = close;
    }
    return out;
}

std::string finish(ProgramWriter& w, Rng& names) {
    return substitute_slots(w.out(), fresh_names(names, static_cast<std::size_t>(w.slots()), {}));
}

void function_header(ProgramWriter& w, Rng& rng, bool returns) {
    w.out() += std::string(returns ? "int " : "void ") + rng.pick(kFunctionNames) + "(";
    w.params();
    w.out() += ") {\n";
}

std::string sample_source(Rng& rng, Rng& names, int max_statements, bool flawed) {
    ProgramWriter w(rng, false);
    w.open_scope();
    bool returns = rng.chance(0.4);
    function_header(w, rng, returns);

    // planted pattern uses at most 6 statements, the optional return 1
    int budget = max_statements - 6 - (returns ? 1 : 0);
    int before = budget > 0 ? static_cast<int>(rng.below(static_cast<std::uint64_t>(budget) + 1)) : 0;
    int after = budget - before;
    w.statements(1, before);

    std::int64_t len = rng.pick(kArrayLengths);
    VarInfo buf = w.declare(BaseType::Int, len, true);
    w.line(1, "int[" + std::to_string(len) + "] " + w.slot(buf.slot) + ";");
    std::vector<VarInfo> ints;
    for (const auto& v : w.visible())
        if (!v.len && v.base == BaseType::Int && !v.reserved) ints.push_back(v);
    std::string source = !ints.empty() && rng.chance(0.5) ? w.slot(rng.pick(ints).slot)
                                                         : rng.pick(std::vector<std::string>{"read(stdin)", "rand()", "atoi(\"7\")", "getc(stdin)"});
    VarInfo idx = w.declare(BaseType::Int, std::nullopt, true);
    w.line(1, "int " + w.slot(idx.slot) + " = " + source + ";");

    std::string b = w.slot(buf.slot);
    std::string i = w.slot(idx.slot);
    std::string value = w.expr(1);
    std::string k = std::to_string(len);
    int shape = rng.range(0, flawed ? 2 : 3);
    if (flawed) {
        switch (shape) {
        case 0:
            w.line(1, b + "[" + i + "] = " + value + ";");
            break;
        case 1:
            w.line(1, "if (" + i + " >= 0) {");
            w.line(2, b + "[" + i + "] = " + value + ";");
            w.line(1, "}");
            break;
        default: {
            w.open_scope();
            VarInfo j = w.declare(BaseType::Int, std::nullopt, true);
            std::string jv = w.slot(j.slot);
            w.line(1, "for (int " + jv + " = 0; " + jv + " < " + i + "; " + jv + " = " + jv + " + 1) {");
            w.line(2, b + "[" + jv + "] = " + value + ";");
            w.line(1, "}");
            w.close_scope();
            break;
        }
        }
    } else {
        switch (shape) {
        case 0:
            w.line(1, "if (" + i + " < " + k + ") {");
            w.line(2, b + "[" + i + "] = " + value + ";");
            w.line(1, "}");
            break;
        case 1:
            w.line(1, "if (" + i + " >= 0 && " + i + " < " + k + ") {");
            w.line(2, b + "[" + i + "] = " + value + ";");
            w.line(1, "}");
            break;
        case 2:
            w.line(1, "if (" + i + " >= " + k + ") {");
            w.line(2, "return" + std::string(returns ? " 0" : "") + ";");
            w.line(1, "}");
            w.line(1, b + "[" + i + "] = " + value + ";");
            break;
        default: {
            w.open_scope();
            VarInfo j = w.declare(BaseType::Int, std::nullopt, true);
            std::string jv = w.slot(j.slot);
            w.line(1, "for (int " + jv + " = 0; " + jv + " < " + k + "; " + jv + " = " + jv + " + 1) {");
            w.line(2, b + "[" + jv + "] = " + value + ";");
            w.line(1, "}");
            w.close_scope();
            break;
        }
        }
    }

    w.statements(1, after);
    if (returns) w.line(1, "return " + w.expr() + ";");
    w.out() += "}\n";
    return finish(w, names);
}

} // namespace

std::string random_program(std::uint64_t seed, int max_statements) {
    Rng rng(derive_seed(seed, 0x70726f67));
    Rng names(derive_seed(seed, 0x6e616d65));
    ProgramWriter w(rng, true);
    w.open_scope();
    bool returns = rng.chance(0.3);
    function_header(w, rng, returns);
    int budget = std::max(0, max_statements - (returns ? 1 : 0));
    w.statements(1, budget);
    if (returns) w.line(1, "return " + w.expr() + ";");
    w.out() += "}\n";
    return finish(w, names);
}

std::vector<Sample> generate_corpus(const GenConfig& cfg) {
    if (cfg.sample_count < 2) throw ConfigError("sample_count must be at least 2");
    if (!(cfg.flaw_rate > 0.0 && cfg.flaw_rate < 1.0)) throw ConfigError("flaw_rate must lie in (0, 1)");
    if (cfg.max_statements < 7) throw ConfigError("max_statements must be at least 7");

    auto n = static_cast<std::size_t>(cfg.sample_count);
    auto flawed = static_cast<std::size_t>(std::llround(static_cast<double>(n) * cfg.flaw_rate));
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng shuffle(derive_seed(cfg.seed, 0x6c6162656c73));
    for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[shuffle.below(i + 1)]);
    std::vector<int> labels(n, 0);
    for (std::size_t i = 0; i < flawed; ++i) labels[order[i]] = 1;

    std::vector<Sample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng structure(derive_seed(cfg.seed, i, 0));
        Rng names(derive_seed(cfg.seed, i, cfg.rename_salt + 1));
        char id[16];
        std::snprintf(id, sizeof id, "s%05zu", i);
        out.push_back(Sample{id, sample_source(structure, names, cfg.max_statements, labels[i] == 1), labels[i]});
    }
    return out;
}

void write_corpus(const std::filesystem::path& dir, const std::vector<Sample>& samples) {
    std::filesystem::create_directories(dir / "src");
    std::ofstream manifest(dir / "manifest.csv", std::ios::binary);
    if (!manifest) throw Error("cannot write " + (dir / "manifest.csv").string());
    manifest << "sample_id,path,label\n";
    for (const auto& s : samples) {
        std::string rel = "src/" + s.sample_id + ".mc";
        std::ofstream f(dir / rel, std::ios::binary);
        if (!f) throw Error("cannot write " + (dir / rel).string());
        f << s.source;
        manifest << s.sample_id << ',' << rel << ',' << s.label << '\n';
    }
}

std::vector<std::string> declared_names(std::string_view source) {
    Ast ast = parse_source(source);
    std::set<std::string> names;
    for (const auto& n : ast.nodes)
        if (n.cls == ConstructClass::VarDecl || n.cls == ConstructClass::Param) names.insert(*n.name);
    return {names.begin(), names.end()};
}

std::string rename_identifiers(std::string_view source, const std::map<std::string, std::string>& renames) {
    std::vector<Token> toks = tokenize(source);
    std::string out;
    std::size_t copied = 0;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        const Token& t = toks[i];
        if (t.kind != TokenKind::Ident) continue;
        bool is_call = i + 1 < toks.size() && toks[i + 1].text == "(";
        auto it = renames.find(t.text);
        if (is_call || it == renames.end()) continue;
        out.append(source.substr(copied, t.span.begin.offset - copied));
        out += it->second;
        copied = t.span.end.offset;
    }
    out.append(source.substr(copied));
    return out;
}

std::string random_rename(std::string_view source, std::uint64_t seed) {
    std::set<std::string> taken;
    for (const auto& t : tokenize(source))
        if (t.kind == TokenKind::Ident) taken.insert(t.text);
    std::vector<std::string> declared = declared_names(source);
    Rng rng(derive_seed(seed, 0x72656e));
    std::vector<std::string> fresh = fresh_names(rng, declared.size(), taken);
    std::map<std::string, std::string> renames;
    for (std::size_t i = 0; i < declared.size(); ++i) renames[declared[i]] = fresh[i];
    return rename_identifiers(source, renames);
}

} // namespace asg
