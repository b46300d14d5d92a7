#pragma once

// Synthetic MiniC corpora with a planted out-of-bounds pattern, and the
// random program generator behind the property tests.

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace asg {

/// mt19937_64 with portable bounded draws (std distributions differ across
/// standard libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);
    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
    /// True with probability p.
    bool chance(double p);
    template <class T>
    const T& pick(const std::vector<T>& items) { return items[below(items.size())]; }

private:
    std::mt19937_64 engine_;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

struct GenConfig {
    std::uint64_t seed = 1;
    int sample_count = 10;
    double flaw_rate = 0.5;
    int max_statements = 12;
    std::uint64_t rename_salt = 0;
};

struct Sample {
    std::string sample_id;
    std::string source;
    int label = 0;
};

/// round(sample_count * flaw_rate) samples get label 1. Flawed samples
/// index a fixed-size array without comparing the index against its size;
/// safe samples guard the same access. `rename_salt` only changes variable
/// names. Throws ConfigError.
std::vector<Sample> generate_corpus(const GenConfig& cfg);

/// Writes `manifest.csv` and `src/<sample_id>.mc` under `dir`.
void write_corpus(const std::filesystem::path& dir, const std::vector<Sample>& samples);

/// A parseable single-function program with at most `max_statements`
/// statements, nested scopes (sometimes shadowing) and external calls.
std::string random_program(std::uint64_t seed, int max_statements = 12);

/// Names of every varDecl and param in `source`.
std::vector<std::string> declared_names(std::string_view source);

/// Rewrites identifier tokens (not call targets) through `renames`, keeping
/// all other bytes.
std::string rename_identifiers(std::string_view source, const std::map<std::string, std::string>& renames);

/// Applies a random injective rename of all declared names; fresh names
/// avoid every identifier already in the source.
std::string random_rename(std::string_view source, std::uint64_t seed);

} // namespace asg
