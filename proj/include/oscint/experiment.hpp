#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oscint/slicing.hpp"

namespace oscint {

inline constexpr const char* kVersion = "0.1.0";

/// One experiment = one plain-text config file with named [sections] of
/// key = value lines ('#' comments). Input paths are resolved relative to
/// the config file's directory.
class Config {
public:
    static Config load(const std::string& path);
    static Config from_string(const std::string& text, const std::string& name = "<config>");

    bool has(const std::string& section, const std::string& key) const;

    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key, double fallback) const;
    long long get_int(const std::string& section, const std::string& key) const;
    long long get_int_or(const std::string& section, const std::string& key, long long fallback) const;
    std::uint64_t get_seed_or(const std::string& section, std::uint64_t fallback) const;
    std::vector<double> get_doubles(const std::string& section, const std::string& key) const;

    /// Resolves a path value relative to the config file location.
    std::string resolve_path(const std::string& value) const;

    const std::string& path() const { return path_; }
    std::uint64_t content_hash() const { return hash_; }

private:
    std::string path_;
    std::string dir_;
    std::uint64_t hash_ = 0;
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

std::uint64_t fnv1a64(const std::string& bytes);

/// Deterministic CSV writer: fixed %.17g formatting, one trailing metadata
/// comment "# seed=... version=... config_hash=...".
class CsvWriter {
public:
    CsvWriter(std::string path, std::string header);
    void add_row(const std::vector<std::string>& cells);
    void add_row_numeric(const std::vector<double>& cells);
    /// Writes the file including the metadata trailer; extra holds
    /// additional "key=value" entries (e.g. partial=1).
    void write(std::uint64_t seed, std::uint64_t config_hash,
               const std::vector<std::string>& extra = {});

    static std::string format_double(double v);

private:
    std::string path_;
    std::string header_;
    std::vector<std::string> rows_;
};

struct RunOptions {
    std::optional<std::uint64_t> seed;   ///< overrides the config seed
    std::string out_dir = ".";
    std::optional<int> threads;
    bool verbose = false;
};

/// Synthetic instance for the two-point slicing lemma, satisfying the
/// hypothesis |f(x) - f'(x')| <= R on E by construction.
struct FrustInstance {
    DiscretizedSet E;
    Eigen::MatrixXd f, fp;
    double R = 0.0;
};
FrustInstance make_frust_instance(int n, int D, double R, std::uint64_t seed);

/// Runs one CLI subcommand. Returns the process exit code: 0 success,
/// 2 parse error, 3 validation error, 4 numeric error (partial artifacts
/// are flagged in the CSV metadata).
int run_command(const std::string& command, const std::string& config_path,
                const RunOptions& options);

}  // namespace oscint
