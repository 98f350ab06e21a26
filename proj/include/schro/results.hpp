#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schro/config.hpp"

namespace schro {

// One experiment row. Unset optionals serialize as empty CSV cells. `pass`
// empty means informational (no verdict); exit codes aggregate only verdicts.
struct ResultRecord {
    std::string experiment;
    std::string label;
    std::optional<double> t, eps, xi, lambda;
    std::optional<int64_t> n;
    std::optional<uint64_t> seed;
    std::optional<double> est_re, est_im;
    std::optional<double> stderr_est;
    std::optional<double> oracle_re, oracle_im;
    std::optional<double> z;  // z-score or bound ratio, per label
    std::optional<bool> pass;
    std::optional<double> tol;
    std::string provenance = "none";  // quadrature | closed-form | MC-oracle | none
    double wall_ms = 0.0;             // manifest-only; kept out of the CSV
};

// column order is the on-disk contract; floats use 17 significant digits
extern const char* const kCsvHeader;
std::string to_csv_line(const ResultRecord& r);
std::string to_csv(const std::vector<ResultRecord>& records);
void write_csv(const std::string& path, const std::vector<ResultRecord>& records);

// all verdict rows pass (informational rows ignored); true for empty sets
bool all_pass(const std::vector<ResultRecord>& records);

// JSON manifest: config hash/entries, seed, per-experiment record counts,
// verdict tallies and wall time
std::string manifest_json(const Config& cfg, uint64_t seed,
                          const std::vector<ResultRecord>& records);
void write_manifest(const std::string& path, const Config& cfg, uint64_t seed,
                    const std::vector<ResultRecord>& records);

std::string format_g17(double v);

}  // namespace schro
