#include "schro/results.hpp"

#include <algorithm>
#include <array>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace schro {

const char* const kCsvHeader =
    "experiment,label,t,eps,xi,lambda,n,seed,est_re,est_im,stderr,oracle_re,oracle_im,z,"
    "pass,tol,provenance";

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_g17(*v) : ""; }
std::string cell(const std::optional<int64_t>& v) { return v ? std::to_string(*v) : ""; }
std::string cell(const std::optional<uint64_t>& v) { return v ? std::to_string(*v) : ""; }
std::string cell(const std::optional<bool>& v) { return v ? (*v ? "1" : "0") : ""; }

}  // namespace

std::string to_csv_line(const ResultRecord& r) {
    std::ostringstream out;
    out << r.experiment << ',' << r.label << ',' << cell(r.t) << ',' << cell(r.eps) << ','
        << cell(r.xi) << ',' << cell(r.lambda) << ',' << cell(r.n) << ',' << cell(r.seed) << ','
        << cell(r.est_re) << ',' << cell(r.est_im) << ',' << cell(r.stderr_est) << ','
        << cell(r.oracle_re) << ',' << cell(r.oracle_im) << ',' << cell(r.z) << ','
        << cell(r.pass) << ',' << cell(r.tol) << ',' << r.provenance;
    return out.str();
}

std::string to_csv(const std::vector<ResultRecord>& records) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : records) out << to_csv_line(r) << '\n';
    return out.str();
}

void write_csv(const std::string& path, const std::vector<ResultRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write CSV: " + path);
    out << to_csv(records);
}

bool all_pass(const std::vector<ResultRecord>& records) {
    for (const auto& r : records)
        if (r.pass && !*r.pass) return false;
    return true;
}

std::string manifest_json(const Config& cfg, uint64_t seed,
                          const std::vector<ResultRecord>& records) {
    nlohmann::ordered_json j;
    char hash_hex[20];
    std::snprintf(hash_hex, sizeof hash_hex, "%016" PRIx64, cfg.hash());
    j["config_hash"] = hash_hex;
    j["seed"] = seed;
    j["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cfg.entries()) j["config"][k] = v;

    std::map<std::string, std::array<int64_t, 3>> tally;  // pass, fail, info
    std::map<std::string, double> wall;
    for (const auto& r : records) {
        auto& t = tally[r.experiment];
        if (!r.pass)
            ++t[2];
        else
            ++t[*r.pass ? 0 : 1];
        // rows of one experiment share its wall time; keep the max
        wall[r.experiment] = std::max(wall[r.experiment], r.wall_ms);
    }
    j["experiments"] = nlohmann::ordered_json::object();
    for (const auto& [name, t] : tally) {
        nlohmann::ordered_json e;
        e["n_pass"] = t[0];
        e["n_fail"] = t[1];
        e["n_info"] = t[2];
        e["wall_ms"] = wall[name];
        j["experiments"][name] = e;
    }
    j["n_records"] = records.size();
    j["all_pass"] = all_pass(records);
    return j.dump(2) + "\n";
}

void write_manifest(const std::string& path, const Config& cfg, uint64_t seed,
                    const std::vector<ResultRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << manifest_json(cfg, seed, records);
}

}  // namespace schro
