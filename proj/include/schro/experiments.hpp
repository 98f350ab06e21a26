#pragma once

#include <string>
#include <vector>

#include "schro/config.hpp"
#include "schro/results.hpp"

namespace schro {

// Named experiment suites. Each is a pure function of the config: the same
// config (and code) reproduces the same records bit for bit. Rows carry
// their own tolerance; `pass` is empty on informational rows.
std::vector<ResultRecord> run_constants(const Config& cfg);
std::vector<ResultRecord> run_lemma_fk(const Config& cfg);
std::vector<ResultRecord> run_mean_growth(const Config& cfg);
std::vector<ResultRecord> run_clt(const Config& cfg);
std::vector<ResultRecord> run_theorem(const Config& cfg);
std::vector<ResultRecord> run_uniform_integrability(const Config& cfg);
std::vector<ResultRecord> run_all(const Config& cfg);

// writes <out>/results.csv (or results.json) plus <out>/manifest.json
void emit_results(const std::vector<ResultRecord>& records, const Config& cfg,
                  const std::string& out_dir, const std::string& format);

// the documented default for every key an experiment reads
Config default_config();

}  // namespace schro
