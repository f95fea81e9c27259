// Experiment pipelines shared by the CLI and the acceptance suite.  Every
// pipeline returns a self-contained JSON report (config echo, seed, results);
// rerunning with the same config and seed reproduces the report byte for byte
// apart from the "timing_ms" field.

#ifndef MAXIMAL_REPORT_HPP
#define MAXIMAL_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "maximal/conditions.hpp"
#include "maximal/dilation_set.hpp"
#include "maximal/entropy.hpp"

namespace maximal {

using Json = nlohmann::ordered_json;

extern const char* kVersion;

struct RunOptions {
    int threads = 0;            // 0 = library default
    std::uint64_t seed = 12345; // MAXIMAL_LAB_SEED overrides in the CLI
    bool paper_defaults = false;
    bool with_timing = true;
};

Json run_analyze(const DilationSet& set, int d, int n_max, const RunOptions& opt,
                 const std::string& csv_path = "");
Json run_check(const DilationSet& set, int d, double p, double q,
               const std::string& condition, int n_max, double eps, int L_max,
               const RunOptions& opt);
Json run_decompose(const DilationSet& set, int k, int n_max, const RunOptions& opt);
Json run_operator(const DilationSet& set, int d, double p,
                  const std::vector<double>& eps_list, const RunOptions& opt);
Json run_counterexample_cantor(int N, double a, double grid_h, std::int64_t samples,
                               const RunOptions& opt);
Json run_counterexample_kakeya(const DilationSet& set, int n, const RunOptions& opt,
                               int stride = 10);
Json run_theorem_table(int d, const RunOptions& opt);

// exit-code contract: 0 ok, 2 if any verdict is Inconclusive
int exit_code_for(const Json& report);

Json verdict_to_json(const ConditionVerdict& v);
void write_profile_csv(const EntropyProfile& prof, const std::string& path);

} // namespace maximal

#endif
