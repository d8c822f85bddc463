#pragma once

// Experiment harness: parses flat key=value configs, runs seeded trial
// sweeps over the counting modules (optionally multithreaded), and emits
// deterministic TSV / JSON-lines tables. Per-trial randomness is derived
// from (master seed, trial index) alone so thread scheduling can never
// change the output bytes.

#include <iosfwd>
#include <string>
#include <vector>

#include "hypell/errors.hpp"
#include "hypell/ints.hpp"

namespace hypell::experiment {

struct ExperimentConfig {
  int schema = 1;
  std::string kind;            // count2 | count3 | expcurve | productset | lemma-scan
  u64 seed = 0;
  i64 trials = 0;              // per prime when primes=list:..., total otherwise
  std::string method = "both"; // brute | fast | both

  std::vector<i64> prime_list;     // primes=list:p1,p2,...
  bool prime_range = false;        // primes=range:lo:hi  (seeded random primes)
  i64 prime_lo = 0, prime_hi = 0;

  // m_rule = fixed:N  or  pow:a/b:c  meaning M = floor(p^(a/b) / c)
  bool m_is_pow = false;
  i64 m_fixed = 1;
  i64 m_num = 1, m_den = 1, m_div = 1;

  // random | fixed:N
  bool lambda_fixed = false, k_fixed = false, l_fixed = false, g_fixed = false;
  i64 lambda_value = 0, k_value = 0, l_value = 0, g_value = 0;

  bool plant_uv = false;  // count3: choose L = u/v for seeded small (u, v)
  i64 len_max = 10;       // productset interval length cap
  i64 n_max = 1000000;    // lemma-scan upper bound
  bool timings = false;   // when off, elapsed_us is emitted as 0 (reproducible bytes)

  std::string out;            // output path ("" = stdout)
  std::string format = "tsv"; // tsv | jsonl
};

// flat key=value text; '#' comments; schema=1 required; unknown keys rejected
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

struct TrialRecord {
  i64 trial = 0;
  i64 p = 0;
  i64 lambda = 0;
  i64 K = 0;
  i64 L = 0;
  i64 M = 0;
  i64 count = 0;
  std::string method;  // brute | fast | both | scan | error
  i64 aux1 = 0;        // count2: z-width; count3: fast applicable; expcurve: pair stat;
                       // productset: W; lemma-scan: max divisors in a window
  i64 aux2 = 0;        // count2/count3 both: oracle count; expcurve: window max;
                       // productset: ceil((l1 l2 l3)^2 / W); lemma-scan: n scanned
  i64 elapsed_us = 0;
  std::string error;   // nonempty when the trial failed (method = "error")
};

struct Summary {
  i64 trials = 0;
  i64 errored = 0;
  i64 max_count = 0;
  double mean_count = 0;
  i64 max_count_small_m = -1;   // among trials with M^4 < p, -1 when none
  double max_abs_residual = 0;  // |count - M^2/p| over count2 trials
  double mean_residual = 0;
  std::vector<std::string> error_lines;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  Summary summary;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads = 1);

// fixed column order: trial,p,lambda,K,L,M,count,method,aux1,aux2,elapsed_us
void emit(const std::vector<TrialRecord>& records, const std::string& format, std::ostream& os);

std::string summary_text(const Summary& s);

}  // namespace hypell::experiment
