#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core.hpp"
#include "learner.hpp"

namespace lgl {

struct ConfigError : Error {
  using Error::Error;
};

struct UndecidableClass : Error {
  using Error::Error;
};

struct ExperimentConfig {
  std::string class_id;  // dfa | crasp1 | crasp2 | cfg
  int lo = 1, hi = 1;    // c for DFAs, T for C-RASP
  int K = 1;             // heads, C-RASP^2 only
  std::size_t sample = 0;  // 0: exhaustive; otherwise sample this many hypotheses per level
  int jobs = 1;
  std::uint64_t seed = 0;
  bool force = false;
};

// Rejects unknown classes, empty-but-malformed ranges and (without force) the
// desk-scale caps: DFA c <= 4, C-RASP^1 T <= 8, C-RASP^2 T <= 3 and K <= 2.
void check_config(const ExperimentConfig& cfg);

struct BoundRow {
  std::string class_id;
  std::string parameter;
  long long empirical_N = 0;
  std::string bound;  // formula value, or "none" where only properties are checked
  bool pass = true;
  std::string note;
};

struct BoundReport {
  std::vector<BoundRow> rows;
  bool all_pass() const;
  std::string csv() const;
  std::string summary_json() const;
};

BoundReport verify_bounds(const ExperimentConfig& cfg);

struct CurveRow {
  std::size_t f_id = 0;
  long long complexity = 0;
  long long N_mci = 0;
};

// Per ground truth, the length from which MCI identifies it.
std::vector<CurveRow> run_learning_curve(const HypothesisClass& cls, long long c, int jobs = 1);
std::string curve_csv(const std::vector<CurveRow>& rows, const HypothesisClass& cls);

HypothesisClass make_class(const ExperimentConfig& cfg, int param);

// Reproducible sample of `count` indices from [0, n), sorted.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t count, std::uint64_t seed);

}  // namespace lgl
