#pragma once

#include <string>
#include <vector>

#include "core.hpp"

namespace lgl {

// f(x) = 1[a * ones(x) - b * |x| - d > 0]
struct Crasp1 {
  int a = 1;
  int b = 0;
  int d = 0;

  bool operator==(const Crasp1&) const = default;
  auto operator<=>(const Crasp1&) const = default;
};

bool crasp1_valid(const Crasp1& p, int T);
int crasp1_complexity(const Crasp1& p);
int crasp1_eval(const Crasp1& p, const Bits& x);
// Depends on x only through its length and number of ones.
int crasp1_eval_counts(const Crasp1& p, long long n, long long ones);
std::vector<Crasp1> crasp1_enumerate(int T);

struct Crasp2Head {
  int a = 2;
  int b = 1;
  int lambda = 1;

  bool operator==(const Crasp2Head&) const = default;
};

// f(x) = 1[sum_i lambda_i * #{j : a_i ps_j > b_i j} > z |x|]
struct Crasp2 {
  std::vector<Crasp2Head> heads;
  int z = 1;

  bool operator==(const Crasp2&) const = default;
};

int crasp2_precision(const Crasp2& p);  // T(f)
long long crasp2_complexity(const Crasp2& p);  // T(f)^K
bool crasp2_valid(const Crasp2& p, int T, std::string* why = nullptr);
bool crasp2_is_canonical(const Crasp2& p);  // heads in strictly descending slope
Crasp2 crasp2_canonical(const Crasp2& p);
int crasp2_eval(const Crasp2& p, const Bits& x);
// Final decision from per-head firing counts over n positions.
int crasp2_decide(const Crasp2& p, const std::vector<long long>& head_counts, long long n);

struct Crasp2Enumeration {
  std::vector<Crasp2> programs;
  std::size_t raw_tuples = 0;
  std::size_t skipped_invalid = 0;
  std::size_t skipped_noncanonical = 0;
};

// All canonical programs with exactly K heads and magnitudes <= T, grouped by
// T(f) ascending, then lexicographic on (a_1, b_1, lambda_1, ..., z).
Crasp2Enumeration crasp2_enumerate(int T, int K);

}  // namespace lgl
