#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace lgl {

// A finite, complexity-ordered prefix of an encoding system's enumeration.
// Hypotheses are referred to by index.
struct HypothesisClass {
  std::string id;
  std::vector<long long> complexities;  // non-decreasing
  std::function<int(std::size_t, const Bits&)> eval;
  // Shortest, then lexicographically least, distinguishing string; nullopt
  // means the two hypotheses compute the same function.
  std::function<std::optional<Bits>(std::size_t, std::size_t)> distinguish;
  std::function<std::string(std::size_t)> describe;

  std::size_t size() const { return complexities.size(); }
  // Number of hypotheses with complexity <= c.
  std::size_t prefix(long long c) const;
};

struct NoInterpolant : Error {
  using Error::Error;
};

// Index of the first hypothesis with complexity <= c_cap consistent with data.
std::size_t mci_learn(const LabeledDataset& data, const HypothesisClass& cls, long long c_cap);

// Shortest distinguishers for all pairs i < j < count, computed once.
class DistanceTable {
 public:
  DistanceTable() = default;
  DistanceTable(const HypothesisClass& cls, std::size_t count, int jobs = 1);

  std::size_t count() const { return count_; }
  const std::optional<Bits>& at(std::size_t i, std::size_t j) const;
  bool equal(std::size_t i, std::size_t j) const { return i == j || !at(i, j).has_value(); }
  // Length of the shortest distinguisher, -1 when equal.
  long long distance(std::size_t i, std::size_t j) const;

 private:
  std::size_t count_ = 0;
  std::vector<std::optional<Bits>> cells_;
};

struct WitnessPair {
  std::size_t f = 0, g = 0;
  Bits x;
};

struct LengthComplexityReport {
  std::string class_id;
  long long c = 0;
  long long N_value = 0;
  std::vector<WitnessPair> witnesses;  // pairs realizing N_value (first few)
  std::vector<std::pair<std::size_t, std::size_t>> equivalent;  // no distinguisher found
  std::size_t pairs = 0;
};

// Literal scan of {0,1}^{<=maxN} over every unordered pair.
LengthComplexityReport length_complexity_class(const std::vector<Evaluator>& hypotheses, int maxN, int jobs = 1);

// Largest shortest-distinguisher length over unequal pairs among the first
// cls.prefix(c) hypotheses (or the indices in `subset`).
LengthComplexityReport compute_Nc(long long c, const HypothesisClass& cls, int jobs = 1,
                                  const DistanceTable* table = nullptr,
                                  const std::vector<std::size_t>* subset = nullptr);

// Smallest N after which MCI over the class returns a hypothesis equal to
// f_star on every D_n, n in [N, maxN]; nullopt when that never happens by maxN.
// MCI(D_n(f*)) is the first hypothesis whose distance to f* exceeds n.
std::optional<long long> learner_length_complexity(const HypothesisClass& cls, std::size_t f_star, long long maxN,
                                                   const DistanceTable* table = nullptr);
// Same quantity by running mci_learn on materialized datasets (small maxN only).
std::optional<long long> learner_length_complexity_literal(const HypothesisClass& cls, std::size_t f_star,
                                                           int maxN);

using BoundFn = std::function<long long(long long)>;

// nullopt stands for "pass".
std::optional<std::size_t> flg_learn(const LabeledDataset& data, long long c, const BoundFn& F,
                                     const HypothesisClass& cls);

// Grows N per ground truth until the learner's output is correct and stays
// correct for `stable_for` further lengths; returns the largest such N.
long long flg_bound(long long c, const HypothesisClass& cls, int jobs = 1, const DistanceTable* table = nullptr,
                    long long stable_for = 4);

std::string report_csv(const std::vector<LengthComplexityReport>& reports, const HypothesisClass* cls);

}  // namespace lgl
