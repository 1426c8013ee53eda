#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lgl {

// Bit strings are stored as '0'/'1' characters.
using Bits = std::string;
using Rational = mpq_class;
using BigInt = mpz_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> prefix_sums(const Bits& x);
int count_ones(const Bits& x);

// Canonical position of x in length-then-lex order; ε is 0.
std::uint64_t string_index(const Bits& x);
Bits string_at(std::uint64_t index);
std::uint64_t strings_up_to(int N);  // 2^{N+1} - 1

std::vector<Bits> enumerate_strings(int N);
void for_each_string(int N, const std::function<void(const Bits&)>& fn);

bool is_bits(std::string_view s);
Bits bits_from_token(std::string_view token);  // "EPS" -> ε
std::string bits_to_token(const Bits& x);

using Evaluator = std::function<int(const Bits&)>;

class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(int horizon, std::vector<std::uint8_t> labels);

  int horizon() const { return horizon_; }
  std::size_t size() const { return labels_.size(); }
  int label(const Bits& x) const;
  int label_at(std::uint64_t index) const { return labels_[index]; }
  const std::vector<std::uint8_t>& labels() const { return labels_; }
  LabeledDataset truncated(int N) const;

  // Optional read tracker: records the longest string whose label was read.
  void track_reads(int* max_len) const { max_len_ = max_len; }

 private:
  int horizon_ = -1;
  std::vector<std::uint8_t> labels_;
  mutable int* max_len_ = nullptr;
};

LabeledDataset build_dataset(const Evaluator& f, int N);

std::string dataset_to_csv(const LabeledDataset& d);
LabeledDataset dataset_from_csv(const std::string& text);

std::string rational_str(const Rational& q);
Rational rational_parse(std::string_view s);
BigInt lcm_of_denominators(const std::vector<Rational>& v);

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Results are written by
// index, so merge order is independent of scheduling.
void parallel_for(int jobs, std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace lgl
