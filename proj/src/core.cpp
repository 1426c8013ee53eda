#include "core.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

namespace lgl {

std::vector<int> prefix_sums(const Bits& x) {
  std::vector<int> ps(x.size());
  int acc = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    acc += x[j] == '1';
    ps[j] = acc;
  }
  return ps;
}

int count_ones(const Bits& x) { return static_cast<int>(std::count(x.begin(), x.end(), '1')); }

std::uint64_t string_index(const Bits& x) {
  if (x.size() > 62) throw Error("string too long to index");
  std::uint64_t v = 0;
  for (char c : x) v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  return ((std::uint64_t{1} << x.size()) - 1) + v;
}

Bits string_at(std::uint64_t index) {
  int len = 0;
  while (((std::uint64_t{1} << (len + 1)) - 1) <= index) ++len;
  std::uint64_t v = index - ((std::uint64_t{1} << len) - 1);
  Bits s(len, '0');
  for (int i = len - 1; i >= 0; --i, v >>= 1) s[i] = (v & 1) ? '1' : '0';
  return s;
}

std::uint64_t strings_up_to(int N) {
  if (N < 0) return 0;
  if (N > 61) throw Error("horizon too large");
  return (std::uint64_t{1} << (N + 1)) - 1;
}

void for_each_string(int N, const std::function<void(const Bits&)>& fn) {
  for (int len = 0; len <= N; ++len) {
    Bits s(len, '0');
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      for (int i = 0; i < len; ++i) s[len - 1 - i] = ((v >> i) & 1) ? '1' : '0';
      fn(s);
    }
  }
}

std::vector<Bits> enumerate_strings(int N) {
  std::vector<Bits> out;
  out.reserve(strings_up_to(N));
  for_each_string(N, [&](const Bits& s) { out.push_back(s); });
  return out;
}

bool is_bits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

Bits bits_from_token(std::string_view token) {
  if (token == "EPS") return {};
  if (!is_bits(token)) throw Error("not a bit string: " + std::string(token));
  return Bits(token);
}

std::string bits_to_token(const Bits& x) { return x.empty() ? "EPS" : x; }

LabeledDataset::LabeledDataset(int horizon, std::vector<std::uint8_t> labels)
    : horizon_(horizon), labels_(std::move(labels)) {
  if (labels_.size() != strings_up_to(horizon_)) throw Error("dataset is not total over {0,1}^{<=N}");
}

int LabeledDataset::label(const Bits& x) const {
  if (static_cast<int>(x.size()) > horizon_) throw Error("string beyond dataset horizon");
  if (max_len_ && static_cast<int>(x.size()) > *max_len_) *max_len_ = static_cast<int>(x.size());
  return labels_[string_index(x)];
}

LabeledDataset LabeledDataset::truncated(int N) const {
  if (N > horizon_) throw Error("cannot extend a dataset");
  return LabeledDataset(N, std::vector<std::uint8_t>(labels_.begin(), labels_.begin() + strings_up_to(N)));
}

LabeledDataset build_dataset(const Evaluator& f, int N) {
  std::vector<std::uint8_t> labels;
  labels.reserve(strings_up_to(N));
  for_each_string(N, [&](const Bits& s) { labels.push_back(static_cast<std::uint8_t>(f(s) != 0)); });
  return LabeledDataset(N, std::move(labels));
}

std::string dataset_to_csv(const LabeledDataset& d) {
  std::ostringstream os;
  os << "string,label\n";
  std::uint64_t i = 0;
  for_each_string(d.horizon(), [&](const Bits& s) { os << s << ',' << int(d.label_at(i++)) << '\n'; });
  return os.str();
}

LabeledDataset dataset_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw Error("empty dataset");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "string,label") throw Error("dataset header must be 'string,label'");
  std::vector<std::pair<Bits, int>> rows;
  int horizon = -1;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw Error("bad dataset row: " + line);
    std::string key = line.substr(0, comma), lab = line.substr(comma + 1);
    Bits x = key == "EPS" ? Bits{} : bits_from_token(key);
    if (lab != "0" && lab != "1") throw Error("bad label: " + line);
    horizon = std::max(horizon, static_cast<int>(x.size()));
    rows.emplace_back(x, lab == "1");
  }
  if (horizon < 0) throw Error("dataset has no rows");
  std::vector<int> labels(strings_up_to(horizon), -1);
  for (auto& [x, y] : rows) {
    auto& slot = labels[string_index(x)];
    if (slot != -1 && slot != y) throw Error("conflicting labels for " + bits_to_token(x));
    slot = y;
  }
  std::vector<std::uint8_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) throw Error("dataset misses string " + bits_to_token(string_at(i)));
    out[i] = static_cast<std::uint8_t>(labels[i]);
  }
  return LabeledDataset(horizon, std::move(out));
}

std::string rational_str(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_parse(std::string_view s) {
  Rational q;
  if (q.set_str(std::string(s), 10) != 0 || q.get_den() == 0) throw Error("bad rational: " + std::string(s));
  q.canonicalize();
  return q;
}

BigInt lcm_of_denominators(const std::vector<Rational>& v) {
  BigInt l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

void parallel_for(int jobs, std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace lgl
