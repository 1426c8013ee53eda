#include "learner.hpp"

#include <algorithm>
#include <sstream>

namespace lgl {

std::size_t HypothesisClass::prefix(long long c) const {
  return static_cast<std::size_t>(std::upper_bound(complexities.begin(), complexities.end(), c) -
                                  complexities.begin());
}

std::size_t mci_learn(const LabeledDataset& data, const HypothesisClass& cls, long long c_cap) {
  const std::size_t limit = cls.prefix(c_cap);
  std::vector<Bits> xs;
  xs.reserve(data.size());
  for (std::uint64_t i = 0; i < data.size(); ++i) xs.push_back(string_at(i));
  for (std::size_t h = 0; h < limit; ++h) {
    bool ok = true;
    for (std::uint64_t i = 0; i < xs.size() && ok; ++i) ok = cls.eval(h, xs[i]) == data.label(xs[i]);
    if (ok) return h;
  }
  throw NoInterpolant("NoInterpolant: no hypothesis of complexity <= " + std::to_string(c_cap) +
                      " is consistent with the data");
}

namespace {

std::size_t tri(std::size_t i, std::size_t j) { return j * (j - 1) / 2 + i; }

}  // namespace

DistanceTable::DistanceTable(const HypothesisClass& cls, std::size_t count, int jobs) : count_(count) {
  cells_.resize(count < 2 ? 0 : tri(0, count));
  parallel_for(jobs, count, [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) cells_[tri(i, j)] = cls.distinguish(i, j);
  });
}

const std::optional<Bits>& DistanceTable::at(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i == j || j >= count_) throw Error("distance table index out of range");
  return cells_[tri(i, j)];
}

long long DistanceTable::distance(std::size_t i, std::size_t j) const {
  if (i == j) return -1;
  const auto& x = at(i, j);
  return x ? static_cast<long long>(x->size()) : -1;
}

namespace {

void absorb(LengthComplexityReport& r, std::size_t i, std::size_t j, const std::optional<Bits>& x) {
  ++r.pairs;
  if (!x) {
    r.equivalent.emplace_back(i, j);
    return;
  }
  const long long len = static_cast<long long>(x->size());
  if (len > r.N_value) {
    r.N_value = len;
    r.witnesses.clear();
  }
  if (len == r.N_value && r.witnesses.size() < 8) r.witnesses.push_back({i, j, *x});
}

}  // namespace

LengthComplexityReport length_complexity_class(const std::vector<Evaluator>& hypotheses, int maxN, int jobs) {
  const std::size_t H = hypotheses.size();
  const std::uint64_t total = strings_up_to(maxN);
  std::vector<Bits> xs;
  xs.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) xs.push_back(string_at(i));
  std::vector<std::vector<std::uint8_t>> labels(H);
  parallel_for(jobs, H, [&](std::size_t h) {
    labels[h].resize(total);
    for (std::uint64_t i = 0; i < total; ++i) labels[h][i] = static_cast<std::uint8_t>(hypotheses[h](xs[i]));
  });
  LengthComplexityReport r;
  r.class_id = "explicit";
  for (std::size_t j = 0; j < H; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      std::optional<Bits> x;
      for (std::uint64_t s = 0; s < total; ++s)
        if (labels[i][s] != labels[j][s]) {
          x = xs[s];
          break;
        }
      absorb(r, i, j, x);
    }
  return r;
}

LengthComplexityReport compute_Nc(long long c, const HypothesisClass& cls, int jobs, const DistanceTable* table,
                                  const std::vector<std::size_t>* subset) {
  std::vector<std::size_t> ids;
  if (subset) {
    ids = *subset;
  } else {
    for (std::size_t i = 0; i < cls.prefix(c); ++i) ids.push_back(i);
  }
  const std::size_t H = ids.size();
  // Per column j, the distinguishers against every earlier hypothesis.
  std::vector<std::vector<std::optional<Bits>>> cols(H);
  parallel_for(jobs, H, [&](std::size_t j) {
    cols[j].resize(j);
    for (std::size_t i = 0; i < j; ++i) {
      std::size_t a = ids[i], b = ids[j];
      cols[j][i] = table && std::max(a, b) < table->count() ? table->at(a, b) : cls.distinguish(a, b);
    }
  });
  LengthComplexityReport r;
  r.class_id = cls.id;
  r.c = c;
  for (std::size_t j = 0; j < H; ++j)
    for (std::size_t i = 0; i < j; ++i) absorb(r, ids[i], ids[j], cols[j][i]);
  return r;
}

namespace {

std::optional<Bits> pair_distinguisher(const HypothesisClass& cls, const DistanceTable* table, std::size_t a,
                                       std::size_t b) {
  if (a == b) return std::nullopt;
  if (table && std::max(a, b) < table->count()) return table->at(a, b);
  return cls.distinguish(std::min(a, b), std::max(a, b));
}

}  // namespace

std::optional<long long> learner_length_complexity(const HypothesisClass& cls, std::size_t f_star, long long maxN,
                                                   const DistanceTable* table) {
  if (f_star >= cls.size()) throw Error("ground truth index out of range");
  long long N = 0;
  for (std::size_t h = 0; h < f_star; ++h) {
    auto x = pair_distinguisher(cls, table, h, f_star);
    if (!x) break;  // h is the first hypothesis equal to f*
    N = std::max<long long>(N, static_cast<long long>(x->size()));
  }
  if (N > maxN) return std::nullopt;
  return N;
}

std::optional<long long> learner_length_complexity_literal(const HypothesisClass& cls, std::size_t f_star,
                                                           int maxN) {
  if (f_star >= cls.size()) throw Error("ground truth index out of range");
  Evaluator truth = [&](const Bits& x) { return cls.eval(f_star, x); };
  std::optional<long long> since;
  for (int n = 0; n <= maxN; ++n) {
    std::size_t h = mci_learn(build_dataset(truth, n), cls, cls.complexities[f_star]);
    bool correct = h == f_star || !cls.distinguish(std::min(h, f_star), std::max(h, f_star));
    if (!correct) {
      since.reset();
    } else if (!since) {
      since = n;
    }
  }
  return since;
}

std::optional<std::size_t> flg_learn(const LabeledDataset& data, long long c, const BoundFn& F,
                                     const HypothesisClass& cls) {
  if (data.horizon() < F(c)) return std::nullopt;
  return mci_learn(data, cls, c);
}

long long flg_bound(long long c, const HypothesisClass& cls, int jobs, const DistanceTable* table,
                    long long stable_for) {
  const std::size_t count = cls.prefix(c);
  std::vector<long long> per(count, 0);
  parallel_for(jobs, count, [&](std::size_t p) {
    std::vector<long long> dist(p + 1, -1);  // -1: equal to p
    for (std::size_t h = 0; h < p; ++h) {
      auto x = pair_distinguisher(cls, table, h, p);
      dist[h] = x ? static_cast<long long>(x->size()) : -1;
    }
    // The learner on D_N(p) outputs the first h whose shortest distinguisher
    // from p is longer than N.
    auto learned = [&](long long N) {
      for (std::size_t h = 0; h <= p; ++h)
        if (dist[h] < 0 || dist[h] > N) return h;
      return p;
    };
    long long N = 0, run = 0, first_ok = 0;
    while (run <= stable_for) {
      std::size_t h = learned(N);
      if (dist[h] < 0) {
        if (run == 0) first_ok = N;
        ++run;
      } else {
        run = 0;
      }
      ++N;
    }
    per[p] = first_ok;
  });
  return per.empty() ? 0 : *std::max_element(per.begin(), per.end());
}

std::string report_csv(const std::vector<LengthComplexityReport>& reports, const HypothesisClass* cls) {
  std::ostringstream out;
  out << "c,N_value,witness_f,witness_g,witness_x\n";
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  for (const auto& r : reports) {
    out << r.c << ',' << r.N_value << ',';
    if (r.witnesses.empty()) {
      out << ",,\n";
      continue;
    }
    const auto& w = r.witnesses.front();
    std::string f = cls && cls->describe ? cls->describe(w.f) : std::to_string(w.f);
    std::string g = cls && cls->describe ? cls->describe(w.g) : std::to_string(w.g);
    out << quote(f) << ',' << quote(g) << ',' << bits_to_token(w.x) << '\n';
  }
  return out.str();
}

}  // namespace lgl
