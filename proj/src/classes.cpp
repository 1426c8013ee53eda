#include "classes.hpp"

#include <algorithm>
#include <memory>

#include "distinguish.hpp"
#include "io.hpp"

namespace lgl {

HypothesisClass dfa_class(int c) {
  auto dfas = std::make_shared<std::vector<Dfa>>(dfa_enumerate(c));
  HypothesisClass cls;
  cls.id = "dfa";
  for (const auto& d : *dfas) cls.complexities.push_back(d.n);
  cls.eval = [dfas](std::size_t i, const Bits& x) { return dfa_eval((*dfas)[i], x); };
  cls.distinguish = [dfas](std::size_t i, std::size_t j) -> std::optional<Bits> {
    auto cmp = dfa_equal((*dfas)[i], (*dfas)[j]);
    if (cmp.equal) return std::nullopt;
    return cmp.counterexample;
  };
  cls.describe = [dfas](std::size_t i) { return model_to_json(make_model((*dfas)[i])); };
  return cls;
}

HypothesisClass crasp1_class(int T) {
  auto progs = std::make_shared<std::vector<Crasp1>>(crasp1_enumerate(T));
  HypothesisClass cls;
  cls.id = "crasp1";
  for (const auto& p : *progs) cls.complexities.push_back(crasp1_complexity(p));
  cls.eval = [progs](std::size_t i, const Bits& x) { return crasp1_eval((*progs)[i], x); };
  cls.distinguish = [progs](std::size_t i, std::size_t j) -> std::optional<Bits> {
    const auto &p = (*progs)[i], &q = (*progs)[j];
    long long T = std::max({1, crasp1_complexity(p), crasp1_complexity(q)});
    auto d = crasp1_min_distinguisher(p, q, 3 * T * T);
    if (!d) return std::nullopt;
    return d->witness;
  };
  cls.describe = [progs](std::size_t i) { return model_to_json(make_model((*progs)[i])); };
  return cls;
}

HypothesisClass crasp2_class(int T, int K) {
  auto progs = std::make_shared<std::vector<Crasp2>>();
  for (int k = 1; k <= K && static_cast<long long>(k) <= static_cast<long long>(T) * T; ++k) {
    auto e = crasp2_enumerate(T, k);
    progs->insert(progs->end(), e.programs.begin(), e.programs.end());
  }
  std::stable_sort(progs->begin(), progs->end(), [](const Crasp2& a, const Crasp2& b) {
    return crasp2_complexity(a) < crasp2_complexity(b);
  });
  HypothesisClass cls;
  cls.id = "crasp2";
  for (const auto& p : *progs) cls.complexities.push_back(crasp2_complexity(p));
  cls.eval = [progs](std::size_t i, const Bits& x) { return crasp2_eval((*progs)[i], x); };
  cls.distinguish = [progs](std::size_t i, std::size_t j) -> std::optional<Bits> {
    const auto &f = (*progs)[i], &g = (*progs)[j];
    auto cert = crasp2_construct_distinguisher(f, g);
    if (!cert) return std::nullopt;
    auto d = crasp2_min_distinguisher(f, g, cert->n);
    if (!d) throw PipelineInvariantViolated("certificate witness not found by the DP oracle");
    return d->witness;
  };
  cls.describe = [progs](std::size_t i) { return model_to_json(make_model((*progs)[i])); };
  return cls;
}

}  // namespace lgl
