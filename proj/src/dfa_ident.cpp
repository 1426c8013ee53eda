#include "dfa_ident.hpp"

#include <algorithm>
#include <map>

namespace lgl {

Dfa learn_dfa(const LabeledDataset& data, int n, int depth) {
  if (n < 1) throw Error("n must be positive");
  if (n == 1) {
    // Constant language: the labels up to length `depth` (default 0) decide it.
    const int reach = std::min(std::max(depth, 0), data.horizon());
    if (reach < 0) throw Error("dataset is empty");
    bool any0 = false, any1 = false;
    for_each_string(reach, [&](const Bits& x) { (data.label(x) ? any1 : any0) = true; });
    if (any0 && any1) throw InconsistentData("InconsistentData: labels are mixed but n = 1");
    return any1 ? dfa_all_accept() : dfa_all_reject();
  }
  if (depth < 0) depth = n - 2;
  if (data.horizon() < n + depth)
    throw Error("dataset horizon " + std::to_string(data.horizon()) + " is below the required " +
                std::to_string(n + depth));

  const auto suffixes = enumerate_strings(depth);
  auto signature = [&](const Bits& u) {
    std::string sig;
    sig.reserve(suffixes.size());
    for (const auto& v : suffixes) sig.push_back(data.label(u + v) ? '1' : '0');
    return sig;
  };

  std::map<std::string, int> class_of;
  std::vector<Bits> reps;
  const auto prefixes = enumerate_strings(n - 1);
  std::vector<int> cls(prefixes.size());
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    auto sig = signature(prefixes[i]);
    auto [it, fresh] = class_of.emplace(sig, static_cast<int>(reps.size()));
    if (fresh) reps.push_back(prefixes[i]);
    cls[i] = it->second;
  }

  const int states = static_cast<int>(reps.size());
  Dfa d;
  d.n = states;
  d.delta.assign(states, {-1, -1});
  d.accept.assign(states, false);
  d.start = cls[0];
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    const int q = cls[i];
    d.accept[q] = data.label(prefixes[i]) == 1;
    for (int b = 0; b < 2; ++b) {
      auto it = class_of.find(signature(prefixes[i] + static_cast<char>('0' + b)));
      if (it == class_of.end())
        throw InconsistentData("InconsistentData: E(" + bits_to_token(prefixes[i] + static_cast<char>('0' + b)) + ") matches no known state");
      if (d.delta[q][b] >= 0 && d.delta[q][b] != it->second)
        throw InconsistentData("InconsistentData: non-deterministic transition from the class of " +
                               bits_to_token(prefixes[i]));
      d.delta[q][b] = it->second;
    }
  }
  return d;
}

}  // namespace lgl
