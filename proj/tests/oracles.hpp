// Independent reference implementations used only by the tests. They follow
// the definitions literally and share no code with the library beyond the
// plain data types.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"
#include "crasp.hpp"
#include "encodings.hpp"
#include "geometry.hpp"

namespace oracle {

using lgl::Bits;
using lgl::Rational;

inline std::vector<Bits> strings_of_length(int n) {
  std::vector<Bits> out;
  for (long long m = 0; m < (1LL << n); ++m) {
    Bits x(n, '0');
    for (int i = 0; i < n; ++i)
      if (m >> (n - 1 - i) & 1) x[i] = '1';
    out.push_back(x);
  }
  return out;
}

inline std::vector<Bits> strings_up_to(int N) {
  std::vector<Bits> out;
  for (int n = 0; n <= N; ++n)
    for (auto& x : strings_of_length(n)) out.push_back(x);
  return out;
}

inline int dfa_eval(const lgl::Dfa& d, const Bits& x) {
  int q = d.start;
  for (char c : x) q = d.delta[q][c - '0'];
  return d.accept[q] ? 1 : 0;
}

// Rational comparisons straight from the definitions.
inline int crasp1_eval(const lgl::Crasp1& p, const Bits& x) {
  long long ones = std::count(x.begin(), x.end(), '1');
  return p.a * ones - p.b * static_cast<long long>(x.size()) - p.d > 0;
}

inline int crasp2_eval(const lgl::Crasp2& p, const Bits& x) {
  Rational total = 0;
  long long ps = 0;
  for (std::size_t j = 1; j <= x.size(); ++j) {
    ps += x[j - 1] == '1';
    for (const auto& h : p.heads)
      if (Rational(static_cast<long>(ps), static_cast<long>(j)) > Rational(h.b, h.a)) total += h.lambda;
  }
  return total > Rational(p.z) * static_cast<long>(x.size());
}

inline std::vector<Rational> activations(const std::vector<Rational>& slopes, const Bits& x) {
  std::vector<Rational> b(slopes.size(), 0);
  if (x.empty()) return b;
  long long ps = 0;
  for (std::size_t j = 1; j <= x.size(); ++j) {
    ps += x[j - 1] == '1';
    for (std::size_t i = 0; i < slopes.size(); ++i)
      if (Rational(static_cast<long>(ps)) > slopes[i] * static_cast<long>(j)) b[i] += 1;
  }
  for (auto& v : b) v /= static_cast<long>(x.size());
  return b;
}

template <class F, class G>
std::optional<Bits> scan_distinguisher(F f, G g, int maxN) {
  for (int n = 0; n <= maxN; ++n)
    for (const auto& x : strings_of_length(n))
      if (f(x) != g(x)) return x;
  return std::nullopt;
}

// Every terminal string of length <= maxLen derivable from the start symbol,
// by leftmost-derivation search pruned on terminal count. Grammars here have
// no unit cycles beyond what the visited set absorbs.
inline std::set<Bits> derivable(const lgl::Cfg& g, int maxLen) {
  using Form = std::vector<std::string>;
  auto is_term = [](const std::string& s) { return s == "0" || s == "1"; };
  std::set<Form> seen;
  std::set<Bits> out;
  std::vector<Form> stack{{g.start}};
  const int form_cap = 2 * maxLen + 4;
  while (!stack.empty()) {
    Form f = stack.back();
    stack.pop_back();
    if (!seen.insert(f).second) continue;
    int terms = 0;
    std::size_t first_nt = f.size();
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (is_term(f[i])) {
        ++terms;
      } else if (first_nt == f.size()) {
        first_nt = i;
      }
    }
    if (terms > maxLen || static_cast<int>(f.size()) > form_cap) continue;
    if (first_nt == f.size()) {
      Bits x;
      for (auto& s : f) x += s;
      out.insert(x);
      continue;
    }
    for (const auto& p : g.productions) {
      if (p.head != f[first_nt]) continue;
      Form h(f.begin(), f.begin() + first_nt);
      h.insert(h.end(), p.body.begin(), p.body.end());
      h.insert(h.end(), f.begin() + first_nt + 1, f.end());
      stack.push_back(h);
    }
  }
  return out;
}

}  // namespace oracle
