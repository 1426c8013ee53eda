#include "crasp.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace lgl {

bool crasp1_valid(const Crasp1& p, int T) {
  return p.a >= 1 && p.a <= T && std::abs(p.b) <= T && std::abs(p.d) <= T;
}

int crasp1_complexity(const Crasp1& p) { return std::max({std::abs(p.a), std::abs(p.b), std::abs(p.d)}); }

int crasp1_eval_counts(const Crasp1& p, long long n, long long ones) {
  return p.a * ones - p.b * n - p.d > 0 ? 1 : 0;
}

int crasp1_eval(const Crasp1& p, const Bits& x) {
  return crasp1_eval_counts(p, static_cast<long long>(x.size()), count_ones(x));
}

std::vector<Crasp1> crasp1_enumerate(int T) {
  if (T < 1) throw Error("T must be positive");
  std::vector<Crasp1> out;
  for (int t = 1; t <= T; ++t)
    for (int a = 1; a <= t; ++a)
      for (int b = -t; b <= t; ++b)
        for (int d = -t; d <= t; ++d) {
          Crasp1 p{a, b, d};
          if (crasp1_complexity(p) == t) out.push_back(p);
        }
  return out;
}

int crasp2_precision(const Crasp2& p) {
  int t = std::abs(p.z);
  for (const auto& h : p.heads) t = std::max({t, std::abs(h.a), std::abs(h.b), std::abs(h.lambda)});
  return t;
}

long long crasp2_complexity(const Crasp2& p) {
  long long t = crasp2_precision(p), c = 1;
  for (std::size_t i = 0; i < p.heads.size(); ++i) c *= t;
  return c;
}

bool crasp2_valid(const Crasp2& p, int T, std::string* why) {
  auto fail = [&](const char* m) {
    if (why) *why = m;
    return false;
  };
  const long long K = static_cast<long long>(p.heads.size());
  if (K < 1) return fail("no heads");
  if (K > static_cast<long long>(T) * T) return fail("more than T^2 heads");
  if (p.z <= 0 || p.z > T) return fail("z must lie in [1, T]");
  long long sum = 0;
  for (const auto& h : p.heads) {
    if (h.a < 1 || h.a > T) return fail("head a must lie in [1, T]");
    if (std::abs(h.b) > T || std::abs(h.lambda) > T) return fail("head parameter exceeds T");
    if (h.b <= 0 || h.b >= h.a) return fail("head slope must lie in (0, 1)");
    sum += h.lambda;
  }
  for (std::size_t i = 0; i < p.heads.size(); ++i)
    for (std::size_t j = i + 1; j < p.heads.size(); ++j)
      if (static_cast<long long>(p.heads[i].b) * p.heads[j].a == static_cast<long long>(p.heads[j].b) * p.heads[i].a)
        return fail("head slopes must be distinct");
  if (sum <= p.z) return fail("sum of lambda must exceed z");
  return true;
}

namespace {

// slope(u) > slope(v)
bool steeper(const Crasp2Head& u, const Crasp2Head& v) {
  return static_cast<long long>(u.b) * v.a > static_cast<long long>(v.b) * u.a;
}

}  // namespace

bool crasp2_is_canonical(const Crasp2& p) {
  for (std::size_t i = 0; i + 1 < p.heads.size(); ++i)
    if (!steeper(p.heads[i], p.heads[i + 1])) return false;
  return true;
}

Crasp2 crasp2_canonical(const Crasp2& p) {
  Crasp2 q = p;
  std::stable_sort(q.heads.begin(), q.heads.end(), steeper);
  return q;
}

int crasp2_decide(const Crasp2& p, const std::vector<long long>& head_counts, long long n) {
  long long s = 0;
  for (std::size_t i = 0; i < p.heads.size(); ++i) s += p.heads[i].lambda * head_counts[i];
  return s > static_cast<long long>(p.z) * n ? 1 : 0;
}

int crasp2_eval(const Crasp2& p, const Bits& x) {
  std::vector<long long> counts(p.heads.size(), 0);
  long long ps = 0;
  for (std::size_t j = 1; j <= x.size(); ++j) {
    ps += x[j - 1] == '1';
    for (std::size_t i = 0; i < p.heads.size(); ++i)
      counts[i] += p.heads[i].a * ps > p.heads[i].b * static_cast<long long>(j);
  }
  return crasp2_decide(p, counts, static_cast<long long>(x.size()));
}

Crasp2Enumeration crasp2_enumerate(int T, int K) {
  if (T < 1 || K < 1) throw Error("T and K must be positive");
  if (static_cast<long long>(K) > static_cast<long long>(T) * T) throw Error("K must not exceed T^2");
  // Raw tuple space: per head a in [1,T], b and lambda in [-T,T]; z in [-T,T].
  const int span = 2 * T + 1;
  const long long per_head = static_cast<long long>(T) * span * span;
  long long total = span;
  for (int i = 0; i < K; ++i) {
    if (total > (1LL << 40) / per_head) throw Error("enumeration space too large");
    total *= per_head;
  }
  Crasp2Enumeration out;
  std::vector<std::vector<Crasp2>> by_precision(T + 1);
  Crasp2 p;
  p.heads.resize(K);
  // Odometer in lexicographic order over (a_1, b_1, lambda_1, ..., z).
  std::vector<int> digits(3 * K + 1);
  auto lo = [&](std::size_t i) { return (i < 3 * static_cast<std::size_t>(K) && i % 3 == 0) ? 1 : -T; };
  auto hi = [&](std::size_t) { return T; };
  for (std::size_t i = 0; i < digits.size(); ++i) digits[i] = lo(i);
  for (long long t = 0; t < total; ++t) {
    for (int h = 0; h < K; ++h) p.heads[h] = {digits[3 * h], digits[3 * h + 1], digits[3 * h + 2]};
    p.z = digits.back();
    ++out.raw_tuples;
    if (!crasp2_valid(p, T)) {
      ++out.skipped_invalid;
    } else if (!crasp2_is_canonical(p)) {
      ++out.skipped_noncanonical;
    } else {
      by_precision[crasp2_precision(p)].push_back(p);
    }
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (digits[i] < hi(i)) {
        ++digits[i];
        break;
      }
      digits[i] = lo(i);
    }
  }
  for (auto& group : by_precision)
    for (auto& q : group) out.programs.push_back(std::move(q));
  return out;
}

}  // namespace lgl
