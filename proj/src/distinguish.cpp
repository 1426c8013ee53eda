#include "distinguish.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <tuple>

namespace lgl {

BudgetExceeded::BudgetExceeded(std::size_t attempted_, std::size_t budget)
    : Error("BudgetExceeded: DP needs " + std::to_string(attempted_) + " states, budget is " +
            std::to_string(budget)),
      attempted(attempted_) {}

std::size_t dp_state_budget(std::size_t bytes_per_state) {
  std::size_t mb = 2048;
  if (const char* env = std::getenv("LENGENLAB_MEM_MB")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) mb = static_cast<std::size_t>(v);
  }
  return mb * 1024 * 1024 / std::max<std::size_t>(bytes_per_state, 1);
}

namespace {

void require_slopes_in_unit(const Crasp2& p) {
  if (p.heads.empty()) throw Error("C-RASP^2 program has no heads");
  for (const auto& h : p.heads)
    if (h.a <= 0 || h.b <= 0 || h.b >= h.a) throw Error("C-RASP^2 head slope must lie in (0, 1) with a > 0");
}

// Integer slope data for the hot loops: line l fires at step j iff ps * den > num * j.
struct LineData {
  std::vector<long long> num, den;
  explicit LineData(const Configuration& cfg) {
    for (const auto& s : cfg.slopes) {
      num.push_back(s.get_num().get_si());
      den.push_back(s.get_den().get_si());
    }
  }
};

}  // namespace

Configuration crasp2_configuration(const Crasp2& f, const Crasp2& g, OrderMaps* maps) {
  require_slopes_in_unit(f);
  require_slopes_in_unit(g);
  std::vector<Rational> slopes;
  auto slope = [](const Crasp2Head& h) {
    Rational s(h.b, h.a);
    s.canonicalize();
    return s;
  };
  for (const auto& h : f.heads) slopes.push_back(slope(h));
  for (const auto& h : g.heads) slopes.push_back(slope(h));
  Configuration cfg = make_configuration(slopes);
  if (maps) {
    maps->k = cfg.k();
    auto line_of = [&](const Crasp2Head& h) {
      Rational s = slope(h);
      for (int i = 1; i <= cfg.k(); ++i)
        if (cfg.s(i) == s) return i;
      throw Error("slope missing from configuration");
    };
    maps->ord1.clear();
    maps->ord2.clear();
    for (const auto& h : f.heads) maps->ord1.push_back(line_of(h));
    for (const auto& h : g.heads) maps->ord2.push_back(line_of(h));
  }
  return cfg;
}

std::vector<std::vector<long long>> dp_reachable_activations(const Configuration& cfg, long long n,
                                                             std::size_t budget) {
  if (n < 1) throw Error("n must be positive");
  const int k = cfg.k();
  if (budget == 0) budget = dp_state_budget(sizeof(long long) * (k + 1) + 48);
  LineData lines(cfg);
  std::set<std::vector<long long>> layer{std::vector<long long>(k + 1, 0)};
  for (long long j = 1; j <= n; ++j) {
    std::set<std::vector<long long>> next;
    for (const auto& s : layer)
      for (int bit = 0; bit < 2; ++bit) {
        auto t = s;
        t[0] += bit;
        for (int l = 0; l < k; ++l) t[l + 1] += t[0] * lines.den[l] > lines.num[l] * j;
        next.insert(std::move(t));
        if (next.size() > budget) throw BudgetExceeded(next.size(), budget);
      }
    layer = std::move(next);
  }
  return {layer.begin(), layer.end()};
}

namespace {

// Smallest number of ones accepted at length n: a*o > b*n + d.
long long crasp1_threshold(const Crasp1& p, long long n) {
  long long rhs = static_cast<long long>(p.b) * n + p.d;
  long long fl = rhs >= 0 ? rhs / p.a : -((-rhs + p.a - 1) / p.a);
  return std::clamp(fl + 1, 0LL, n + 1);
}

std::optional<std::pair<long long, long long>> crasp1_first_column(const Crasp1& p, const Crasp1& q,
                                                                   long long maxN) {
  if (p.a <= 0 || q.a <= 0) throw Error("C-RASP^1 programs need a > 0");
  for (long long n = 0; n <= maxN; ++n) {
    long long t = crasp1_threshold(p, n), u = crasp1_threshold(q, n);
    if (t != u) return std::pair{n, std::min(t, u)};
  }
  return std::nullopt;
}

}  // namespace

std::optional<MinDistinguisher> crasp1_min_distinguisher(const Crasp1& p, const Crasp1& q, long long maxN) {
  auto col = crasp1_first_column(p, q, maxN);
  if (!col) return std::nullopt;
  auto [n, ones] = *col;
  return MinDistinguisher{n, Bits(n - ones, '0') + Bits(ones, '1')};
}

std::optional<Bits> crasp1_distinguisher(const Crasp1& p, const Crasp1& q) {
  long long T = std::max({1, crasp1_complexity(p), crasp1_complexity(q)});
  auto col = crasp1_first_column(p, q, 3 * T * T);
  if (!col) return std::nullopt;
  auto [n, ones] = *col;
  return Bits(ones, '1') + Bits(n - ones, '0');
}

namespace {

struct DpState {
  long long ps, sf, sg;
  auto operator<=>(const DpState&) const = default;
};

}  // namespace

std::optional<MinDistinguisher> crasp2_min_distinguisher(const Crasp2& f, const Crasp2& g, long long maxN,
                                                         std::size_t budget) {
  OrderMaps maps;
  Configuration cfg = crasp2_configuration(f, g, &maps);
  if (budget == 0) budget = dp_state_budget(sizeof(DpState) + 8);
  const int k = cfg.k();
  LineData lines(cfg);
  std::vector<long long> wf(k, 0), wg(k, 0);
  for (std::size_t i = 0; i < f.heads.size(); ++i) wf[maps.ord1[i] - 1] += f.heads[i].lambda;
  for (std::size_t i = 0; i < g.heads.size(); ++i) wg[maps.ord2[i] - 1] += g.heads[i].lambda;
  auto step = [&](const DpState& s, int bit, long long j) {
    DpState t{s.ps + bit, s.sf, s.sg};
    for (int l = 0; l < k; ++l)
      if (t.ps * lines.den[l] > lines.num[l] * j) {
        t.sf += wf[l];
        t.sg += wg[l];
      }
    return t;
  };
  auto differs = [&](const DpState& s, long long j) { return (s.sf > f.z * j) != (s.sg > g.z * j); };

  auto advance = [&](const std::vector<DpState>& cur, long long j) {
    std::vector<DpState> next;
    next.reserve(cur.size() * 2);
    for (const auto& s : cur) {
      next.push_back(step(s, 0, j));
      next.push_back(step(s, 1, j));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    return next;
  };

  // Search pass: only the live layer is kept.
  long long found = -1;
  {
    std::vector<DpState> cur{DpState{0, 0, 0}};
    for (long long j = 1; j <= maxN && found < 0; ++j) {
      cur = advance(cur, j);
      if (2 * cur.size() > budget) throw BudgetExceeded(2 * cur.size(), budget);
      for (const auto& s : cur)
        if (differs(s, j)) {
          found = j;
          break;
        }
    }
  }
  if (found < 0) return std::nullopt;

  std::vector<std::vector<DpState>> layers{{DpState{0, 0, 0}}};
  std::size_t stored = 1;
  for (long long j = 1; j <= found; ++j) {
    layers.push_back(advance(layers.back(), j));
    stored += layers.back().size();
    if (stored > budget) throw BudgetExceeded(stored, budget);
  }

  // Mark states that can still reach a distinguishing state at length `found`,
  // then walk forward preferring 0.
  std::vector<std::vector<char>> good(found + 1);
  good[found].resize(layers[found].size());
  for (std::size_t i = 0; i < layers[found].size(); ++i) good[found][i] = differs(layers[found][i], found);
  auto is_good = [&](long long j, const DpState& s) {
    auto it = std::lower_bound(layers[j].begin(), layers[j].end(), s);
    return it != layers[j].end() && *it == s && good[j][it - layers[j].begin()];
  };
  for (long long j = found - 1; j >= 0; --j) {
    good[j].resize(layers[j].size());
    for (std::size_t i = 0; i < layers[j].size(); ++i)
      good[j][i] = is_good(j + 1, step(layers[j][i], 0, j + 1)) || is_good(j + 1, step(layers[j][i], 1, j + 1));
  }
  Bits witness;
  DpState s{0, 0, 0};
  for (long long j = 1; j <= found; ++j) {
    DpState t = step(s, 0, j);
    if (is_good(j, t)) {
      witness.push_back('0');
    } else {
      t = step(s, 1, j);
      witness.push_back('1');
    }
    s = t;
  }
  return MinDistinguisher{found, witness};
}

std::optional<MinDistinguisher> scan_min_distinguisher(const Evaluator& f, const Evaluator& g, int maxN) {
  if (maxN < 0) return std::nullopt;
  const std::uint64_t total = strings_up_to(maxN);
  for (std::uint64_t i = 0; i < total; ++i) {
    Bits x = string_at(i);
    if (f(x) != g(x)) return MinDistinguisher{static_cast<long long>(x.size()), x};
  }
  return std::nullopt;
}

bool verify_distinguisher(const Evaluator& f, const Evaluator& g, const Bits& x) { return f(x) != g(x); }

// ------------------------------------------------------------ pipeline

namespace {

constexpr long kMaxWitnessLength = 1L << 26;

Rational abs_sum(const std::vector<Crasp2Head>& heads) {
  long long s = 0;
  for (const auto& h : heads) s += std::abs(h.lambda);
  return Rational(static_cast<long>(s));
}

// Sum over heads of lambda * L[line][j] for each real segment j >= 1.
std::vector<BigInt> weighted_columns(const std::vector<std::vector<int>>& L, const std::vector<Crasp2Head>& heads,
                                     const std::vector<int>& ord) {
  const std::size_t M = L.front().size();
  std::vector<BigInt> out(M - 1, 0);
  for (std::size_t j = 1; j < M; ++j)
    for (std::size_t i = 0; i < heads.size(); ++i)
      if (L[ord[i] - 1][j]) out[j - 1] += heads[i].lambda;
  return out;
}

bool inside_faces(const Point& x, const Polytope& p) {
  for (const auto& h : p.faces)
    if (!satisfies(x, h)) return false;
  return true;
}

BigInt ceil_q(const Rational& q) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

}  // namespace

std::optional<DistinguisherCertificate> crasp2_construct_distinguisher(const Crasp2& f, const Crasp2& g,
                                                                       const PipelineOptions& opts) {
  OrderMaps maps;
  Configuration cfg = crasp2_configuration(f, g, &maps);
  const int k = cfg.k();
  const long long T = std::max(crasp2_precision(f), crasp2_precision(g));
  const Evaluator ef = [&](const Bits& x) { return crasp2_eval(f, x); };
  const Evaluator eg = [&](const Bits& x) { return crasp2_eval(g, x); };

  std::optional<DistinguisherCertificate> best;
  bool skipped_long = false;
  for (const auto& spec : basis_schemas(k)) {
    if (k > 1 && spec.curves() > 2) continue;
    Schema schema = schema_materialize(spec, k);
    Polytope base = segment_polytope(schema, cfg, true);
    const int d = base.dim;
    const int real_segments = d;
    auto L = activation_matrix(schema);
    auto colf = weighted_columns(L, f.heads, maps.ord1);
    auto colg = weighted_columns(L, g.heads, maps.ord2);

    for (int side = 1; side <= 2; ++side) {
      Halfspace hf, hg;
      hf.coef.resize(d);
      hg.coef.resize(d);
      hf.bias = hg.bias = 0;
      hf.sense = hg.sense = Sense::Gt;
      for (int j = 0; j < d; ++j) {
        BigInt accept_f = colf[j] - f.z, accept_g = colg[j] - g.z;
        hf.coef[j] = side == 1 ? accept_f : BigInt(-accept_f);
        hg.coef[j] = side == 1 ? BigInt(-accept_g) : accept_g;
      }
      Polytope p = base;
      for (auto h : {hf, hg}) {
        h.sense = Sense::Ge;
        p.faces.push_back(h);
      }
      auto vertices = polytope_vertices(p);
      if (vertices.empty()) continue;
      Point c = vertex_average(vertices);
      Rational gamma = std::min(margin(c, hf), margin(c, hg));
      if (gamma <= 0) continue;

      BigInt norm = 0;
      for (const auto& h : {hf, hg}) {
        BigInt s = 0;
        for (const auto& a : h.coef) s += abs(a);
        norm = std::max(norm, s);
      }
      BigInt n_r = ceil_q(Rational(norm * 2) / gamma);
      std::vector<BigInt> grid;
      for (BigInt N = 1; N < n_r; N *= 2) grid.push_back(N);
      grid.push_back(n_r);
      std::optional<Point> cstar;
      for (const auto& N : grid) {
        Point q = round_to_low_precision(c, N);
        if (inside_faces(q, base) && satisfies(q, hf) && satisfies(q, hg)) {
          cstar = q;
          break;
        }
      }
      if (!cstar) cstar = c;

      std::vector<Rational> lengths{Rational(0)};
      lengths.insert(lengths.end(), cstar->begin(), cstar->end());
      BigInt n0 = discretization_grain(lengths, cfg);
      Rational gf = margin(*cstar, hf), gg = margin(*cstar, hg);
      Rational err_num(static_cast<long>(T * T + real_segments));
      Rational need = std::max(abs_sum(f.heads) * err_num / gf, abs_sum(g.heads) * err_num / gg);
      BigInt multiple;
      mpz_fdiv_q(multiple.get_mpz_t(), need.get_num_mpz_t(), need.get_den_mpz_t());
      const BigInt guaranteed = (multiple / n0 + 1) * n0;

      auto attempt = [&](long long n) {
        Bits x = discretize(schema, lengths, cfg, n);
        int vf = ef(x), vg = eg(x);
        if (vf == vg || vf != (side == 1 ? 1 : 0)) return false;
        best = DistinguisherCertificate{spec, schema, lengths, std::min(gf, gg), n0, n, std::move(x), side};
        return true;
      };
      bool done = false;
      if (opts.scan_small_multiples) {
        for (BigInt nb = n0; nb < guaranteed && nb <= kMaxWitnessLength && !done; nb += n0) {
          if (best && nb.get_si() >= best->n) {
            done = true;
            break;
          }
          done = attempt(nb.get_si());
        }
      }
      BigInt nbig = guaranteed;
      for (int round = 0; round < 40 && !done; ++round, nbig *= 2) {
        if (nbig > kMaxWitnessLength) {
          skipped_long = true;
          break;
        }
        if (best && nbig.get_si() >= best->n) {
          done = true;
          break;
        }
        done = attempt(nbig.get_si());
      }
      if (!done && !skipped_long)
        throw PipelineInvariantViolated("discretized witness failed verification after repeated doubling");
    }
  }
  if (!best && skipped_long) throw PipelineInvariantViolated("every feasible witness exceeds the length limit");
  return best;
}

}  // namespace lgl
