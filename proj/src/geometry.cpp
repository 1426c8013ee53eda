#include "geometry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace lgl {

Configuration make_configuration(std::vector<Rational> slopes) {
  for (auto& s : slopes) {
    s.canonicalize();
    if (s <= 0 || s >= 1) throw Error("configuration slopes must lie in (0, 1)");
  }
  std::sort(slopes.begin(), slopes.end(), std::greater<>());
  slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());
  if (slopes.empty()) throw Error("configuration needs at least one slope");
  return Configuration{std::move(slopes)};
}

BigInt configuration_lcm(const Configuration& cfg) { return lcm_of_denominators(cfg.slopes); }

long long configuration_precision(const Configuration& cfg) {
  long long t = 1;
  for (const auto& s : cfg.slopes) t = std::max<long long>(t, s.get_den().get_si());
  return t;
}

std::vector<long long> activation_counts(const Configuration& cfg, const Bits& x) {
  const int k = cfg.k();
  std::vector<long long> num(k), den(k), counts(k, 0);
  for (int i = 0; i < k; ++i) {
    num[i] = cfg.slopes[i].get_num().get_si();
    den[i] = cfg.slopes[i].get_den().get_si();
  }
  long long ps = 0;
  for (std::size_t j = 1; j <= x.size(); ++j) {
    ps += x[j - 1] == '1';
    for (int i = 0; i < k; ++i) counts[i] += ps * den[i] > num[i] * static_cast<long long>(j);
  }
  return counts;
}

ActivationVector activations_discrete(const Configuration& cfg, const Bits& x) {
  if (x.empty()) throw Error("activations need a non-empty string");
  auto counts = activation_counts(cfg, x);
  ActivationVector b;
  for (long long c : counts) b.emplace_back(Rational(static_cast<long>(c), static_cast<long>(x.size())));
  for (auto& q : b) q.canonicalize();
  return b;
}

bool activations_monotone(const ActivationVector& b) {
  for (std::size_t i = 0; i + 1 < b.size(); ++i)
    if (b[i] > b[i + 1]) return false;
  return true;
}

// ------------------------------------------------------------ test-functions

namespace {

Rational eval_pl(const PiecewiseLinear& f, const Rational& x) {
  for (std::size_t i = 0; i + 1 < f.points.size(); ++i) {
    const auto& [x0, y0] = f.points[i];
    const auto& [x1, y1] = f.points[i + 1];
    if (x >= x0 && x <= x1) return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  }
  throw Error("point outside test-function domain");
}

int sector_of(const Configuration& cfg, const Rational& x, const Rational& y) {
  int sec = 1;
  for (const auto& s : cfg.slopes) sec += y <= s * x;
  return sec;
}

}  // namespace

bool piecewise_valid(const PiecewiseLinear& f, const Configuration& cfg, std::string* why) {
  auto fail = [&](const char* m) {
    if (why) *why = m;
    return false;
  };
  if (f.points.size() < 2) return fail("need at least two breakpoints");
  if (f.points.front().first != 0 || f.points.front().second != 0) return fail("must start at the origin");
  if (f.points.back().first != 1) return fail("must end at x = 1");
  for (std::size_t i = 0; i + 1 < f.points.size(); ++i) {
    const auto& [x0, y0] = f.points[i];
    const auto& [x1, y1] = f.points[i + 1];
    if (x1 <= x0) return fail("breakpoints must increase");
    Rational m = (y1 - y0) / (x1 - x0);
    if (m < 0 || m > 1) return fail("slopes must lie in [0, 1]");
    for (const auto& s : cfg.slopes)
      if (y0 == s * x0 && y1 == s * x1) return fail("piece runs along a configuration line");
  }
  return true;
}

ActivationVector activations_continuous(const PiecewiseLinear& f, const Configuration& cfg) {
  ActivationVector b(cfg.k(), Rational(0));
  for (std::size_t p = 0; p + 1 < f.points.size(); ++p) {
    const auto& [x0, y0] = f.points[p];
    const auto& [x1, y1] = f.points[p + 1];
    for (int i = 0; i < cfg.k(); ++i) {
      Rational g0 = y0 - cfg.slopes[i] * x0, g1 = y1 - cfg.slopes[i] * x1;
      if (g0 > 0 && g1 > 0) {
        b[i] += x1 - x0;
      } else if (g0 > 0 || g1 > 0) {
        Rational cross = x0 + (x1 - x0) * g0 / (g0 - g1);
        b[i] += g0 > 0 ? cross - x0 : x1 - cross;
      }
    }
  }
  for (auto& q : b) q.canonicalize();
  return b;
}

// ------------------------------------------------------------ basis schemas

bool basis_spec_valid(const BasisSchemaSpec& spec, int k) {
  const auto& p = spec.pairs;
  const int m = static_cast<int>(p.size());
  if (m < 1) return false;
  for (auto [a, b] : p)
    if (a < 1 || a > k || b < 1 || b > k) return false;
  if (p.front() != std::pair{1, k} && p.front() != std::pair{k, 1}) return false;
  if (p.back().first != p.back().second) return false;
  for (int i = 0; i + 1 < m; ++i) {
    if (p[i].first == p[i].second) return false;
    if (p[i + 1].first != p[i].second) return false;
  }
  for (int i = 0; i + 2 < m; ++i) {
    auto [y1, y2] = p[i];
    auto [z1, z2] = p[i + 1];
    (void)z1;
    if (y1 < y2 && !(y2 > z2 && z2 > y1)) return false;
    if (y1 > y2 && !(y2 < z2 && z2 < y1)) return false;
  }
  return true;
}

std::vector<BasisSchemaSpec> basis_schemas(int k) {
  if (k < 1) throw Error("k must be positive");
  std::vector<BasisSchemaSpec> out;
  if (k == 1) return {BasisSchemaSpec{{{1, 1}}}};
  std::vector<std::pair<int, int>> chain;
  // After a down pair (a, b) the next curve climbs to c in (a, b); after an up
  // pair (b, c) the next one descends to d in (c, b).
  std::function<void()> grow = [&] {
    auto [y1, y2] = chain.back();
    chain.emplace_back(y2, y2);
    out.push_back(BasisSchemaSpec{chain});
    chain.pop_back();
    int lo = std::min(y1, y2), hi = std::max(y1, y2);
    for (int c = lo + 1; c < hi; ++c) {
      chain.emplace_back(y2, c);
      grow();
      chain.pop_back();
    }
  };
  for (auto first : {std::pair{1, k}, std::pair{k, 1}}) {
    chain = {first};
    grow();
  }
  std::stable_sort(out.begin(), out.end(), [](const BasisSchemaSpec& a, const BasisSchemaSpec& b) {
    if (a.pairs.back().first != b.pairs.back().first) return a.pairs.back().first < b.pairs.back().first;
    return a.pairs < b.pairs;
  });
  return out;
}

bool schema_valid(const Schema& schema, std::string* why) {
  auto fail = [&](const char* m) {
    if (why) *why = m;
    return false;
  };
  if (schema.segments.empty()) return fail("empty schema");
  const int k = schema.k;
  for (std::size_t i = 0; i < schema.segments.size(); ++i) {
    const auto& s = schema.segments[i];
    if (s.idx < 1 || s.idx > k || s.sec < 1 || s.sec > k + 1) return fail("index out of range");
    int prev = i == 0 ? s.idx : schema.segments[i - 1].idx;
    if (std::abs(prev - s.idx) > 1) return fail("consecutive line indices differ by more than one");
    if (prev == s.idx) {
      if (s.sec != s.idx && s.sec != s.idx + 1) return fail("excursion sector not adjacent to its line");
    } else if (s.sec != std::max(prev, s.idx)) {
      return fail("crossing segment in the wrong sector");
    }
  }
  return true;
}

Schema schema_materialize(const BasisSchemaSpec& spec, int k) {
  if (!basis_spec_valid(spec, k)) throw Error("invalid basis schema for this configuration");
  Schema schema;
  schema.k = k;
  if (spec.curves() == 0) {
    // k = 1: a single line with an excursion on each side.
    schema.segments = {{1, 1, 0}, {1, 1, 1}, {1, 2, 1}};
    return schema;
  }
  for (int c = 0; c < spec.curves(); ++c) {
    auto [from, to] = spec.pairs[c];
    const int curve = c + 1;
    if (from < to) {
      if (c == 0) {
        schema.segments.push_back({from, from, 0});
        schema.segments.push_back({from, from, curve});
      }
      for (int i = from + 1; i <= to; ++i) schema.segments.push_back({i, i, curve});
      schema.segments.push_back({to, to + 1, curve});
    } else {
      if (c == 0) {
        schema.segments.push_back({from, from + 1, 0});
        schema.segments.push_back({from, from + 1, curve});
      }
      for (int i = from - 1; i >= to; --i) schema.segments.push_back({i, i + 1, curve});
      schema.segments.push_back({to, to, curve});
    }
  }
  return schema;
}

int schema_segment_of(const Schema& schema, int curve, int sec) {
  int last_of_previous = -1;
  for (int i = 0; i < schema.M(); ++i) {
    const auto& s = schema.segments[i];
    if (s.curve == curve && s.sec == sec) return i;
    if (s.curve == curve - 1) last_of_previous = i;
  }
  if (curve >= 2 && last_of_previous >= 0 && schema.segments[last_of_previous].sec == sec) return last_of_previous;
  return -1;
}

// ------------------------------------------------------------ halfspaces

Rational margin(const Point& x, const Halfspace& h) {
  Rational lhs = 0;
  for (std::size_t i = 0; i < h.coef.size(); ++i)
    if (h.coef[i] != 0) lhs += Rational(h.coef[i]) * x[i];
  Rational rhs(h.bias);
  return (h.sense == Sense::Ge || h.sense == Sense::Gt) ? lhs - rhs : rhs - lhs;
}

bool satisfies(const Point& x, const Halfspace& h) {
  Rational m = margin(x, h);
  return (h.sense == Sense::Gt || h.sense == Sense::Lt) ? m > 0 : m >= 0;
}

Polytope segment_polytope(const Schema& schema, const Configuration& cfg, bool drop_lead_in) {
  if (schema.k != cfg.k()) throw Error("schema and configuration disagree on k");
  std::string why;
  if (!schema_valid(schema, &why)) throw Error("invalid schema: " + why);
  const int M = schema.M();
  const int offset = drop_lead_in ? 1 : 0;
  Polytope p;
  p.dim = M - offset;
  for (int i = offset; i < M; ++i) {
    Halfspace h;
    h.coef.assign(p.dim, 0);
    h.bias = 0;
    h.sense = Sense::Ge;
    Rational r = 0;
    if (i > 0) {
      int prev = schema.segments[i - 1].idx, cur = schema.segments[i].idx;
      if (cur == prev + 1) {
        r = cfg.s(prev) / cfg.s(cur) - 1;
      } else if (cur == prev - 1) {
        r = (1 - cfg.s(prev)) / (1 - cfg.s(cur)) - 1;
      }
    }
    r.canonicalize();
    h.coef[i - offset] = r.get_den();
    for (int j = offset; j < i; ++j) h.coef[j - offset] = -r.get_num();
    p.faces.push_back(std::move(h));
  }
  return p;
}

std::vector<std::vector<int>> activation_matrix(const Schema& schema) {
  std::vector<std::vector<int>> L(schema.k, std::vector<int>(schema.M(), 0));
  for (int i = 0; i < schema.k; ++i)
    for (int j = 1; j < schema.M(); ++j) L[i][j] = schema.segments[j].sec <= i + 1;
  return L;
}

ActivationVector activations_from_segments(const Schema& schema, const std::vector<Rational>& lengths) {
  if (static_cast<int>(lengths.size()) != schema.M()) throw Error("one length per segment expected");
  ActivationVector b(schema.k, Rational(0));
  for (int j = 1; j < schema.M(); ++j)
    for (int i = schema.segments[j].sec; i <= schema.k; ++i) b[i - 1] += lengths[j];
  for (auto& q : b) q.canonicalize();
  return b;
}

// ------------------------------------------------------------ decomposition

std::vector<LineEvent> line_events(const PiecewiseLinear& f, const Configuration& cfg) {
  std::map<Rational, int> at;
  for (std::size_t p = 0; p + 1 < f.points.size(); ++p) {
    const auto& [x0, y0] = f.points[p];
    const auto& [x1, y1] = f.points[p + 1];
    for (int i = 1; i <= cfg.k(); ++i) {
      Rational g0 = y0 - cfg.s(i) * x0, g1 = y1 - cfg.s(i) * x1;
      if (g0 == 0 && x0 > 0) at[x0] = i;
      if (g1 == 0) at[x1] = i;
      if ((g0 > 0 && g1 < 0) || (g0 < 0 && g1 > 0)) {
        Rational cross = x0 + (x1 - x0) * g0 / (g0 - g1);
        cross.canonicalize();
        at[cross] = i;
      }
    }
  }
  std::vector<LineEvent> events;
  for (auto& [x, line] : at) events.push_back({x, line});
  // Endpoint normalization: the tail after the last intersection ends on the
  // line it started from; a curve that never meets a line ends on the line
  // bounding its sector from below (or on line k below all lines).
  if (events.empty() || events.back().x < 1) {
    int line;
    if (!events.empty()) {
      line = events.back().line;
    } else {
      line = std::min(sector_of(cfg, Rational(1), f.points.back().second), cfg.k());
    }
    events.push_back({Rational(1), line});
  }
  return events;
}

MonotoneDecomposition decompose_into_monotone_curves(const PiecewiseLinear& f, const Configuration& cfg) {
  auto events = line_events(f, cfg);
  MonotoneDecomposition out;
  out.cuts.push_back(0);
  int lo = cfg.k() + 1, hi = 0;
  for (const auto& e : events) {
    lo = std::min(lo, e.line);
    hi = std::max(hi, e.line);
  }
  Rational from = 0;
  auto last_hit = [&](int line) {
    Rational best = -1;
    for (const auto& e : events)
      if (e.line == line && e.x >= from) best = e.x;
    return best;
  };
  while (lo < hi) {
    Rational t = last_hit(lo), b = last_hit(hi);
    Rational cut = std::max(t, b);
    if (t > b) {
      out.pairs.emplace_back(hi, lo);
      int next = lo;
      for (const auto& e : events)
        if (e.x >= cut && e.line < hi) next = std::max(next, e.line);
      hi = next;
    } else {
      out.pairs.emplace_back(lo, hi);
      int next = hi;
      for (const auto& e : events)
        if (e.x >= cut && e.line > lo) next = std::min(next, e.line);
      lo = next;
    }
    out.cuts.push_back(cut);
    from = cut;
  }
  out.pairs.emplace_back(lo, lo);
  return out;
}

std::vector<Rational> rearrange_monotone(const std::vector<SectorPiece>& piece, const Rational& lead_in, int from,
                                         int to) {
  // Down curve from -> to visits Sector_from .. Sector_{to+1}; an up curve
  // visits Sector_{from+1} down to Sector_to.
  const int lo = std::min(from, to), hi = std::max(from, to);
  std::vector<Rational> out(hi - lo + 3, Rational(0));
  out[0] = lead_in;
  for (const auto& s : piece) {
    if (s.sec < lo || s.sec > hi + 1) throw Error("piece leaves the span of its monotone curve");
    int pos = from <= to ? s.sec - lo + 1 : hi + 1 - s.sec + 1;
    out[pos] += s.length;
  }
  return out;
}

namespace {

// Sector masses of f on [a, b], split at the line events.
std::map<int, Rational> sector_masses(const PiecewiseLinear& f, const Configuration& cfg,
                                      const std::vector<LineEvent>& events, const Rational& a, const Rational& b) {
  std::vector<Rational> cuts{a};
  for (const auto& e : events)
    if (e.x > a && e.x < b) cuts.push_back(e.x);
  cuts.push_back(b);
  std::map<int, Rational> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    out[sector_of(cfg, mid, eval_pl(f, mid))] += cuts[i + 1] - cuts[i];
  }
  return out;
}

}  // namespace

BasisRealization rearrange_to_basis(const PiecewiseLinear& f, const Configuration& cfg) {
  std::string why;
  if (!piecewise_valid(f, cfg, &why)) throw Error("invalid test-function: " + why);
  const int k = cfg.k();
  auto events = line_events(f, cfg);
  auto dec = decompose_into_monotone_curves(f, cfg);
  std::vector<std::pair<int, int>> curves(dec.pairs.begin(), dec.pairs.end() - 1);
  const int y_end = dec.pairs.back().first;

  std::vector<std::map<int, Rational>> masses;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    Rational b = c + 1 == curves.size() ? Rational(1) : dec.cuts[c + 1];
    masses.push_back(sector_masses(f, cfg, events, dec.cuts[c], b));
  }

  BasisRealization out;
  int owner_offset = 0;
  if (curves.empty()) {
    masses.push_back(sector_masses(f, cfg, events, 0, 1));
    if (k == 1) {
      out.spec.pairs = {{1, 1}};
    } else if (y_end == 1) {
      out.spec.pairs = {{k, 1}, {1, 1}};
    } else if (y_end == k) {
      out.spec.pairs = {{1, k}, {k, k}};
    } else {
      out.spec.pairs = {{1, k}, {k, y_end}, {y_end, y_end}};
      owner_offset = 1;
    }
  } else {
    // The first curve leaves the origin, which lies on every line, so its
    // start can be moved to the extreme line at zero cost.
    auto first = curves.front();
    first.first = first.first < first.second ? 1 : k;
    std::vector<std::pair<int, int>> pairs;
    if (first.first == 1 && first.second != k) {
      pairs.emplace_back(k, 1);
      owner_offset = 1;
    } else if (first.first == k && first.second != 1) {
      pairs.emplace_back(1, k);
      owner_offset = 1;
    }
    pairs.push_back(first);
    pairs.insert(pairs.end(), curves.begin() + 1, curves.end());
    pairs.emplace_back(pairs.back().second, pairs.back().second);
    out.spec.pairs = std::move(pairs);
  }
  out.schema = schema_materialize(out.spec, k);
  out.lengths.assign(out.schema.M(), Rational(0));
  for (std::size_t c = 0; c < masses.size(); ++c) {
    for (const auto& [sec, mass] : masses[c]) {
      if (mass == 0) continue;
      int curve = std::max(1, static_cast<int>(c) + 1 + owner_offset);
      int at = k == 1 ? (sec == 1 ? 1 : 2) : schema_segment_of(out.schema, curve, sec);
      if (at < 0) throw Error("rearranged mass has no segment in the basis schema");
      out.lengths[at] += mass;
    }
  }
  return out;
}

// ------------------------------------------------------------ vertices

namespace {

std::optional<Point> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational factor = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  Point x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = b[i] / a[i][i];
    x[i].canonicalize();
  }
  return x;
}

std::string point_key(const Point& p) {
  std::string s;
  for (const auto& q : p) s += q.get_str() + ",";
  return s;
}

}  // namespace

std::vector<Point> polytope_vertices(const Polytope& p) {
  const int n = p.dim;
  const int need = n - (p.sum_to_one ? 1 : 0);
  const int F = static_cast<int>(p.faces.size());
  std::vector<Point> out;
  if (need < 0 || need > F) return out;
  std::set<std::string> seen;
  std::vector<int> pick(need);
  for (int i = 0; i < need; ++i) pick[i] = i;
  while (true) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    if (p.sum_to_one) {
      a.emplace_back(n, Rational(1));
      b.emplace_back(1);
    }
    for (int f : pick) {
      std::vector<Rational> row(n);
      for (int j = 0; j < n; ++j) row[j] = Rational(p.faces[f].coef[j]);
      a.push_back(std::move(row));
      b.emplace_back(p.faces[f].bias);
    }
    if (auto x = solve(a, b)) {
      bool inside = true;
      for (const auto& h : p.faces)
        if (margin(*x, h) < 0) {
          inside = false;
          break;
        }
      if (inside && seen.insert(point_key(*x)).second) out.push_back(*x);
    }
    int i = need - 1;
    while (i >= 0 && pick[i] == F - need + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < need; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

Point vertex_average(const std::vector<Point>& v) {
  if (v.empty()) throw Error("vertex average of an empty set");
  Point c(v.front().size(), Rational(0));
  for (const auto& p : v)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
  for (auto& q : c) {
    q /= static_cast<long>(v.size());
    q.canonicalize();
  }
  return c;
}

Point round_to_low_precision(const Point& x, const BigInt& N) {
  if (N < 1) throw Error("rounding grid needs N >= 1");
  const long d = static_cast<long>(x.size());
  BigInt grid = N * d;
  Point out(x.size());
  Rational rest = 1;
  for (long i = 0; i + 1 < d; ++i) {
    Rational scaled = x[i] * Rational(grid) + Rational(1, 2);
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    out[i] = Rational(fl, grid);
    out[i].canonicalize();
    rest -= out[i];
  }
  out[d - 1] = rest;
  return out;
}

BigInt common_denominator(const std::vector<Rational>& v) { return lcm_of_denominators(v); }

BigInt discretization_grain(const std::vector<Rational>& lengths, const Configuration& cfg) {
  return configuration_lcm(cfg) * common_denominator(lengths);
}

Bits discretize(const Schema& schema, const std::vector<Rational>& lengths, const Configuration& cfg, long long n) {
  if (n < 1) throw Error("discretization length must be positive");
  if (static_cast<int>(lengths.size()) != schema.M()) throw Error("one length per segment expected");
  if (lengths[0] != 0) throw Error("discretization starts at the origin; the lead-in must be empty");
  BigInt grain = discretization_grain(lengths, cfg);
  if (BigInt(static_cast<long>(n)) % grain != 0) throw Error("InfeasibleGrain: n must be a multiple of " + grain.get_str());
  Rational total = 0;
  for (const auto& q : lengths) total += q;
  if (total != 1) throw Error("segment lengths must sum to one");

  Bits x;
  x.reserve(n);
  long long cx = 0, cy = 0;
  Rational prefix = 0;
  for (int i = 1; i < schema.M(); ++i) {
    prefix += lengths[i];
    Rational end_x = prefix * static_cast<long>(n);
    Rational end_y = cfg.s(schema.segments[i].idx) * end_x;
    if (end_x.get_den() != 1 || end_y.get_den() != 1) throw Error("crossing point is not a lattice point");
    const long long X1 = end_x.get_num().get_si(), Y1 = end_y.get_num().get_si();
    if (Y1 < cy || Y1 - cy > X1 - cx) throw Error("segment cannot be realized by unit steps");
    const int sec = schema.segments[i].sec;
    while (cx < X1) {
      int choice = -1;
      int fallback = -1;
      for (int bit = 0; bit < 2; ++bit) {
        long long ny = cy + bit;
        if (ny > Y1 || Y1 - ny > X1 - cx - 1) continue;
        int s = sector_of(cfg, Rational(static_cast<long>(cx + 1)), Rational(static_cast<long>(ny)));
        if (s == sec) {
          choice = bit;
          break;
        }
        // Below the target sector means climbing helps, above means waiting.
        if (fallback < 0 || (s > sec && bit == 1)) fallback = bit;
      }
      if (choice < 0) choice = fallback;
      if (choice < 0) throw Error("no feasible lattice step");
      x.push_back(choice ? '1' : '0');
      cx += 1;
      cy += choice;
    }
  }
  return x;
}

}  // namespace lgl
