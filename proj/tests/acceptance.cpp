// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "classes.hpp"
#include "dfa_ident.hpp"
#include "distinguish.hpp"
#include "experiments.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "oracles.hpp"

using namespace lgl;

namespace {

// Pinned tolerances and sizes.
constexpr std::size_t kDfaSample = 500;
constexpr std::uint64_t kSeed = 20240611;
constexpr int kCrasp1MaxT = 6;
constexpr long long kCrasp1Horizon = 10;  // times T^2; past this, programs that agree are equal
constexpr std::size_t kCrasp2Pairs32 = 200;
constexpr long long kNoneFactor = 3;
constexpr int kRearrangePerK = 200;
constexpr int kDiscretizeInstances = 100;
constexpr int kMarginPolytopes = 100;
constexpr int kRoundingPoints = 200;
constexpr int kDpConfigs = 20;
constexpr int kDpMaxN = 12;
constexpr int kGrammars = 50;
constexpr int kGrammarMaxLen = 6;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

Dfa dfa_at(const HypothesisClass& cls, std::size_t i) { return model_from_json(cls.describe(i), ModelKind::Dfa).dfa; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Criteria 1 and 2 share the DFA sets.
void dfa_bound_and_learner(Outcome& c1, Outcome& c2) {
  auto cls = dfa_class(3);
  for (int c = 1; c <= 3; ++c) {
    auto r = compute_Nc(c, cls);
    c1.detail << "c=" << c << ": N=" << r.N_value << " over " << cls.prefix(c) << "; ";
    if (r.N_value > 2 * c - 2) c1.fail("N(F_" + std::to_string(c) + ") = " + std::to_string(r.N_value));
    std::size_t ok = 0;
    for (std::size_t i = 0; i < cls.prefix(c); ++i) {
      Dfa truth = dfa_at(cls, i);
      try {
        auto data = build_dataset([&](const Bits& x) { return oracle::dfa_eval(truth, x); }, 2 * c - 2);
        if (dfa_equal(learn_dfa(data, c), truth).equal) ++ok;
        else c2.fail("c=" + std::to_string(c) + " " + cls.describe(i));
      } catch (const Error& e) {
        c2.fail("c=" + std::to_string(c) + " " + cls.describe(i) + ": " + e.what());
      }
    }
    c2.detail << "c=" << c << ": " << ok << "/" << cls.prefix(c) << "; ";
  }

  auto big = dfa_class(4);
  auto subset = sample_indices(big.prefix(4), kDfaSample, kSeed);
  auto r = compute_Nc(4, big, 1, nullptr, &subset);
  c1.detail << "c=4 sample " << subset.size() << " of " << big.prefix(4) << ": N=" << r.N_value;
  if (r.N_value > 6) c1.fail("sampled N(F_4) = " + std::to_string(r.N_value));
  std::size_t ok = 0;
  for (auto i : subset) {
    Dfa truth = dfa_at(big, i);
    try {
      auto data = build_dataset([&](const Bits& x) { return oracle::dfa_eval(truth, x); }, 6);
      if (dfa_equal(learn_dfa(data, 4), truth).equal) ++ok;
      else c2.fail("c=4 " + big.describe(i));
    } catch (const Error& e) {
      c2.fail("c=4 " + big.describe(i) + ": " + e.what());
    }
  }
  c2.detail << "c=4 sample: " << ok << "/" << subset.size();
}

// First (n, ones) column where the two programs differ, scanning every lattice
// point with the reference formula.
std::optional<long long> lattice_first_difference(const Crasp1& p, const Crasp1& q, long long horizon) {
  for (long long n = 0; n <= horizon; ++n)
    for (long long ones = 0; ones <= n; ++ones) {
      const bool a = p.a * ones - p.b * n - p.d > 0;
      const bool b = q.a * ones - q.b * n - q.d > 0;
      if (a != b) return n;
    }
  return std::nullopt;
}

void crasp1_bound(Outcome& out) {
  for (int T = 1; T <= kCrasp1MaxT; ++T) {
    auto progs = crasp1_enumerate(T);
    const long long bound = 3LL * T * T;
    long long worst = 0;
    std::size_t equal = 0;
    for (std::size_t i = 0; i < progs.size(); ++i)
      for (std::size_t j = i + 1; j < progs.size(); ++j) {
        auto n = lattice_first_difference(progs[i], progs[j], kCrasp1Horizon * T * T);
        auto w = crasp1_distinguisher(progs[i], progs[j]);
        if (n) {
          worst = std::max(worst, *n);
          if (*n > bound) out.fail("T=" + std::to_string(T) + " minimal length " + std::to_string(*n));
        } else {
          ++equal;
        }
        if (w.has_value() != n.has_value()) out.fail("crasp1_distinguisher disagrees at T=" + std::to_string(T));
        if (w && oracle::crasp1_eval(progs[i], *w) == oracle::crasp1_eval(progs[j], *w))
          out.fail("crasp1_distinguisher witness does not distinguish");
      }
    out.detail << "T=" << T << ": max " << worst << " <= " << bound << " (" << progs.size() << " programs, " << equal
               << " equal pairs); ";
  }
}

void mci_optimality(Outcome& out) {
  auto check = [&](const std::string& name, const HypothesisClass& cls, long long c) {
    long long mx = -1;
    for (const auto& row : run_learning_curve(cls, c)) {
      if (row.N_mci < 0) out.fail(name + ": some ground truth is never identified");
      mx = std::max(mx, row.N_mci);
    }
    const long long n = compute_Nc(c, cls).N_value;
    out.detail << name << ": " << mx << " vs " << n << "; ";
    if (mx != n) out.fail(name);
  };
  for (int c = 1; c <= 3; ++c) check("dfa c=" + std::to_string(c), dfa_class(c), c);
  for (int T = 1; T <= 3; ++T) check("crasp1 T=" + std::to_string(T), crasp1_class(T), T);
}

void crasp2_pipeline(Outcome& out) {
  auto ev = [](const Crasp2& p) { return Evaluator([p](const Bits& x) { return crasp2_eval(p, x); }); };
  std::vector<std::pair<Crasp2, Crasp2>> none;
  long long max_cert = 0;
  std::size_t checked = 0;
  auto run = [&](const Crasp2& f, const Crasp2& g) {
    ++checked;
    auto c = crasp2_construct_distinguisher(f, g);
    if (!c) {
      none.emplace_back(f, g);
      return;
    }
    max_cert = std::max(max_cert, c->n);
    if (!verify_distinguisher(ev(f), ev(g), c->witness)) out.fail("witness does not verify");
    auto m = crasp2_min_distinguisher(f, g, c->n);
    if (!m || m->n > c->n) out.fail("brute force exceeds the certificate");
  };
  for (auto [T, K] : {std::pair{2, 1}, std::pair{3, 1}}) {
    auto progs = crasp2_enumerate(T, K).programs;
    for (std::size_t i = 0; i < progs.size(); ++i)
      for (std::size_t j = i + 1; j < progs.size(); ++j) run(progs[i], progs[j]);
  }
  auto progs = crasp2_enumerate(3, 2).programs;
  std::mt19937_64 rng(kSeed);
  for (std::size_t t = 0; t < kCrasp2Pairs32;) {
    std::size_t i = rng() % progs.size(), j = rng() % progs.size();
    if (i == j) continue;
    run(progs[i], progs[j]);
    ++t;
  }
  out.detail << checked << " pairs, max certificate " << max_cert << ", " << none.size() << " none";
  for (const auto& [f, g] : none) {
    try {
      if (crasp2_min_distinguisher(f, g, kNoneFactor * max_cert)) out.fail("pipeline missed a distinguisher");
    } catch (const BudgetExceeded&) {
      out.fail("DP budget exceeded while checking a none pair");
    }
  }
  if (!none.empty()) out.detail << " checked by brute force to " << kNoneFactor * max_cert;
}

void geometry_suite(Outcome& out) {
  std::mt19937_64 rng(kSeed);
  // (a)
  for (int k = 1; k <= 8; ++k)
    if (basis_schemas(k).size() != (std::size_t{1} << (k - 1))) out.fail("(a) schema count at k=" + std::to_string(k));
  out.detail << "(a) k<=8; ";

  // (b)
  int b = 0;
  for (int k = 2; k <= 4; ++k)
    for (int t = 0; t < kRearrangePerK; ++t) {
      auto cfg = gen::configuration(rng, k, 7);
      auto f = gen::test_function(rng, cfg, 3 + t % 6);
      auto r = rearrange_to_basis(f, cfg);
      if (activations_from_segments(r.schema, r.lengths) != activations_continuous(f, cfg)) out.fail("(b)");
      ++b;
    }
  out.detail << "(b) " << b << "; ";

  // (c)
  int c = 0;
  while (c < kDiscretizeInstances) {
    auto cfg = gen::configuration(rng, 1 + static_cast<int>(rng() % 3), 5);
    auto specs = basis_schemas(cfg.k());
    auto schema = schema_materialize(specs[rng() % specs.size()], cfg.k());
    auto len = gen::schema_lengths(rng, schema, cfg);
    if (len.empty()) continue;
    BigInt grain = discretization_grain(len, cfg);
    if (grain > 4000) continue;
    long long n = grain.get_si() * (1 + static_cast<long long>(rng() % 3));
    const long long T = configuration_precision(cfg);
    auto bx = activations_discrete(cfg, discretize(schema, len, cfg, n));
    auto by = activations_from_segments(schema, len);
    for (int i = 0; i < cfg.k(); ++i)
      if (abs(bx[i] - by[i]) > Rational(static_cast<long>(T * T + schema.M()), static_cast<long>(n))) out.fail("(c)");
    ++c;
  }
  out.detail << "(c) " << c << "; ";

  // (d) margin >= 1/(sqrt(M) p)^M, squared to stay rational: margin^2 (M p^2)^M >= 1.
  int d = 0, margins = 0;
  while (d < kMarginPolytopes) {
    const int M = 2 + static_cast<int>(rng() % 4);
    const int p = 1 + static_cast<int>(rng() % 5);
    Polytope poly;
    poly.dim = M;
    for (int i = 0; i < M; ++i) {
      Halfspace h{std::vector<BigInt>(M, 0), 0, Sense::Ge};
      h.coef[i] = 1;
      poly.faces.push_back(h);
    }
    const int extra = 1 + static_cast<int>(rng() % 3);
    for (int e = 0; e < extra; ++e) {
      Halfspace h{std::vector<BigInt>(M, 0), 0, Sense::Ge};
      for (auto& v : h.coef) v = static_cast<long>(rng() % (2 * p + 1)) - p;
      h.bias = static_cast<long>(rng() % (2 * p + 1)) - p;
      poly.faces.push_back(h);
    }
    auto verts = polytope_vertices(poly);
    if (verts.empty()) continue;
    BigInt scale = 1;
    for (int i = 0; i < M; ++i) scale *= BigInt(M) * p * p;
    for (const auto& v : verts)
      for (const auto& h : poly.faces) {
        Rational m = margin(v, h);
        if (m == 0) continue;
        ++margins;
        if (m < 0) out.fail("(d) vertex outside its polytope");
        else if (m * m * Rational(scale) < 1) out.fail("(d) margin below the bound");
      }
    ++d;
  }
  out.detail << "(d) " << d << " polytopes, " << margins << " margins; ";

  // (e)
  for (int t = 0; t < kRoundingPoints; ++t) {
    const int dim = 2 + static_cast<int>(rng() % 5);
    const long N = 1 + static_cast<long>(rng() % 60);
    auto x = gen::simplex_point(rng, dim);
    auto y = round_to_low_precision(x, N);
    Rational sum = 0;
    for (int i = 0; i < dim; ++i) {
      if (abs(y[i] - x[i]) > Rational(1, N)) out.fail("(e) L-inf");
      if (y[i].get_den() > BigInt(dim) * N) out.fail("(e) denominator");
      sum += y[i];
    }
    if (sum != 1) out.fail("(e) sum");
  }
  out.detail << "(e) " << kRoundingPoints;
}

void oracle_equivalence(Outcome& out) {
  std::mt19937_64 rng(kSeed);
  for (int t = 0; t < kDpConfigs; ++t) {
    auto cfg = gen::configuration(rng, 1 + t % 2, 7);
    for (int n = 1; n <= kDpMaxN; ++n) {
      std::set<std::vector<long long>> scan;
      for (const auto& x : oracle::strings_of_length(n)) {
        std::vector<long long> row{static_cast<long long>(std::count(x.begin(), x.end(), '1'))};
        for (auto& q : oracle::activations(cfg.slopes, x)) row.push_back(Rational(q * n).get_num().get_si());
        scan.insert(row);
      }
      auto dp = dp_reachable_activations(cfg, n);
      if (std::set<std::vector<long long>>(dp.begin(), dp.end()) != scan) out.fail("dp reachable set");
    }
  }
  out.detail << kDpConfigs << " configurations to n=" << kDpMaxN << "; ";
  std::size_t members = 0;
  for (int t = 0; t < kGrammars; ++t) {
    auto g = gen::grammar(rng);
    auto lang = oracle::derivable(g, kGrammarMaxLen);
    members += lang.size();
    for (const auto& x : oracle::strings_up_to(kGrammarMaxLen))
      if (cfg_membership(g, x) != static_cast<int>(lang.count(x))) out.fail("cyk");
  }
  out.detail << kGrammars << " grammars, " << members << " members";
}

void cfg_honesty(Outcome& out) {
  ExperimentConfig cfg;
  cfg.class_id = "cfg";
  try {
    verify_bounds(cfg);
    out.fail("verify_bounds accepted the cfg class");
  } catch (const UndecidableClass& e) {
    std::string msg = e.what();
    if (msg.find("undecidable") == std::string::npos) out.fail("message does not cite undecidability");
    out.detail << msg;
  }
}

}  // namespace

int main() {
  Outcome o[9];
  bool all = true;
  auto report = [&](int id, const char* name, double secs) {
    std::printf("criterion %d %-20s %s  [%.1fs] %s\n", id, name, o[id].pass ? "PASS" : "FAIL", secs,
                o[id].detail.str().c_str());
    std::fflush(stdout);
    all = all && o[id].pass;
  };
  auto timed = [&](Outcome& out, const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      fn();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    return seconds_since(t0);
  };

  double t = timed(o[1], [&] { dfa_bound_and_learner(o[1], o[2]); });
  report(1, "dfa-bound", t);
  report(2, "dfa-learner", t);
  report(3, "crasp1-bound", timed(o[3], [&] { crasp1_bound(o[3]); }));
  report(4, "mci-optimality", timed(o[4], [&] { mci_optimality(o[4]); }));
  report(5, "crasp2-pipeline", timed(o[5], [&] { crasp2_pipeline(o[5]); }));
  report(6, "geometry", timed(o[6], [&] { geometry_suite(o[6]); }));
  report(7, "oracle-equivalence", timed(o[7], [&] { oracle_equivalence(o[7]); }));
  report(8, "cfg-out-of-scope", timed(o[8], [&] { cfg_honesty(o[8]); }));
  return all ? 0 : 1;
}
