#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "core.hpp"
#include "crasp.hpp"
#include "encodings.hpp"
#include "oracles.hpp"

using namespace lgl;

namespace {

Dfa parity() {
  Dfa d;
  d.n = 2;
  d.delta = {{0, 1}, {1, 0}};
  d.start = 0;
  d.accept = {true, false};
  return d;
}

Cfg anbn() {
  Cfg g;
  g.nonterminals = {"S"};
  g.start = "S";
  g.productions = {{"S", {"0", "S", "1"}}, {"S", {"0", "1"}}};
  return g;
}

}  // namespace

TEST_CASE("prefix sums") {
  CHECK(prefix_sums("101") == std::vector<int>{1, 1, 2});
  CHECK(prefix_sums("").empty());
  CHECK(prefix_sums("0000") == std::vector<int>{0, 0, 0, 0});
  for (const auto& x : oracle::strings_up_to(8)) {
    auto ps = prefix_sums(x);
    REQUIRE(ps.size() == x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      int prev = j ? ps[j - 1] : 0;
      CHECK(ps[j] - prev == (x[j] == '1'));
    }
  }
}

TEST_CASE("string enumeration order") {
  CHECK(enumerate_strings(0) == std::vector<Bits>{""});
  CHECK(enumerate_strings(1) == std::vector<Bits>{"", "0", "1"});
  CHECK(enumerate_strings(2).size() == 7);
  CHECK(enumerate_strings(10) == oracle::strings_up_to(10));
  for (std::uint64_t i = 0; i < strings_up_to(9); ++i) CHECK(string_index(string_at(i)) == i);
}

TEST_CASE("tokens") {
  CHECK(bits_from_token("EPS").empty());
  CHECK(bits_to_token("") == "EPS");
  CHECK(bits_from_token("0110") == "0110");
  CHECK_THROWS_AS(bits_from_token("012"), Error);
}

TEST_CASE("datasets") {
  auto d = build_dataset([](const Bits&) { return 0; }, 1);
  CHECK(d.size() == 3);
  CHECK(d.label("") == 0);
  auto p = build_dataset([](const Bits& x) { return oracle::dfa_eval(parity(), x); }, 1);
  CHECK(p.label("") == 1);
  CHECK(p.label("0") == 1);
  CHECK(p.label("1") == 0);
  auto c = build_dataset([](const Bits& x) { return crasp1_eval({1, 0, 0}, x); }, 1);
  CHECK(c.labels() == std::vector<std::uint8_t>{0, 0, 1});

  auto big = build_dataset([](const Bits& x) { return oracle::dfa_eval(parity(), x); }, 5);
  auto back = dataset_from_csv(dataset_to_csv(big));
  CHECK(back.horizon() == 5);
  CHECK(back.labels() == big.labels());
  CHECK(big.truncated(2).labels() == build_dataset([](const Bits& x) { return oracle::dfa_eval(parity(), x); }, 2).labels());
  CHECK_THROWS_AS(dataset_from_csv("string,label\n0,1\n"), Error);  // missing EPS and "1"
}

TEST_CASE("rationals") {
  CHECK(rational_str(rational_parse("6/4")) == "3/2");
  CHECK(rational_parse("-2") == -2);
  CHECK_THROWS_AS(rational_parse("1/0"), Error);
  CHECK_THROWS_AS(rational_parse("x"), Error);
  CHECK(lcm_of_denominators({Rational(1, 4), Rational(1, 6)}) == 12);
}

TEST_CASE("parallel_for writes by index") {
  std::vector<int> out(1000);
  parallel_for(4, out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i * i % 97); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i % 97));
}

TEST_CASE("dfa evaluation and equality") {
  CHECK(dfa_eval(parity(), "11") == 1);
  CHECK(dfa_eval(parity(), "1") == 0);
  CHECK(dfa_eval(dfa_all_accept(), "") == 1);

  Dfa relabeled;
  relabeled.n = 2;
  relabeled.delta = {{0, 1}, {1, 0}};
  relabeled.start = 1;
  relabeled.accept = {false, true};
  CHECK(dfa_equal(parity(), relabeled).equal);

  auto r = dfa_equal(dfa_all_accept(), dfa_all_reject());
  CHECK_FALSE(r.equal);
  CHECK(*r.counterexample == "");
  r = dfa_equal(parity(), dfa_all_accept());
  CHECK_FALSE(r.equal);
  CHECK(*r.counterexample == "1");
}

TEST_CASE("dfa counterexamples are the shortest-least scan hits") {
  std::mt19937 rng(7);
  for (int t = 0; t < 300; ++t) {
    auto rand_dfa = [&] {
      Dfa d;
      d.n = 1 + rng() % 4;
      d.delta.resize(d.n);
      d.accept.resize(d.n);
      for (int q = 0; q < d.n; ++q) {
        d.delta[q] = {static_cast<int>(rng() % d.n), static_cast<int>(rng() % d.n)};
        d.accept[q] = rng() & 1;
      }
      d.start = rng() % d.n;
      return d;
    };
    Dfa a = rand_dfa(), b = rand_dfa();
    auto want = oracle::scan_distinguisher([&](const Bits& x) { return oracle::dfa_eval(a, x); },
                                           [&](const Bits& x) { return oracle::dfa_eval(b, x); }, 8);
    auto got = dfa_equal(a, b);
    CHECK(got.equal == !want.has_value());
    if (want) CHECK(*got.counterexample == *want);
  }
}

TEST_CASE("dfa minimization") {
  Dfa dup;
  dup.n = 3;
  dup.delta = {{0, 1}, {1, 2}, {2, 1}};
  dup.start = 0;
  dup.accept = {true, false, true};
  Dfa m = dfa_minimize(dup);
  CHECK(m.n == 2);
  CHECK(dfa_equal(m, parity()).equal);

  Dfa rej;
  rej.n = 3;
  rej.delta = {{1, 2}, {2, 0}, {0, 1}};
  rej.accept = {false, false, false};
  CHECK(dfa_minimize(rej).n == 1);
  CHECK(dfa_minimize(rej) == dfa_all_reject());

  Dfa p = dfa_minimize(parity());
  CHECK(dfa_minimize(p) == p);
}

TEST_CASE("dfa enumeration") {
  const auto& one = dfa_enumerate(1);
  REQUIRE(one.size() == 2);
  CHECK(one[0] == dfa_all_reject());
  CHECK(one[1] == dfa_all_accept());
  const auto& two = dfa_enumerate(2);
  CHECK(two.size() == 26);
  CHECK(std::any_of(two.begin(), two.end(), [](const Dfa& d) { return dfa_equal(d, parity()).equal; }));
  CHECK(dfa_enumerate(3).size() == 1054);
  CHECK(dfa_language_count(1) == 2);
  CHECK(dfa_language_count(2) == 24);
  CHECK(dfa_language_count(3) == 1028);

  // Label vectors on {0,1}^{<=5} as an independent dedup key.
  std::set<std::vector<int>> seen;
  for (const auto& d : dfa_enumerate(3)) {
    std::vector<int> sig;
    for (const auto& x : oracle::strings_up_to(5)) sig.push_back(oracle::dfa_eval(d, x));
    CHECK(seen.insert(sig).second);
    CHECK(dfa_minimize(d).n == d.n);
  }
}

TEST_CASE("cfg membership") {
  auto g = anbn();
  CHECK(cfg_membership(g, "0011") == 1);
  CHECK(cfg_membership(g, "10") == 0);
  CHECK(cfg_membership(g, "") == 0);
  CHECK(cfg_is_linear(g));

  auto lang = oracle::derivable(g, 8);
  for (const auto& x : oracle::strings_up_to(8)) CHECK(cfg_membership(g, x) == static_cast<int>(lang.count(x)));
}

TEST_CASE("cnf conversion") {
  Cfg g;
  g.nonterminals = {"S"};
  g.start = "S";
  g.productions = {{"S", {"0", "1"}}};
  auto cnf = cfg_to_cnf(g);
  CHECK(cfg_is_cnf(cnf.grammar));
  CHECK(cnf.grammar.productions.size() == 3);
  CHECK_FALSE(cnf.accepts_empty);

  Cfg e;
  e.nonterminals = {"S"};
  e.start = "S";
  e.productions = {{"S", {}}};
  auto ce = cfg_to_cnf(e);
  CHECK(ce.accepts_empty);
  for (const auto& p : ce.grammar.productions) CHECK_FALSE(p.body.empty());

  auto ca = cfg_to_cnf(anbn());
  CHECK(cfg_is_cnf(ca.grammar));
  for (const auto& x : oracle::strings_up_to(8)) CHECK(cnf_membership(ca, x) == cfg_membership(anbn(), x));
}

TEST_CASE("cfg complexity") {
  Cfg g;
  g.nonterminals = {"S"};
  g.start = "S";
  g.productions = {{"S", {"0", "1"}}};
  CHECK(complexity_cfg(g) == 6);
  CHECK(complexity_cfg(anbn()) == 10);
}

TEST_CASE("cfg body parsing and validation") {
  Cfg g;
  g.nonterminals = {"S", "SA"};
  CHECK(cfg_parse_body(g, "0SA1") == std::vector<std::string>{"0", "SA", "1"});
  CHECK_THROWS_AS(cfg_parse_body(g, "0X"), Error);
  Cfg bad = anbn();
  bad.start = "Q";
  CHECK_FALSE(cfg_valid(bad));
}

TEST_CASE("crasp1 evaluation and enumeration") {
  CHECK(crasp1_eval({1, 0, 0}, "001") == 1);
  CHECK(crasp1_eval({2, 1, 0}, "01") == 0);
  CHECK(crasp1_eval({3, 1, 0}, "01") == 1);
  CHECK(crasp1_enumerate(1).size() == 9);
  CHECK(crasp1_enumerate(2).size() == 50);
  for (int T = 1; T <= 4; ++T) CHECK(crasp1_enumerate(T).front() == Crasp1{1, -1, -1});
  const auto all = crasp1_enumerate(4);
  for (std::size_t i = 1; i < all.size(); ++i) {
    int c0 = crasp1_complexity(all[i - 1]), c1 = crasp1_complexity(all[i]);
    CHECK(c0 <= c1);
    if (c0 == c1) CHECK(all[i - 1] < all[i]);
  }
  for (const auto& p : all)
    for (const auto& x : oracle::strings_up_to(6)) REQUIRE(crasp1_eval(p, x) == oracle::crasp1_eval(p, x));
}

TEST_CASE("crasp2 evaluation") {
  Crasp2 p{{{2, 1, 2}}, 1};
  CHECK(crasp2_eval(p, "1") == 1);
  CHECK(crasp2_eval(p, "0") == 0);
  CHECK(crasp2_eval(p, "10") == oracle::crasp2_eval(p, "10"));
  CHECK(crasp2_eval(p, "10") == 0);  // frozen from the definition oracle
  for (const auto& q : crasp2_enumerate(3, 2).programs)
    for (const auto& x : oracle::strings_up_to(7)) REQUIRE(crasp2_eval(q, x) == oracle::crasp2_eval(q, x));
}

TEST_CASE("crasp2 enumeration") {
  CHECK(crasp2_enumerate(1, 1).programs.empty());
  auto e21 = crasp2_enumerate(2, 1);
  REQUIRE(e21.programs.size() == 1);
  CHECK(e21.programs[0] == Crasp2{{{2, 1, 2}}, 1});
  CHECK(crasp2_enumerate(3, 1).programs.size() == 9);
  auto e32 = crasp2_enumerate(3, 2);
  CHECK(e32.programs.size() == 93);
  for (const auto& q : e32.programs) {
    CHECK(crasp2_valid(q, 3));
    CHECK(crasp2_is_canonical(q));
  }
  for (std::size_t i = 1; i < e32.programs.size(); ++i)
    CHECK(crasp2_complexity(e32.programs[i - 1]) <= crasp2_complexity(e32.programs[i]));
  CHECK_THROWS_AS(crasp2_enumerate(1, 2), Error);

  // Independent filter over raw head tuples.
  auto slope_ok = [](int a, int b) { return a > 0 && b > 0 && b < a; };
  std::size_t want = 0;
  for (int a = 1; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int l = -3; l <= 3; ++l)
        for (int z = -3; z <= 3; ++z)
          if (slope_ok(a, b) && std::gcd(a, b) == 1 && l > z && z > 0) ++want;
  CHECK(crasp2_enumerate(3, 1).programs.size() == want);
}
