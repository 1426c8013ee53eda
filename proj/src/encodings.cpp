#include "encodings.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <queue>
#include <set>
#include <unordered_set>

namespace lgl {

bool dfa_valid(const Dfa& d) {
  if (d.n < 1 || static_cast<int>(d.delta.size()) != d.n || static_cast<int>(d.accept.size()) != d.n) return false;
  if (d.start < 0 || d.start >= d.n) return false;
  for (const auto& row : d.delta)
    for (int q : row)
      if (q < 0 || q >= d.n) return false;
  return true;
}

Dfa dfa_all_reject() { return Dfa{}; }

Dfa dfa_all_accept() {
  Dfa d;
  d.accept = {true};
  return d;
}

Dfa dfa_sanitize(const Dfa& d) { return dfa_valid(d) ? d : dfa_all_reject(); }

int dfa_eval(const Dfa& d, const Bits& x) {
  if (!dfa_valid(d)) return 0;
  int q = d.start;
  for (char c : x) q = d.delta[q][c == '1'];
  return d.accept[q] ? 1 : 0;
}

DfaComparison dfa_equal(const Dfa& a0, const Dfa& b0) {
  Dfa a = dfa_sanitize(a0), b = dfa_sanitize(b0);
  // BFS over the product; symbol 0 before 1 gives the lexicographically least
  // among the shortest counterexamples.
  std::vector<int> parent(a.n * b.n, -2);
  std::vector<char> via(a.n * b.n, 0);
  std::queue<int> fifo;
  int s = a.start * b.n + b.start;
  parent[s] = -1;
  fifo.push(s);
  while (!fifo.empty()) {
    int cur = fifo.front();
    fifo.pop();
    int p = cur / b.n, q = cur % b.n;
    if (a.accept[p] != b.accept[q]) {
      Bits w;
      for (int at = cur; parent[at] != -1; at = parent[at]) w.push_back(via[at]);
      std::reverse(w.begin(), w.end());
      return {false, w};
    }
    for (int c = 0; c < 2; ++c) {
      int nxt = a.delta[p][c] * b.n + b.delta[q][c];
      if (parent[nxt] != -2) continue;
      parent[nxt] = cur;
      via[nxt] = c ? '1' : '0';
      fifo.push(nxt);
    }
  }
  return {true, std::nullopt};
}

namespace {

std::vector<int> reachable_states(const Dfa& d) {
  std::vector<int> order;
  std::vector<bool> seen(d.n, false);
  std::deque<int> fifo{d.start};
  seen[d.start] = true;
  while (!fifo.empty()) {
    int q = fifo.front();
    fifo.pop_front();
    order.push_back(q);
    for (int c = 0; c < 2; ++c) {
      int r = d.delta[q][c];
      if (!seen[r]) {
        seen[r] = true;
        fifo.push_back(r);
      }
    }
  }
  return order;
}

// Hopcroft partition refinement on a DFA whose states are all reachable.
std::vector<int> hopcroft_blocks(const Dfa& d) {
  const int n = d.n;
  std::vector<std::vector<int>> inv[2];
  inv[0].assign(n, {});
  inv[1].assign(n, {});
  for (int q = 0; q < n; ++q)
    for (int c = 0; c < 2; ++c) inv[c][d.delta[q][c]].push_back(q);

  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(n);
  std::vector<int> acc, rej;
  for (int q = 0; q < n; ++q) (d.accept[q] ? acc : rej).push_back(q);
  for (auto* part : {&rej, &acc})
    if (!part->empty()) {
      for (int q : *part) block_of[q] = static_cast<int>(blocks.size());
      blocks.push_back(*part);
    }

  std::set<std::pair<int, int>> work;
  if (blocks.size() == 2) {
    int smaller = blocks[0].size() <= blocks[1].size() ? 0 : 1;
    for (int c = 0; c < 2; ++c) work.insert({smaller, c});
  } else {
    for (int c = 0; c < 2; ++c) work.insert({0, c});
  }

  while (!work.empty()) {
    auto [splitter, c] = *work.begin();
    work.erase(work.begin());
    std::vector<bool> in_x(n, false);
    for (int q : blocks[splitter])
      for (int p : inv[c][q]) in_x[p] = true;
    const int nblocks = static_cast<int>(blocks.size());
    for (int y = 0; y < nblocks; ++y) {
      std::vector<int> inside, outside;
      for (int q : blocks[y]) (in_x[q] ? inside : outside).push_back(q);
      if (inside.empty() || outside.empty()) continue;
      int fresh = static_cast<int>(blocks.size());
      blocks[y] = inside;
      blocks.push_back(outside);
      for (int q : outside) block_of[q] = fresh;
      for (int a = 0; a < 2; ++a) {
        if (work.count({y, a})) {
          work.insert({fresh, a});
        } else {
          work.insert({blocks[y].size() <= blocks[fresh].size() ? y : fresh, a});
        }
      }
    }
  }
  return block_of;
}

}  // namespace

Dfa dfa_minimize(const Dfa& d0) {
  Dfa d = dfa_sanitize(d0);
  // Restrict to reachable states.
  std::vector<int> reach = reachable_states(d);
  std::vector<int> local(d.n, -1);
  for (std::size_t i = 0; i < reach.size(); ++i) local[reach[i]] = static_cast<int>(i);
  Dfa r;
  r.n = static_cast<int>(reach.size());
  r.delta.resize(r.n);
  r.accept.resize(r.n);
  r.start = 0;
  for (int i = 0; i < r.n; ++i) {
    int q = reach[i];
    r.delta[i] = {local[d.delta[q][0]], local[d.delta[q][1]]};
    r.accept[i] = d.accept[q];
  }
  std::vector<int> block_of = hopcroft_blocks(r);

  // Quotient, renumbered by BFS order from the start block (0 before 1).
  int nb = *std::max_element(block_of.begin(), block_of.end()) + 1;
  std::vector<int> rep(nb, -1);
  for (int q = 0; q < r.n; ++q)
    if (rep[block_of[q]] < 0) rep[block_of[q]] = q;
  std::vector<int> number(nb, -1);
  std::vector<int> order;
  std::deque<int> fifo{block_of[r.start]};
  number[block_of[r.start]] = 0;
  while (!fifo.empty()) {
    int b = fifo.front();
    fifo.pop_front();
    order.push_back(b);
    for (int c = 0; c < 2; ++c) {
      int nbk = block_of[r.delta[rep[b]][c]];
      if (number[nbk] < 0) {
        number[nbk] = static_cast<int>(order.size() + fifo.size());
        fifo.push_back(nbk);
      }
    }
  }
  Dfa m;
  m.n = nb;
  m.start = 0;
  m.delta.resize(nb);
  m.accept.resize(nb);
  for (int b = 0; b < nb; ++b) {
    int i = number[b];
    m.delta[i] = {number[block_of[r.delta[rep[b]][0]]], number[block_of[r.delta[rep[b]][1]]]};
    m.accept[i] = r.accept[rep[b]];
  }
  return m;
}

std::string dfa_key(const Dfa& d) {
  std::string k = std::to_string(d.n) + ":";
  for (int q = 0; q < d.n; ++q) {
    k += std::to_string(d.delta[q][0]) + "," + std::to_string(d.delta[q][1]) + (d.accept[q] ? "+" : "-") + ";";
  }
  return k;
}

namespace {

struct DfaCatalog {
  std::vector<Dfa> languages;
  std::vector<std::size_t> count_by_size{0};
  int built_up_to = 0;
};

DfaCatalog& catalog() {
  static DfaCatalog cat;
  return cat;
}

void extend_catalog(int c) {
  static std::mutex mu;
  std::lock_guard lock(mu);
  DfaCatalog& cat = catalog();
  static std::unordered_set<std::string> seen;
  for (int n = cat.built_up_to + 1; n <= c; ++n) {
    std::size_t before = cat.languages.size();
    long long tables = 1;
    for (int i = 0; i < 2 * n; ++i) tables *= n;
    Dfa d;
    d.n = n;
    d.delta.assign(n, {0, 0});
    d.accept.assign(n, false);
    for (long long t = 0; t < tables; ++t) {
      long long v = t;
      for (int q = 0; q < n; ++q)
        for (int s = 0; s < 2; ++s) {
          d.delta[q][s] = static_cast<int>(v % n);
          v /= n;
        }
      for (int start = 0; start < n; ++start) {
        d.start = start;
        for (int mask = 0; mask < (1 << n); ++mask) {
          for (int q = 0; q < n; ++q) d.accept[q] = (mask >> q) & 1;
          Dfa m = dfa_minimize(d);
          if (m.n != n) continue;  // already produced at a smaller size
          if (seen.insert(dfa_key(m)).second) cat.languages.push_back(m);
        }
      }
    }
    cat.count_by_size.push_back(cat.languages.size() - before);
    cat.built_up_to = n;
  }
}

}  // namespace


std::size_t dfa_language_count(int n) {
  if (n < 1 || n > 4) throw Error("dfa enumeration supports 1 <= n <= 4");
  extend_catalog(n);
  return catalog().count_by_size[n];
}

const std::vector<Dfa>& dfa_enumerate(int c) {
  if (c < 1 || c > 4) throw Error("dfa enumeration supports 1 <= c <= 4");
  extend_catalog(c);
  static std::mutex mu;
  static std::map<int, std::vector<Dfa>> prefixes;
  std::lock_guard lock(mu);
  auto it = prefixes.find(c);
  if (it == prefixes.end()) {
    std::size_t total = 0;
    for (int n = 1; n <= c; ++n) total += catalog().count_by_size[n];
    it = prefixes.emplace(c, std::vector<Dfa>(catalog().languages.begin(), catalog().languages.begin() + total)).first;
  }
  return it->second;
}

// ---------------------------------------------------------------- CFG

namespace {

bool is_terminal(const std::string& s) { return s == "0" || s == "1"; }

}  // namespace

bool cfg_valid(const Cfg& g, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  std::set<std::string> nts(g.nonterminals.begin(), g.nonterminals.end());
  if (nts.size() != g.nonterminals.size()) return fail("duplicate nonterminal");
  for (const auto& a : nts)
    if (a.empty() || is_terminal(a)) return fail("bad nonterminal name");
  if (!nts.count(g.start)) return fail("start symbol is not a nonterminal");
  for (const auto& p : g.productions) {
    if (!nts.count(p.head)) return fail("production head is not a nonterminal: " + p.head);
    for (const auto& s : p.body)
      if (!is_terminal(s) && !nts.count(s)) return fail("unknown symbol: " + s);
  }
  if (g.linear && !cfg_is_linear(g)) return fail("grammar flagged linear has a body with two nonterminals");
  return true;
}

bool cfg_is_linear(const Cfg& g) {
  for (const auto& p : g.productions) {
    int count = 0;
    for (const auto& s : p.body) count += !is_terminal(s);
    if (count > 1) return false;
  }
  return true;
}

std::vector<std::string> cfg_parse_body(const Cfg& g, const std::string& body) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] == '0' || body[i] == '1') {
      out.emplace_back(1, body[i]);
      ++i;
      continue;
    }
    std::size_t best = 0;
    for (const auto& a : g.nonterminals)
      if (a.size() > best && body.compare(i, a.size(), a) == 0) best = a.size();
    if (best == 0) throw Error("cannot parse production body '" + body + "'");
    out.push_back(body.substr(i, best));
    i += best;
  }
  return out;
}

bool cfg_is_cnf(const Cfg& g) {
  for (const auto& p : g.productions) {
    if (p.body.size() == 1 && is_terminal(p.body[0])) continue;
    if (p.body.size() == 2 && !is_terminal(p.body[0]) && !is_terminal(p.body[1])) continue;
    return false;
  }
  return true;
}

CnfGrammar cfg_to_cnf(const Cfg& g0) {
  CnfGrammar out;
  if (!cfg_valid(g0)) {
    out.grammar.nonterminals = {"S"};
    out.grammar.start = "S";
    return out;
  }
  Cfg g = g0;
  std::set<std::string> names(g.nonterminals.begin(), g.nonterminals.end());
  auto fresh = [&](std::string base) {
    while (names.count(base)) base += "'";
    names.insert(base);
    g.nonterminals.push_back(base);
    return base;
  };

  // START: only needed when the start symbol occurs on a right-hand side.
  bool start_on_rhs = false;
  for (const auto& p : g.productions)
    for (const auto& s : p.body) start_on_rhs |= s == g.start;
  if (start_on_rhs) {
    std::string s0 = fresh(g.start + "0");
    g.productions.push_back({s0, {g.start}});
    g.start = s0;
  }

  // TERM
  std::map<std::string, std::string> term_nt;
  for (auto& p : g.productions) {
    if (p.body.size() < 2) continue;
    for (auto& s : p.body) {
      if (!is_terminal(s)) continue;
      auto it = term_nt.find(s);
      if (it == term_nt.end()) it = term_nt.emplace(s, fresh("T" + s)).first;
      s = it->second;
    }
  }
  for (const auto& [t, a] : term_nt) g.productions.push_back({a, {t}});

  // BIN
  std::vector<Production> bin;
  for (const auto& p : g.productions) {
    if (p.body.size() <= 2) {
      bin.push_back(p);
      continue;
    }
    std::string lhs = p.head;
    for (std::size_t i = 0; i + 2 < p.body.size(); ++i) {
      std::string nxt = fresh(p.head + "_" + std::to_string(i + 1));
      bin.push_back({lhs, {p.body[i], nxt}});
      lhs = nxt;
    }
    bin.push_back({lhs, {p.body[p.body.size() - 2], p.body.back()}});
  }

  // DEL
  std::set<std::string> nullable;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : bin) {
      if (nullable.count(p.head)) continue;
      bool all = std::all_of(p.body.begin(), p.body.end(), [&](const std::string& s) { return nullable.count(s) > 0; });
      if (all) {
        nullable.insert(p.head);
        changed = true;
      }
    }
  }
  out.accepts_empty = nullable.count(g.start) > 0;
  std::set<std::pair<std::string, std::vector<std::string>>> rules;
  for (const auto& p : bin) {
    if (p.body.empty()) continue;
    if (p.body.size() == 1) {
      rules.insert({p.head, p.body});
      continue;
    }
    rules.insert({p.head, p.body});
    if (nullable.count(p.body[0])) rules.insert({p.head, {p.body[1]}});
    if (nullable.count(p.body[1])) rules.insert({p.head, {p.body[0]}});
  }

  // UNIT
  std::map<std::string, std::set<std::string>> unit_reach;
  for (const auto& a : g.nonterminals) unit_reach[a] = {a};
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [h, body] : rules) {
      if (body.size() != 1 || is_terminal(body[0])) continue;
      for (auto& [a, reach] : unit_reach) {
        if (reach.count(h) && !reach.count(body[0])) {
          reach.insert(body[0]);
          changed = true;
        }
      }
    }
  }
  std::set<std::pair<std::string, std::vector<std::string>>> final_rules;
  for (const auto& [a, reach] : unit_reach)
    for (const auto& [h, body] : rules) {
      if (!reach.count(h)) continue;
      if (body.size() == 1 && !is_terminal(body[0])) continue;
      final_rules.insert({a, body});
    }

  out.grammar.nonterminals = g.nonterminals;
  out.grammar.start = g.start;
  // Keep the caller's rule order where possible: original heads first.
  for (const auto& a : g.nonterminals)
    for (const auto& [h, body] : final_rules)
      if (h == a) out.grammar.productions.push_back({h, body});
  return out;
}

int cnf_membership(const CnfGrammar& cnf, const Bits& x) {
  if (x.empty()) return cnf.accepts_empty ? 1 : 0;
  const Cfg& g = cnf.grammar;
  std::map<std::string, int> id;
  for (std::size_t i = 0; i < g.nonterminals.size(); ++i) id[g.nonterminals[i]] = static_cast<int>(i);
  const int V = static_cast<int>(g.nonterminals.size());
  const int n = static_cast<int>(x.size());
  std::vector<std::array<int, 3>> binary;
  std::vector<std::pair<int, char>> unary;
  for (const auto& p : g.productions) {
    if (p.body.size() == 1) {
      unary.push_back({id[p.head], p.body[0][0]});
    } else {
      binary.push_back({id[p.head], id[p.body[0]], id[p.body[1]]});
    }
  }
  // table[(i * n + len - 1) * V + A]: A derives x[i, i + len)
  std::vector<char> table(static_cast<std::size_t>(n) * n * V, 0);
  auto at = [&](int i, int len, int a) -> char& { return table[(static_cast<std::size_t>(i) * n + len - 1) * V + a]; };
  for (int i = 0; i < n; ++i)
    for (auto [a, t] : unary)
      if (x[i] == t) at(i, 1, a) = 1;
  for (int len = 2; len <= n; ++len)
    for (int i = 0; i + len <= n; ++i)
      for (int split = 1; split < len; ++split)
        for (const auto& r : binary)
          if (!at(i, len, r[0]) && at(i, split, r[1]) && at(i + split, len - split, r[2])) at(i, len, r[0]) = 1;
  return at(0, n, id.at(g.start));
}

int cfg_membership(const Cfg& g, const Bits& x) {
  if (!cfg_valid(g)) return 0;
  return cnf_membership(cfg_to_cnf(g), x);
}

int complexity_cfg(const Cfg& g) {
  int total = 0;
  for (const auto& p : g.productions) total += 1 + static_cast<int>(p.body.size());
  return total + static_cast<int>(g.nonterminals.size()) + 2;
}

}  // namespace lgl
