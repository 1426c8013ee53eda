#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace lgl {

struct Dfa {
  int n = 1;
  std::vector<std::array<int, 2>> delta{{0, 0}};
  int start = 0;
  std::vector<bool> accept{false};

  bool operator==(const Dfa&) const = default;
};

bool dfa_valid(const Dfa& d);
// Invalid encodings denote the empty language.
Dfa dfa_sanitize(const Dfa& d);
Dfa dfa_all_reject();
Dfa dfa_all_accept();

int dfa_eval(const Dfa& d, const Bits& x);

struct DfaComparison {
  bool equal = true;
  std::optional<Bits> counterexample;  // shortest, then lexicographically least
};
DfaComparison dfa_equal(const Dfa& a, const Dfa& b);

Dfa dfa_minimize(const Dfa& d);
std::string dfa_key(const Dfa& canonical);

// Distinct languages with minimal DFA size <= c, one canonical minimal DFA
// each, ordered by size and then by first appearance in the raw enumeration
// (transition table, start, accept mask). Supports c <= 4.
const std::vector<Dfa>& dfa_enumerate(int c);
// Number of languages whose minimal DFA has exactly n states (n <= 4).
std::size_t dfa_language_count(int n);

struct Production {
  std::string head;
  std::vector<std::string> body;  // symbols: "0", "1" or nonterminal names
};

struct Cfg {
  std::vector<std::string> nonterminals;
  std::vector<Production> productions;
  std::string start;
  bool linear = false;
};

bool cfg_valid(const Cfg& g, std::string* why = nullptr);
bool cfg_is_linear(const Cfg& g);
std::vector<std::string> cfg_parse_body(const Cfg& g, const std::string& body);

struct CnfGrammar {
  Cfg grammar;  // every production is A -> B C or A -> t
  bool accepts_empty = false;
};
CnfGrammar cfg_to_cnf(const Cfg& g);
bool cfg_is_cnf(const Cfg& g);

int cfg_membership(const Cfg& g, const Bits& x);
int cnf_membership(const CnfGrammar& cnf, const Bits& x);

// Head plus body symbols per rule, plus |N|, plus |T| = 2.
int complexity_cfg(const Cfg& g);

}  // namespace lgl
