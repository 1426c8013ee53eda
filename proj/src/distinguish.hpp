#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "crasp.hpp"
#include "geometry.hpp"

namespace lgl {

struct BudgetExceeded : Error {
  BudgetExceeded(std::size_t attempted, std::size_t budget);
  std::size_t attempted;
};

struct PipelineInvariantViolated : Error {
  using Error::Error;
};

// State budget for the DP oracles, from LENGENLAB_MEM_MB (default 2048).
std::size_t dp_state_budget(std::size_t bytes_per_state);

// ord1[i] / ord2[i] is the line (1-based) carrying head i of f / g.
struct OrderMaps {
  int k = 0;
  std::vector<int> ord1, ord2;
};

Configuration crasp2_configuration(const Crasp2& f, const Crasp2& g, OrderMaps* maps = nullptr);

// Rows (ps_n, count_1, ..., count_k), sorted.
std::vector<std::vector<long long>> dp_reachable_activations(const Configuration& cfg, long long n,
                                                             std::size_t budget = 0);

struct MinDistinguisher {
  long long n = 0;
  Bits witness;
};

// Shortest, then lexicographically least, distinguishing strings up to maxN.
std::optional<MinDistinguisher> crasp1_min_distinguisher(const Crasp1& p, const Crasp1& q, long long maxN);
std::optional<MinDistinguisher> crasp2_min_distinguisher(const Crasp2& f, const Crasp2& g, long long maxN,
                                                         std::size_t budget = 0);
std::optional<MinDistinguisher> scan_min_distinguisher(const Evaluator& f, const Evaluator& g, int maxN);

// Lattice construction: a string of length <= 3T^2 labelled differently, or
// none iff the programs compute the same function.
std::optional<Bits> crasp1_distinguisher(const Crasp1& p, const Crasp1& q);

struct DistinguisherCertificate {
  BasisSchemaSpec spec;
  Schema schema;
  std::vector<Rational> lengths;  // c*, lead-in first
  Rational gamma;                 // smallest halfspace margin of c*
  BigInt n0;
  long long n = 0;
  Bits witness;
  int side = 1;  // 1: f accepts and g rejects; 2: the reverse
};

struct PipelineOptions {
  // Try every multiple of n0 below the length the margin inequality guarantees
  // before falling back to it; each candidate is verified by evaluation.
  bool scan_small_multiples = true;
};

std::optional<DistinguisherCertificate> crasp2_construct_distinguisher(const Crasp2& f, const Crasp2& g,
                                                                       const PipelineOptions& opts = {});

bool verify_distinguisher(const Evaluator& f, const Evaluator& g, const Bits& x);

}  // namespace lgl
