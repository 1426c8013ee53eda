#pragma once

#include <string>

#include "learner.hpp"

namespace lgl {

// Distinct languages with minimal DFA size <= c; complexity = state count.
HypothesisClass dfa_class(int c);
// All (a, b, d) with magnitudes <= T; complexity = max(|a|, |b|, |d|).
HypothesisClass crasp1_class(int T);
// Canonical programs with 1..K heads and T(f) <= T, ordered by T(f)^K(f).
HypothesisClass crasp2_class(int T, int K);

}  // namespace lgl
