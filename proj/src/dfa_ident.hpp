#pragma once

#include "core.hpp"
#include "encodings.hpp"

namespace lgl {

struct InconsistentData : Error {
  using Error::Error;
};

// Identifies a DFA with at most n states from D_{2n-2} by grouping prefixes u,
// |u| <= n-1, on their accepted suffixes of length <= depth (default n-2).
// Needs data.horizon() >= n + depth.
Dfa learn_dfa(const LabeledDataset& data, int n, int depth = -1);

}  // namespace lgl
