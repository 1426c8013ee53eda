#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "crasp.hpp"
#include "distinguish.hpp"
#include "encodings.hpp"
#include "geometry.hpp"

namespace lgl {

enum class ModelKind { Dfa, Cfg, Crasp1, Crasp2 };

std::string model_kind_name(ModelKind k);
ModelKind model_kind_parse(const std::string& name);  // dfa | cfg | crasp1 | crasp2

struct Model {
  ModelKind kind = ModelKind::Dfa;
  Dfa dfa;
  Cfg cfg;
  Crasp1 crasp1;
  Crasp2 crasp2;
};

// The kind is taken from `hint`, else from a "class" field, else from the
// keys present. Invalid DFA encodings load as the empty language.
Model model_from_json(const std::string& text, std::optional<ModelKind> hint = std::nullopt);
std::string model_to_json(const Model& m);
Model make_model(const Dfa& d);
Model make_model(const Crasp1& p);
Model make_model(const Crasp2& p);

int model_eval(const Model& m, const Bits& x);
long long model_complexity(const Model& m);

// Exact per-class oracles; mixed kinds and CFGs fall back to a string scan.
std::optional<MinDistinguisher> brute_force_min_distinguisher(const Model& f, const Model& g, long long maxN);

std::string schema_spec_to_json(const BasisSchemaSpec& spec);
BasisSchemaSpec schema_spec_from_json(const std::string& text);
// Accepts one entry per schema segment, or one per real segment (the lead-in
// is then taken as 0).
std::vector<Rational> lengths_from_json(const std::string& text, int M);
std::string lengths_to_json(const std::vector<Rational>& lengths);

std::string certificate_to_json(const DistinguisherCertificate& cert);

}  // namespace lgl
