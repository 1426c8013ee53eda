#include "io.hpp"

#include <json.hpp>

namespace lgl {

using nlohmann::json;

std::string model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::Dfa: return "dfa";
    case ModelKind::Cfg: return "cfg";
    case ModelKind::Crasp1: return "crasp1";
    case ModelKind::Crasp2: return "crasp2";
  }
  return "?";
}

ModelKind model_kind_parse(const std::string& name) {
  if (name == "dfa") return ModelKind::Dfa;
  if (name == "cfg") return ModelKind::Cfg;
  if (name == "crasp1") return ModelKind::Crasp1;
  if (name == "crasp2") return ModelKind::Crasp2;
  throw Error("unknown class '" + name + "' (expected dfa, cfg, crasp1 or crasp2)");
}

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(std::string("field '") + key + "' has the wrong type");
  }
}

Dfa dfa_from(const json& j) {
  Dfa d;
  d.n = field<int>(j, "n");
  d.start = field<int>(j, "start");
  d.delta.clear();
  for (const auto& row : field<std::vector<std::vector<int>>>(j, "delta")) {
    if (row.size() != 2) return dfa_all_reject();
    d.delta.push_back({row[0], row[1]});
  }
  d.accept.assign(std::max(d.n, 0), false);
  for (int q : field<std::vector<int>>(j, "accept")) {
    if (q < 0 || q >= d.n) return dfa_all_reject();
    d.accept[q] = true;
  }
  return dfa_sanitize(d);
}

Cfg cfg_from(const json& j) {
  Cfg g;
  g.nonterminals = field<std::vector<std::string>>(j, "nonterminals");
  g.start = field<std::string>(j, "start");
  for (const auto& p : field<std::vector<std::vector<std::string>>>(j, "productions")) {
    if (p.size() != 2) throw Error("a production is a [head, body] pair");
    g.productions.push_back({p[0], cfg_parse_body(g, p[1])});
  }
  g.linear = cfg_is_linear(g);
  std::string why;
  if (!cfg_valid(g, &why)) throw Error("invalid grammar: " + why);
  return g;
}

}  // namespace

Model model_from_json(const std::string& text, std::optional<ModelKind> hint) {
  json j = parse(text);
  if (!j.is_object()) throw Error("a model is a JSON object");
  Model m;
  if (hint) {
    m.kind = *hint;
  } else if (j.contains("class")) {
    m.kind = model_kind_parse(field<std::string>(j, "class"));
  } else if (j.contains("delta")) {
    m.kind = ModelKind::Dfa;
  } else if (j.contains("productions")) {
    m.kind = ModelKind::Cfg;
  } else if (j.contains("heads")) {
    m.kind = ModelKind::Crasp2;
  } else if (j.contains("a")) {
    m.kind = ModelKind::Crasp1;
  } else {
    throw Error("cannot tell the model class from its fields");
  }
  switch (m.kind) {
    case ModelKind::Dfa: m.dfa = dfa_from(j); break;
    case ModelKind::Cfg: m.cfg = cfg_from(j); break;
    case ModelKind::Crasp1:
      m.crasp1 = {field<int>(j, "a"), field<int>(j, "b"), field<int>(j, "d")};
      if (m.crasp1.a <= 0) throw Error("C-RASP^1 needs a > 0");
      break;
    case ModelKind::Crasp2:
      m.crasp2.heads.clear();
      for (const auto& h : field<json>(j, "heads"))
        m.crasp2.heads.push_back({field<int>(h, "a"), field<int>(h, "b"), field<int>(h, "lambda")});
      m.crasp2.z = field<int>(j, "z");
      if (m.crasp2.heads.empty()) throw Error("C-RASP^2 needs at least one head");
      for (const auto& h : m.crasp2.heads)
        if (h.a <= 0) throw Error("C-RASP^2 heads need a > 0");
      break;
  }
  return m;
}

std::string model_to_json(const Model& m) {
  json j;
  switch (m.kind) {
    case ModelKind::Dfa: {
      j["n"] = m.dfa.n;
      json delta = json::array();
      for (const auto& row : m.dfa.delta) delta.push_back({row[0], row[1]});
      j["delta"] = delta;
      j["start"] = m.dfa.start;
      json acc = json::array();
      for (int q = 0; q < m.dfa.n; ++q)
        if (m.dfa.accept[q]) acc.push_back(q);
      j["accept"] = acc;
      break;
    }
    case ModelKind::Cfg: {
      j["nonterminals"] = m.cfg.nonterminals;
      json prods = json::array();
      for (const auto& p : m.cfg.productions) {
        std::string body;
        for (const auto& s : p.body) body += s;
        prods.push_back({p.head, body});
      }
      j["productions"] = prods;
      j["start"] = m.cfg.start;
      break;
    }
    case ModelKind::Crasp1:
      j["a"] = m.crasp1.a;
      j["b"] = m.crasp1.b;
      j["d"] = m.crasp1.d;
      break;
    case ModelKind::Crasp2: {
      json heads = json::array();
      for (const auto& h : m.crasp2.heads) heads.push_back({{"a", h.a}, {"b", h.b}, {"lambda", h.lambda}});
      j["heads"] = heads;
      j["z"] = m.crasp2.z;
      break;
    }
  }
  return j.dump();
}

Model make_model(const Dfa& d) {
  Model m;
  m.kind = ModelKind::Dfa;
  m.dfa = d;
  return m;
}

Model make_model(const Crasp1& p) {
  Model m;
  m.kind = ModelKind::Crasp1;
  m.crasp1 = p;
  return m;
}

Model make_model(const Crasp2& p) {
  Model m;
  m.kind = ModelKind::Crasp2;
  m.crasp2 = p;
  return m;
}

int model_eval(const Model& m, const Bits& x) {
  switch (m.kind) {
    case ModelKind::Dfa: return dfa_eval(m.dfa, x);
    case ModelKind::Cfg: return cfg_membership(m.cfg, x);
    case ModelKind::Crasp1: return crasp1_eval(m.crasp1, x);
    case ModelKind::Crasp2: return crasp2_eval(m.crasp2, x);
  }
  return 0;
}

long long model_complexity(const Model& m) {
  switch (m.kind) {
    case ModelKind::Dfa: return dfa_minimize(m.dfa).n;
    case ModelKind::Cfg: return complexity_cfg(m.cfg);
    case ModelKind::Crasp1: return crasp1_complexity(m.crasp1);
    case ModelKind::Crasp2: return crasp2_complexity(m.crasp2);
  }
  return 0;
}

std::optional<MinDistinguisher> brute_force_min_distinguisher(const Model& f, const Model& g, long long maxN) {
  if (maxN < 0) return std::nullopt;
  if (f.kind == g.kind) {
    switch (f.kind) {
      case ModelKind::Dfa: {
        auto cmp = dfa_equal(f.dfa, g.dfa);
        if (cmp.equal || static_cast<long long>(cmp.counterexample->size()) > maxN) return std::nullopt;
        return MinDistinguisher{static_cast<long long>(cmp.counterexample->size()), *cmp.counterexample};
      }
      case ModelKind::Crasp1: return crasp1_min_distinguisher(f.crasp1, g.crasp1, maxN);
      case ModelKind::Crasp2: return crasp2_min_distinguisher(f.crasp2, g.crasp2, maxN);
      case ModelKind::Cfg: break;
    }
  }
  if (maxN > 24) throw Error("string scan is limited to maxN <= 24");
  return scan_min_distinguisher([&](const Bits& x) { return model_eval(f, x); },
                                [&](const Bits& x) { return model_eval(g, x); }, static_cast<int>(maxN));
}

std::string schema_spec_to_json(const BasisSchemaSpec& spec) {
  json curves = json::array();
  for (int c = 0; c < spec.curves(); ++c) curves.push_back({spec.pairs[c].first, spec.pairs[c].second});
  return json{{"curves", curves}}.dump();
}

BasisSchemaSpec schema_spec_from_json(const std::string& text) {
  json j = parse(text);
  auto curves = field<std::vector<std::vector<int>>>(j, "curves");
  BasisSchemaSpec spec;
  for (const auto& c : curves) {
    if (c.size() != 2) throw Error("a curve is a [from, to] pair of line indices");
    spec.pairs.emplace_back(c[0], c[1]);
  }
  int end = spec.pairs.empty() ? 1 : spec.pairs.back().second;
  spec.pairs.emplace_back(end, end);
  return spec;
}

std::vector<Rational> lengths_from_json(const std::string& text, int M) {
  json j = parse(text);
  if (!j.is_array()) throw Error("lengths are a JSON list of \"num/den\" strings");
  std::vector<Rational> out;
  for (const auto& e : j) {
    if (e.is_string()) {
      out.push_back(rational_parse(e.get<std::string>()));
    } else if (e.is_number_integer()) {
      out.emplace_back(e.get<long>());
    } else {
      throw Error("lengths are a JSON list of \"num/den\" strings");
    }
  }
  if (static_cast<int>(out.size()) == M - 1) out.insert(out.begin(), Rational(0));
  if (static_cast<int>(out.size()) != M)
    throw Error("expected " + std::to_string(M) + " lengths (or " + std::to_string(M - 1) + " without the lead-in)");
  for (const auto& q : out)
    if (q < 0) throw Error("segment lengths must be non-negative");
  return out;
}

std::string lengths_to_json(const std::vector<Rational>& lengths) {
  json out = json::array();
  for (const auto& q : lengths) out.push_back(rational_str(q));
  return out.dump();
}

std::string certificate_to_json(const DistinguisherCertificate& cert) {
  json segs = json::array();
  for (const auto& s : cert.schema.segments) segs.push_back({{"idx", s.idx}, {"sec", s.sec}, {"curve", s.curve}});
  json j;
  j["schema"] = json::parse(schema_spec_to_json(cert.spec));
  j["segments"] = segs;
  j["lengths"] = json::parse(lengths_to_json(cert.lengths));
  j["gamma"] = rational_str(cert.gamma);
  j["n0"] = cert.n0.get_str();
  j["n"] = cert.n;
  j["witness"] = cert.witness;
  j["side"] = cert.side == 1 ? "I" : "II";
  return j.dump(2);
}

}  // namespace lgl
