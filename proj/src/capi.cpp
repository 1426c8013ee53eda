#include "lengenlab/lengenlab.h"

#include <cstdlib>
#include <cstring>
#include <set>
#include <sstream>

#include <json.hpp>

#include "classes.hpp"
#include "dfa_ident.hpp"
#include "distinguish.hpp"
#include "experiments.hpp"
#include "io.hpp"

struct lgl_model {
  lgl::Model m;
};

struct lgl_dataset {
  lgl::LabeledDataset d;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
lgl_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return LGL_OK;
  } catch (const lgl::ConfigError& e) {
    last_error = e.what();
    return LGL_ERR_CONFIG;
  } catch (const lgl::UndecidableClass& e) {
    last_error = e.what();
    return LGL_ERR_UNDECIDABLE;
  } catch (const lgl::NoInterpolant& e) {
    last_error = e.what();
    return LGL_ERR_NO_INTERPOLANT;
  } catch (const lgl::InconsistentData& e) {
    last_error = e.what();
    return LGL_ERR_INCONSISTENT;
  } catch (const lgl::BudgetExceeded& e) {
    last_error = e.what();
    return LGL_ERR_BUDGET;
  } catch (const lgl::PipelineInvariantViolated& e) {
    last_error = e.what();
    return LGL_ERR_PIPELINE;
  } catch (const lgl::Error& e) {
    last_error = e.what();
    return LGL_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return LGL_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw lgl::Error(std::string(what) + " must not be NULL");
}

lgl::Bits bits_arg(const char* s) {
  need(s, "bits");
  std::string t(s);
  return t.empty() ? lgl::Bits{} : lgl::bits_from_token(t);
}

lgl::HypothesisClass class_for(const std::string& kind, int param, int heads, bool force) {
  lgl::ExperimentConfig cfg;
  cfg.class_id = kind;
  cfg.lo = 1;
  cfg.hi = param;
  cfg.K = std::max(heads, 1);
  cfg.force = force;
  lgl::check_config(cfg);
  return lgl::make_class(cfg, param);
}

}  // namespace

extern "C" {

const char* lgl_last_error(void) { return last_error.c_str(); }

const char* lgl_version(void) { return "0.1.0"; }

void lgl_string_free(char* s) { std::free(s); }

lgl_status lgl_model_from_json(const char* json, const char* kind, lgl_model** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    std::optional<lgl::ModelKind> hint;
    if (kind) hint = lgl::model_kind_parse(kind);
    *out = new lgl_model{lgl::model_from_json(json, hint)};
  });
}

void lgl_model_free(lgl_model* m) { delete m; }

lgl_status lgl_model_to_json(const lgl_model* m, char** out) {
  return guard([&] {
    need(m, "model");
    need(out, "out");
    *out = dup(lgl::model_to_json(m->m));
  });
}

lgl_status lgl_model_kind(const lgl_model* m, char** out) {
  return guard([&] {
    need(m, "model");
    need(out, "out");
    *out = dup(lgl::model_kind_name(m->m.kind));
  });
}

lgl_status lgl_model_eval(const lgl_model* m, const char* bits, int* out) {
  return guard([&] {
    need(m, "model");
    need(out, "out");
    *out = lgl::model_eval(m->m, bits_arg(bits));
  });
}

lgl_status lgl_model_complexity(const lgl_model* m, long long* out) {
  return guard([&] {
    need(m, "model");
    need(out, "out");
    *out = lgl::model_complexity(m->m);
  });
}

lgl_status lgl_dataset_build(const lgl_model* m, int horizon, lgl_dataset** out) {
  return guard([&] {
    need(m, "model");
    need(out, "out");
    if (horizon < 0 || horizon > 24) throw lgl::Error("horizon must lie in [0, 24]");
    const lgl::Model& model = m->m;
    *out = new lgl_dataset{lgl::build_dataset([&](const lgl::Bits& x) { return lgl::model_eval(model, x); },
                                              horizon)};
  });
}

lgl_status lgl_dataset_from_csv(const char* csv, lgl_dataset** out) {
  return guard([&] {
    need(csv, "csv");
    need(out, "out");
    *out = new lgl_dataset{lgl::dataset_from_csv(csv)};
  });
}

lgl_status lgl_dataset_to_csv(const lgl_dataset* d, char** out) {
  return guard([&] {
    need(d, "dataset");
    need(out, "out");
    *out = dup(lgl::dataset_to_csv(d->d));
  });
}

lgl_status lgl_dataset_horizon(const lgl_dataset* d, int* out) {
  return guard([&] {
    need(d, "dataset");
    need(out, "out");
    *out = d->d.horizon();
  });
}

void lgl_dataset_free(lgl_dataset* d) { delete d; }

lgl_status lgl_learn_mci(const lgl_dataset* d, const char* kind, int cap, int heads, lgl_model** out) {
  return guard([&] {
    need(d, "dataset");
    need(kind, "kind");
    need(out, "out");
    if (cap < 1) throw lgl::Error("cap must be positive");
    std::string k(kind);
    if (k == "cfg") throw lgl::UndecidableClass("the cfg class has no minimum-complexity learner");
    auto cls = class_for(k, cap, heads, false);
    long long c_cap = cap;
    if (k == "crasp2")
      for (int i = 1; i < std::max(heads, 1); ++i) c_cap *= cap;
    std::size_t h = lgl::mci_learn(d->d, cls, c_cap);
    *out = new lgl_model{lgl::model_from_json(cls.describe(h), lgl::model_kind_parse(k))};
  });
}

lgl_status lgl_learn_dfa(const lgl_dataset* d, int n, int depth, lgl_model** out) {
  return guard([&] {
    need(d, "dataset");
    need(out, "out");
    *out = new lgl_model{lgl::make_model(lgl::learn_dfa(d->d, n, depth))};
  });
}

lgl_status lgl_length_complexity(const char* kind, int param, int heads, int jobs, int per_hypothesis, int force,
                                 char** out) {
  return guard([&] {
    need(kind, "kind");
    need(out, "out");
    std::string k(kind);
    auto cls = class_for(k, param, heads, force != 0);
    std::set<long long> levels;
    if (k == "crasp2") {
      levels.insert(cls.complexities.begin(), cls.complexities.end());
    } else {
      for (int c = 1; c <= param; ++c) levels.insert(c);
    }
    if (per_hypothesis) {
      long long top = levels.empty() ? 0 : *levels.rbegin();
      *out = dup(lgl::curve_csv(lgl::run_learning_curve(cls, top, std::max(jobs, 1)), cls));
      return;
    }
    long long top = levels.empty() ? 0 : *levels.rbegin();
    lgl::DistanceTable table(cls, cls.prefix(top), std::max(jobs, 1));
    std::vector<lgl::LengthComplexityReport> reports;
    for (long long c : levels) reports.push_back(lgl::compute_Nc(c, cls, 1, &table));
    *out = dup(lgl::report_csv(reports, &cls));
  });
}

lgl_status lgl_distinguish(const lgl_model* f, const lgl_model* g, const char* mode, long long max_n, char** out) {
  return guard([&] {
    need(f, "f");
    need(g, "g");
    need(mode, "mode");
    need(out, "out");
    std::string md(mode);
    const auto &a = f->m, &b = g->m;
    if (md == "pipeline" && (a.kind == lgl::ModelKind::Cfg || b.kind == lgl::ModelKind::Cfg))
      throw lgl::UndecidableClass("no distinguisher construction exists for grammars: equivalence is undecidable");
    nlohmann::json j;
    if (md == "brute") {
      auto r = lgl::brute_force_min_distinguisher(a, b, max_n);
      // Nothing found only means nothing up to max_n.
      j["found"] = r.has_value();
      j["max_n"] = max_n;
      if (r) {
        j["n"] = r->n;
        j["witness"] = r->witness;
      }
      *out = dup(j.dump(2));
      return;
    }
    if (md != "pipeline") throw lgl::Error("mode must be 'pipeline' or 'brute'");
    if (a.kind != b.kind) throw lgl::Error("pipeline mode needs two models of the same class");
    switch (a.kind) {
      case lgl::ModelKind::Crasp2: {
        auto cert = lgl::crasp2_construct_distinguisher(a.crasp2, b.crasp2);
        if (!cert) {
          *out = dup(nlohmann::json{{"equal", true}}.dump(2));
          return;
        }
        auto c = nlohmann::json::parse(lgl::certificate_to_json(*cert));
        c["equal"] = false;
        *out = dup(c.dump(2));
        return;
      }
      case lgl::ModelKind::Crasp1: {
        auto x = lgl::crasp1_distinguisher(a.crasp1, b.crasp1);
        j["equal"] = !x.has_value();
        if (x) {
          j["n"] = x->size();
          j["witness"] = *x;
        }
        break;
      }
      case lgl::ModelKind::Dfa: {
        auto cmp = lgl::dfa_equal(a.dfa, b.dfa);
        j["equal"] = cmp.equal;
        if (!cmp.equal) {
          j["n"] = cmp.counterexample->size();
          j["witness"] = *cmp.counterexample;
        }
        break;
      }
      case lgl::ModelKind::Cfg: break;
    }
    *out = dup(j.dump(2));
  });
}

lgl_status lgl_verify_bounds(const lgl_experiment* cfg, char** csv, char** summary_json, int* all_pass) {
  return guard([&] {
    need(cfg, "config");
    need(cfg->kind, "kind");
    lgl::ExperimentConfig ec;
    ec.class_id = cfg->kind;
    ec.lo = cfg->lo;
    ec.hi = cfg->hi;
    ec.K = cfg->heads;
    ec.sample = cfg->sample;
    ec.jobs = cfg->jobs;
    ec.seed = cfg->seed;
    ec.force = cfg->force != 0;
    auto report = lgl::verify_bounds(ec);
    if (csv) *csv = dup(report.csv());
    if (summary_json) *summary_json = dup(report.summary_json());
    if (all_pass) *all_pass = report.all_pass() ? 1 : 0;
  });
}

lgl_status lgl_schema_list(int k, char** out) {
  return guard([&] {
    need(out, "out");
    if (k < 1 || k > 16) throw lgl::Error("k must lie in [1, 16]");
    nlohmann::json list = nlohmann::json::array();
    for (const auto& spec : lgl::basis_schemas(k)) {
      auto item = nlohmann::json::parse(lgl::schema_spec_to_json(spec));
      item["M"] = lgl::schema_materialize(spec, k).M();
      list.push_back(item);
    }
    *out = dup(list.dump());
  });
}

lgl_status lgl_discretize(const char* slopes, const char* schema_json, const char* lengths_json, long long n,
                          char** out) {
  return guard([&] {
    need(slopes, "slopes");
    need(schema_json, "schema");
    need(lengths_json, "lengths");
    need(out, "out");
    std::vector<lgl::Rational> s;
    std::stringstream in(slopes);
    std::string tok;
    while (std::getline(in, tok, ','))
      if (!tok.empty()) s.push_back(lgl::rational_parse(tok));
    auto cfg = lgl::make_configuration(s);
    auto spec = lgl::schema_spec_from_json(schema_json);
    auto schema = lgl::schema_materialize(spec, cfg.k());
    auto lengths = lgl::lengths_from_json(lengths_json, schema.M());
    *out = dup(lgl::discretize(schema, lengths, cfg, n));
  });
}

}  // extern "C"
