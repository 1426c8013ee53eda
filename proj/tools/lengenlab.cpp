// Command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "lengenlab/lengenlab.h"

namespace {

struct Failure {
  int code;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    throw Failure{1};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check(lgl_status st) {
  if (st == LGL_OK) return;
  std::cerr << "error: " << lgl_last_error() << "\n";
  throw Failure{st == LGL_ERR_INTERNAL ? 70 : (st == LGL_ERR_UNDECIDABLE ? 4 : (st == LGL_ERR_CONFIG ? 2 : 1))};
}

using ModelPtr = std::unique_ptr<lgl_model, decltype(&lgl_model_free)>;
using DataPtr = std::unique_ptr<lgl_dataset, decltype(&lgl_dataset_free)>;

ModelPtr load_model(const std::string& path, const std::string& kind) {
  lgl_model* m = nullptr;
  check(lgl_model_from_json(slurp(path).c_str(), kind.empty() ? nullptr : kind.c_str(), &m));
  return {m, lgl_model_free};
}

DataPtr load_data(const std::string& path) {
  lgl_dataset* d = nullptr;
  check(lgl_dataset_from_csv(slurp(path).c_str(), &d));
  return {d, lgl_dataset_free};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  lgl_string_free(s);
  return out;
}

void emit(const std::string& text, const std::string& out) {
  std::string body = text;
  if (body.empty() || body.back() != '\n') body += '\n';
  if (out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "error: cannot write " << out << "\n";
    throw Failure{1};
  }
  f << body;
}

std::string model_json(const ModelPtr& m) {
  char* s = nullptr;
  check(lgl_model_to_json(m.get(), &s));
  return take(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Length-generalization lab: learners, length complexities and distinguishers"};
  app.require_subcommand(1);
  app.fallthrough();
  int jobs = 1;
  unsigned long long seed = 0;
  std::string out;
  bool force = false;
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for sampled sweeps");
  app.add_option("--out", out, "write the result here instead of stdout");
  app.add_flag("--force", force, "lift the desk-scale caps");

  std::string model_path, kind, input;
  auto* eval = app.add_subcommand("eval", "evaluate a model on one string");
  eval->add_option("--model", model_path)->required();
  eval->add_option("--input", input, "bits, or EPS for the empty string")->required();
  eval->add_option("--class", kind, "dfa | cfg | crasp1 | crasp2 (inferred when omitted)");

  std::string data_path;
  int cap = 0, heads = 1;
  auto* mci = app.add_subcommand("learn-mci", "minimum-complexity interpolator");
  mci->add_option("--class", kind)->required();
  mci->add_option("--data", data_path)->required();
  mci->add_option("--cap", cap, "complexity cap (states, or T)")->required();
  mci->add_option("--K", heads, "heads, crasp2 only");

  int n = 0, depth = -1;
  auto* ldfa = app.add_subcommand("learn-dfa", "identify a DFA from D_{2n-2}");
  ldfa->add_option("--data", data_path)->required();
  ldfa->add_option("--n", n, "state-count promise")->required();
  ldfa->add_option("--depth", depth, "suffix depth (default n-2)");

  int param = 0;
  bool per_hyp = false;
  auto* lc = app.add_subcommand("length-complexity", "N(F_c) per complexity level");
  lc->add_option("--class", kind)->required();
  lc->add_option("--T,--c", param, "largest level (T for C-RASP, c for DFAs)")->required();
  lc->add_option("--K", heads, "heads, crasp2 only");
  lc->add_flag("--per-hypothesis", per_hyp, "MCI convergence length per ground truth instead");

  std::string f_path, g_path, mode = "pipeline";
  long long max_n = 24;
  auto* dist = app.add_subcommand("distinguish", "distinguishing string for two models");
  dist->add_option("--class", kind);
  dist->add_option("--f", f_path)->required();
  dist->add_option("--g", g_path)->required();
  dist->add_option("--mode", mode)->check(CLI::IsMember({"pipeline", "brute"}));
  dist->add_option("--max-n", max_n, "brute-force horizon");

  int lo = 1, hi = 1;
  std::size_t sample = 0;
  std::string summary;
  auto* vb = app.add_subcommand("verify-bounds", "sweep levels and compare with the proven bounds");
  vb->add_option("--class", kind)->required();
  vb->add_option("--min", lo);
  vb->add_option("--max", hi);
  vb->add_option("--K", heads, "heads, crasp2 only");
  vb->add_option("--sample", sample, "hypotheses sampled per level (0 = all)");
  vb->add_option("--summary", summary, "also write the JSON summary here");

  int k = 1;
  bool list = false;
  auto* sch = app.add_subcommand("schema", "basis schemas for k lines");
  sch->add_option("--k", k)->required();
  sch->add_flag("--list", list);

  std::string slopes, schema_path, lengths_path;
  long long length = 0;
  auto* disc = app.add_subcommand("discretize", "lattice path realizing segment lengths");
  disc->add_option("--slopes", slopes, "comma-separated num/den, e.g. 2/3,1/3")->required();
  disc->add_option("--schema", schema_path)->required();
  disc->add_option("--lengths", lengths_path)->required();
  disc->add_option("--n", length)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) {
      auto m = load_model(model_path, kind);
      int v = 0;
      check(lgl_model_eval(m.get(), input.c_str(), &v));
      emit(std::to_string(v), out);
    } else if (*mci) {
      auto d = load_data(data_path);
      lgl_model* m = nullptr;
      check(lgl_learn_mci(d.get(), kind.c_str(), cap, heads, &m));
      emit(model_json(ModelPtr(m, lgl_model_free)), out);
    } else if (*ldfa) {
      auto d = load_data(data_path);
      lgl_model* m = nullptr;
      check(lgl_learn_dfa(d.get(), n, depth, &m));
      emit(model_json(ModelPtr(m, lgl_model_free)), out);
    } else if (*lc) {
      char* s = nullptr;
      check(lgl_length_complexity(kind.c_str(), param, heads, jobs, per_hyp ? 1 : 0, force ? 1 : 0, &s));
      emit(take(s), out);
    } else if (*dist) {
      auto f = load_model(f_path, kind);
      auto g = load_model(g_path, kind);
      char* s = nullptr;
      check(lgl_distinguish(f.get(), g.get(), mode.c_str(), max_n, &s));
      emit(take(s), out);
    } else if (*vb) {
      lgl_experiment cfg{kind.c_str(), lo, hi, heads, sample, jobs, seed, force ? 1 : 0};
      char *csv = nullptr, *js = nullptr;
      int ok = 0;
      check(lgl_verify_bounds(&cfg, &csv, &js, &ok));
      emit(take(csv), out);
      std::string sj = take(js);
      if (!summary.empty()) emit(sj, summary);
      if (!ok) {
        std::cerr << "bound violated\n";
        return 3;
      }
    } else if (*sch) {
      char* s = nullptr;
      check(lgl_schema_list(k, &s));
      std::string text = take(s);
      if (!list) {
        // Count only.
        int count = 0;
        for (char ch : text) count += ch == '{';
        text = std::to_string(count);
      }
      emit(text, out);
    } else if (*disc) {
      char* s = nullptr;
      check(lgl_discretize(slopes.c_str(), slurp(schema_path).c_str(), slurp(lengths_path).c_str(), length, &s));
      emit(take(s), out);
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
