/* Copyright 2026 The Flowlaw Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Command-line front end over the flowlaw C API.

#include <cstdio>
#include <cstdint>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flowlaw/flowlaw.h"

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

struct Failure {
  std::string message;
};

void check(flowlaw_status s, const std::string& context) {
  if (s != FLOWLAW_OK) {
    throw Failure{context + ": " + flowlaw_status_string(s) + ": " +
                  flowlaw_last_error()};
  }
}

// Owns one C handle for the duration of a subcommand.
template <typename T, void (*Free)(T*)>
class Handle {
 public:
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr_); }
  T** out() { return &ptr_; }
  T* get() const { return ptr_; }

 private:
  T* ptr_ = nullptr;
};

using Dataset = Handle<flowlaw_dataset, flowlaw_dataset_free>;
using Model = Handle<flowlaw_model, flowlaw_model_free>;
using Law = Handle<flowlaw_law, flowlaw_law_free>;

std::string model_name(const flowlaw_model* m) {
  char buf[128];
  check(flowlaw_model_name(m, buf, sizeof buf), "model name");
  return buf;
}

struct GenDataArgs {
  std::string out;
  std::size_t test_count = 0;
  std::uint64_t seed = 0;
};

struct TrainArgs {
  std::string data;
  std::string out;
  std::string history;
  std::vector<std::size_t> hidden{15, 7};
  std::string activation = "sigmoid";
  std::uint64_t iterations = 50000;
  double learning_rate = 1e-3;
  double final_learning_rate = 0.0;
  std::uint64_t decay_start = 0;
  std::uint64_t seed = 0;
  std::uint64_t stride = 100;
};

struct EvalArgs {
  std::string model;
  std::string test;
  std::string name;
};

struct ModelIo {
  std::string model;
  std::string out;
};

struct BenchArgs {
  std::string kind = "uniaxial_tension";
  bool extended = false;
  std::string law_a = "jc";
  std::string law_b;
  std::string out;
};

int run_gen_data(const GenDataArgs& a) {
  flowlaw_jc_params p;
  flowlaw_jc_defaults(&p);
  Dataset d;
  if (a.test_count > 0) {
    check(flowlaw_dataset_test(&p, a.test_count, a.seed, d.out()), "gen-data");
  } else {
    check(flowlaw_dataset_grid(&p, d.out()), "gen-data");
  }
  check(flowlaw_dataset_save(d.get(), a.out.c_str()), "gen-data");
  std::printf("wrote %zu rows to %s\n", flowlaw_dataset_size(d.get()),
              a.out.c_str());
  return 0;
}

int run_train(const TrainArgs& a) {
  Dataset d;
  check(flowlaw_dataset_load(a.data.c_str(), d.out()), "train");
  const bool tanh = a.activation == "tanh";
  if (!tanh && a.activation != "sigmoid" && a.activation != "sig") {
    throw Failure{"train: unknown activation '" + a.activation + "'"};
  }
  Model m;
  check(flowlaw_model_create(a.hidden.data(), a.hidden.size(),
                             tanh ? FLOWLAW_TANH : FLOWLAW_SIGMOID, d.get(),
                             a.seed, m.out()),
        "train");
  const flowlaw_train_config cfg{a.iterations, a.learning_rate,
                                 a.final_learning_rate, a.decay_start, a.seed,
                                 a.stride};
  check(flowlaw_model_train(m.get(), d.get(), &cfg,
                            a.history.empty() ? nullptr : a.history.c_str()),
        "train");
  check(flowlaw_model_save(m.get(), a.out.c_str()), "train");
  std::printf("trained %s (%zu parameters) for %llu iterations -> %s\n",
              model_name(m.get()).c_str(), flowlaw_model_param_count(m.get()),
              static_cast<unsigned long long>(a.iterations), a.out.c_str());
  return 0;
}

int run_eval(const EvalArgs& a) {
  Model m;
  check(flowlaw_model_load(a.model.c_str(), m.out()), "eval");
  Dataset t;
  check(flowlaw_dataset_load(a.test.c_str(), t.out()), "eval");
  flowlaw_metrics metrics;
  check(flowlaw_model_evaluate(m.get(), t.get(), &metrics), "eval");
  const std::string name = a.name.empty() ? model_name(m.get()) : a.name;
  char row[512];
  check(flowlaw_metrics_format(&metrics, name.c_str(), row, sizeof row), "eval");
  std::fputs(row, stdout);
  return 0;
}

int run_export(const ModelIo& a) {
  Model m;
  check(flowlaw_model_load(a.model.c_str(), m.out()), "export");
  check(flowlaw_model_save(m.get(), a.out.c_str()), "export");
  std::printf("%s N=%zu -> %s\n", model_name(m.get()).c_str(),
              flowlaw_model_param_count(m.get()), a.out.c_str());
  return 0;
}

int run_emit(const ModelIo& a) {
  Model m;
  check(flowlaw_model_load(a.model.c_str(), m.out()), "emit");
  check(flowlaw_model_emit_file(m.get(), a.out.c_str()), "emit");
  std::printf("emitted subroutine for %s -> %s\n", model_name(m.get()).c_str(),
              a.out.c_str());
  return 0;
}

void make_law(const std::string& spec, Law& law, Model& holder) {
  if (spec == "jc") {
    flowlaw_jc_params p;
    flowlaw_jc_defaults(&p);
    check(flowlaw_law_jc(&p, law.out()), "bench-path");
    return;
  }
  check(flowlaw_model_load(spec.c_str(), holder.out()), "bench-path");
  check(flowlaw_law_model(holder.get(), law.out()), "bench-path");
}

int run_bench(const BenchArgs& a) {
  flowlaw_path_kind kind;
  if (a.kind == "uniaxial_tension") {
    kind = a.extended ? FLOWLAW_PATH_TENSION_EXTENDED : FLOWLAW_PATH_TENSION;
  } else if (a.kind == "uniaxial_compression") {
    kind = FLOWLAW_PATH_COMPRESSION;
  } else {
    throw Failure{"bench-path: unknown kind '" + a.kind + "'"};
  }
  Model ma, mb;
  Law la, lb;
  make_law(a.law_a, la, ma);
  make_law(a.law_b.empty() ? a.law_a : a.law_b, lb, mb);
  flowlaw_bench_summary s;
  check(flowlaw_bench_path(kind, la.get(), lb.get(),
                           a.out.empty() ? nullptr : a.out.c_str(), &s),
        "bench-path");
  std::printf("steps %llu, max relative sigma deviation %.6e at step %llu\n",
              static_cast<unsigned long long>(s.steps), s.max_relative_deviation,
              static_cast<unsigned long long>(s.max_deviation_step));
  std::printf("law a: eps_p %.6f  sigma %.4f MPa  T %.4f C\n", s.eps_p_a,
              s.sigma_a, s.T_a);
  std::printf("law b: eps_p %.6f  sigma %.4f MPa  T %.4f C\n", s.eps_p_b,
              s.sigma_b, s.T_b);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flow-stress surrogate toolkit: data, training, export, benchmarks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", flowlaw_version());

  GenDataArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "Write the training grid or a random test set");
  gen_cmd->add_option("--out", gen.out, "Output CSV")->required();
  gen_cmd->add_option("--test", gen.test_count, "Random test points instead of the grid");
  gen_cmd->add_option("--seed", gen.seed, "Test-set seed")->envname("FLOWLAW_SEED");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a network with full-batch ADAM");
  train_cmd->add_option("--data", train.data, "Training CSV")->required();
  train_cmd->add_option("--out", train.out, "Model archive to write")->required();
  train_cmd->add_option("--hidden", train.hidden, "Hidden widths, one or two")
      ->delimiter(',')
      ->expected(1, 2);
  train_cmd->add_option("--activation", train.activation, "tanh or sigmoid");
  train_cmd->add_option("--iterations", train.iterations);
  train_cmd->add_option("--lr", train.learning_rate);
  train_cmd->add_option("--lr-final", train.final_learning_rate,
                        "Decay the step size geometrically to this value");
  train_cmd->add_option("--decay-start", train.decay_start,
                        "Iteration where the decay begins");
  train_cmd->add_option("--seed", train.seed)->envname("FLOWLAW_SEED");
  train_cmd->add_option("--history", train.history, "Loss history CSV");
  train_cmd->add_option("--stride", train.stride, "History sampling stride");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score a model on a test set");
  eval_cmd->add_option("--model", eval.model)->required();
  eval_cmd->add_option("--test", eval.test)->required();
  eval_cmd->add_option("--name", eval.name, "Row label");

  ModelIo exp;
  auto* export_cmd = app.add_subcommand(
      "export", "Validate an archive and rewrite it in canonical form");
  export_cmd->add_option("--model", exp.model)->required();
  export_cmd->add_option("--out", exp.out)->required();

  ModelIo emit;
  auto* emit_cmd = app.add_subcommand("emit", "Write the hardening subroutine source");
  emit_cmd->add_option("--model", emit.model)->required();
  emit_cmd->add_option("--out", emit.out)->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench-path", "Material-point comparison of two laws");
  bench_cmd->add_option("--kind", bench.kind)
      ->check(CLI::IsMember({"uniaxial_tension", "uniaxial_compression"}));
  bench_cmd->add_flag("--extended", bench.extended, "Drive tension to eps_p ~ 2.1");
  bench_cmd->add_option("--law-a", bench.law_a, "'jc' or a model archive");
  bench_cmd->add_option("--law-b", bench.law_b, "'jc' or a model archive");
  bench_cmd->add_option("--out", bench.out, "Per-step CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*gen_cmd) return run_gen_data(gen);
    if (*train_cmd) return run_train(train);
    if (*eval_cmd) return run_eval(eval);
    if (*export_cmd) return run_export(exp);
    if (*emit_cmd) return run_emit(emit);
    if (*bench_cmd) return run_bench(bench);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return kRuntimeError;
  }
  return kUsageError;
}
