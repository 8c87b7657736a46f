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

#include "flowlaw/flowlaw.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flowlaw/benchmark.hpp"
#include "flowlaw/codegen.hpp"
#include "flowlaw/dataset.hpp"
#include "flowlaw/error.hpp"
#include "flowlaw/hardening_law.hpp"
#include "flowlaw/johnson_cook.hpp"
#include "flowlaw/model_archive.hpp"
#include "flowlaw/trainer.hpp"

struct flowlaw_dataset {
  flowlaw::Dataset data;
};

struct flowlaw_model {
  std::optional<flowlaw::MlpModel> model;
  flowlaw::Provenance provenance;
};

struct flowlaw_law {
  std::unique_ptr<flowlaw::HardeningLaw> law;
};

namespace {

thread_local std::string g_last_error;

struct ArgumentError : flowlaw::Error {
  using flowlaw::Error::Error;
};
struct BufferError : flowlaw::Error {
  using flowlaw::Error::Error;
};

template <typename F>
flowlaw_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return FLOWLAW_OK;
  } catch (const ArgumentError& e) {
    g_last_error = e.what();
    return FLOWLAW_ERR_ARGUMENT;
  } catch (const BufferError& e) {
    g_last_error = e.what();
    return FLOWLAW_ERR_BUFFER;
  } catch (const flowlaw::DomainError& e) {
    g_last_error = e.what();
    return FLOWLAW_ERR_DOMAIN;
  } catch (const flowlaw::StructuralError& e) {
    g_last_error = e.what();
    return FLOWLAW_ERR_STRUCTURE;
  } catch (const flowlaw::FormatError& e) {
    g_last_error = e.what();
    return FLOWLAW_ERR_FORMAT;
  } catch (const flowlaw::IoError& e) {
    g_last_error = e.what();
    return FLOWLAW_ERR_IO;
  } catch (const flowlaw::TrainingError& e) {
    g_last_error = e.what();
    return FLOWLAW_ERR_TRAINING;
  } catch (const flowlaw::IntegrationError& e) {
    g_last_error = e.what();
    return FLOWLAW_ERR_INTEGRATION;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FLOWLAW_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FLOWLAW_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return FLOWLAW_ERR_INTERNAL;
  }
}

template <typename T>
const T& need(const T* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " is null");
  return *p;
}

template <typename T>
T& need_out(T* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " is null");
  return *p;
}

const flowlaw::MlpModel& need_model(const flowlaw_model* m) {
  const flowlaw_model& h = need(m, "model");
  if (!h.model) throw ArgumentError("model handle is empty");
  return *h.model;
}

flowlaw::JohnsonCookParams to_params(const flowlaw_jc_params* p) {
  flowlaw::JohnsonCookParams out;
  if (p != nullptr) {
    out.A = p->A;
    out.B = p->B;
    out.C = p->C;
    out.n = p->n;
    out.m = p->m;
    out.eps_dot_ref = p->eps_dot_ref;
    out.T_ref = p->T_ref;
    out.T_melt = p->T_melt;
  }
  out.validate();
  return out;
}

void copy_string(const std::string& s, char* buf, std::size_t size) {
  if (buf == nullptr) throw ArgumentError("buffer is null");
  if (s.size() + 1 > size) {
    throw BufferError("buffer of " + std::to_string(size) + " bytes, need " +
                      std::to_string(s.size() + 1));
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

void fill(flowlaw_flow& out, double sigma, double d_eps, double d_rate,
          double d_T) {
  out.sigma = sigma;
  out.d_eps = d_eps;
  out.d_rate = d_rate;
  out.d_T = d_T;
}

}  // namespace

extern "C" {

const char* flowlaw_version(void) { return "0.1.0"; }

const char* flowlaw_last_error(void) { return g_last_error.c_str(); }

const char* flowlaw_status_string(flowlaw_status status) {
  switch (status) {
    case FLOWLAW_OK: return "ok";
    case FLOWLAW_ERR_ARGUMENT: return "invalid argument";
    case FLOWLAW_ERR_DOMAIN: return "domain error";
    case FLOWLAW_ERR_STRUCTURE: return "structural error";
    case FLOWLAW_ERR_FORMAT: return "format error";
    case FLOWLAW_ERR_IO: return "i/o error";
    case FLOWLAW_ERR_TRAINING: return "training error";
    case FLOWLAW_ERR_INTEGRATION: return "integration error";
    case FLOWLAW_ERR_BUFFER: return "buffer too small";
    case FLOWLAW_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void flowlaw_jc_defaults(flowlaw_jc_params* params) {
  if (params == nullptr) return;
  const flowlaw::JohnsonCookParams d = flowlaw::steel_42CrMo4();
  *params = {d.A, d.B, d.C, d.n, d.m, d.eps_dot_ref, d.T_ref, d.T_melt};
}

flowlaw_status flowlaw_jc_evaluate(const flowlaw_jc_params* params, double eps_p,
                                   double rate, double T, flowlaw_flow* out) {
  return guarded([&] {
    flowlaw_flow& o = need_out(out, "out");
    const flowlaw::JohnsonCookParams p = to_params(&need(params, "params"));
    const double sigma = flowlaw::jc_flow_stress(p, eps_p, rate, T);
    const flowlaw::FlowDerivatives d = flowlaw::jc_derivatives(p, eps_p, rate, T);
    fill(o, sigma, d.d_eps, d.d_rate, d.d_T);
  });
}

flowlaw_status flowlaw_dataset_grid(const flowlaw_jc_params* params,
                                    flowlaw_dataset** out) {
  return guarded([&] {
    flowlaw_dataset*& o = need_out(out, "out");
    auto h = std::make_unique<flowlaw_dataset>();
    h->data = flowlaw::generate_training_grid(to_params(params));
    o = h.release();
  });
}

flowlaw_status flowlaw_dataset_test(const flowlaw_jc_params* params,
                                    uint64_t count, uint64_t seed,
                                    flowlaw_dataset** out) {
  return guarded([&] {
    flowlaw_dataset*& o = need_out(out, "out");
    auto h = std::make_unique<flowlaw_dataset>();
    h->data = flowlaw::generate_test_set(to_params(params), count, seed);
    o = h.release();
  });
}

flowlaw_status flowlaw_dataset_load(const char* path, flowlaw_dataset** out) {
  return guarded([&] {
    flowlaw_dataset*& o = need_out(out, "out");
    auto h = std::make_unique<flowlaw_dataset>();
    h->data = flowlaw::read_csv(std::filesystem::path(&need(path, "path")));
    o = h.release();
  });
}

flowlaw_status flowlaw_dataset_save(const flowlaw_dataset* data,
                                    const char* path) {
  return guarded([&] {
    flowlaw::write_csv(need(data, "dataset").data,
                       std::filesystem::path(&need(path, "path")));
  });
}

size_t flowlaw_dataset_size(const flowlaw_dataset* data) {
  return data == nullptr ? 0 : data->data.size();
}

uint64_t flowlaw_dataset_hash(const flowlaw_dataset* data) {
  return data == nullptr ? 0 : flowlaw::dataset_hash(data->data);
}

void flowlaw_dataset_free(flowlaw_dataset* data) { delete data; }

flowlaw_status flowlaw_model_create(const size_t* hidden_widths, size_t depth,
                                    flowlaw_activation activation,
                                    const flowlaw_dataset* training,
                                    uint64_t seed, flowlaw_model** out) {
  return guarded([&] {
    flowlaw_model*& o = need_out(out, "out");
    need(hidden_widths, "hidden_widths");
    const flowlaw::Dataset& data = need(training, "training").data;
    flowlaw::Activation act;
    switch (activation) {
      case FLOWLAW_TANH: act = flowlaw::Activation::kTanh; break;
      case FLOWLAW_SIGMOID: act = flowlaw::Activation::kSigmoid; break;
      default: throw ArgumentError("unknown activation");
    }
    const std::vector<std::size_t> widths(hidden_widths, hidden_widths + depth);
    auto h = std::make_unique<flowlaw_model>();
    h->model = flowlaw::initialize_model(widths, act, data,
                                         flowlaw::steel_42CrMo4().eps_dot_ref,
                                         seed);
    h->provenance.seed = seed;
    h->provenance.dataset_hash = flowlaw::dataset_hash(data);
    o = h.release();
  });
}

flowlaw_status flowlaw_model_load(const char* path, flowlaw_model** out) {
  return guarded([&] {
    flowlaw_model*& o = need_out(out, "out");
    flowlaw::ModelArchive a =
        flowlaw::load_archive(std::filesystem::path(&need(path, "path")));
    auto h = std::make_unique<flowlaw_model>();
    h->model = std::move(a.model);
    h->provenance = a.provenance;
    o = h.release();
  });
}

flowlaw_status flowlaw_model_save(const flowlaw_model* model, const char* path) {
  return guarded([&] {
    flowlaw::save_model(need_model(model), std::filesystem::path(&need(path, "path")),
                        model->provenance);
  });
}

void flowlaw_model_free(flowlaw_model* model) { delete model; }

size_t flowlaw_model_param_count(const flowlaw_model* model) {
  return model == nullptr || !model->model ? 0 : model->model->parameter_count();
}

flowlaw_status flowlaw_model_name(const flowlaw_model* model, char* buf,
                                  size_t size) {
  return guarded([&] { copy_string(need_model(model).name(), buf, size); });
}

flowlaw_status flowlaw_model_predict(const flowlaw_model* model, double eps_p,
                                     double rate, double T, flowlaw_flow* out) {
  return guarded([&] {
    flowlaw_flow& o = need_out(out, "out");
    const flowlaw::PhysicalPrediction p =
        flowlaw::predict_physical(need_model(model), eps_p, rate, T);
    fill(o, p.sigma, p.d_eps, p.d_rate, p.d_T);
  });
}

flowlaw_status flowlaw_model_train(flowlaw_model* model,
                                   const flowlaw_dataset* data,
                                   const flowlaw_train_config* cfg,
                                   const char* history_csv) {
  return guarded([&] {
    const flowlaw::MlpModel& current = need_model(model);
    const flowlaw::Dataset& d = need(data, "dataset").data;
    const flowlaw_train_config& c = need(cfg, "config");
    flowlaw::TrainConfig tc;
    tc.iterations = c.iterations;
    tc.learning_rate = c.learning_rate;
    tc.final_learning_rate = c.final_learning_rate;
    tc.decay_start = c.decay_start;
    tc.seed = c.seed;
    if (c.report_stride > 0) tc.report_stride = c.report_stride;
    flowlaw::TrainResult r = flowlaw::train_adam(current, d, tc);
    if (history_csv != nullptr) {
      flowlaw::write_history_csv(r.history, std::filesystem::path(history_csv));
    }
    model->model = std::move(r.model);
    model->provenance.iterations += c.iterations;
    model->provenance.dataset_hash = flowlaw::dataset_hash(d);
  });
}

flowlaw_status flowlaw_model_evaluate(const flowlaw_model* model,
                                      const flowlaw_dataset* test,
                                      flowlaw_metrics* out) {
  return guarded([&] {
    flowlaw_metrics& o = need_out(out, "out");
    const flowlaw::MetricsReport m =
        flowlaw::evaluate(need_model(model), need(test, "test").data);
    o = {m.erms, m.aare_sigma, m.aare_deps, m.aare_drate, m.aare_dT,
         m.param_count, m.rows};
  });
}

flowlaw_status flowlaw_metrics_format(const flowlaw_metrics* metrics,
                                      const char* name, char* buf, size_t size) {
  return guarded([&] {
    const flowlaw_metrics& m = need(metrics, "metrics");
    flowlaw::MetricsReport r;
    r.erms = m.erms;
    r.aare_sigma = m.aare_sigma;
    r.aare_deps = m.aare_deps;
    r.aare_drate = m.aare_drate;
    r.aare_dT = m.aare_dT;
    r.param_count = m.param_count;
    r.rows = m.rows;
    std::ostringstream ss;
    flowlaw::print_metrics_row(ss, name == nullptr ? "" : name, r);
    copy_string(ss.str(), buf, size);
  });
}

flowlaw_status flowlaw_model_emit(const flowlaw_model* model, char* buf,
                                  size_t size, size_t* needed) {
  return guarded([&] {
    const std::string text = flowlaw::emit_subroutine(need_model(model));
    if (needed != nullptr) *needed = text.size() + 1;
    if (buf != nullptr) copy_string(text, buf, size);
  });
}

flowlaw_status flowlaw_model_emit_file(const flowlaw_model* model,
                                       const char* path) {
  return guarded([&] {
    const std::string text = flowlaw::emit_subroutine(need_model(model));
    const std::filesystem::path p(&need(path, "path"));
    std::ofstream f(p, std::ios::binary);
    if (!f) throw flowlaw::IoError("cannot open '" + p.string() + "' for writing");
    f << text;
    if (!f) throw flowlaw::IoError("write failed for '" + p.string() + "'");
  });
}

flowlaw_status flowlaw_law_jc(const flowlaw_jc_params* params,
                              flowlaw_law** out) {
  return guarded([&] {
    flowlaw_law*& o = need_out(out, "out");
    auto h = std::make_unique<flowlaw_law>();
    h->law = std::make_unique<flowlaw::JohnsonCookLaw>(to_params(params));
    o = h.release();
  });
}

flowlaw_status flowlaw_law_model(const flowlaw_model* model, flowlaw_law** out) {
  return guarded([&] {
    flowlaw_law*& o = need_out(out, "out");
    auto h = std::make_unique<flowlaw_law>();
    h->law = std::make_unique<flowlaw::NetworkLaw>(need_model(model));
    o = h.release();
  });
}

void flowlaw_law_free(flowlaw_law* law) { delete law; }

flowlaw_status flowlaw_bench_path(flowlaw_path_kind kind,
                                  const flowlaw_law* law_a,
                                  const flowlaw_law* law_b, const char* csv_path,
                                  flowlaw_bench_summary* out) {
  return guarded([&] {
    flowlaw_bench_summary& o = need_out(out, "out");
    const flowlaw::HardeningLaw& a = *need(law_a, "law_a").law;
    const flowlaw::HardeningLaw& b = *need(law_b, "law_b").law;
    flowlaw::LoadPath path;
    switch (kind) {
      case FLOWLAW_PATH_TENSION: path = flowlaw::tension_in_range_path(); break;
      case FLOWLAW_PATH_TENSION_EXTENDED: path = flowlaw::tension_extended_path(); break;
      case FLOWLAW_PATH_COMPRESSION: path = flowlaw::compression_impact_path(); break;
      default: throw ArgumentError("unknown path kind");
    }
    const flowlaw::BenchmarkSummary s = flowlaw::run_path_benchmark(
        path, a, b, flowlaw::steel_42CrMo4_thermal());
    if (csv_path != nullptr) {
      flowlaw::write_benchmark_csv(s, std::filesystem::path(csv_path));
    }
    o = {s.records.size(), s.max_relative_deviation, s.max_deviation_step,
         s.final_a.eps_p,  s.final_a.sigma,            s.final_a.T,
         s.final_b.eps_p,  s.final_b.sigma,            s.final_b.T};
  });
}

}  // extern "C"
