#include "uht/uht.h"

#include <cstring>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "uht/compare.hpp"
#include "uht/detector.hpp"
#include "uht/io.hpp"
#include "uht/selftest.hpp"
#include "uht/traffic.hpp"

namespace {

thread_local std::string g_last_error;

uht_status status_of(const uht::Error& e) {
  switch (e.code()) {
    case uht::errc::invalid_argument: return UHT_ERR_INVALID_ARGUMENT;
    case uht::errc::validation: return UHT_ERR_VALIDATION;
    case uht::errc::support_violation: return UHT_ERR_SUPPORT;
    case uht::errc::calibration: return UHT_ERR_CALIBRATION;
    case uht::errc::io: return UHT_ERR_IO;
  }
  return UHT_ERR_INTERNAL;
}

template <typename Fn>
uht_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return UHT_OK;
  } catch (const uht::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return UHT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return UHT_ERR_INTERNAL;
  }
}

uht_status invalid(const char* what) {
  g_last_error = what;
  return UHT_ERR_INVALID_ARGUMENT;
}

uht::EstimationConfig config_of(const uht_calib_params* params) {
  uht::EstimationConfig cfg;
  if (params) {
    if (params->epsilon > 0.0) cfg.epsilon = params->epsilon;
    if (params->m0 > 0) cfg.m0 = params->m0;
    if (params->n0 > 0) cfg.n0 = params->n0;
  }
  return cfg;
}

uht::SymbolSequence sequence_of(const int32_t* symbols, int64_t len, int32_t n_states) {
  uht::Alphabet a(n_states);
  uht::SymbolSequence z;
  z.n_states = n_states;
  z.symbols.reserve(static_cast<size_t>(len));
  for (int64_t i = 0; i < len; ++i) {
    int32_t s = symbols[i];
    uht::require(s >= 1 && s <= a.pairs(), uht::errc::validation,
                 "pair symbol " + std::to_string(s) + " outside 1.." +
                     std::to_string(a.pairs()));
    z.symbols.push_back(s - 1);
  }
  return z;
}

uht::TransitionMatrix transition_of(const double* q, int32_t n_states) {
  uht::require(n_states >= 2, uht::errc::validation, "need at least 2 states");
  uht::Mat m(n_states, n_states);
  std::memcpy(m.data(), q, sizeof(double) * static_cast<size_t>(n_states) * n_states);
  return uht::TransitionMatrix(std::move(m));
}

}  // namespace

struct uht_model {
  uht::ReferenceModel impl;
};
struct uht_flows {
  std::vector<uht::FlowRecord> impl;
};
struct uht_quantizer {
  uht::QuantizerSpec impl;
};
struct uht_pl_set {
  std::vector<std::unique_ptr<uht_model>> models;

  std::vector<uht::ReferenceModel> snapshot() const {
    std::vector<uht::ReferenceModel> out;
    out.reserve(models.size());
    for (const auto& m : models) out.push_back(m->impl);
    return out;
  }
};
struct uht_reports {
  std::vector<uht::WindowReport> impl;
};
struct uht_curve {
  uht::ThresholdCurve impl;
};

extern "C" {

const char* uht_status_name(uht_status status) {
  switch (status) {
    case UHT_OK: return "ok";
    case UHT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case UHT_ERR_VALIDATION: return "validation error";
    case UHT_ERR_SUPPORT: return "support violation";
    case UHT_ERR_CALIBRATION: return "calibration error";
    case UHT_ERR_IO: return "io error";
    case UHT_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* uht_last_error(void) { return g_last_error.c_str(); }

const char* uht_version(void) { return "0.1.0"; }

uht_status uht_model_from_transition(const double* q, int32_t n_states,
                                     const uht_calib_params* params, uht_model** out) {
  if (!q || !out) return invalid("q and out must not be null");
  return guarded([&] {
    *out = new uht_model{
        uht::ReferenceModel::from_transition(transition_of(q, n_states), config_of(params))};
  });
}

uht_status uht_model_estimate(const int32_t* pair_symbols, int64_t len, int32_t n_states,
                              const uht_calib_params* params, uht_model** out) {
  if (!pair_symbols || !out) return invalid("pair_symbols and out must not be null");
  if (len <= 0) return invalid("len must be positive");
  return guarded([&] {
    *out = new uht_model{uht::ReferenceModel::from_training(
        sequence_of(pair_symbols, len, n_states), config_of(params))};
  });
}

void uht_model_free(uht_model* model) { delete model; }

int32_t uht_model_states(const uht_model* model) {
  return model ? model->impl.states() : 0;
}

uht_status uht_model_law(const uht_model* model, double* out) {
  if (!model || !out) return invalid("model and out must not be null");
  return guarded([&] {
    const uht::Vec& v = model->impl.law().values();
    std::memcpy(out, v.data(), sizeof(double) * static_cast<size_t>(v.size()));
  });
}

uht_status uht_model_transition(const uht_model* model, double* out) {
  if (!model || !out) return invalid("model and out must not be null");
  return guarded([&] {
    const uht::Mat& m = model->impl.transition().rows();
    std::memcpy(out, m.data(), sizeof(double) * static_cast<size_t>(m.size()));
  });
}

uht_status uht_model_covariance(const uht_model* model, double* out) {
  if (!model || !out) return invalid("model and out must not be null");
  return guarded([&] {
    const uht::Mat& m = model->impl.covariance().m;
    std::memcpy(out, m.data(), sizeof(double) * static_cast<size_t>(m.size()));
  });
}

uht_status uht_model_save(const uht_model* model, const char* path) {
  if (!model || !path) return invalid("model and path must not be null");
  return guarded([&] {
    uht::write_text_atomic(path, uht::pl_file_to_json({model->impl}, nullptr));
  });
}

uht_status uht_model_load(const char* path, uht_model** out) {
  if (!path || !out) return invalid("path and out must not be null");
  return guarded([&] {
    auto [pls, quantizer] = uht::pl_file_from_json(uht::read_text(path));
    *out = new uht_model{std::move(pls.front())};
  });
}

uht_status uht_model_divergence(const uht_model* model, const int32_t* pair_symbols,
                                int64_t len, double* out) {
  if (!model || !pair_symbols || !out) return invalid("null argument");
  if (len <= 0) return invalid("len must be positive");
  return guarded([&] {
    *out = model->impl.divergence_of(sequence_of(pair_symbols, len, model->impl.states()));
  });
}

uht_status uht_model_threshold_wc(const uht_model* model, int64_t n, int64_t t_samples,
                                  double beta, uint64_t seed, double* out) {
  if (!model || !out) return invalid("model and out must not be null");
  return guarded([&] { *out = model->impl.wc_threshold(n, t_samples, beta, seed); });
}

uht_status uht_model_threshold_mc(const uht_model* model, int64_t n, int64_t t_samples,
                                  double beta, uint64_t seed, double* out) {
  if (!model || !out) return invalid("model and out must not be null");
  return guarded([&] { *out = model->impl.mc_threshold(n, t_samples, beta, seed); });
}

uht_status uht_threshold_sanov(double beta, int64_t n, double* out) {
  if (!out) return invalid("out must not be null");
  return guarded([&] { *out = uht::threshold_sanov(beta, n); });
}

int32_t uht_decide(double divergence, double threshold) {
  return uht::hoeffding_decide(divergence, threshold) ? 1 : 0;
}

uht_status uht_sample_chain(const double* q, int32_t n_states, int64_t len, uint64_t seed,
                            int32_t* out) {
  if (!q || !out) return invalid("q and out must not be null");
  return guarded([&] {
    uht::SymbolSequence z = uht::sample_chain(transition_of(q, n_states), len, seed);
    for (int64_t i = 0; i < z.length(); ++i) out[i] = z.symbols[static_cast<size_t>(i)] + 1;
  });
}

uht_status uht_flows_load_csv(const char* path, uht_flows** out) {
  if (!path || !out) return invalid("path and out must not be null");
  return guarded([&] { *out = new uht_flows{uht::flows_from_csv(uht::read_text(path))}; });
}

uht_status uht_flows_save_csv(const uht_flows* flows, const char* path) {
  if (!flows || !path) return invalid("flows and path must not be null");
  return guarded([&] { uht::write_text_atomic(path, uht::flows_to_csv(flows->impl)); });
}

int64_t uht_flows_count(const uht_flows* flows) {
  return flows ? static_cast<int64_t>(flows->impl.size()) : 0;
}

void uht_flows_free(uht_flows* flows) { delete flows; }

uht_status uht_simulate(const char* scenario_json, uht_flows** out) {
  if (!scenario_json || !out) return invalid("scenario_json and out must not be null");
  return guarded([&] {
    *out = new uht_flows{uht::generate(uht::ScenarioConfig::from_json_text(scenario_json))};
  });
}

uht_status uht_quantizer_build(const uht_flows* training, int32_t n1, int32_t n2, int32_t n3,
                               int32_t k, uint64_t seed, uht_quantizer** out) {
  if (!training || !out) return invalid("training and out must not be null");
  return guarded([&] {
    *out = new uht_quantizer{uht::build_quantizer(training->impl, {n1, n2, n3}, k, seed)};
    for (const std::string& w : (*out)->impl.warnings) std::cerr << "warning: " << w << "\n";
  });
}

int32_t uht_quantizer_states(const uht_quantizer* quantizer) {
  return quantizer ? quantizer->impl.alphabet_size() : 0;
}

void uht_quantizer_free(uht_quantizer* quantizer) { delete quantizer; }

uht_status uht_quantize(const uht_quantizer* quantizer, const uht_flows* flows, int32_t** out,
                        int64_t* out_len) {
  if (!quantizer || !flows || !out || !out_len) return invalid("null argument");
  return guarded([&] {
    uht::SymbolSequence z = uht::quantize(flows->impl, quantizer->impl);
    auto* buf = new int32_t[z.symbols.size()];
    for (size_t i = 0; i < z.symbols.size(); ++i) buf[i] = z.symbols[i] + 1;
    *out = buf;
    *out_len = z.length();
  });
}

void uht_buffer_free(void* buffer) { delete[] static_cast<int32_t*>(buffer); }

uht_status uht_calibrate(const uht_flows* reference, const uht_quantizer* quantizer,
                         const char* segments_json, const uht_calib_params* params,
                         uht_pl_set** out) {
  if (!reference || !quantizer || !out) return invalid("null argument");
  return guarded([&] {
    std::optional<std::vector<std::pair<double, double>>> segments;
    if (segments_json) {
      nlohmann::json j = nlohmann::json::parse(segments_json);
      uht::require(j.is_array(), uht::errc::invalid_argument,
                   "segments must be a JSON array of [start, end] pairs");
      segments.emplace();
      for (const auto& seg : j) {
        uht::require(seg.is_array() && seg.size() == 2, uht::errc::invalid_argument,
                     "each segment must be a [start, end] pair");
        segments->emplace_back(seg[0].get<double>(), seg[1].get<double>());
      }
    }
    std::vector<std::string> warnings;
    auto pls = uht::calibrate_from_reference(reference->impl, quantizer->impl,
                                             config_of(params), segments, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    auto set = std::make_unique<uht_pl_set>();
    for (auto& pl : pls) set->models.push_back(std::make_unique<uht_model>(std::move(pl)));
    *out = set.release();
  });
}

int32_t uht_pl_set_count(const uht_pl_set* set) {
  return set ? static_cast<int32_t>(set->models.size()) : 0;
}

const uht_model* uht_pl_set_model(const uht_pl_set* set, int32_t index) {
  if (!set || index < 0 || index >= static_cast<int32_t>(set->models.size())) return nullptr;
  return set->models[static_cast<size_t>(index)].get();
}

uht_status uht_pl_set_save(const uht_pl_set* set, const uht_quantizer* quantizer,
                           const char* path) {
  if (!set || !path) return invalid("set and path must not be null");
  return guarded([&] {
    uht::write_text_atomic(
        path, uht::pl_file_to_json(set->snapshot(), quantizer ? &quantizer->impl : nullptr));
  });
}

uht_status uht_pl_set_load(const char* path, uht_pl_set** out, uht_quantizer** out_quantizer) {
  if (!path || !out) return invalid("path and out must not be null");
  return guarded([&] {
    auto [pls, quantizer] = uht::pl_file_from_json(uht::read_text(path));
    auto set = std::make_unique<uht_pl_set>();
    for (auto& pl : pls) set->models.push_back(std::make_unique<uht_model>(std::move(pl)));
    *out = set.release();
    if (out_quantizer)
      *out_quantizer = quantizer ? new uht_quantizer{std::move(*quantizer)} : nullptr;
  });
}

void uht_pl_set_free(uht_pl_set* set) { delete set; }

uht_status uht_detect(const uht_flows* flows, const uht_quantizer* quantizer,
                      const uht_pl_set* pls, const char* detection_json, uht_reports** out) {
  if (!flows || !quantizer || !pls || !out) return invalid("null argument");
  return guarded([&] {
    uht::DetectionConfig cfg;
    if (detection_json)
      cfg = uht::DetectionConfig::from_json(
          nlohmann::json::parse(detection_json, nullptr, true, /*ignore_comments=*/true));
    *out = new uht_reports{uht::detect(flows->impl, quantizer->impl, pls->snapshot(), cfg)};
  });
}

int64_t uht_reports_count(const uht_reports* reports) {
  return reports ? static_cast<int64_t>(reports->impl.size()) : 0;
}

uht_status uht_reports_get(const uht_reports* reports, int64_t index, uht_window_report* out) {
  if (!reports || !out) return invalid("reports and out must not be null");
  if (index < 0 || index >= static_cast<int64_t>(reports->impl.size()))
    return invalid("report index out of range");
  const uht::WindowReport& r = reports->impl[static_cast<size_t>(index)];
  *out = uht_window_report{r.window_start, r.window_end, r.n_flows,      r.n_pairs,
                           r.divergence,   r.threshold,  r.best_pl,
                           r.is_anomaly ? 1 : 0,          r.insufficient ? 1 : 0};
  return UHT_OK;
}

int64_t uht_reports_anomalies(const uht_reports* reports) {
  if (!reports) return 0;
  int64_t count = 0;
  for (const uht::WindowReport& r : reports->impl) count += r.is_anomaly ? 1 : 0;
  return count;
}

uht_status uht_reports_save(const uht_reports* reports, const char* jsonl_path,
                            const char* csv_path) {
  if (!reports) return invalid("reports must not be null");
  return guarded([&] {
    if (jsonl_path) uht::write_text_atomic(jsonl_path, uht::reports_to_jsonl(reports->impl));
    if (csv_path) uht::write_text_atomic(csv_path, uht::reports_to_csv(reports->impl));
  });
}

void uht_reports_free(uht_reports* reports) { delete reports; }

uht_status uht_threshold_compare(const char* config_json, uht_curve** out) {
  if (!config_json || !out) return invalid("config_json and out must not be null");
  return guarded([&] {
    uht::ThresholdCurve curve =
        uht::threshold_compare(uht::compare_config_from_json(config_json));
    for (const std::string& w : curve.warnings) std::cerr << "warning: " << w << "\n";
    *out = new uht_curve{std::move(curve)};
  });
}

int32_t uht_curve_count(const uht_curve* curve) {
  return curve ? static_cast<int32_t>(curve->impl.points.size()) : 0;
}

uht_status uht_curve_point_at(const uht_curve* curve, int32_t index, uht_curve_point* out) {
  if (!curve || !out) return invalid("curve and out must not be null");
  if (index < 0 || index >= static_cast<int32_t>(curve->impl.points.size()))
    return invalid("curve index out of range");
  const uht::ThresholdCurvePoint& pt = curve->impl.points[static_cast<size_t>(index)];
  *out = uht_curve_point{pt.n, pt.eta_sv, pt.eta_wc, pt.eta_mc, pt.has_mc ? 1 : 0};
  return UHT_OK;
}

uht_status uht_curve_save_csv(const uht_curve* curve, const char* path) {
  if (!curve || !path) return invalid("curve and path must not be null");
  return guarded([&] { uht::write_text_atomic(path, uht::curve_to_csv(curve->impl)); });
}

uht_status uht_curve_summary(const uht_curve* curve, char* buf, size_t buf_len) {
  if (!curve || !buf || buf_len == 0) return invalid("curve and buf must not be null");
  return guarded([&] {
    std::string text = uht::curve_summary(curve->impl);
    size_t n = std::min(buf_len - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  });
}

void uht_curve_free(uht_curve* curve) { delete curve; }

uht_status uht_symbols_load_csv(const char* path, int32_t n_states, int32_t** out,
                                int64_t* out_len) {
  if (!path || !out || !out_len) return invalid("null argument");
  return guarded([&] {
    uht::SymbolSequence z = uht::symbols_from_csv(uht::read_text(path), n_states);
    auto* buf = new int32_t[z.symbols.size()];
    for (size_t i = 0; i < z.symbols.size(); ++i) buf[i] = z.symbols[i] + 1;
    *out = buf;
    *out_len = z.length();
  });
}

uht_status uht_symbols_save_csv(const int32_t* pair_symbols, int64_t len, int32_t n_states,
                                const char* path) {
  if (!pair_symbols || !path) return invalid("pair_symbols and path must not be null");
  return guarded([&] {
    uht::write_text_atomic(path,
                           uht::symbols_to_csv(sequence_of(pair_symbols, len, n_states)));
  });
}

int32_t uht_selftest(int32_t verbose) { return uht::selftest(std::cout, verbose != 0); }

}  // extern "C"
