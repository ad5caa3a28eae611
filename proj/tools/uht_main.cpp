// Command-line front end. Talks to the library exclusively through the C API
// in uht/uht.h; config files are JSON and every field can be overridden by a
// flag.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "uht/uht.h"

namespace {

using nlohmann::json;

[[noreturn]] void die(const std::string& context) {
  std::cerr << "error: " << context;
  const char* detail = uht_last_error();
  if (detail && *detail) std::cerr << ": " << detail;
  std::cerr << "\n";
  std::exit(1);
}

void check(uht_status status, const std::string& context) {
  if (status != UHT_OK) die(context + " (" + uht_status_name(status) + ")");
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) die("cannot open config " + path);
  try {
    return json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const std::exception& e) {
    die("cannot parse config " + path + ": " + e.what());
  }
}

struct FlowsHandle {
  uht_flows* ptr = nullptr;
  ~FlowsHandle() { uht_flows_free(ptr); }
};
struct QuantizerHandle {
  uht_quantizer* ptr = nullptr;
  ~QuantizerHandle() { uht_quantizer_free(ptr); }
};
struct PlSetHandle {
  uht_pl_set* ptr = nullptr;
  ~PlSetHandle() { uht_pl_set_free(ptr); }
};
struct ReportsHandle {
  uht_reports* ptr = nullptr;
  ~ReportsHandle() { uht_reports_free(ptr); }
};
struct CurveHandle {
  uht_curve* ptr = nullptr;
  ~CurveHandle() { uht_curve_free(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hoeffding-style universal hypothesis testing for Markov-modeled "
               "symbol streams, with sliding-window flow anomaly detection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(uht_version()));

  // --- simulate ---------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "generate a synthetic flow CSV from a scenario");
  std::string sim_config, sim_out;
  std::optional<uint64_t> sim_seed;
  sim->add_option("--config", sim_config, "scenario JSON")->required();
  sim->add_option("--out", sim_out, "output flow CSV path")->required();
  sim->add_option("--seed", sim_seed, "override the scenario seed");

  // --- estimate ---------------------------------------------------------
  auto* est = app.add_subcommand("estimate", "calibrate reference PL(s) into a PL file");
  std::string est_flows, est_symbols, est_config, est_out, est_segments;
  int est_states = 0;
  std::vector<int> est_levels;
  int est_k = 0;
  std::optional<double> est_epsilon;
  std::optional<int> est_m0;
  std::optional<int64_t> est_n0;
  std::optional<uint64_t> est_seed;
  est->add_option("--flows", est_flows, "flow CSV input (quantizer is built and embedded)");
  est->add_option("--symbols", est_symbols, "pair-symbol CSV input (bypasses quantization)");
  est->add_option("--n-states", est_states, "alphabet size for --symbols input");
  est->add_option("--config", est_config, "estimation JSON (levels, k, epsilon, m0, segments)");
  est->add_option("--levels", est_levels, "quantization levels n1,n2,n3")->expected(3);
  est->add_option("--k", est_k, "user cluster count");
  est->add_option("--epsilon", est_epsilon, "law floor");
  est->add_option("--m0", est_m0, "covariance truncation order");
  est->add_option("--n0", est_n0, "training-length hint");
  est->add_option("--seed", est_seed, "clustering seed");
  est->add_option("--segments", est_segments, "JSON array of [start,end) calibration segments");
  est->add_option("--out", est_out, "output PL file")->required();

  // --- detect -----------------------------------------------------------
  auto* det = app.add_subcommand("detect", "run the windowed test against reference PL(s)");
  std::string det_flows, det_pl, det_config, det_out, det_summary, det_method;
  std::optional<double> det_beta, det_window, det_stride, det_fixed;
  std::optional<int64_t> det_T;
  std::optional<uint64_t> det_seed;
  det->add_option("--flows", det_flows, "flow CSV to monitor")->required();
  det->add_option("--pl", det_pl, "PL file from `estimate` (quantizer must be embedded)")
      ->required();
  det->add_option("--config", det_config, "detection JSON");
  det->add_option("--beta", det_beta, "false-alarm target");
  det->add_option("--method", det_method, "threshold method: wc|sanov|fixed");
  det->add_option("--fixed-threshold", det_fixed, "threshold value for method=fixed");
  det->add_option("--window", det_window, "window size in seconds");
  det->add_option("--stride", det_stride, "stride between window starts in seconds");
  det->add_option("--T", det_T, "Gaussian sample count behind wc thresholds");
  det->add_option("--seed", det_seed, "sampling seed");
  det->add_option("--out", det_out, "window reports JSONL")->required();
  det->add_option("--summary", det_summary, "window summary CSV");

  // --- threshold-compare -------------------------------------------------
  auto* cmp = app.add_subcommand("threshold-compare",
                                 "compare sv/wc/mc calibrations on a random chain");
  std::string cmp_config, cmp_out;
  std::optional<int> cmp_states, cmp_m0;
  std::optional<double> cmp_beta, cmp_epsilon;
  std::optional<int64_t> cmp_T, cmp_n0;
  std::optional<uint64_t> cmp_seed;
  std::vector<int64_t> cmp_grid;
  bool cmp_no_mc = false;
  cmp->add_option("--config", cmp_config, "comparison JSON");
  cmp->add_option("--n-states", cmp_states, "original alphabet size N");
  cmp->add_option("--beta", cmp_beta, "false-alarm target");
  cmp->add_option("--T", cmp_T, "sample count for the empirical CDFs");
  cmp->add_option("--m0", cmp_m0, "covariance truncation order");
  cmp->add_option("--epsilon", cmp_epsilon, "law floor");
  cmp->add_option("--n0", cmp_n0, "training length");
  cmp->add_option("--n-grid", cmp_grid, "window lengths to evaluate");
  cmp->add_option("--seed", cmp_seed, "master seed");
  cmp->add_flag("--no-mc", cmp_no_mc, "skip the Monte-Carlo ground truth");
  cmp->add_option("--out", cmp_out, "output CSV path")->required();

  // --- selftest -----------------------------------------------------------
  auto* self = app.add_subcommand("selftest", "run the built-in invariant suite");
  bool self_verbose = false;
  self->add_flag("--verbose", self_verbose, "print every check");

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) {
    json cfg = load_config(sim_config);
    if (sim_seed) cfg["seed"] = *sim_seed;
    FlowsHandle flows;
    check(uht_simulate(cfg.dump().c_str(), &flows.ptr), "simulate");
    check(uht_flows_save_csv(flows.ptr, sim_out.c_str()), "write " + sim_out);
    std::cout << uht_flows_count(flows.ptr) << " flows -> " << sim_out << "\n";
    return 0;
  }

  if (est->parsed()) {
    json cfg = est_config.empty() ? json::object() : load_config(est_config);
    if (!est_levels.empty()) cfg["levels"] = est_levels;
    if (est_k > 0) cfg["k"] = est_k;
    if (est_epsilon) cfg["epsilon"] = *est_epsilon;
    if (est_m0) cfg["m0"] = *est_m0;
    if (est_n0) cfg["n0"] = *est_n0;
    if (est_seed) cfg["seed"] = *est_seed;
    if (!est_segments.empty()) cfg["segments"] = json::parse(est_segments);

    uht_calib_params params{cfg.value("epsilon", 0.0), cfg.value("m0", 0),
                            cfg.value("n0", int64_t{0})};

    if (!est_symbols.empty()) {
      int n_states = est_states > 0 ? est_states : cfg.value("n_states", 0);
      if (n_states < 2) die("--symbols input needs --n-states");
      int32_t* symbols = nullptr;
      int64_t len = 0;
      check(uht_symbols_load_csv(est_symbols.c_str(), n_states, &symbols, &len),
            "read " + est_symbols);
      uht_model* model = nullptr;
      uht_status st = uht_model_estimate(symbols, len, n_states, &params, &model);
      uht_buffer_free(symbols);
      check(st, "estimate");
      st = uht_model_save(model, est_out.c_str());
      uht_model_free(model);
      check(st, "write " + est_out);
      std::cout << "PL file (1 PL, no quantizer) -> " << est_out << "\n";
      return 0;
    }

    if (est_flows.empty()) die("estimate needs --flows or --symbols");
    std::vector<int> levels = cfg.value("levels", std::vector<int>{1, 2, 2});
    if (levels.size() != 3) die("levels must have exactly 3 entries");
    int k = cfg.value("k", 3);
    uint64_t seed = cfg.value("seed", uint64_t{1});

    FlowsHandle flows;
    check(uht_flows_load_csv(est_flows.c_str(), &flows.ptr), "read " + est_flows);
    QuantizerHandle quantizer;
    check(uht_quantizer_build(flows.ptr, levels[0], levels[1], levels[2], k, seed,
                              &quantizer.ptr),
          "build quantizer");
    std::string segments_text;
    const char* segments_arg = nullptr;
    if (cfg.contains("segments") && !cfg["segments"].is_null()) {
      segments_text = cfg["segments"].dump();
      segments_arg = segments_text.c_str();
    }
    PlSetHandle set;
    check(uht_calibrate(flows.ptr, quantizer.ptr, segments_arg, &params, &set.ptr),
          "calibrate");
    check(uht_pl_set_save(set.ptr, quantizer.ptr, est_out.c_str()), "write " + est_out);
    std::cout << "PL file (" << uht_pl_set_count(set.ptr) << " PL(s), alphabet "
              << uht_quantizer_states(quantizer.ptr) << ") -> " << est_out << "\n";
    return 0;
  }

  if (det->parsed()) {
    json cfg = det_config.empty() ? json::object() : load_config(det_config);
    if (det_beta) cfg["beta"] = *det_beta;
    if (!det_method.empty()) cfg["method"] = det_method;
    if (det_fixed) cfg["fixed_threshold"] = *det_fixed;
    if (det_window) cfg["window_s"] = *det_window;
    if (det_stride) cfg["stride_s"] = *det_stride;
    if (det_T) cfg["cdf_samples"] = *det_T;
    if (det_seed) cfg["seed"] = *det_seed;

    FlowsHandle flows;
    check(uht_flows_load_csv(det_flows.c_str(), &flows.ptr), "read " + det_flows);
    PlSetHandle set;
    QuantizerHandle quantizer;
    check(uht_pl_set_load(det_pl.c_str(), &set.ptr, &quantizer.ptr), "read " + det_pl);
    if (!quantizer.ptr)
      die(det_pl + " embeds no quantizer; calibrate from flows to monitor flows");

    ReportsHandle reports;
    check(uht_detect(flows.ptr, quantizer.ptr, set.ptr, cfg.dump().c_str(), &reports.ptr),
          "detect");
    check(uht_reports_save(reports.ptr, det_out.c_str(),
                           det_summary.empty() ? nullptr : det_summary.c_str()),
          "write reports");
    int64_t anomalies = uht_reports_anomalies(reports.ptr);
    std::cout << uht_reports_count(reports.ptr) << " windows, " << anomalies
              << " anomalous -> " << det_out << "\n";
    return anomalies > 0 ? 2 : 0;
  }

  if (cmp->parsed()) {
    json cfg = cmp_config.empty() ? json::object() : load_config(cmp_config);
    if (cmp_states) cfg["n_states"] = *cmp_states;
    if (cmp_beta) cfg["beta"] = *cmp_beta;
    if (cmp_T) cfg["t_samples"] = *cmp_T;
    if (cmp_m0) cfg["m0"] = *cmp_m0;
    if (cmp_epsilon) cfg["epsilon"] = *cmp_epsilon;
    if (cmp_n0) cfg["n0"] = *cmp_n0;
    if (!cmp_grid.empty()) cfg["n_grid"] = cmp_grid;
    if (cmp_seed) cfg["seed"] = *cmp_seed;
    if (cmp_no_mc) cfg["with_mc"] = false;

    CurveHandle curve;
    check(uht_threshold_compare(cfg.dump().c_str(), &curve.ptr), "threshold-compare");
    check(uht_curve_save_csv(curve.ptr, cmp_out.c_str()), "write " + cmp_out);
    char summary[4096];
    if (uht_curve_summary(curve.ptr, summary, sizeof summary) == UHT_OK) std::cout << summary;
    std::cout << uht_curve_count(curve.ptr) << " grid points -> " << cmp_out << "\n";
    return 0;
  }

  if (self->parsed()) {
    return uht_selftest(self_verbose ? 1 : 0) == 0 ? 0 : 1;
  }

  return 0;
}
