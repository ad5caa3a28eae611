// Exercises the shared-library surface the CLI sits on: handles, error
// codes, and the file-shaped entry points.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "uht/uht.h"

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("uht_capi_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

const char* kScenario = R"({
  "horizon_s": 3000,
  "seed": 11,
  "users": [
    {"address": "10.0.0.1", "rate_per_s": 0.1},
    {"address": "10.0.0.2", "rate_per_s": 0.1},
    {"address": "10.0.0.3", "rate_per_s": 0.1},
    {"address": "10.0.0.4", "rate_per_s": 0.1}
  ]
})";

}  // namespace

TEST_CASE("status names and version are stable strings") {
  CHECK(std::string(uht_status_name(UHT_OK)) == "ok");
  CHECK(std::string(uht_status_name(UHT_ERR_VALIDATION)) == "validation error");
  CHECK(uht_version() != nullptr);
}

TEST_CASE("null arguments are invalid, with a message") {
  CHECK(uht_model_from_transition(nullptr, 2, nullptr, nullptr) == UHT_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(uht_last_error()) > 0);
}

TEST_CASE("a bad transition matrix reports validation with the offending row") {
  double q[4] = {0.5, 0.6, 0.5, 0.5};
  uht_model* model = nullptr;
  CHECK(uht_model_from_transition(q, 2, nullptr, &model) == UHT_ERR_VALIDATION);
  CHECK(std::string(uht_last_error()).find("row 1") != std::string::npos);
}

TEST_CASE("exact model exposes law, transition, covariance and thresholds") {
  double q[4] = {0.7, 0.3, 0.4, 0.6};
  uht_model* model = nullptr;
  REQUIRE(uht_model_from_transition(q, 2, nullptr, &model) == UHT_OK);
  CHECK(uht_model_states(model) == 2);

  double law[4];
  REQUIRE(uht_model_law(model, law) == UHT_OK);
  CHECK(law[0] == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(law[3] == doctest::Approx(9.0 / 35.0).epsilon(1e-10));

  double q_back[4];
  REQUIRE(uht_model_transition(model, q_back) == UHT_OK);
  for (int i = 0; i < 4; ++i) CHECK(q_back[i] == doctest::Approx(q[i]).epsilon(1e-10));

  double lambda[16];
  REQUIRE(uht_model_covariance(model, lambda) == UHT_OK);
  double row0 = lambda[0] + lambda[1] + lambda[2] + lambda[3];
  CHECK(std::abs(row0) < 1e-8);

  double sv = 0.0, wc = 0.0, mc = 0.0;
  REQUIRE(uht_threshold_sanov(0.001, 1000, &sv) == UHT_OK);
  CHECK(sv == doctest::Approx(6.907755278982137e-3).epsilon(1e-12));
  REQUIRE(uht_model_threshold_wc(model, 1000, 2000, 0.01, 3, &wc) == UHT_OK);
  REQUIRE(uht_model_threshold_mc(model, 1000, 2000, 0.01, 3, &mc) == UHT_OK);
  CHECK(wc > 0.0);
  CHECK(mc > 0.0);
  CHECK(std::abs(wc - mc) / mc < 0.5);

  CHECK(uht_decide(0.2, 0.2) == 0);
  CHECK(uht_decide(0.3, 0.2) == 1);

  uht_model_free(model);
}

TEST_CASE("chain sampling, estimation, and divergence agree end to end") {
  double q[4] = {0.7, 0.3, 0.4, 0.6};
  std::vector<int32_t> symbols(20000);
  REQUIRE(uht_sample_chain(q, 2, static_cast<int64_t>(symbols.size()), 21, symbols.data()) ==
          UHT_OK);
  for (int32_t s : symbols) {
    CHECK(s >= 1);
    CHECK(s <= 4);
  }

  uht_model* model = nullptr;
  REQUIRE(uht_model_estimate(symbols.data(), static_cast<int64_t>(symbols.size()), 2, nullptr,
                             &model) == UHT_OK);
  double d = -1.0;
  REQUIRE(uht_model_divergence(model, symbols.data(), static_cast<int64_t>(symbols.size()),
                               &d) == UHT_OK);
  CHECK(d >= 0.0);
  CHECK(d < 1e-4);  // the model was fit on this very sequence

  TempDir tmp;
  std::string path = tmp.file("model.json");
  REQUIRE(uht_model_save(model, path.c_str()) == UHT_OK);
  uht_model* back = nullptr;
  REQUIRE(uht_model_load(path.c_str(), &back) == UHT_OK);
  double law_a[4], law_b[4];
  uht_model_law(model, law_a);
  uht_model_law(back, law_b);
  for (int i = 0; i < 4; ++i) CHECK(law_a[i] == law_b[i]);
  uht_model_free(back);
  uht_model_free(model);
}

TEST_CASE("flow pipeline through the C API") {
  TempDir tmp;

  uht_flows* flows = nullptr;
  REQUIRE(uht_simulate(kScenario, &flows) == UHT_OK);
  CHECK(uht_flows_count(flows) > 500);

  std::string flow_csv = tmp.file("flows.csv");
  REQUIRE(uht_flows_save_csv(flows, flow_csv.c_str()) == UHT_OK);
  uht_flows* loaded = nullptr;
  REQUIRE(uht_flows_load_csv(flow_csv.c_str(), &loaded) == UHT_OK);
  CHECK(uht_flows_count(loaded) == uht_flows_count(flows));

  uht_quantizer* quantizer = nullptr;
  REQUIRE(uht_quantizer_build(flows, 1, 2, 2, 2, 7, &quantizer) == UHT_OK);
  CHECK(uht_quantizer_states(quantizer) == 8);

  int32_t* pairs = nullptr;
  int64_t pair_count = 0;
  REQUIRE(uht_quantize(quantizer, flows, &pairs, &pair_count) == UHT_OK);
  CHECK(pair_count == uht_flows_count(flows) - 1);
  uht_buffer_free(pairs);

  uht_pl_set* set = nullptr;
  REQUIRE(uht_calibrate(flows, quantizer, nullptr, nullptr, &set) == UHT_OK);
  CHECK(uht_pl_set_count(set) == 1);
  CHECK(uht_pl_set_model(set, 0) != nullptr);
  CHECK(uht_pl_set_model(set, 5) == nullptr);

  std::string pl_path = tmp.file("pl.json");
  REQUIRE(uht_pl_set_save(set, quantizer, pl_path.c_str()) == UHT_OK);
  uht_pl_set* set_back = nullptr;
  uht_quantizer* quant_back = nullptr;
  REQUIRE(uht_pl_set_load(pl_path.c_str(), &set_back, &quant_back) == UHT_OK);
  REQUIRE(quant_back != nullptr);
  CHECK(uht_quantizer_states(quant_back) == 8);

  uht_reports* reports = nullptr;
  const char* detection = R"({"window_s": 400, "stride_s": 100, "beta": 0.001,
                              "method": "wc", "cdf_samples": 2000, "seed": 3})";
  REQUIRE(uht_detect(flows, quant_back, set_back, detection, &reports) == UHT_OK);
  CHECK(uht_reports_count(reports) > 20);

  uht_window_report first;
  REQUIRE(uht_reports_get(reports, 0, &first) == UHT_OK);
  CHECK(first.window_start == 0.0);
  CHECK(first.window_end == 400.0);
  CHECK(first.n_pairs == first.n_flows - 1);
  CHECK(uht_reports_get(reports, uht_reports_count(reports), &first) ==
        UHT_ERR_INVALID_ARGUMENT);

  std::string jsonl = tmp.file("reports.jsonl"), csv = tmp.file("summary.csv");
  REQUIRE(uht_reports_save(reports, jsonl.c_str(), csv.c_str()) == UHT_OK);
  CHECK(std::filesystem::file_size(jsonl) > 0);
  CHECK(std::filesystem::file_size(csv) > 0);

  uht_reports_free(reports);
  uht_quantizer_free(quant_back);
  uht_pl_set_free(set_back);
  uht_pl_set_free(set);
  uht_quantizer_free(quantizer);
  uht_flows_free(loaded);
  uht_flows_free(flows);
}

TEST_CASE("threshold comparison through the C API") {
  const char* config = R"({"n_states": 2, "beta": 0.01, "t_samples": 500,
                           "m0": 200, "n_grid": [100, 500], "seed": 13})";
  uht_curve* curve = nullptr;
  REQUIRE(uht_threshold_compare(config, &curve) == UHT_OK);
  REQUIRE(uht_curve_count(curve) == 2);

  uht_curve_point pt;
  REQUIRE(uht_curve_point_at(curve, 0, &pt) == UHT_OK);
  CHECK(pt.n == 100);
  CHECK(pt.eta_sv == doctest::Approx(-std::log(0.01) / 100.0));
  CHECK(pt.has_mc == 1);
  CHECK(pt.eta_wc > 0.0);
  CHECK(pt.eta_mc > 0.0);

  TempDir tmp;
  std::string csv = tmp.file("curve.csv");
  REQUIRE(uht_curve_save_csv(curve, csv.c_str()) == UHT_OK);
  char summary[2048];
  REQUIRE(uht_curve_summary(curve, summary, sizeof summary) == UHT_OK);
  CHECK(std::string(summary).find("wc") != std::string::npos);
  uht_curve_free(curve);

  uht_curve* bad = nullptr;
  CHECK(uht_threshold_compare(R"({"n_states": 2, "n_grid": [1]})", &bad) ==
        UHT_ERR_VALIDATION);
}

TEST_CASE("symbol CSV helpers round trip") {
  TempDir tmp;
  std::string path = tmp.file("symbols.csv");
  std::vector<int32_t> symbols = {1, 4, 3, 2, 2};
  REQUIRE(uht_symbols_save_csv(symbols.data(), static_cast<int64_t>(symbols.size()), 2,
                               path.c_str()) == UHT_OK);
  int32_t* back = nullptr;
  int64_t len = 0;
  REQUIRE(uht_symbols_load_csv(path.c_str(), 2, &back, &len) == UHT_OK);
  REQUIRE(len == 5);
  for (size_t i = 0; i < symbols.size(); ++i) CHECK(back[i] == symbols[i]);
  uht_buffer_free(back);

  CHECK(uht_symbols_load_csv(tmp.file("missing.csv").c_str(), 2, &back, &len) == UHT_ERR_IO);
}

TEST_CASE("selftest passes through the C API") { CHECK(uht_selftest(0) == 0); }
