#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "epps/bahadur.hpp"
#include "epps/io.hpp"
#include "epps/spectral.hpp"

namespace epps {

struct StatReport {
  std::size_t n = 0;
  double beta = 0.0;
  double statistic = 0.0;

  friend bool operator==(const StatReport&, const StatReport&) = default;
};

struct PValueReport {
  std::size_t n = 0;
  double beta = 0.0;
  double statistic = 0.0;
  double p_value = 0.0;
  int mc_samples = 0;
  double remainder_shift = 0.0;
  SpectrumProtocol protocol;

  friend bool operator==(const PValueReport&, const PValueReport&) = default;
};

inline void to_json(nlohmann::json& j, const SpectrumProtocol& p) {
  j = {{"n_points", p.n_points}, {"runs", p.runs}, {"seed", p.seed}, {"top_m", p.top_m}};
}
inline void from_json(const nlohmann::json& j, SpectrumProtocol& p) {
  j.at("n_points").get_to(p.n_points);
  j.at("runs").get_to(p.runs);
  j.at("seed").get_to(p.seed);
  j.at("top_m").get_to(p.top_m);
}

inline void to_json(nlohmann::json& j, const SpectrumResult& r) {
  j = {{"beta", r.beta},
       {"protocol", r.protocol},
       {"eigenvalues", r.eigenvalues},
       {"per_run", r.per_run},
       {"run_eigenvalue_sums", r.run_eigenvalue_sums},
       {"run_matrix_traces", r.run_matrix_traces},
       {"trace_estimate", r.trace_estimate},
       {"clipped_negatives", r.clipped_negatives}};
}
inline void from_json(const nlohmann::json& j, SpectrumResult& r) {
  j.at("beta").get_to(r.beta);
  j.at("protocol").get_to(r.protocol);
  j.at("eigenvalues").get_to(r.eigenvalues);
  j.at("per_run").get_to(r.per_run);
  j.at("run_eigenvalue_sums").get_to(r.run_eigenvalue_sums);
  j.at("run_matrix_traces").get_to(r.run_matrix_traces);
  j.at("trace_estimate").get_to(r.trace_estimate);
  j.at("clipped_negatives").get_to(r.clipped_negatives);
}

inline void to_json(nlohmann::json& j, const SlopeReport& r) {
  j = {{"family", r.family},       {"beta", r.beta},           {"delta_beta", r.delta_beta},
       {"lambda1", r.lambda1},     {"local_index", r.local_index}, {"lrt_index", r.lrt_index},
       {"efficiency", r.efficiency}, {"protocol", r.protocol}};
}
inline void from_json(const nlohmann::json& j, SlopeReport& r) {
  j.at("family").get_to(r.family);
  j.at("beta").get_to(r.beta);
  j.at("delta_beta").get_to(r.delta_beta);
  j.at("lambda1").get_to(r.lambda1);
  j.at("local_index").get_to(r.local_index);
  j.at("lrt_index").get_to(r.lrt_index);
  j.at("efficiency").get_to(r.efficiency);
  j.at("protocol").get_to(r.protocol);
}

inline void to_json(nlohmann::json& j, const StatReport& r) {
  j = {{"n", r.n}, {"beta", r.beta}, {"statistic", r.statistic}};
}
inline void from_json(const nlohmann::json& j, StatReport& r) {
  j.at("n").get_to(r.n);
  j.at("beta").get_to(r.beta);
  j.at("statistic").get_to(r.statistic);
}

inline void to_json(nlohmann::json& j, const PValueReport& r) {
  j = {{"n", r.n},
       {"beta", r.beta},
       {"statistic", r.statistic},
       {"p_value", r.p_value},
       {"mc_samples", r.mc_samples},
       {"remainder_shift", r.remainder_shift},
       {"protocol", r.protocol}};
}
inline void from_json(const nlohmann::json& j, PValueReport& r) {
  j.at("n").get_to(r.n);
  j.at("beta").get_to(r.beta);
  j.at("statistic").get_to(r.statistic);
  j.at("p_value").get_to(r.p_value);
  j.at("mc_samples").get_to(r.mc_samples);
  j.at("remainder_shift").get_to(r.remainder_shift);
  j.at("protocol").get_to(r.protocol);
}

// CSV layouts.

inline std::string stat_csv(const StatReport& r) {
  return "n,beta,statistic\n" + std::to_string(r.n) + "," + io::format_number(r.beta) + "," +
         io::format_number(r.statistic) + "\n";
}

inline std::string pvalue_csv(const PValueReport& r) {
  return "n,beta,statistic,p_value,mc_samples,top_m\n" + std::to_string(r.n) + "," + io::format_number(r.beta) +
         "," + io::format_number(r.statistic) + "," + io::format_number(r.p_value) + "," +
         std::to_string(r.mc_samples) + "," + std::to_string(r.protocol.top_m) + "\n";
}

// One row per eigenvalue rank (lambda1, lambda2, ...), one column per beta.
inline std::string spectrum_table_csv(const std::vector<SpectrumResult>& results) {
  std::string out = "lambda";
  for (const auto& r : results) out += "," + io::format_number(r.beta);
  out += "\n";
  std::size_t rows = 0;
  for (const auto& r : results) rows = std::max(rows, r.eigenvalues.size());
  for (std::size_t k = 0; k < rows; ++k) {
    out += "lambda" + std::to_string(k + 1);
    for (const auto& r : results) out += "," + (k < r.eigenvalues.size() ? io::format_number(r.eigenvalues[k]) : "");
    out += "\n";
  }
  return out;
}

inline std::string slope_csv(const std::vector<SlopeReport>& rows) {
  std::string out = "family,beta,delta_beta,lambda1,local_index,lrt_index,efficiency,n_points,runs,seed\n";
  for (const auto& r : rows)
    out += r.family + "," + io::format_number(r.beta) + "," + io::format_number(r.delta_beta) + "," +
           io::format_number(r.lambda1) + "," + io::format_number(r.local_index) + "," +
           io::format_number(r.lrt_index) + "," + io::format_number(r.efficiency) + "," +
           std::to_string(r.protocol.n_points) + "," + std::to_string(r.protocol.runs) + "," +
           std::to_string(r.protocol.seed) + "\n";
  return out;
}

// One row per family, one column per beta; cells are efficiencies.
inline std::string efficiency_table_csv(const std::vector<std::string>& families, const std::vector<double>& betas,
                                        const std::vector<SlopeReport>& rows) {
  std::string out = "alternative";
  for (double b : betas) out += "," + io::format_number(b);
  out += "\n";
  for (const auto& f : families) {
    out += f;
    for (double b : betas) {
      out += ",";
      for (const auto& r : rows)
        if (r.family == f && r.beta == b) out += io::format_number(r.efficiency);
    }
    out += "\n";
  }
  return out;
}

}  // namespace epps
