// Command-line front end: statistic, spectra, slopes, efficiency tables and
// p-values. Exit codes: 0 success, 2 input/usage error, 3 degenerate data,
// 4 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epps/epps.hpp"
#include "epps/report.hpp"

namespace {

enum ExitCode { kOk = 0, kInputError = 2, kDegenerate = 3, kNumerical = 4 };

const std::vector<double> kTableBetas{0.25, 0.5, 0.75, 1.0, 2.0, 3.0, 5.0, 10.0};

struct Options {
  std::vector<double> betas;
  std::string input;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 42;
  int n_points = 1000;
  int runs = 10;
  std::optional<int> top_m;
  int mc_samples = 100000;
  std::vector<std::string> alts;
  epps::QuadratureConfig quad;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw epps::InputError("cannot open output file '" + o.out + "'");
  f << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

epps::SpectrumProtocol protocol(const Options& o, int default_top_m = 5) {
  epps::SpectrumProtocol p;
  p.n_points = o.n_points;
  p.runs = o.runs;
  p.seed = o.seed;
  p.top_m = o.top_m.value_or(default_top_m);
  p.validate();
  return p;
}

epps::Sample load_sample(const Options& o) {
  std::ifstream f(o.input);
  if (!f) throw epps::InputError("cannot read input file '" + o.input + "'");
  return epps::Sample(epps::io::read_observations(f));
}

double single_beta(const Options& o) {
  if (o.betas.size() != 1) throw epps::InputError("this subcommand takes exactly one --beta");
  return o.betas.front();
}

void cmd_stat(const Options& o) {
  const epps::TuningParam tp(single_beta(o));
  const epps::Sample s = load_sample(o);
  const epps::StatReport rep{s.size(), tp.beta(), epps::epps_pulley_statistic(s, tp)};
  emit(o, o.format == "json" ? dump(rep) : epps::stat_csv(rep));
}

void cmd_eigen(const Options& o, const std::vector<double>& betas) {
  const epps::SpectrumProtocol p = protocol(o);
  std::vector<epps::SpectrumResult> results;
  for (double b : betas) results.push_back(epps::nystrom_spectrum(epps::TuningParam(b), p));
  emit(o, o.format == "json" ? dump(results) : epps::spectrum_table_csv(results));
}

std::vector<epps::SlopeReport> slope_rows(const Options& o, const std::vector<epps::AlternativeFamily>& families,
                                          const std::vector<double>& betas) {
  epps::SpectrumProtocol p = protocol(o);
  p.top_m = 1;
  std::vector<double> lambdas;
  for (double b : betas) lambdas.push_back(epps::lambda1(epps::TuningParam(b), p));
  std::vector<epps::SlopeReport> rows;
  for (const auto& f : families) {
    const double lrt = epps::lrt_local_index(f, o.quad);
    for (std::size_t i = 0; i < betas.size(); ++i)
      rows.push_back(epps::slope_report(f, epps::TuningParam(betas[i]), lambdas[i], lrt, p, o.quad));
  }
  return rows;
}

std::vector<epps::AlternativeFamily> families(const Options& o) {
  if (o.alts.empty()) return epps::table2_families();
  std::vector<epps::AlternativeFamily> out;
  for (const auto& a : o.alts) out.push_back(epps::family_from_name(a));
  return out;
}

void cmd_slope(const Options& o) {
  if (o.alts.empty()) throw epps::InputError("slope requires --alt");
  if (o.betas.empty()) throw epps::InputError("slope requires --beta");
  const auto rows = slope_rows(o, families(o), o.betas);
  emit(o, o.format == "json" ? dump(rows) : epps::slope_csv(rows));
}

void cmd_table2(const Options& o) {
  const auto fams = families(o);
  const std::vector<double> betas = o.betas.empty() ? kTableBetas : o.betas;
  const auto rows = slope_rows(o, fams, betas);
  if (o.format == "json") {
    emit(o, dump(rows));
    return;
  }
  std::vector<std::string> names;
  for (const auto& f : fams) names.push_back(f.name);
  emit(o, epps::efficiency_table_csv(names, betas, rows));
}

void cmd_pvalue(const Options& o) {
  const epps::TuningParam tp(single_beta(o));
  const epps::Sample s = load_sample(o);
  const epps::SpectrumProtocol p = protocol(o, 20);
  if (o.mc_samples < 1) throw epps::InputError("--mc-samples must be >= 1");
  const epps::NullDistribution null = epps::make_null_distribution(tp, p, o.mc_samples, o.quad);
  epps::PValueReport rep;
  rep.n = s.size();
  rep.beta = tp.beta();
  rep.statistic = epps::epps_pulley_statistic(s, tp);
  rep.p_value = null.p_value(rep.statistic);
  rep.mc_samples = o.mc_samples;
  rep.remainder_shift = null.remainder_shift();
  rep.protocol = p;
  emit(o, o.format == "json" ? dump(rep) : epps::pvalue_csv(rep));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epps-Pulley normality test: statistic, covariance spectrum and Bahadur efficiencies"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("EP_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: EP_SEED must be a non-negative integer\n";
      return kInputError;
    }
  }

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "Write output to PATH instead of stdout");
  };
  auto spectral_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Master seed (default 42, or EP_SEED)");
    sub->add_option("--n-points", o.n_points, "Nystrom nodes per run")->check(CLI::PositiveNumber);
    sub->add_option("--runs", o.runs, "Independent Nystrom runs")->check(CLI::PositiveNumber);
  };
  auto quad_flags = [&](CLI::App* sub) {
    sub->add_option("--radius", o.quad.truncation_radius, "Quadrature truncation radius")
        ->check(CLI::Range(8.0, 1e6));
    sub->add_option("--abs-tol", o.quad.abs_tol, "Quadrature absolute tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--rel-tol", o.quad.rel_tol, "Quadrature relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-subdivisions", o.quad.max_subdivisions, "Quadrature subdivision budget")
        ->check(CLI::PositiveNumber);
  };

  auto* stat = app.add_subcommand("stat", "Epps-Pulley statistic of a data file");
  stat->add_option("--input,-i", o.input, "Data file, one value per line")->required();
  stat->add_option("--beta", o.betas, "Tuning parameter")->required()->expected(1);
  common(stat);

  auto* eigen = app.add_subcommand("eigen", "Nystrom spectrum of the covariance operator");
  eigen->add_option("--beta", o.betas, "Tuning parameters (comma separated)")->required()->delimiter(',');
  eigen->add_option("--top-m", o.top_m, "Eigenvalues reported per beta (default 5)")->check(CLI::PositiveNumber);
  common(eigen);

  auto* table1 = app.add_subcommand("table1", "Top five eigenvalues on the standard beta grid");
  common(table1);

  auto* slope = app.add_subcommand("slope", "Local Bahadur slope and efficiency");
  slope->add_option("--alt", o.alts, "Alternative: lehmann, lp1, lp2, contam:MU:SIGMA2")->required();
  slope->add_option("--beta", o.betas, "Tuning parameters (comma separated)")->required()->delimiter(',');
  common(slope);
  quad_flags(slope);

  auto* table2 = app.add_subcommand("table2", "Efficiency table for the six standard alternatives");
  table2->add_option("--alt", o.alts, "Restrict to these alternatives");
  table2->add_option("--beta", o.betas, "Restrict to these betas (comma separated)")->delimiter(',');
  common(table2);
  quad_flags(table2);

  auto* pvalue = app.add_subcommand("pvalue", "Statistic and asymptotic Monte Carlo p-value");
  pvalue->add_option("--input,-i", o.input, "Data file, one value per line")->required();
  pvalue->add_option("--beta", o.betas, "Tuning parameter")->required()->expected(1);
  pvalue->add_option("--mc-samples", o.mc_samples, "Monte Carlo draws from the null law");
  pvalue->add_option("--top-m", o.top_m, "Eigenvalues used as chi-square weights (default 20)")
      ->check(CLI::PositiveNumber);
  common(pvalue);
  quad_flags(pvalue);

  for (auto* sub : {eigen, table1, slope, table2, pvalue}) spectral_flags(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*stat) cmd_stat(o);
    else if (*eigen) cmd_eigen(o, o.betas);
    else if (*table1) cmd_eigen(o, kTableBetas);
    else if (*slope) cmd_slope(o);
    else if (*table2) cmd_table2(o);
    else if (*pvalue) cmd_pvalue(o);
  } catch (const epps::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const epps::DegenerateSampleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDegenerate;
  } catch (const epps::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}
