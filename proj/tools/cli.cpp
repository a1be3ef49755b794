#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "nbell/io.hpp"
#include "nbell/ket.hpp"
#include "nbell/oracle.hpp"
#include "nbell/separability.hpp"
#include "nbell/witness.hpp"

namespace nbell::cli {

namespace {

using io::format_number;
using io::json;
using io::round_significant;

struct LoadedState {
  State state;
  bool renormalized = false;
};

LoadedState load_state(const RunConfig& config, std::istream& in) {
  if (config.ket) {
    ParsedKet parsed = parse_ket(*config.ket);
    return {std::move(parsed.state), parsed.renormalized};
  }
  std::string text;
  if (*config.input_path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream file(*config.input_path);
    if (!file) throw InvalidArgument("cannot open input file '" + *config.input_path + "'");
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  return {io::state_from_text(text), false};
}

std::string verdict(const WitnessReport& report) {
  const int n = report.n_qubits;
  if (report.thresholds.empty()) return "no separability ladder for a single qubit";
  if (!report.min_excluded_separability) return "no k-separability excluded";
  const int k = *report.min_excluded_separability;
  if (k == 2) return "biseparability excluded: genuine " + std::to_string(n) + "-partite correlations";
  return "k-separability excluded for k >= " + std::to_string(k) + "; biseparability not excluded";
}

std::string optional_field(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }
std::string optional_field(const std::optional<Real>& v) { return v ? format_number(*v) : std::string(); }

void print_report_text(const WitnessReport& report, std::ostream& out) {
  out << "qubits:               " << report.n_qubits << '\n';
  out << "E_max:                " << format_number(report.e_max) << '\n';
  out << "norm squared:         " << format_number(report.norm_squared) << '\n';
  out << "violation factor r:   " << format_number(report.r) << '\n';
  out << "LHV bound violated:   " << (report.lhv_violated ? "yes" : "no") << '\n';
  out << "maximum possible r:   " << format_number(report.max_possible_r) << '\n';
  for (const auto& t : report.thresholds) {
    out << "  k=" << t.k << "  r_k_max=" << format_number(t.r_k_max) << "  "
        << (t.excluded ? "excluded" : "not excluded") << "  margin=" << format_number(t.margin) << '\n';
  }
  out << "verdict:              " << verdict(report) << '\n';
  out << "critical visibility:  "
      << (report.critical_visibility ? format_number(*report.critical_visibility) : std::string("none")) << '\n';
}

void print_validation_text(const ValidationReport& report, std::ostream& out) {
  for (const auto& c : report.checks) {
    out << "  [" << to_string(c.status) << "] " << c.name << "  value=" << format_number(c.value)
        << "  tolerance=" << format_number(c.tolerance) << '\n';
  }
}

const char* kAnalyzeHeader =
    "n,e_max,norm_squared,r,lhv_violated,max_possible_r,min_excluded_separability,critical_visibility";

void print_report_csv_row(const WitnessReport& report, std::ostream& out) {
  out << report.n_qubits << ',' << format_number(report.e_max) << ',' << format_number(report.norm_squared) << ','
      << format_number(report.r) << ',' << (report.lhv_violated ? "true" : "false") << ','
      << format_number(report.max_possible_r) << ',' << optional_field(report.min_excluded_separability) << ','
      << optional_field(report.critical_visibility) << '\n';
}

Real sign_flipped_correlation(const AntidiagonalProfile& profile, const AngleSetting& setting) {
  Real sum = 0.0;
  for (Eigen::Index k = 0; k < profile.values.size(); ++k) {
    const Real theta = kernels::antidiagonal_phase(static_cast<std::uint64_t>(k), setting.angles);
    sum += std::cos(theta) * profile.values(k).real() + std::sin(theta) * profile.values(k).imag();
  }
  return 2.0 * sum;
}

int emit_analysis(const State& state, bool renormalized, const RunConfig& config, std::ostream& out) {
  const WitnessReport report = classify(state);
  std::optional<ValidationReport> validation;
  if (config.oracle) {
    CrossValidationConfig cv;
    cv.seed = config.seed;
    validation = cross_validate(state, cv);
  }

  switch (config.format) {
    case Format::json: {
      json doc = io::to_json(report);
      doc["verdict"] = verdict(report);
      if (config.ket) doc["renormalized"] = renormalized;
      if (validation) doc["validation"] = io::to_json(*validation);
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::csv:
      out << kAnalyzeHeader << (validation ? ",oracle_passed" : "") << '\n';
      if (validation) {
        std::ostringstream row;
        print_report_csv_row(report, row);
        std::string line = row.str();
        line.pop_back();
        out << line << ',' << (validation->passed() ? "true" : "false") << '\n';
      } else {
        print_report_csv_row(report, out);
      }
      break;
    case Format::text:
      if (renormalized) out << "note: input amplitudes were renormalized\n";
      print_report_text(report, out);
      if (validation) {
        out << "oracle cross-validation: " << (validation->passed() ? "pass" : "FAIL") << '\n';
        print_validation_text(*validation, out);
      }
      break;
  }
  return validation && !validation->passed() ? kExitValidationFailure : kExitOk;
}

struct Fixture {
  std::string name;
  State state;
};

std::vector<Fixture> verify_fixtures(std::uint64_t seed) {
  std::vector<Fixture> fixtures;
  for (int n = 2; n <= 5; ++n) fixtures.push_back({"ghz-" + std::to_string(n), make_ghz(n)});

  const Real h = 1.0 / std::sqrt(2.0);
  const std::pair<Complex, Complex> plus_x{h, h};
  fixtures.push_back({"product-000", basis_state("000")});
  const std::vector<std::pair<Complex, Complex>> three_plus(3, plus_x);
  fixtures.push_back({"product-+x+x+x", product_state(three_plus)});

  Rng rng(seed);
  std::vector<PureState> singles;
  for (int q = 0; q < 4; ++q) singles.push_back(random_pure_state(1, rng));
  fixtures.push_back(
      {"product-random-4", tensor_product(std::span<const PureState>(singles),
                                          PartitionSpec::from_blocks({{1}, {2}, {3}, {4}}))});

  const PureState plus = product_state(std::span(&plus_x, 1));
  const PureState bell = parse_ket("|00> + |11>").state;
  const std::vector<PureState> factors{plus, bell};
  const PureState boundary = tensor_product(std::span<const PureState>(factors), PartitionSpec::from_blocks({{1}, {2, 3}}));
  fixtures.push_back({"biseparable-+x|bell", boundary});
  fixtures.push_back({"biseparable-+x|bell-density", DensityMatrix::from_pure(boundary)});
  fixtures.push_back({"biseparable-bell13|+x",
                      tensor_product(std::span<const PureState>(factors), PartitionSpec::from_blocks({{2}, {1, 3}}))});

  for (int i = 0; i < 50; ++i) {
    const int n = 2 + i % 3;
    if (i % 2 == 0) {
      fixtures.push_back({"random-pure-" + std::to_string(i), random_pure_state(n, rng)});
    } else {
      std::uniform_int_distribution<int> rank(1, static_cast<int>(dimension(n)));
      fixtures.push_back({"random-mixed-" + std::to_string(i), random_density_matrix(n, rank(rng), rng)});
    }
  }
  return fixtures;
}

}  // namespace

void RunConfig::validate() const {
  const bool needs_state = command == Command::analyze || command == Command::sweep;
  if (needs_state) {
    if (ket && input_path) throw InvalidArgument("--ket and --input are mutually exclusive");
    if (!ket && !input_path) throw InvalidArgument("one of --ket or --input is required");
  }
  if (command == Command::ghz && (n < 1 || n > kMaxPureQubits)) {
    throw InvalidArgument("--n must lie in 1.." + std::to_string(kMaxPureQubits));
  }
  if (command == Command::sweep) {
    if (!(0.0 <= v_min && v_min <= v_max && v_max <= 1.0)) {
      throw InvalidArgument("sweep range must satisfy 0 <= vmin <= vmax <= 1");
    }
    if (steps < 2) throw InvalidArgument("--steps must be at least 2");
  }
  if (command == Command::zoo) {
    if (n_min < 1 || n_min > n_max || n_max > kMaxPureQubits) {
      throw InvalidArgument("zoo range must satisfy 1 <= nmin <= nmax <= " + std::to_string(kMaxPureQubits));
    }
    if (samples < 0) throw InvalidArgument("--samples must be non-negative");
  }
}

int cmd_analyze(const RunConfig& config, std::istream& in, std::ostream& out) {
  const LoadedState loaded = load_state(config, in);
  return emit_analysis(loaded.state, loaded.renormalized, config, out);
}

int cmd_ghz(const RunConfig& config, std::ostream& out) { return emit_analysis(make_ghz(config.n), false, config, out); }

int cmd_sweep(const RunConfig& config, std::istream& in, std::ostream& out) {
  const LoadedState loaded = load_state(config, in);
  const AntidiagonalProfile base = antidiagonal_profile(loaded.state);
  const Real r_full = classify(base).r;

  struct Row {
    Real visibility;
    WitnessReport report;
  };
  std::vector<Row> rows;
  for (int i = 0; i < config.steps; ++i) {
    const Real v = i == config.steps - 1 ? config.v_max
                                         : config.v_min + (config.v_max - config.v_min) * i / (config.steps - 1);
    // White noise leaves only V times the antidiagonal of the input.
    AntidiagonalProfile scaled{base.n_qubits, v * base.values};
    rows.push_back({v, classify(scaled)});
  }
  std::optional<std::pair<Real, Real>> flip;
  for (std::size_t i = 1; i < rows.size() && !flip; ++i) {
    if (rows[i].report.lhv_violated != rows[i - 1].report.lhv_violated) {
      flip = std::pair{rows[i - 1].visibility, rows[i].visibility};
    }
  }

  switch (config.format) {
    case Format::json: {
      json doc;
      doc["n_qubits"] = base.n_qubits;
      doc["r_at_full_visibility"] = round_significant(r_full);
      const auto crit = critical_visibility(r_full);
      doc["critical_visibility"] = crit ? json(round_significant(*crit)) : json(nullptr);
      doc["flip"] = flip ? json{{"below", round_significant(flip->first)}, {"above", round_significant(flip->second)}}
                         : json(nullptr);
      json table = json::array();
      for (const auto& row : rows) {
        table.push_back({{"visibility", round_significant(row.visibility)},
                         {"r", round_significant(row.report.r)},
                         {"lhv_violated", row.report.lhv_violated},
                         {"min_excluded_separability", row.report.min_excluded_separability
                                                           ? json(*row.report.min_excluded_separability)
                                                           : json(nullptr)}});
      }
      doc["rows"] = std::move(table);
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::csv:
      out << "visibility,r,lhv_violated,min_excluded_separability\n";
      for (const auto& row : rows) {
        out << format_number(row.visibility) << ',' << format_number(row.report.r) << ','
            << (row.report.lhv_violated ? "true" : "false") << ','
            << optional_field(row.report.min_excluded_separability) << '\n';
      }
      break;
    case Format::text:
      out << "visibility  r  lhv_violated  min_excluded_separability\n";
      for (const auto& row : rows) {
        out << format_number(row.visibility) << "  " << format_number(row.report.r) << "  "
            << (row.report.lhv_violated ? "yes" : "no") << "  "
            << (row.report.min_excluded_separability ? std::to_string(*row.report.min_excluded_separability) : "-")
            << '\n';
      }
      if (flip) {
        out << "violation flips between V=" << format_number(flip->first) << " and V=" << format_number(flip->second)
            << '\n';
      } else {
        out << "no violation flip in range\n";
      }
      break;
  }
  return kExitOk;
}

int cmd_zoo(const RunConfig& config, std::ostream& out) {
  struct Row {
    int n;
    int k;
    Real ghz_r;
    Real r_k_max;
    Real ratio_to_previous;
    Real fully_separable;
    std::optional<Real> sampled_max;
    std::optional<bool> sampled_within;
  };
  constexpr int kMaxSampledQubits = 6;
  constexpr int kTermsPerSample = 3;

  std::vector<Row> rows;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    const Real ghz_r = classify(make_ghz(n)).r;
    for (int k = 2; k <= n; ++k) {
      Row row{n, k, ghz_r, k_sep_threshold(n, k), k_sep_threshold(n, k - 1) / k_sep_threshold(n, k),
              k_sep_threshold(n, n), std::nullopt, std::nullopt};
      if (n <= kMaxSampledQubits && config.samples > 0) {
        Rng seeds(config.seed ^ (static_cast<std::uint64_t>(n) << 32) ^ (static_cast<std::uint64_t>(k) << 16));
        Real best = 0.0;
        for (int s = 0; s < config.samples; ++s) {
          best = std::max(best, classify(sample_k_separable(n, k, kTermsPerSample, seeds())).r);
        }
        row.sampled_max = best;
        row.sampled_within = best <= row.r_k_max + 1e-9;
      }
      rows.push_back(row);
    }
  }

  switch (config.format) {
    case Format::json: {
      json table = json::array();
      for (const auto& row : rows) {
        table.push_back({{"n", row.n},
                         {"k", row.k},
                         {"ghz_r", round_significant(row.ghz_r)},
                         {"r_k_max", round_significant(row.r_k_max)},
                         {"ratio_to_previous", round_significant(row.ratio_to_previous)},
                         {"fully_separable_r_max", round_significant(row.fully_separable)},
                         {"sampled_max_r", row.sampled_max ? json(round_significant(*row.sampled_max)) : json(nullptr)},
                         {"sampled_within_threshold", row.sampled_within ? json(*row.sampled_within) : json(nullptr)}});
      }
      out << json{{"rows", std::move(table)}, {"samples", config.samples}, {"seed", config.seed}}.dump(2) << '\n';
      break;
    }
    case Format::csv:
      out << "n,k,ghz_r,r_k_max,ratio_to_previous,fully_separable_r_max,sampled_max_r,sampled_within_threshold\n";
      for (const auto& row : rows) {
        out << row.n << ',' << row.k << ',' << format_number(row.ghz_r) << ',' << format_number(row.r_k_max) << ','
            << format_number(row.ratio_to_previous) << ',' << format_number(row.fully_separable) << ','
            << optional_field(row.sampled_max) << ','
            << (row.sampled_within ? (*row.sampled_within ? "true" : "false") : "") << '\n';
      }
      break;
    case Format::text:
      out << "n  k  ghz_r  r_k_max  ratio  fully_sep  sampled_max\n";
      for (const auto& row : rows) {
        out << row.n << "  " << row.k << "  " << format_number(row.ghz_r) << "  " << format_number(row.r_k_max) << "  "
            << format_number(row.ratio_to_previous) << "  " << format_number(row.fully_separable) << "  "
            << (row.sampled_max ? format_number(*row.sampled_max) : std::string("-")) << '\n';
      }
      break;
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  CrossValidationConfig cv;
  cv.seed = config.seed;
  if (config.mutate_sign) cv.evaluator = sign_flipped_correlation;

  struct Tally {
    int pass = 0;
    int fail = 0;
    int obstructed = 0;
    Real worst = -std::numeric_limits<Real>::infinity();  // every check value grows with the violation
  };
  std::map<std::string, Tally> tallies;
  std::vector<std::string> check_order;
  json fixtures_json = json::array();
  bool all_passed = true;
  std::ostringstream lines;

  for (const auto& fixture : verify_fixtures(config.seed)) {
    const ValidationReport report = cross_validate(fixture.state, cv);
    all_passed = all_passed && report.passed();
    for (const auto& c : report.checks) {
      if (!tallies.contains(c.name)) check_order.push_back(c.name);
      auto& t = tallies[c.name];
      switch (c.status) {
        case CheckStatus::pass: ++t.pass; break;
        case CheckStatus::fail: ++t.fail; break;
        case CheckStatus::obstructed: ++t.obstructed; break;
      }
      t.worst = std::max(t.worst, c.value);
    }
    lines << "[" << (report.passed() ? "pass" : "FAIL") << "] " << fixture.name << " (n=" << report.n_qubits << ")\n";
    json entry = io::to_json(report);
    entry["name"] = fixture.name;
    fixtures_json.push_back(std::move(entry));
  }

  switch (config.format) {
    case Format::json: {
      json summary = json::array();
      for (const auto& name : check_order) {
        const auto& t = tallies[name];
        summary.push_back({{"check", name},
                           {"pass", t.pass},
                           {"fail", t.fail},
                           {"obstructed", t.obstructed},
                           {"worst", round_significant(t.worst)}});
      }
      out << json{{"passed", all_passed}, {"summary", std::move(summary)}, {"fixtures", std::move(fixtures_json)}}
                 .dump(2)
          << '\n';
      break;
    }
    case Format::csv:
      out << "check,pass,fail,obstructed,worst\n";
      for (const auto& name : check_order) {
        const auto& t = tallies[name];
        out << name << ',' << t.pass << ',' << t.fail << ',' << t.obstructed << ',' << format_number(t.worst) << '\n';
      }
      break;
    case Format::text:
      out << lines.str();
      for (const auto& name : check_order) {
        const auto& t = tallies[name];
        out << name << ": " << t.pass << " pass, " << t.fail << " fail, " << t.obstructed
            << " obstructed, worst value " << format_number(t.worst) << '\n';
      }
      out << "verify: " << (all_passed ? "PASS" : "FAIL") << '\n';
      break;
  }
  return all_passed ? kExitOk : kExitValidationFailure;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotationally invariant Bell-inequality witness for N-qubit states", "nbell"};
  app.require_subcommand(1);
  RunConfig config;

  const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};
  std::string ket;
  std::string input;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", config.format, "Output format: json, csv or text")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };
  auto add_state_input = [&](CLI::App* sub) {
    auto* k = sub->add_option("--ket", ket, "Inline ket expression, e.g. \"|000> + |111>\"");
    auto* i = sub->add_option("--input", input, "JSON state file, or - for stdin");
    k->excludes(i);
  };

  auto* analyze = app.add_subcommand("analyze", "Classify a state against the k-separability ladder");
  add_state_input(analyze);
  add_format(analyze);
  analyze->add_flag("--oracle", config.oracle, "Also run the brute-force cross-validation");
  analyze->add_option("--seed", config.seed, "Seed for oracle sampling");

  auto* ghz = app.add_subcommand("ghz", "Analyze the N-qubit GHZ state");
  ghz->add_option("--n", config.n, "Number of qubits")->required();
  add_format(ghz);
  ghz->add_flag("--oracle", config.oracle, "Also run the brute-force cross-validation");
  ghz->add_option("--seed", config.seed, "Seed for oracle sampling");

  auto* sweep = app.add_subcommand("sweep", "Tabulate r under white-noise admixture");
  add_state_input(sweep);
  add_format(sweep);
  sweep->add_option("--vmin", config.v_min, "Smallest visibility")->capture_default_str();
  sweep->add_option("--vmax", config.v_max, "Largest visibility")->capture_default_str();
  sweep->add_option("--steps", config.steps, "Number of visibilities")->capture_default_str();

  auto* zoo = app.add_subcommand("zoo", "GHZ values, threshold ladder and sampled k-separable maxima");
  add_format(zoo);
  zoo->add_option("--nmin", config.n_min, "Smallest qubit count")->capture_default_str();
  zoo->add_option("--nmax", config.n_max, "Largest qubit count")->capture_default_str();
  zoo->add_option("--samples", config.samples, "k-separable samples per (n, k)")->capture_default_str();
  zoo->add_option("--seed", config.seed, "Sampling seed");

  auto* verify = app.add_subcommand("verify", "Run the oracle cross-validation battery");
  add_format(verify);
  verify->add_option("--seed", config.seed, "Seed for random fixtures and settings");
  verify->add_flag("--mutate-sign", config.mutate_sign, "Self-test: corrupt the evaluator sign")->group("");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  if (!ket.empty()) config.ket = ket;
  if (!input.empty()) config.input_path = input;
  if (analyze->parsed()) config.command = Command::analyze;
  if (ghz->parsed()) config.command = Command::ghz;
  if (sweep->parsed()) config.command = Command::sweep;
  if (zoo->parsed()) config.command = Command::zoo;
  if (verify->parsed()) config.command = Command::verify;

  try {
    config.validate();
    switch (config.command) {
      case Command::analyze: return cmd_analyze(config, in, out);
      case Command::ghz: return cmd_ghz(config, out);
      case Command::sweep: return cmd_sweep(config, in, out);
      case Command::zoo: return cmd_zoo(config, out);
      case Command::verify: return cmd_verify(config, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace nbell::cli
