#include "nbell/io.hpp"

#include <charconv>
#include <cmath>

namespace nbell::io {

namespace {

Complex complex_from_json(const json& pair, const std::string& where) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
    throw InvalidArgument("state JSON: " + where + " must be a [re, im] pair of numbers");
  }
  return {pair[0].get<Real>(), pair[1].get<Real>()};
}

json complex_to_json(Complex c) { return json::array({round_significant(c.real()), round_significant(c.imag())}); }

json optional_number(const std::optional<Real>& v) { return v ? json(round_significant(*v)) : json(nullptr); }

}  // namespace

std::string format_number(Real value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, ptr);
}

Real round_significant(Real value) {
  if (!std::isfinite(value)) return value;
  const std::string text = format_number(value);
  Real out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  // Avoid emitting "-0.0".
  return out == 0.0 ? 0.0 : out;
}

State state_from_json(const json& document) {
  if (!document.is_object()) throw InvalidArgument("state JSON: top level must be an object");
  if (!document.contains("n") || !document["n"].is_number_integer()) {
    throw InvalidArgument("state JSON: missing integer field \"n\"");
  }
  if (!document.contains("kind") || !document["kind"].is_string()) {
    throw InvalidArgument("state JSON: missing string field \"kind\"");
  }
  const int n = document["n"].get<int>();
  if (n < 1) throw InvalidArgument("state JSON: \"n\" must be positive");
  const std::string kind = document["kind"].get<std::string>();

  if (kind == "pure") {
    if (n > kMaxPureQubits) throw InvalidArgument("state JSON: too many qubits for a pure state");
    const auto& amps = document.value("amplitudes", json());
    if (!amps.is_array() || amps.size() != dimension(n)) {
      throw InvalidArgument("state JSON: \"amplitudes\" must hold 2^n = " + std::to_string(dimension(n)) + " entries");
    }
    VectorXc v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
      v(static_cast<Eigen::Index>(i)) = complex_from_json(amps[i], "amplitude " + std::to_string(i));
    }
    return PureState::normalized(std::move(v));
  }
  if (kind == "density") {
    if (n > kMaxDenseQubits) throw InvalidArgument("state JSON: too many qubits for a dense density matrix");
    const auto& rows = document.value("matrix", json());
    const auto dim = dimension(n);
    if (!rows.is_array() || rows.size() != dim) {
      throw InvalidArgument("state JSON: \"matrix\" must hold 2^n = " + std::to_string(dim) + " rows");
    }
    MatrixXc m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
      if (!rows[r].is_array() || rows[r].size() != dim) {
        throw InvalidArgument("state JSON: matrix row " + std::to_string(r) + " must hold " + std::to_string(dim) +
                              " entries");
      }
      for (std::size_t c = 0; c < dim; ++c) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            complex_from_json(rows[r][c], "matrix entry (" + std::to_string(r) + ", " + std::to_string(c) + ")");
      }
    }
    return DensityMatrix::from_matrix(std::move(m));
  }
  throw InvalidArgument("state JSON: \"kind\" must be \"pure\" or \"density\"");
}

State state_from_text(const std::string& text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("state JSON: ") + e.what(), e.byte);
  }
  return state_from_json(document);
}

json state_to_json(const State& state) {
  json out;
  out["n"] = n_qubits(state);
  if (const auto* pure = std::get_if<PureState>(&state)) {
    out["kind"] = "pure";
    json amps = json::array();
    for (Eigen::Index i = 0; i < pure->amplitudes().size(); ++i) {
      const Complex a = pure->amplitudes()(i);
      amps.push_back(json::array({a.real(), a.imag()}));
    }
    out["amplitudes"] = std::move(amps);
    return out;
  }
  const auto& rho = std::get<DensityMatrix>(state).matrix();
  out["kind"] = "density";
  json rows = json::array();
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < rho.cols(); ++c) row.push_back(json::array({rho(r, c).real(), rho(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  out["matrix"] = std::move(rows);
  return out;
}

json to_json(const PartitionSpec& partition) { return json(partition.blocks()); }

PartitionSpec partition_from_json(const json& document) {
  if (!document.is_array()) throw InvalidArgument("partition JSON: expected nested integer arrays");
  std::vector<std::vector<int>> blocks;
  for (const auto& block : document) {
    if (!block.is_array()) throw InvalidArgument("partition JSON: every block must be an array");
    std::vector<int> qubits;
    for (const auto& q : block) {
      if (!q.is_number_integer()) throw InvalidArgument("partition JSON: qubit indices must be integers");
      qubits.push_back(q.get<int>());
    }
    blocks.push_back(std::move(qubits));
  }
  return PartitionSpec::from_blocks(std::move(blocks));
}

json to_json(const AntidiagonalProfile& profile) {
  json values = json::array();
  for (Eigen::Index k = 0; k < profile.values.size(); ++k) values.push_back(complex_to_json(profile.values(k)));
  return values;
}

json to_json(const CorrelationTensor& tensor) {
  json values = json::array();
  for (Eigen::Index i = 0; i < tensor.components.size(); ++i) values.push_back(round_significant(tensor.components(i)));
  return values;
}

json to_json(const WitnessReport& report) {
  json thresholds = json::array();
  for (const auto& t : report.thresholds) {
    thresholds.push_back({{"k", t.k},
                          {"r_k_max", round_significant(t.r_k_max)},
                          {"excluded", t.excluded},
                          {"margin", round_significant(t.margin)}});
  }
  json out;
  out["n_qubits"] = report.n_qubits;
  out["e_max"] = round_significant(report.e_max);
  out["norm_squared"] = round_significant(report.norm_squared);
  out["r"] = round_significant(report.r);
  out["lhv_violated"] = report.lhv_violated;
  out["max_possible_r"] = round_significant(report.max_possible_r);
  out["thresholds"] = std::move(thresholds);
  out["min_excluded_separability"] =
      report.min_excluded_separability ? json(*report.min_excluded_separability) : json(nullptr);
  out["critical_visibility"] = optional_number(report.critical_visibility);
  return out;
}

json to_json(const ValidationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"value", round_significant(c.value)},
                      {"tolerance", round_significant(c.tolerance)},
                      {"status", to_string(c.status)}});
  }
  return {{"n_qubits", report.n_qubits}, {"passed", report.passed()}, {"checks", std::move(checks)}};
}

}  // namespace nbell::io
