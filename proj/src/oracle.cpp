#include "nbell/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "nbell/witness.hpp"

namespace nbell {

namespace {

std::uint64_t checked_power(std::uint64_t base, int exponent) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

// Walks a product grid. Axis 1 enters every term as e^{i a_1}, so it is pulled out:
// for each point of axes 2..N the partial sum S = sum_k rho_k prod_{j>=2} e^{+-i a_j}
// is built once and E(a_1, ...) = 2 Re(e^{i a_1} S) for every a_1 on the grid.
class ProductGrid {
public:
  ProductGrid(const AntidiagonalProfile& profile, std::vector<std::vector<Real>> axes)
      : rho_(profile.values), n_(profile.n_qubits), axes_(std::move(axes)) {
    const auto terms = static_cast<std::size_t>(rho_.size());
    flipped_.assign(static_cast<std::size_t>(n_), std::vector<char>(terms, 0));
    for (int j = 2; j <= n_; ++j) {
      for (std::size_t k = 0; k < terms; ++k) flipped_[static_cast<std::size_t>(j - 1)][k] = (k >> (n_ - j)) & 1u;
    }
    phases_.resize(axes_.size());
    for (std::size_t j = 0; j < axes_.size(); ++j) {
      for (Real a : axes_[j]) phases_[j].emplace_back(std::cos(a), std::sin(a));
    }
    partial_.assign(static_cast<std::size_t>(n_), VectorXc::Ones(rho_.size()));
    index_.assign(static_cast<std::size_t>(n_), 0);
  }

  // visit(index, value) for every grid point, with index[j] the position on axis j+1.
  template <typename Visit>
  void for_each(Visit&& visit) {
    descend(2, visit);
  }

private:
  template <typename Visit>
  void descend(int axis, Visit& visit) {
    if (axis > n_) {
      const Complex s = rho_.cwiseProduct(partial_[static_cast<std::size_t>(n_ - 1)]).sum();
      const auto& first = phases_[0];
      for (std::size_t i = 0; i < first.size(); ++i) {
        index_[0] = i;
        visit(index_, 2.0 * (first[i] * s).real());
      }
      return;
    }
    const auto j = static_cast<std::size_t>(axis - 1);
    // partial_[j] holds the product over axes 2..j+1.
    const VectorXc& above = partial_[j - 1];
    VectorXc& here = partial_[j];
    const auto& flips = flipped_[j];
    for (std::size_t i = 0; i < phases_[j].size(); ++i) {
      index_[j] = i;
      const Complex p = phases_[j][i];
      const Complex pc = std::conj(p);
      for (Eigen::Index k = 0; k < rho_.size(); ++k) here(k) = above(k) * (flips[static_cast<std::size_t>(k)] ? pc : p);
      descend(axis + 1, visit);
    }
  }

  const VectorXc& rho_;
  int n_;
  std::vector<std::vector<Real>> axes_;
  std::vector<std::vector<Complex>> phases_;
  std::vector<std::vector<char>> flipped_;
  std::vector<VectorXc> partial_;
  std::vector<std::size_t> index_;
};

Real relative_difference(Real a, Real b) {
  const Real scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

void GridSearchConfig::validate() const {
  if (points_per_axis < 8) throw InvalidArgument("grid search: points_per_axis must be at least 8");
  if (refinement_rounds < 0) throw InvalidArgument("grid search: refinement_rounds must be non-negative");
  if (!(refinement_shrink > 0.0 && refinement_shrink < 1.0)) {
    throw InvalidArgument("grid search: refinement_shrink must lie in (0, 1)");
  }
}

std::uint64_t GridSearchConfig::evaluations_for(int n_qubits) const {
  const std::uint64_t per_round = checked_power(static_cast<std::uint64_t>(points_per_axis), n_qubits);
  const auto rounds = static_cast<std::uint64_t>(refinement_rounds) + 1;
  return per_round > UINT64_MAX / rounds ? UINT64_MAX : per_round * rounds;
}

GridSearchConfig GridSearchConfig::for_qubits(int n_qubits) {
  GridSearchConfig config;
  while (config.points_per_axis > 8 && config.evaluations_for(n_qubits) > config.max_evaluations) {
    --config.points_per_axis;
  }
  return config;
}

GridMaximum maximize_grid(const AntidiagonalProfile& profile, const GridSearchConfig& config) {
  config.validate();
  const int n = profile.n_qubits;
  const std::uint64_t budget = config.evaluations_for(n);
  if (budget > config.max_evaluations) {
    throw BudgetExceeded("maximize_grid: " + std::to_string(budget) + " evaluations exceed the cap of " +
                         std::to_string(config.max_evaluations));
  }

  const int points = config.points_per_axis;
  GridMaximum best;
  best.setting.angles = VectorXr::Zero(n);
  best.value = -std::numeric_limits<Real>::infinity();

  Real width = kTwoPi;
  for (int round = 0; round <= config.refinement_rounds; ++round) {
    std::vector<std::vector<Real>> axes(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      auto& axis = axes[static_cast<std::size_t>(j)];
      axis.resize(static_cast<std::size_t>(points));
      if (round == 0) {
        for (int i = 0; i < points; ++i) axis[static_cast<std::size_t>(i)] = kTwoPi * i / points;
      } else {
        const Real lo = best.setting.angles(j) - width / 2;
        for (int i = 0; i < points; ++i) axis[static_cast<std::size_t>(i)] = lo + width * i / (points - 1);
      }
    }

    bool found = false;
    std::vector<std::size_t> best_index;
    Real round_best = best.value;
    ProductGrid grid(profile, axes);
    grid.for_each([&](const std::vector<std::size_t>& index, Real value) {
      if (value > round_best ||
          (found && value == round_best && std::lexicographical_compare(index.begin(), index.end(),
                                                                         best_index.begin(), best_index.end()))) {
        round_best = value;
        best_index = index;
        found = true;
      }
    });
    best.evaluations += checked_power(static_cast<std::uint64_t>(points), n);
    if (found) {
      best.value = round_best;
      for (int j = 0; j < n; ++j) {
        best.setting.angles(j) = axes[static_cast<std::size_t>(j)][best_index[static_cast<std::size_t>(j)]];
      }
    }
    width *= config.refinement_shrink;
  }

  for (int j = 0; j < n; ++j) best.setting.angles(j) = wrap_angle(best.setting.angles(j));
  best.value = correlation_value(profile, best.setting);
  return best;
}

GridMaximum maximize_grid(const State& state, const GridSearchConfig& config) {
  return maximize_grid(antidiagonal_profile(state), config);
}

Real norm_squared_quadrature(const AntidiagonalProfile& profile, int points_per_axis, std::uint64_t max_evaluations) {
  if (points_per_axis < 5) throw InvalidArgument("norm_squared_quadrature: need at least 5 points per axis");
  const int n = profile.n_qubits;
  const std::uint64_t evaluations = checked_power(static_cast<std::uint64_t>(points_per_axis), n);
  if (evaluations > max_evaluations) {
    throw BudgetExceeded("norm_squared_quadrature: " + std::to_string(evaluations) +
                         " evaluations exceed the cap of " + std::to_string(max_evaluations));
  }
  std::vector<Real> axis(static_cast<std::size_t>(points_per_axis));
  for (int i = 0; i < points_per_axis; ++i) axis[static_cast<std::size_t>(i)] = kTwoPi * i / points_per_axis;
  ProductGrid grid(profile, std::vector<std::vector<Real>>(static_cast<std::size_t>(n), axis));

  Real sum = 0.0;
  grid.for_each([&](const std::vector<std::size_t>&, Real value) { sum += value * value; });
  return sum * std::pow(kTwoPi / points_per_axis, n);
}

Real norm_squared_quadrature(const State& state, int points_per_axis, std::uint64_t max_evaluations) {
  return norm_squared_quadrature(antidiagonal_profile(state), points_per_axis, max_evaluations);
}

PhaseObstruction phase_obstruction(const AntidiagonalProfile& profile, Real modulus_floor, Real defect_tolerance) {
  const int n = profile.n_qubits;
  std::vector<std::uint64_t> support;
  for (Eigen::Index k = 0; k < profile.values.size(); ++k) {
    if (std::abs(profile.values(k)) > modulus_floor) support.push_back(static_cast<std::uint64_t>(k));
  }

  // (s_a + s_b) / 2 has entries in {-1, 0, 1} on qubits 2..N; key it in base 3.
  auto pair_key = [n](std::uint64_t a, std::uint64_t b) {
    std::uint64_t key = 0;
    for (int j = 2; j <= n; ++j) {
      const int sa = ((a >> (n - j)) & 1u) ? -1 : 1;
      const int sb = ((b >> (n - j)) & 1u) ? -1 : 1;
      key = key * 3 + static_cast<std::uint64_t>((sa + sb) / 2 + 1);
    }
    return key;
  };

  std::map<std::uint64_t, std::vector<Complex>> groups;
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      const auto a = support[i];
      const auto b = support[j];
      const Complex phase = profile.values(static_cast<Eigen::Index>(a)) * profile.values(static_cast<Eigen::Index>(b));
      groups[pair_key(a, b)].push_back(phase / std::abs(phase));
    }
  }

  PhaseObstruction out;
  for (const auto& [key, phases] : groups) {
    for (std::size_t i = 0; i < phases.size(); ++i) {
      for (std::size_t j = i + 1; j < phases.size(); ++j) {
        out.defect = std::max(out.defect, std::abs(std::arg(phases[i] * std::conj(phases[j]))));
      }
    }
  }
  out.certified = out.defect > defect_tolerance;
  return out;
}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::obstructed:
      return "obstructed";
  }
  return "fail";
}

bool ValidationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::fail; });
}

ValidationReport cross_validate(const State& state, const CrossValidationConfig& config) {
  const int n = n_qubits(state);
  if (n > kMaxOracleQubits) {
    throw InvalidArgument("cross_validate: oracles are limited to " + std::to_string(kMaxOracleQubits) + " qubits");
  }
  const AntidiagonalProfile profile = antidiagonal_profile(state);
  const CorrelationEvaluator evaluate =
      config.evaluator ? config.evaluator
                       : CorrelationEvaluator([](const AntidiagonalProfile& p, const AngleSetting& s) {
                           return correlation_value(p, s);
                         });

  ValidationReport report;
  report.n_qubits = n;
  auto add = [&](std::string name, Real value, Real tolerance, bool ok) {
    report.checks.push_back({std::move(name), value, tolerance, ok ? CheckStatus::pass : CheckStatus::fail});
  };

  Rng rng(config.seed);
  std::uniform_real_distribution<Real> angle(0.0, kTwoPi);
  Real trace_error = 0.0;
  AngleSetting setting{VectorXr(n)};
  for (int s = 0; s < config.sampled_settings; ++s) {
    for (int j = 0; j < n; ++j) setting.angles(j) = angle(rng);
    trace_error = std::max(trace_error, std::abs(evaluate(profile, setting) - correlation_value_trace(state, setting)));
  }
  add("trace_equivalence", trace_error, kTraceTolerance, trace_error <= kTraceTolerance);

  const Real norm_closed = norm_squared_antidiagonal(profile);
  const Real dual = relative_difference(norm_closed, norm_squared_tensor(correlation_tensor(profile)));
  add("dual_formula", dual, kNormRelativeTolerance, dual <= kNormRelativeTolerance);

  const Real quad = relative_difference(norm_closed, norm_squared_quadrature(profile, config.quadrature_points));
  add("quadrature", quad, kNormRelativeTolerance, quad <= kNormRelativeTolerance);

  const GridSearchConfig grid = config.grid ? *config.grid : GridSearchConfig::for_qubits(n);
  const Real closed_max = e_max(profile);
  const GridMaximum found = maximize_grid(profile, grid);
  const Real excess = found.value - closed_max;
  add("grid_soundness", excess, kSoundnessTolerance, excess <= kSoundnessTolerance);

  const Real gap = closed_max - found.value;
  CheckStatus attain = CheckStatus::pass;
  if (gap > kAttainabilityTolerance) {
    attain = phase_obstruction(profile).certified ? CheckStatus::obstructed : CheckStatus::fail;
  }
  report.checks.push_back({"grid_attainability", gap, kAttainabilityTolerance, attain});
  return report;
}

}  // namespace nbell
