#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nbell/types.hpp"

namespace nbell::cli {

enum class Command { analyze, ghz, sweep, zoo, verify };
enum class Format { json, csv, text };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitValidationFailure = 2;

struct RunConfig {
  Command command = Command::analyze;
  std::optional<std::string> ket;
  std::optional<std::string> input_path;  // "-" reads stdin
  Format format = Format::text;
  std::uint64_t seed = 0;
  bool oracle = false;
  int n = 3;  // ghz
  Real v_min = 0.0;
  Real v_max = 1.0;
  int steps = 101;
  int n_min = 2;
  int n_max = 6;
  int samples = 100;
  bool mutate_sign = false;  // verify self-test: flips the Im-term sign of the evaluator

  /// Throws InvalidArgument naming the violated constraint.
  void validate() const;
};

int cmd_analyze(const RunConfig& config, std::istream& in, std::ostream& out);
int cmd_ghz(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::istream& in, std::ostream& out);
int cmd_zoo(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);

/// Parses `args` (without the program name) and dispatches. Exit codes: 0 success,
/// 1 malformed input or usage, 2 failed validation.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace nbell::cli
