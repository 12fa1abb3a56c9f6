#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tdc/cli/report.hpp"

namespace tdc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kParseError = 2,
  kNumericalFailure = 3,
  kNoViolation = 4,
};

struct CommandResult {
  Report report;
  int exit_code = kSuccess;
};

struct Lemma1Args {
  int count = 100;
  int max_dim = 3;
  int max_messages = 9;
  std::uint64_t seed = 0;
};
/// Standard d = 2 fixture row followed by `count` random protocols.
CommandResult cmd_verify_lemma1(const Lemma1Args& a);

struct SweepArgs {
  double lambda_min = -1.0;
  double lambda_max = 1.0;
  double step = 0.01;
  std::uint64_t seed = 0;
};
/// d = 3 Werner family processed by the qutrit fold channel.
CommandResult cmd_werner_sweep(const SweepArgs& a);

struct SynthesizeArgs {
  std::string state_file;
  std::optional<std::string> channel_file;
  std::optional<int> dim_c;  ///< default: channel output, else 2
  int restarts = 8;
  std::uint64_t seed = 0;
  std::optional<std::string> protocol_file;
};
CommandResult cmd_synthesize(const SynthesizeArgs& a);

struct SeesawArgs {
  std::string state_file;
  int dim_c = 2;
  std::optional<int> messages;  ///< default |C|^2
  int restarts = 8;
  int max_iter = 200;
  std::uint64_t seed = 0;
};
CommandResult cmd_seesaw(const SeesawArgs& a);

struct DenseArgs {
  std::string protocol_file;
};
CommandResult cmd_dense_report(const DenseArgs& a);

/// Full driver: `args[0]` is the program name. Reports go to --out or to
/// `out`; diagnostics go to `err`. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdc::cli
