#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spcart/fit_report.hpp"
#include "spcart/truncation.hpp"

namespace spcart::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitArgument = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitDegenerate = 4;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "SPCART_OUTPUT_DIR";

/// Resolve a λ token for dimension p: a decimal number or the literal
/// `1/sqrt(p)` (threshold kinds only).
double resolve_lambda(const std::string& token, TruncationKind kind, Eigen::Index p);

/// Runs one command. `args` excludes the program name. Normal output goes
/// to `out`, warnings and the structured error line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spcart::cli
