#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padlab::lab {

/// Exit codes of the command line.
enum ExitCode : int { kPass = 0, kVerifiedFailure = 1, kUsageError = 2 };

/// Runs `padlab <args...>` (args exclude the program name) and returns the
/// exit code. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Floats in CSV output: 12 significant digits.
std::string csv_real(double x);

/// 4 N^3 (D+3)^{log2 N} e^{-(D - 3/2) eps} + 12 eps, the truncated-exponential
/// cut bound for a probe of radius r.
double texp_cut_bound(double N, double D, double eps);
/// Hypotheses of that bound: eps in (0, 1), D > 1/eps + 1/2, r > 1.
bool texp_cut_regime(double r, double D, double eps);

/// 20 r p, the truncated-geometric cut bound.
double tgeo_cut_bound(double r, double p);
/// Hypotheses of that bound: r >= 9 and p <= 1/(4b + 5).
bool tgeo_cut_regime(double r, double b, double p);

}  // namespace padlab::lab
