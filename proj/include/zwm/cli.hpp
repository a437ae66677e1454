// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zwm/smallmat.hpp"

namespace zwm {

// process exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitComputation = 2;
inline constexpr int kExitIo = 3;

class IoError : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

/// One row of a transmittance sweep.
struct SweepRecord {
    double T_power = 0.0;
    double t_amp = 0.0;
    double V = 0.0;
    double D = 0.0;
    double p_err_min = 0.0;
    double p_inc_opt = 0.0;
    std::optional<double> fidelity;
    std::optional<bool> chain_holds;
};

/// Fixed column order `T_power,t_amp,V,D,p_err_min,p_inc_opt[,fidelity,
/// chain_holds]`, 6-decimal fixed point, LF line endings. The leading comment
/// lines state the axis convention.
std::string sweep_csv(const std::vector<SweepRecord>& rows,
                      const std::vector<std::string>& header_comments);

std::string sweep_json_text(const std::vector<SweepRecord>& rows, const std::string& axis);

struct SvgSeries {
    std::string name;
    std::string color;
    std::vector<std::pair<double, double>> points;  // in [0,1] x [0,1]
};

/// Dependency-free static SVG: axes, ticks, polylines, legend.
std::string render_svg(const std::vector<SvgSeries>& series, const std::string& x_label,
                       const std::string& y_label, const std::string& title);

/// Reference curve loader for overlays: two numeric CSV columns; '#' comments
/// and blank lines are skipped; anything else is a parse error carrying the
/// line number.
std::vector<std::pair<double, double>> parse_reference_csv(const std::string& text);

/// Entry point used by the zwm binary and by tests; args exclude argv[0].
int run_cli(const std::vector<std::string>& args);

}  // namespace zwm
