#pragma once

#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/output.hpp"

namespace qmetro::cli {

/// One row per (N, t or schedule point, mu or dB). Throws on a degenerate signal.
Table cmd_precision(const RunConfig& cfg);
/// Like cmd_precision but never throws per point; failures land in the status column.
Table cmd_scan(const RunConfig& cfg);
/// Numerical optimum over (t, mu) per N, or over t alone when mu is given or unsqueezed.
Table cmd_optimize(const RunConfig& cfg);
/// Bound coefficients and floors for the configured noise.
Table cmd_bounds(const RunConfig& cfg);

struct CheckReport {
  Table table;
  bool passed{false};
};
CheckReport cmd_check(const RunConfig& cfg);

/// fig2-squeezing, fig2-time, fig3, fig4. Unknown names throw ConfigError.
Table cmd_figure(const std::string& name, const RunConfig& cfg);
const std::vector<std::string>& figure_names();

/// Column sets per command, for --help.
std::string columns_help();

}  // namespace qmetro::cli
