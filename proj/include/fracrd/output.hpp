#pragma once

// Writers for run artifacts: diagnostics CSV, snapshots, status document and
// a static SVG chart.

#include "fracrd/stepper.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fracrd {

inline constexpr const char* kCsvHeader = "t,linf_u,linf_v,l2_u,l2_v,mass_u,mass_v,lyapunov";

/// %.16e formatting (17 significant digits), so text round-trips exactly.
std::string format_number(double x);

/// Header plus one line per row, LF line endings.
std::string diagnostics_csv(const Trajectory& traj);

/// One line per snapshot: t followed by the nodal values of one species.
std::string snapshots_csv(const Trajectory& traj, const std::vector<double>& nodes, bool species_v);

std::string status_json(const Trajectory& traj, const std::string& scheme, const std::string& config_hash);

struct Series {
    std::string label;
    std::vector<double> y;
};

/// Polyline chart of several series sharing the x values.
std::string svg_chart(const std::string& title, const std::vector<double>& x,
                      const std::vector<Series>& series, bool log_y = false);

/// Chart of the sup norms (and the Lyapunov value when present) against t.
std::string trajectory_svg(const Trajectory& traj, const std::string& title);

/// Writes text to path (creating parent directories), binary mode.
void write_text(const std::string& path, const std::string& text);

}  // namespace fracrd
