#include "fracrd/output.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracrd {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

std::string diagnostics_csv(const Trajectory& traj) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : traj.rows) {
        const double cols[] = {r.t, r.linf_u, r.linf_v, r.l2_u, r.l2_v, r.mass_u, r.mass_v};
        for (double c : cols) {
            out += format_number(c);
            out += ',';
        }
        if (r.lyapunov) out += format_number(*r.lyapunov);
        out += '\n';
    }
    return out;
}

std::string snapshots_csv(const Trajectory& traj, const std::vector<double>& nodes, bool species_v) {
    std::string out = "t";
    for (double x : nodes) out += ",x=" + format_number(x);
    out += '\n';
    for (const auto& s : traj.snapshots) {
        out += format_number(s.t);
        for (double v : species_v ? s.v : s.u) out += "," + format_number(v);
        out += '\n';
    }
    return out;
}

std::string status_json(const Trajectory& traj, const std::string& scheme, const std::string& config_hash) {
    nlohmann::ordered_json j;
    j["status"] = to_string(traj.status);
    j["message"] = traj.message;
    j["scheme"] = scheme;
    j["regime"] = to_string(traj.regime.tag);
    auto m = nlohmann::ordered_json::array();
    for (auto t : traj.regime.matches) m.push_back(to_string(t));
    j["regime_matches"] = m;
    j["steps_taken"] = traj.steps_taken;
    j["rows"] = traj.rows.size();
    // The last CSV row is the one that tripped the detector when status is
    // blowup_detected.
    j["final_row_flagged"] = traj.status != Status::completed;
    j["t_final"] = traj.rows.empty() ? 0.0 : traj.rows.back().t;
    j["t_max_lower_bound"] = traj.t_max_lower_bound;
    j["Lambda"] = traj.Lambda;
    j["min_before_clamp"] = traj.min_before_clamp;
    j["history_ops"] = traj.history_ops;
    j["config_hash"] = config_hash;
    return j.dump(2) + "\n";
}

std::string svg_chart(const std::string& title, const std::vector<double>& x,
                      const std::vector<Series>& series, bool log_y) {
    constexpr double W = 720, H = 420, left = 70, right = 160, top = 40, bottom = 50;
    static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    auto ty = [&](double y) { return log_y ? std::log10(std::max(y, 1e-300)) : y; };

    double x0 = x.empty() ? 0.0 : x.front(), x1 = x.empty() ? 1.0 : x.back();
    double y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : series) {
        for (double y : s.y) {
            if (!std::isfinite(y)) continue;
            y0 = std::min(y0, ty(y));
            y1 = std::max(y1, ty(y));
        }
    }
    if (!(y0 < y1)) {
        y0 = std::isfinite(y0) ? y0 - 1.0 : 0.0;
        y1 = std::isfinite(y1) ? y1 + 1.0 : 1.0;
    }
    if (!(x0 < x1)) x1 = x0 + 1.0;
    auto px = [&](double v) { return left + (v - x0) / (x1 - x0) * (W - left - right); };
    auto py = [&](double v) { return H - bottom - (ty(v) - y0) / (y1 - y0) * (H - top - bottom); };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << W - left - right << "\" height=\""
      << H - top - bottom << "\" fill=\"none\" stroke=\"#444\"/>\n";
    char buf[64];
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0;
        const double yv = y0 + (y1 - y0) * k / 4.0;
        std::snprintf(buf, sizeof buf, "%.3g", xv);
        o << "<text x=\"" << px(xv) << "\" y=\"" << H - bottom + 18 << "\" text-anchor=\"middle\">" << buf << "</text>\n";
        std::snprintf(buf, sizeof buf, log_y ? "1e%.2g" : "%.3g", yv);
        const double yy = H - bottom - (yv - y0) / (y1 - y0) * (H - top - bottom);
        o << "<text x=\"" << left - 6 << "\" y=\"" << yy + 4 << "\" text-anchor=\"end\">" << buf << "</text>\n";
    }
    o << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">t</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* col = colours[s % 5];
        o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        const std::size_t n = std::min(x.size(), series[s].y.size());
        // Thin very long series; the chart is a few hundred pixels wide.
        const std::size_t stride = std::max<std::size_t>(1, n / 2000);
        for (std::size_t i = 0; i < n; i += stride) {
            if (!std::isfinite(series[s].y[i])) continue;
            o << px(x[i]) << ',' << py(series[s].y[i]) << ' ';
        }
        if (n > 0 && std::isfinite(series[s].y[n - 1])) o << px(x[n - 1]) << ',' << py(series[s].y[n - 1]);
        o << "\"/>\n";
        const double ly = top + 16 + 18.0 * static_cast<double>(s);
        o << "<line x1=\"" << W - right + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << W - right + 32
          << "\" y2=\"" << ly - 4 << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << W - right + 38 << "\" y=\"" << ly << "\">" << series[s].label << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string trajectory_svg(const Trajectory& traj, const std::string& title) {
    std::vector<double> t;
    Series su{"linf_u", {}}, sv{"linf_v", {}}, sl{"lyapunov", {}};
    for (const auto& r : traj.rows) {
        t.push_back(r.t);
        su.y.push_back(r.linf_u);
        sv.y.push_back(r.linf_v);
        if (r.lyapunov) sl.y.push_back(*r.lyapunov);
    }
    std::vector<Series> all{su, sv};
    if (!sl.y.empty()) all.push_back(sl);
    const bool blown = traj.status == Status::blowup_detected;
    return svg_chart(title, t, all, blown);
}

void write_text(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace fracrd
