#include "magmech/analysis.hpp"

#include "magmech/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace magmech {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

cdouble sideband_amplitude(const LinearizedModel& model, double delta, Method method) {
    if (method == Method::Oracle) {
        return oracle_sideband_amplitude(model, delta);
    }
    return probe_sideband_amplitude(model, delta);
}

double delay_at(const LinearizedModel& model, double delta, double step, Method method) {
    return group_delay_with(
        [&](double d) { return 1.0 - 2.0 * model.kappa_a * sideband_amplitude(model, d, method); },
        delta, step);
}

ProbePoint pole_point(double delta) {
    ProbePoint p;
    p.delta = delta;
    p.a_minus = p.eps_out = p.T = cdouble{kNaN, kNaN};
    p.eps_R = p.eps_I = p.phase = kNaN;
    return p;
}

void unwrap_and_differentiate(SpectrumTable& table) {
    auto& rows = table.rows;
    constexpr double two_pi_ = 2.0 * std::numbers::pi;
    double offset = 0.0;
    std::optional<double> previous_raw;
    for (auto& row : rows) {
        if (row.pole) continue;
        const double raw = row.point.phase;
        if (previous_raw) {
            const double jump = raw - *previous_raw;
            if (jump > std::numbers::pi) offset -= two_pi_;
            if (jump < -std::numbers::pi) offset += two_pi_;
        }
        previous_raw = raw;
        row.point.phase = raw + offset;
    }

    const auto usable = [&](std::size_t i) { return i < rows.size() && !rows[i].pole; };
    const auto slope = [&](std::size_t a, std::size_t b) {
        return (rows[b].point.phase - rows[a].point.phase) /
               (rows[b].point.delta - rows[a].point.delta);
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].pole) continue;
        const bool has_left = i > 0 && usable(i - 1);
        const bool has_right = usable(i + 1);
        if (has_left && has_right) {
            rows[i].point.tau = slope(i - 1, i + 1);
        } else if (has_right) {
            rows[i].point.tau = slope(i, i + 1);
        } else if (has_left) {
            rows[i].point.tau = slope(i - 1, i);
        }
    }
}

// Vertex of the parabola through three points.
std::pair<double, double> parabola_vertex(double x0, double y0, double x1, double y1, double x2,
                                          double y2) {
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double a = (d12 - d01) / (x2 - x0);
    if (!(a > 0.0)) {
        return {x1, y1};
    }
    const double b = d01 - a * (x0 + x1);
    const double xv = -b / (2.0 * a);
    const double c = y1 - a * x1 * x1 - b * x1;
    return {xv, a * xv * xv + b * xv + c};
}

}  // namespace

std::string_view to_string(Method method) {
    switch (method) {
        case Method::Chain: return "chain";
        case Method::Oracle: return "oracle";
        case Method::Both: return "both";
    }
    return "chain";
}

Method method_from_string(std::string_view name) {
    if (name == "chain") return Method::Chain;
    if (name == "oracle") return Method::Oracle;
    if (name == "both") return Method::Both;
    throw ConfigError("method", "expected chain, oracle or both, got '" + std::string(name) + "'");
}

void validate(const SweepSpec& spec) {
    if (!std::isfinite(spec.delta_min) || !std::isfinite(spec.delta_max) ||
        !(spec.delta_min < spec.delta_max)) {
        throw ConfigError("delta_min", "sweep requires delta_min < delta_max");
    }
    if (spec.n_points < 2) {
        throw ConfigError("points", "sweep requires at least 2 points");
    }
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
    validate(spec);
    std::vector<double> grid(static_cast<std::size_t>(spec.n_points));
    const double span = spec.delta_max - spec.delta_min;
    const double n1 = static_cast<double>(spec.n_points - 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = spec.delta_min + span * (static_cast<double>(i) / n1);
    }
    grid.back() = spec.delta_max;
    return grid;
}

std::size_t SpectrumTable::pole_count() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const SpectrumRow& r) { return r.pole; }));
}

SpectrumTable sweep_spectrum(const LinearizedModel& model, const SweepSpec& spec, Method method) {
    if (method == Method::Both) {
        throw ConfigError("method", "a single table needs chain or oracle");
    }
    SpectrumTable table;
    table.method = method;
    table.omega_b = model.omega_b;
    const auto grid = sweep_grid(spec);
    table.rows.reserve(grid.size());
    for (const double delta : grid) {
        SpectrumRow row;
        try {
            row.point = probe_point_from_amplitude(model, delta,
                                                   sideband_amplitude(model, delta, method));
        } catch (const SolverError&) {
            row.point = pole_point(delta);
            row.pole = true;
        }
        table.rows.push_back(row);
    }
    unwrap_and_differentiate(table);
    return table;
}

std::vector<SpectrumTable> sweep_spectrum(const LinearizedModel& model, const SweepSpec& spec) {
    if (spec.method == Method::Both) {
        return {sweep_spectrum(model, spec, Method::Chain), sweep_spectrum(model, spec, Method::Oracle)};
    }
    return {sweep_spectrum(model, spec, spec.method)};
}

std::vector<Window> find_windows(const SpectrumTable& table, double prominence) {
    if (!(prominence > 0.0)) {
        throw ConfigError("prominence", "must be positive");
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (!table.rows[i].pole) idx.push_back(i);
    }
    if (idx.size() < 5) {
        throw ConfigError("points", "window search needs at least 5 valid points");
    }
    const std::size_t n = idx.size();
    const auto y = [&](std::size_t k) { return table.rows[idx[k]].point.eps_R; };
    const auto x = [&](std::size_t k) { return table.rows[idx[k]].point.delta; };

    double y_max = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) y_max = std::max(y_max, y(k));
    const double threshold = prominence * y_max;

    std::vector<Window> windows;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (!(y(k) < y(k - 1) && y(k) <= y(k + 1))) continue;

        // Topographic prominence: highest ground before reaching lower terrain.
        double left_max = y(k);
        for (std::size_t j = k; j > 0; --j) {
            if (y(j - 1) < y(k)) break;
            left_max = std::max(left_max, y(j - 1));
        }
        double right_max = y(k);
        for (std::size_t j = k; j + 1 < n; ++j) {
            if (y(j + 1) < y(k)) break;
            right_max = std::max(right_max, y(j + 1));
        }
        const double prom = std::min(left_max, right_max) - y(k);
        if (prom < threshold) continue;

        std::size_t left = k;
        while (left > 0 && y(left - 1) >= y(left)) --left;
        std::size_t right = k;
        while (right + 1 < n && y(right + 1) >= y(right)) ++right;

        Window w;
        const auto [xv, yv] = parabola_vertex(x(k - 1), y(k - 1), x(k), y(k), x(k + 1), y(k + 1));
        w.dip_location = xv;
        w.dip_value = yv;
        w.dip_index = idx[k];
        w.left_index = idx[left];
        w.right_index = idx[right];
        w.left_peak = x(left);
        w.right_peak = x(right);
        w.prominence = prom;
        w.depth = std::min(y(left), y(right)) - y(k);

        const double level = y(k) + 0.5 * w.depth;
        double left_cross = x(left);
        for (std::size_t j = k; j > left; --j) {
            if (y(j - 1) >= level) {
                left_cross = x(j) + (level - y(j)) * (x(j - 1) - x(j)) / (y(j - 1) - y(j));
                break;
            }
        }
        double right_cross = x(right);
        for (std::size_t j = k; j < right; ++j) {
            if (y(j + 1) >= level) {
                right_cross = x(j) + (level - y(j)) * (x(j + 1) - x(j)) / (y(j + 1) - y(j));
                break;
            }
        }
        w.width = right_cross - left_cross;
        w.asymmetry = fano_asymmetry(w, table);
        windows.push_back(w);
    }
    std::sort(windows.begin(), windows.end(),
              [](const Window& a, const Window& b) { return a.dip_location < b.dip_location; });
    return windows;
}

double fano_asymmetry(const Window& window, const SpectrumTable& table) {
    if (window.left_index >= table.rows.size() || window.right_index >= table.rows.size()) {
        throw ConfigError("window", "window does not belong to this table");
    }
    const double left = table.rows[window.left_index].point.eps_R;
    const double right = table.rows[window.right_index].point.eps_R;
    const double sum = left + right;
    if (sum == 0.0) {
        throw SolverError("degenerate window: both peak values are zero");
    }
    return (left - right) / sum;
}

std::optional<double> contrast_ratio(double a, double b, double guard) {
    const double sum = a + b;
    if (!(sum > guard)) return std::nullopt;
    return std::abs(a - b) / sum;
}

NonreciprocityReport eps_nonreciprocity(const LinearizedModel& model_template, double abs_Delta_B,
                                        const SweepSpec& spec) {
    if (!(abs_Delta_B >= 0.0)) {
        throw ConfigError("delta_B", "|Delta_B| must be non-negative");
    }
    const Method method = spec.method == Method::Oracle ? Method::Oracle : Method::Chain;
    const auto negative = sweep_spectrum(with_barnett_shift(model_template, -abs_Delta_B), spec, method);
    const auto positive = sweep_spectrum(with_barnett_shift(model_template, abs_Delta_B), spec, method);

    NonreciprocityReport report;
    report.abs_Delta_B = abs_Delta_B;
    report.omega_b = model_template.omega_b;
    report.rows.resize(negative.rows.size());
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        auto& row = report.rows[i];
        row.delta = negative.rows[i].point.delta;
        row.eps_R_neg = negative.rows[i].point.eps_R;
        row.eps_R_pos = positive.rows[i].point.eps_R;
        const auto ratio = contrast_ratio(row.eps_R_neg, row.eps_R_pos);
        row.eps_flagged = !ratio || negative.rows[i].pole || positive.rows[i].pole;
        row.eps_NR = row.eps_flagged ? 0.0 : *ratio;
    }
    return report;
}

NonreciprocityReport tau_nonreciprocity(const LinearizedModel& model_template, double abs_Delta_B,
                                        const SweepSpec& spec, double fd_step) {
    if (!(abs_Delta_B >= 0.0)) {
        throw ConfigError("delta_B", "|Delta_B| must be non-negative");
    }
    const Method method = spec.method == Method::Oracle ? Method::Oracle : Method::Chain;
    const auto negative = with_barnett_shift(model_template, -abs_Delta_B);
    const auto positive = with_barnett_shift(model_template, abs_Delta_B);

    NonreciprocityReport report;
    report.abs_Delta_B = abs_Delta_B;
    report.omega_b = model_template.omega_b;
    for (const double delta : sweep_grid(spec)) {
        NonreciprocityRow row;
        row.delta = delta;
        try {
            row.tau_neg = delay_at(negative, delta, fd_step, method);
            row.tau_pos = delay_at(positive, delta, fd_step, method);
        } catch (const SolverError&) {
            row.tau_neg.reset();
            row.tau_pos.reset();
        }
        if (row.tau_neg && row.tau_pos) {
            row.tau_NR = contrast_ratio(*row.tau_neg, *row.tau_pos);
            row.tau_NR_valid = row.tau_NR.has_value();
        }
        report.rows.push_back(row);
    }
    return report;
}

NonreciprocityReport nonreciprocity(const LinearizedModel& model_template, double abs_Delta_B,
                                    const SweepSpec& spec, double fd_step) {
    auto report = eps_nonreciprocity(model_template, abs_Delta_B, spec);
    const auto delays = tau_nonreciprocity(model_template, abs_Delta_B, spec, fd_step);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        report.rows[i].tau_neg = delays.rows[i].tau_neg;
        report.rows[i].tau_pos = delays.rows[i].tau_pos;
        report.rows[i].tau_NR = delays.rows[i].tau_NR;
        report.rows[i].tau_NR_valid = delays.rows[i].tau_NR_valid;
    }
    return report;
}

std::vector<std::pair<double, double>> optimal_ranges(const NonreciprocityReport& report,
                                                      ContrastKind kind, double threshold) {
    std::vector<std::pair<double, double>> ranges;
    std::optional<std::pair<double, double>> current;
    for (const auto& row : report.rows) {
        bool hit = false;
        if (kind == ContrastKind::Absorption) {
            hit = !row.eps_flagged && row.eps_NR >= threshold;
        } else {
            hit = row.tau_NR_valid && *row.tau_NR >= threshold;
        }
        if (hit) {
            if (current) {
                current->second = row.delta;
            } else {
                current = std::pair{row.delta, row.delta};
            }
        } else if (current) {
            ranges.push_back(*current);
            current.reset();
        }
    }
    if (current) ranges.push_back(*current);
    return ranges;
}

}  // namespace magmech
