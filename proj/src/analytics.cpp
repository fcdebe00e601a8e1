#include "gabm/analytics.hpp"

#include "gabm/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>

namespace gabm {

std::vector<double> moving_average(std::span<const double> series, std::size_t window)
{
    if (window == 0) {
        throw AnalyticsError("moving_average: window must be >= 1");
    }
    const std::size_t left = (window - 1) / 2;
    const std::size_t right = window / 2;
    const std::size_t n = series.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= left ? i - left : 0;
        const std::size_t hi = std::min(n - 1, i + right);
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            sum += series[j];
        }
        out[i] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

double quantile_sorted(std::span<const double> sorted, double q)
{
    if (sorted.empty()) {
        throw AnalyticsError("quantile of an empty sample");
    }
    const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Band cross_run_band(const std::vector<std::vector<double>>& runs, double level)
{
    if (runs.empty()) {
        throw AnalyticsError("cross_run_band: no runs");
    }
    if (!(level >= 0.0 && level <= 1.0)) {
        throw AnalyticsError("cross_run_band: level must lie in [0, 1]");
    }
    std::size_t days = 0;
    for (const auto& r : runs) {
        days = std::max(days, r.size());
    }
    Band band;
    band.mean.resize(days);
    band.lower.resize(days);
    band.upper.resize(days);
    const double lo_q = (1.0 - level) / 2.0;
    const double hi_q = (1.0 + level) / 2.0;
    std::vector<double> column(runs.size());
    for (std::size_t d = 0; d < days; ++d) {
        double sum = 0.0;
        for (std::size_t r = 0; r < runs.size(); ++r) {
            column[r] = d < runs[r].size() ? runs[r][d] : 0.0;
            sum += column[r];
        }
        band.mean[d] = sum / static_cast<double>(runs.size());
        std::sort(column.begin(), column.end());
        band.lower[d] = quantile_sorted(column, lo_q);
        band.upper[d] = quantile_sorted(column, hi_q);
    }
    return band;
}

SeriesSummary summarize(const RunRecord& run)
{
    SeriesSummary s;
    if (run.metrics.empty()) {
        s.cumulative_cases = run.initial_infected;
        s.epidemic_duration = 0;
        s.duration_censored = run.initial_infected > 0;
        return s;
    }
    const int n = run.population;
    s.cumulative_cases = n - run.metrics.back().susceptible_count;
    double mobility = 0.0;
    for (const auto& m : run.metrics) {
        mobility += n > 0 ? static_cast<double>(m.mobility_count) / n : 0.0;
        s.largest_peak = std::max(s.largest_peak, m.new_cases);
        if (m.infected_count > 0) {
            s.epidemic_duration = m.day;
        }
    }
    s.average_mobility = mobility / static_cast<double>(run.metrics.size());
    if (run.metrics.back().infected_count > 0) {
        s.duration_censored = true;
        s.epidemic_duration = run.config.step_count;
    }
    return s;
}

nlohmann::json to_json(const SeriesSummary& s)
{
    return nlohmann::json{{"cumulative_cases", s.cumulative_cases},
                          {"average_mobility", s.average_mobility},
                          {"largest_peak", s.largest_peak},
                          {"epidemic_duration", s.epidemic_duration},
                          {"duration_censored", s.duration_censored}};
}

std::optional<ExpFit> fit_exponential(std::span<const XYPoint> points)
{
    std::vector<XYPoint> used;
    for (const auto& p : points) {
        if (p.y > 0.0 && std::isfinite(p.x) && std::isfinite(p.y)) {
            used.push_back(p);
        }
    }
    if (used.size() < 3) {
        return std::nullopt;
    }
    const double n = static_cast<double>(used.size());
    double sx = 0, sy = 0;
    for (const auto& p : used) {
        sx += p.x;
        sy += std::log(p.y);
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& p : used) {
        sxx += (p.x - mx) * (p.x - mx);
        sxy += (p.x - mx) * (std::log(p.y) - my);
    }
    if (sxx <= 0.0) {
        return std::nullopt;
    }
    const double slope = sxy / sxx;
    ExpFit fit;
    fit.b = -slope;
    fit.a = std::exp(my - slope * mx);
    fit.points_used = used.size();
    for (const auto& p : used) {
        const double r = p.y - fit.a * std::exp(-fit.b * p.x);
        fit.rss += r * r;
    }
    return fit;
}

PrevalenceMobility prevalence_mobility_relation(const std::vector<RunRecord>& runs)
{
    PrevalenceMobility out;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        if (runs[r].config.condition != Condition::Full) {
            continue;
        }
        // day -> (prevalence tenths, rows, go-out rows)
        std::map<int, std::tuple<long, int, int>> per_day;
        for (const auto& row : runs[r].decisions) {
            auto& [tenths, total, out_count] = per_day[row.day];
            tenths = row.prevalence.tenths();
            ++total;
            out_count += row.stay_home ? 0 : 1;
        }
        for (const auto& [day, v] : per_day) {
            const auto& [tenths, total, out_count] = v;
            out.points.push_back({r, day, static_cast<double>(tenths) / 10.0, static_cast<double>(out_count) / total});
        }
    }
    std::vector<XYPoint> xy;
    xy.reserve(out.points.size());
    for (const auto& p : out.points) {
        xy.push_back({p.prevalence_pct, p.go_out_fraction});
    }
    out.fit = fit_exponential(xy);
    return out;
}

std::vector<int> stay_home_distribution(const std::vector<RunRecord>& runs)
{
    std::vector<int> counts;
    for (const auto& run : runs) {
        std::map<AgentId, int> per_agent;
        for (const auto& row : run.decisions) {
            per_agent[row.agent_id] += row.stay_home ? 1 : 0;
        }
        for (const auto& [id, days] : per_agent) {
            if (static_cast<std::size_t>(days) >= counts.size()) {
                counts.resize(static_cast<std::size_t>(days) + 1, 0);
            }
            ++counts[static_cast<std::size_t>(days)];
        }
    }
    return counts;
}

} // namespace gabm
