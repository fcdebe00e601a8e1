#pragma once

#include "gabm/run.hpp"

#include "json.hpp"

#include <optional>
#include <span>
#include <vector>

namespace gabm {

/// Centered mean over a window that shrinks at the edges. Throws AnalyticsError on window 0.
std::vector<double> moving_average(std::span<const double> series, std::size_t window);

/// Linear-interpolated quantile (q in [0, 1]) of an ascending sample.
double quantile_sorted(std::span<const double> sorted, double q);

struct Band {
    std::vector<double> mean;
    std::vector<double> lower;
    std::vector<double> upper;
};

/// Per-day mean and central `level` percentile envelope across runs. Shorter runs are
/// padded with zeros. Throws AnalyticsError on an empty run list or level outside [0, 1].
Band cross_run_band(const std::vector<std::vector<double>>& runs, double level = 0.80);

struct SeriesSummary {
    int cumulative_cases = 0;
    /// Mean daily fraction of agents on the grid.
    double average_mobility = 0.0;
    int largest_peak = 0;
    /// Last day index with infected > 0; the horizon when the run never died out.
    int epidemic_duration = 0;
    bool duration_censored = false;

    bool operator==(const SeriesSummary&) const = default;
};

SeriesSummary summarize(const RunRecord& run);
nlohmann::json to_json(const SeriesSummary& s);

/// y = a * exp(-b * x), least squares on ln y.
struct ExpFit {
    double a = 0.0;
    double b = 0.0;
    /// Residual sum of squares of the fitted curve in the original y scale.
    double rss = 0.0;
    std::size_t points_used = 0;
};

struct XYPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Uses points with y > 0; nullopt when fewer than 3 qualify or x has no spread.
std::optional<ExpFit> fit_exponential(std::span<const XYPoint> points);

struct RelationPoint {
    std::size_t run = 0;
    int day = 0;
    /// Prevalence the agents were told that day (yesterday's tally).
    double prevalence_pct = 0.0;
    double go_out_fraction = 0.0;
};

struct PrevalenceMobility {
    std::vector<RelationPoint> points;
    std::optional<ExpFit> fit;
};

/// Pools (prevalence, go-out fraction) per day over the Full-condition runs.
PrevalenceMobility prevalence_mobility_relation(const std::vector<RunRecord>& runs);

/// counts[d] = number of (run, agent) pairs that stayed home on exactly d days.
std::vector<int> stay_home_distribution(const std::vector<RunRecord>& runs);

} // namespace gabm
