#pragma once

#include "gabm/run.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gabm {

/// Which regressors to build from decision logs.
///
/// Feature names: lightcough, fever, prev, prev2, surgency, agreeableness,
/// conscientiousness, emotional_stability, intellect, age, gender (male = 1).
/// The pseudo-feature "fe" requests one dummy per agent instead of a common intercept.
struct LogitSpec {
    std::vector<std::string> features;
    bool fixed_effects = false;
};

/// Comma-separated list, e.g. "lightcough,fever,prev,prev2,fe". Throws ConfigError.
LogitSpec parse_logit_spec(std::string_view text);

struct LogitData {
    /// Dense regressors, one row per observation.
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    std::vector<std::string> names;
    /// Group index per row (0..n_groups-1) for fixed-effect dummies; empty for pooled fits.
    std::vector<int> groups;
    int n_groups = 0;
};

/// Pooled designs get a leading "const" column. Fixed-effect groups are (run, agent).
LogitData design_from_logs(const std::vector<RunRecord>& runs, const LogitSpec& spec);

struct LogitOptions {
    int max_iterations = 100;
    /// Convergence when the largest Newton step component falls below this.
    double step_tolerance = 1e-8;
    /// Any |coefficient| beyond this is treated as separation.
    double separation_bound = 25.0;
    /// L2 penalty used for the fallback estimate after separation.
    double ridge_penalty = 1.0;
};

struct LogitResult {
    std::vector<std::string> names;
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    double log_likelihood = 0.0;
    double null_log_likelihood = 0.0;
    /// McFadden, against the constant-only model on the estimation sample.
    double pseudo_r2 = 0.0;
    double bic = 0.0;
    std::size_t n_observations = 0;
    /// Counted in BIC: dense coefficients plus fixed-effect dummies.
    std::size_t n_parameters = 0;
    int n_groups = 0;
    /// Groups without outcome variation, removed before estimation.
    int n_dropped_groups = 0;
    int iterations = 0;
    bool converged = false;
    /// Separation detected; coefficients are the ridge-stabilized fallback.
    bool separation = false;

    std::optional<double> coefficient(std::string_view name) const;
    std::optional<double> standard_error(std::string_view name) const;
};

/// Maximum-likelihood logistic regression by Newton-Raphson (IRLS) with step halving.
/// Fixed effects are eliminated through the Schur complement of their diagonal block.
/// Throws AnalyticsError when the outcome has no variation or the design is empty.
LogitResult logit_fit(const LogitData& data, const LogitOptions& options = {});

/// Log-likelihood of a binary-outcome logit at linear predictor `eta`.
double logit_log_likelihood(const Eigen::VectorXd& eta, const Eigen::VectorXd& y);

} // namespace gabm
