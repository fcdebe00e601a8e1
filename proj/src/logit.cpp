#include "gabm/logit.hpp"

#include "gabm/error.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>
#include <map>

namespace gabm {

namespace {

std::string trim_copy(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<TraitFactor> trait_from_key(std::string_view key)
{
    for (std::size_t i = 0; i < kTraitFactorCount; ++i) {
        if (factor_key(static_cast<TraitFactor>(i)) == key) {
            return static_cast<TraitFactor>(i);
        }
    }
    return std::nullopt;
}

double feature_value(const std::string& name, const DecisionLogRow& row)
{
    const HealthCondition h{row.health_state, row.day_infected};
    if (name == "lightcough") {
        return symptom_of(h) == Symptom::LightCough ? 1.0 : 0.0;
    }
    if (name == "fever") {
        return symptom_of(h) == Symptom::FeverCough ? 1.0 : 0.0;
    }
    if (name == "prev") {
        return row.prevalence.value();
    }
    if (name == "prev2") {
        return row.prevalence.value() * row.prevalence.value();
    }
    if (name == "age") {
        return row.age;
    }
    if (name == "gender") {
        return row.gender == Gender::Male ? 1.0 : 0.0;
    }
    if (auto f = trait_from_key(name)) {
        return row.traits[static_cast<std::size_t>(*f)] == Polarity::Positive ? 1.0 : 0.0;
    }
    throw ConfigError(fmt::format("unknown logit feature '{}'", name));
}

// log(1 + exp(z)) without overflow
double log1pexp(double z)
{
    return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z)
{
    if (z >= 0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

struct Problem {
    const Eigen::MatrixXd& x;
    const Eigen::VectorXd& y;
    const std::vector<int>& groups;
    int n_groups;
    double ridge;

    Eigen::Index k() const { return x.cols(); }

    Eigen::VectorXd eta(const Eigen::VectorXd& beta, const Eigen::VectorXd& alpha) const
    {
        Eigen::VectorXd e = x * beta;
        if (n_groups > 0) {
            for (Eigen::Index i = 0; i < e.size(); ++i) {
                e[i] += alpha[groups[static_cast<std::size_t>(i)]];
            }
        }
        return e;
    }

    double objective(const Eigen::VectorXd& beta, const Eigen::VectorXd& alpha) const
    {
        double ll = logit_log_likelihood(eta(beta, alpha), y);
        if (ridge > 0) {
            ll -= 0.5 * ridge * (beta.squaredNorm() + alpha.squaredNorm());
        }
        return ll;
    }
};

struct NewtonState {
    Eigen::VectorXd beta;
    Eigen::VectorXd alpha;
    int iterations = 0;
    bool converged = false;
    Eigen::MatrixXd cov_beta;
};

// Newton-Raphson on the (optionally ridge-penalized) log-likelihood.
NewtonState newton(const Problem& pb, const LogitOptions& opt)
{
    const Eigen::Index k = pb.k();
    const int g = pb.n_groups;
    NewtonState st;
    st.beta = Eigen::VectorXd::Zero(k);
    st.alpha = Eigen::VectorXd::Zero(g);
    double current = pb.objective(st.beta, st.alpha);

    Eigen::MatrixXd a(k, k);
    Eigen::MatrixXd b(k, g);
    Eigen::VectorXd d(g);
    Eigen::VectorXd grad_beta(k);
    Eigen::VectorXd grad_alpha(g);
    Eigen::MatrixXd schur(k, k);

    auto assemble = [&] {
        const Eigen::VectorXd eta = pb.eta(st.beta, st.alpha);
        a.setZero();
        b.setZero();
        d.setZero();
        grad_beta.setZero();
        grad_alpha.setZero();
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            const double p = sigmoid(eta[i]);
            const double w = p * (1.0 - p);
            const double r = pb.y[i] - p;
            const auto xi = pb.x.row(i);
            grad_beta.noalias() += r * xi.transpose();
            a.selfadjointView<Eigen::Lower>().rankUpdate(xi.transpose(), w);
            if (g > 0) {
                const int gi = pb.groups[static_cast<std::size_t>(i)];
                b.col(gi).noalias() += w * xi.transpose();
                d[gi] += w;
                grad_alpha[gi] += r;
            }
        }
        a.triangularView<Eigen::StrictlyUpper>() = a.transpose();
        if (pb.ridge > 0) {
            a.diagonal().array() += pb.ridge;
            d.array() += pb.ridge;
            grad_beta -= pb.ridge * st.beta;
            grad_alpha -= pb.ridge * st.alpha;
        }
        schur = a;
        if (g > 0) {
            const Eigen::VectorXd dinv = d.cwiseInverse();
            schur.noalias() -= b * dinv.asDiagonal() * b.transpose();
        }
    };

    for (st.iterations = 1; st.iterations <= opt.max_iterations; ++st.iterations) {
        assemble();
        Eigen::LDLT<Eigen::MatrixXd> ldlt(schur);
        Eigen::VectorXd rhs = grad_beta;
        Eigen::VectorXd dinv;
        if (g > 0) {
            dinv = d.cwiseInverse();
            rhs.noalias() -= b * dinv.cwiseProduct(grad_alpha);
        }
        const Eigen::VectorXd step_beta = ldlt.solve(rhs);
        Eigen::VectorXd step_alpha;
        if (g > 0) {
            step_alpha = dinv.cwiseProduct(grad_alpha - b.transpose() * step_beta);
        } else {
            step_alpha = Eigen::VectorXd::Zero(0);
        }
        if (!step_beta.allFinite() || !step_alpha.allFinite()) {
            break;
        }
        double scale = 1.0;
        Eigen::VectorXd nb = st.beta + step_beta;
        Eigen::VectorXd na = st.alpha + step_alpha;
        double next = pb.objective(nb, na);
        for (int h = 0; h < 30 && !(next >= current - 1e-12 * std::abs(current)); ++h) {
            scale *= 0.5;
            nb = st.beta + scale * step_beta;
            na = st.alpha + scale * step_alpha;
            next = pb.objective(nb, na);
        }
        st.beta = nb;
        st.alpha = na;
        current = next;
        double step_norm = (scale * step_beta).cwiseAbs().maxCoeff();
        if (g > 0) {
            step_norm = std::max(step_norm, (scale * step_alpha).cwiseAbs().maxCoeff());
        }
        const double largest = std::max(st.beta.cwiseAbs().maxCoeff(), g > 0 ? st.alpha.cwiseAbs().maxCoeff() : 0.0);
        if (largest > opt.separation_bound) {
            break;
        }
        if (step_norm < opt.step_tolerance) {
            st.converged = true;
            break;
        }
    }
    // Covariance of the dense block at the final estimate.
    assemble();
    st.cov_beta = schur.ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    st.iterations = std::min(st.iterations, opt.max_iterations);
    return st;
}

} // namespace

LogitSpec parse_logit_spec(std::string_view text)
{
    static const std::vector<std::string> known = {"lightcough", "fever",  "prev",  "prev2",  "surgency",
                                                   "agreeableness", "conscientiousness", "emotional_stability",
                                                   "intellect", "age", "gender"};
    LogitSpec spec;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string token = trim_copy(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (token == "fe") {
            spec.fixed_effects = true;
        } else if (!token.empty()) {
            if (std::find(known.begin(), known.end(), token) == known.end()) {
                throw ConfigError(fmt::format("--logit: unknown feature '{}' (known: {}, fe)", token, fmt::join(known, ", ")));
            }
            if (std::find(spec.features.begin(), spec.features.end(), token) != spec.features.end()) {
                throw ConfigError(fmt::format("--logit: feature '{}' listed twice", token));
            }
            spec.features.push_back(token);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    if (spec.features.empty()) {
        throw ConfigError("--logit: no features given");
    }
    return spec;
}

LogitData design_from_logs(const std::vector<RunRecord>& runs, const LogitSpec& spec)
{
    std::size_t n = 0;
    for (const auto& r : runs) {
        n += r.decisions.size();
    }
    LogitData data;
    const std::size_t offset = spec.fixed_effects ? 0 : 1;
    if (!spec.fixed_effects) {
        data.names.push_back("const");
    }
    for (const auto& f : spec.features) {
        data.names.push_back(f);
    }
    const auto cols = static_cast<Eigen::Index>(data.names.size());
    data.x.resize(static_cast<Eigen::Index>(n), cols);
    data.y.resize(static_cast<Eigen::Index>(n));
    std::map<std::pair<std::size_t, AgentId>, int> group_index;
    Eigen::Index i = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        for (const auto& row : runs[r].decisions) {
            if (!spec.fixed_effects) {
                data.x(i, 0) = 1.0;
            }
            for (std::size_t f = 0; f < spec.features.size(); ++f) {
                data.x(i, static_cast<Eigen::Index>(f + offset)) = feature_value(spec.features[f], row);
            }
            data.y[i] = row.stay_home ? 1.0 : 0.0;
            if (spec.fixed_effects) {
                auto [it, inserted] = group_index.try_emplace({r, row.agent_id}, static_cast<int>(group_index.size()));
                data.groups.push_back(it->second);
            }
            ++i;
        }
    }
    data.n_groups = static_cast<int>(group_index.size());
    return data;
}

double logit_log_likelihood(const Eigen::VectorXd& eta, const Eigen::VectorXd& y)
{
    double ll = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        ll += y[i] * eta[i] - log1pexp(eta[i]);
    }
    return ll;
}

std::optional<double> LogitResult::coefficient(std::string_view name) const
{
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) {
            return coefficients[i];
        }
    }
    return std::nullopt;
}

std::optional<double> LogitResult::standard_error(std::string_view name) const
{
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) {
            return standard_errors[i];
        }
    }
    return std::nullopt;
}

LogitResult logit_fit(const LogitData& data, const LogitOptions& options)
{
    const Eigen::Index n_all = data.x.rows();
    if (n_all == 0 || data.x.cols() == 0) {
        throw AnalyticsError("logit_fit: empty design");
    }
    if (data.y.size() != n_all || (!data.groups.empty() && static_cast<Eigen::Index>(data.groups.size()) != n_all)) {
        throw AnalyticsError("logit_fit: design and outcome sizes differ");
    }
    if (!data.x.allFinite()) {
        throw AnalyticsError("logit_fit: non-finite regressor");
    }
    for (Eigen::Index i = 0; i < n_all; ++i) {
        if (data.y[i] != 0.0 && data.y[i] != 1.0) {
            throw AnalyticsError("logit_fit: outcome must be binary");
        }
    }

    LogitResult result;
    result.names = data.names;

    // Drop fixed-effect groups whose outcome never varies; their dummies are not identified.
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    std::vector<int> groups;
    int n_groups = 0;
    if (!data.groups.empty()) {
        std::vector<double> sum(static_cast<std::size_t>(data.n_groups), 0.0);
        std::vector<int> count(static_cast<std::size_t>(data.n_groups), 0);
        for (Eigen::Index i = 0; i < n_all; ++i) {
            sum[static_cast<std::size_t>(data.groups[static_cast<std::size_t>(i)])] += data.y[i];
            ++count[static_cast<std::size_t>(data.groups[static_cast<std::size_t>(i)])];
        }
        std::vector<int> remap(static_cast<std::size_t>(data.n_groups), -1);
        for (std::size_t gi = 0; gi < remap.size(); ++gi) {
            if (count[gi] > 0 && sum[gi] > 0 && sum[gi] < count[gi]) {
                remap[gi] = n_groups++;
            } else if (count[gi] > 0) {
                ++result.n_dropped_groups;
            }
        }
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < n_all; ++i) {
            if (remap[static_cast<std::size_t>(data.groups[static_cast<std::size_t>(i)])] >= 0) {
                keep.push_back(i);
            }
        }
        x.resize(static_cast<Eigen::Index>(keep.size()), data.x.cols());
        y.resize(static_cast<Eigen::Index>(keep.size()));
        for (std::size_t r = 0; r < keep.size(); ++r) {
            x.row(static_cast<Eigen::Index>(r)) = data.x.row(keep[r]);
            y[static_cast<Eigen::Index>(r)] = data.y[keep[r]];
            groups.push_back(remap[static_cast<std::size_t>(data.groups[static_cast<std::size_t>(keep[r])])]);
        }
        if (keep.empty()) {
            throw AnalyticsError("logit_fit: outcome does not vary within any fixed-effect group (degenerate)");
        }
    } else {
        x = data.x;
        y = data.y;
    }

    const double n = static_cast<double>(y.size());
    const double ybar = y.mean();
    if (ybar == 0.0 || ybar == 1.0) {
        throw AnalyticsError("logit_fit: outcome has no variation (degenerate; perfect separation by the constant)");
    }

    Problem pb{x, y, groups, n_groups, 0.0};
    NewtonState st = newton(pb, options);
    const double largest = std::max(st.beta.cwiseAbs().maxCoeff(), n_groups > 0 ? st.alpha.cwiseAbs().maxCoeff() : 0.0);
    if (!st.converged || largest > options.separation_bound || !st.beta.allFinite()) {
        result.separation = largest > options.separation_bound || !st.beta.allFinite();
        if (result.separation) {
            pb.ridge = options.ridge_penalty;
            st = newton(pb, options);
        }
    }

    result.converged = st.converged;
    result.iterations = st.iterations;
    result.n_observations = static_cast<std::size_t>(y.size());
    result.n_groups = n_groups;
    result.n_parameters = static_cast<std::size_t>(x.cols()) + static_cast<std::size_t>(n_groups);
    result.log_likelihood = logit_log_likelihood(pb.eta(st.beta, st.alpha), y);
    result.null_log_likelihood = n * (ybar * std::log(ybar) + (1.0 - ybar) * std::log(1.0 - ybar));
    result.pseudo_r2 = 1.0 - result.log_likelihood / result.null_log_likelihood;
    result.bic = static_cast<double>(result.n_parameters) * std::log(n) - 2.0 * result.log_likelihood;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        result.coefficients.push_back(st.beta[j]);
        const double v = st.cov_beta(j, j);
        result.standard_errors.push_back(v > 0 ? std::sqrt(v) : std::numeric_limits<double>::quiet_NaN());
    }
    return result;
}

} // namespace gabm
