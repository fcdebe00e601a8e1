#include "doctest.h"

#include "gabm/error.hpp"
#include "gabm/logit.hpp"
#include "gabm/random.hpp"

#include <cmath>
#include <vector>

using namespace gabm;

namespace {

// Plain Newton-Raphson on dense rows with Gaussian elimination; shares nothing with logit_fit.
struct Reference {
    std::vector<double> beta;
    double ll = 0.0;
};

Reference reference_fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y)
{
    const std::size_t k = x.front().size();
    std::vector<double> beta(k, 0.0);
    double ll = 0.0;
    for (int it = 0; it < 200; ++it) {
        std::vector<double> grad(k, 0.0);
        std::vector<std::vector<double>> h(k, std::vector<double>(k + 1, 0.0));
        ll = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double eta = 0;
            for (std::size_t j = 0; j < k; ++j) {
                eta += x[i][j] * beta[j];
            }
            const double p = 1.0 / (1.0 + std::exp(-eta));
            ll += y[i] ? std::log(p) : std::log(1.0 - p);
            for (std::size_t a = 0; a < k; ++a) {
                grad[a] += (y[i] - p) * x[i][a];
                for (std::size_t b = 0; b < k; ++b) {
                    h[a][b] += p * (1 - p) * x[i][a] * x[i][b];
                }
            }
        }
        for (std::size_t a = 0; a < k; ++a) {
            h[a][k] = grad[a];
        }
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t piv = c;
            for (std::size_t r = c + 1; r < k; ++r) {
                if (std::abs(h[r][c]) > std::abs(h[piv][c])) {
                    piv = r;
                }
            }
            std::swap(h[c], h[piv]);
            for (std::size_t r = 0; r < k; ++r) {
                if (r != c) {
                    const double f = h[r][c] / h[c][c];
                    for (std::size_t j = c; j <= k; ++j) {
                        h[r][j] -= f * h[c][j];
                    }
                }
            }
        }
        double biggest = 0;
        for (std::size_t a = 0; a < k; ++a) {
            const double step = h[a][k] / h[a][a];
            beta[a] += step;
            biggest = std::max(biggest, std::abs(step));
        }
        if (biggest < 1e-12) {
            break;
        }
    }
    return {beta, ll};
}

LogitData to_data(const std::vector<std::vector<double>>& x, const std::vector<int>& y, std::vector<std::string> names)
{
    LogitData d;
    d.x.resize(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(x.front().size()));
    d.y.resize(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x[i].size(); ++j) {
            d.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x[i][j];
        }
        d.y[static_cast<Eigen::Index>(i)] = y[i];
    }
    d.names = std::move(names);
    return d;
}

double normal(Rng& rng)
{
    const double u1 = 1.0 - rng.uniform01();
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

bool same_4sf(double a, double b)
{
    return std::abs(a - b) <= 5e-5 * std::max(std::abs(a), std::abs(b)) + 1e-10;
}

} // namespace

TEST_CASE("recovers known coefficients from 20,000 synthetic rows")
{
    const double truth[] = {2.0, -1.0, 0.5};
    Rng rng(99);
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int i = 0; i < 20000; ++i) {
        std::vector<double> row{1.0, normal(rng), normal(rng)};
        const double eta = truth[0] * row[0] + truth[1] * row[1] + truth[2] * row[2];
        y.push_back(rng.bernoulli(1.0 / (1.0 + std::exp(-eta))) ? 1 : 0);
        x.push_back(row);
    }
    const auto res = logit_fit(to_data(x, y, {"const", "x1", "x2"}));
    CHECK(res.converged);
    CHECK(!res.separation);
    for (int j = 0; j < 3; ++j) {
        CAPTURE(j);
        CHECK(std::abs(res.coefficients[j] - truth[j]) <= 2.0 * res.standard_errors[j]);
        CHECK(res.standard_errors[j] > 0.0);
    }
}

TEST_CASE("matches an independent Newton solver to 4 significant figures")
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng(seed);
        std::vector<std::vector<double>> x;
        std::vector<int> y;
        const int n = 50 + static_cast<int>(seed) * 30;
        for (int i = 0; i < n; ++i) {
            std::vector<double> row{1.0, normal(rng), rng.bernoulli(0.4) ? 1.0 : 0.0};
            const double eta = -0.3 + 0.8 * row[1] + 0.6 * row[2];
            y.push_back(rng.bernoulli(1.0 / (1.0 + std::exp(-eta))) ? 1 : 0);
            x.push_back(row);
        }
        const auto ref = reference_fit(x, y);
        const auto res = logit_fit(to_data(x, y, {"const", "a", "b"}));
        for (int j = 0; j < 3; ++j) {
            CAPTURE(seed);
            CAPTURE(j);
            CHECK(same_4sf(res.coefficients[j], ref.beta[j]));
        }
        CHECK(same_4sf(res.log_likelihood, ref.ll));
    }
}

TEST_CASE("fixed effects equal explicit dummies and drop groups without variation")
{
    Rng rng(12);
    const int groups = 12;
    std::vector<std::vector<double>> dense;
    std::vector<int> y;
    LogitData fe;
    std::vector<double> feature;
    std::vector<int> group_of;
    for (int g = 0; g < groups; ++g) {
        const double alpha = normal(rng);
        for (int t = 0; t < 15; ++t) {
            const double v = normal(rng);
            int out;
            if (g == 0) {
                out = 0; // never varies
            } else if (g == 1) {
                out = 1;
            } else {
                out = rng.bernoulli(1.0 / (1.0 + std::exp(-(alpha + 1.2 * v)))) ? 1 : 0;
            }
            feature.push_back(v);
            group_of.push_back(g);
            y.push_back(out);
        }
    }
    fe.x.resize(static_cast<Eigen::Index>(feature.size()), 1);
    fe.y.resize(static_cast<Eigen::Index>(feature.size()));
    for (std::size_t i = 0; i < feature.size(); ++i) {
        fe.x(static_cast<Eigen::Index>(i), 0) = feature[i];
        fe.y[static_cast<Eigen::Index>(i)] = y[i];
    }
    fe.names = {"v"};
    fe.groups = group_of;
    fe.n_groups = groups;
    const auto res = logit_fit(fe);

    // Reference: explicit dummies for groups whose outcome varies.
    std::vector<int> ones(groups, 0), rows(groups, 0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        ones[static_cast<std::size_t>(group_of[i])] += y[i];
        rows[static_cast<std::size_t>(group_of[i])]++;
    }
    std::vector<int> column(groups, -1);
    int kept = 0;
    for (int g = 0; g < groups; ++g) {
        if (ones[g] > 0 && ones[g] < rows[g]) {
            column[g] = kept++;
        }
    }
    REQUIRE(column[0] < 0);
    REQUIRE(column[1] < 0);
    CHECK(res.n_dropped_groups == groups - kept);
    CHECK(res.n_groups == kept);
    std::vector<std::vector<double>> x;
    std::vector<int> yy;
    for (std::size_t i = 0; i < feature.size(); ++i) {
        const int c = column[static_cast<std::size_t>(group_of[i])];
        if (c < 0) {
            continue;
        }
        std::vector<double> row(static_cast<std::size_t>(kept + 1), 0.0);
        row[0] = feature[i];
        row[static_cast<std::size_t>(c + 1)] = 1.0;
        x.push_back(row);
        yy.push_back(y[i]);
    }
    CHECK(res.n_observations == x.size());
    const auto ref = reference_fit(x, yy);
    CHECK(same_4sf(res.coefficients[0], ref.beta[0]));
    CHECK(same_4sf(res.log_likelihood, ref.ll));
    CHECK(res.n_parameters == static_cast<std::size_t>(1 + kept));
}

TEST_CASE("BIC and pseudo R2 follow from the reported fields")
{
    Rng rng(5);
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int i = 0; i < 300; ++i) {
        std::vector<double> row{1.0, normal(rng)};
        y.push_back(rng.bernoulli(1.0 / (1.0 + std::exp(-(0.2 + row[1])))) ? 1 : 0);
        x.push_back(row);
    }
    const auto res = logit_fit(to_data(x, y, {"const", "z"}));
    const double n = static_cast<double>(res.n_observations);
    CHECK(res.bic == doctest::Approx(static_cast<double>(res.n_parameters) * std::log(n) - 2.0 * res.log_likelihood).epsilon(1e-12));
    CHECK(res.pseudo_r2 == doctest::Approx(1.0 - res.log_likelihood / res.null_log_likelihood).epsilon(1e-12));
    int ones = 0;
    for (int v : y) {
        ones += v;
    }
    const double pbar = ones / n;
    CHECK(res.null_log_likelihood == doctest::Approx(ones * std::log(pbar) + (n - ones) * std::log(1 - pbar)));
}

TEST_CASE("separation is flagged with a finite fallback")
{
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    for (int i = 0; i < 40; ++i) {
        const double v = i - 19.5;
        x.push_back({1.0, v});
        y.push_back(v > 0 ? 1 : 0);
    }
    LogitResult res;
    REQUIRE_NOTHROW(res = logit_fit(to_data(x, y, {"const", "v"})));
    CHECK(res.separation);
    CHECK(std::isfinite(res.coefficients[1]));
    CHECK(res.coefficients[1] > 0.0);
}

TEST_CASE("degenerate outcomes and iteration cap")
{
    std::vector<std::vector<double>> x{{1.0, 0.1}, {1.0, 0.5}, {1.0, -0.3}};
    CHECK_THROWS_AS(logit_fit(to_data(x, {0, 0, 0}, {"const", "v"})), AnalyticsError);

    Rng rng(8);
    std::vector<std::vector<double>> xs;
    std::vector<int> ys;
    for (int i = 0; i < 200; ++i) {
        xs.push_back({1.0, normal(rng)});
        ys.push_back(rng.bernoulli(0.5) ? 1 : 0);
    }
    LogitOptions opt;
    opt.max_iterations = 1;
    CHECK(!logit_fit(to_data(xs, ys, {"const", "v"}), opt).converged);
}

TEST_CASE("feature spec parsing")
{
    const auto spec = parse_logit_spec("lightcough, fever,prev,prev2,fe");
    CHECK(spec.fixed_effects);
    CHECK(spec.features == std::vector<std::string>{"lightcough", "fever", "prev", "prev2"});
    CHECK_THROWS_WITH_AS(parse_logit_spec("lightcough,height"), doctest::Contains("height"), ConfigError);
    CHECK_THROWS_AS(parse_logit_spec("fe"), ConfigError);
    CHECK_THROWS_AS(parse_logit_spec("prev,prev"), ConfigError);
}
