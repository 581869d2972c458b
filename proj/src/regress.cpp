#include "episense/regress.hpp"
#include "episense/errors.hpp"
#include "episense/series.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace episense::regress {

namespace {

double value_at(const sentiment::DailySentiment& sent, Date d) {
    std::int64_t i = d - sent.start_date;
    if (i < 0 || i >= static_cast<std::int64_t>(sent.size()))
        throw DataError("CoverageGap: " + d.iso());
    return sent.values[i];
}

// Regularized incomplete beta via Lentz continued fraction.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kFpmin = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpmin) d = kFpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpmin) d = kFpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpmin) c = kFpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpmin) d = kFpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpmin) c = kFpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

double inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log(1.0 - x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

} // namespace

double t_cdf(double t, int df) {
    if (df < 1) throw ConfigError("DegenerateDof");
    double x = df / (df + t * t);
    double tail = 0.5 * inc_beta(df / 2.0, 0.5, x);
    return t >= 0.0 ? 1.0 - tail : tail;
}

double rmse(const std::vector<double>& pred, const std::vector<double>& actual) {
    if (pred.size() != actual.size()) throw DataError("LengthMismatch");
    if (pred.empty()) throw DataError("Empty");
    double ss = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        double d = pred[i] - actual[i];
        ss += d * d;
    }
    return std::sqrt(ss / pred.size());
}

double adj_r2(double r2, int n, int p) {
    if (n <= p + 1) throw ConfigError("DegenerateDof");
    return 1.0 - (1.0 - r2) * (n - 1) / static_cast<double>(n - p - 1);
}

DesignMatrix build_design(const corpus::RegionSeries& cases,
                          const sentiment::DailySentiment& sent,
                          const FitConfig& cfg) {
    if (cfg.horizon_days < 1) throw ConfigError("InvalidHorizon");
    if (cfg.train_from > cfg.train_to) throw ConfigError("InvalidRange");

    series::DailySeries cum_new = series::cumulative(
        series::from_counts(cases.start_date, cases.new_cases));
    series::DailySeries cum_rec = series::cumulative(
        series::from_counts(cases.start_date, cases.recovered));
    sentiment::DailySentiment sent_used = sent;
    if (cfg.with_sentiment && cfg.cumulative_sentiment) {
        double acc = 0.0;
        for (auto& v : sent_used.values) {
            acc += v;
            v = acc;
        }
    }

    auto case_at = [&](const series::DailySeries& s, Date d) {
        std::int64_t i = d - s.start_date;
        if (i < 0 || i >= static_cast<std::int64_t>(s.size()))
            throw DataError("CoverageGap: " + d.iso());
        return s.values[i];
    };

    DesignMatrix design;
    design.feature_names = {"cum_new", "cum_recovered"};
    if (cfg.with_sentiment) design.feature_names.push_back("sentiment");

    for (Date t = cfg.train_from; t <= cfg.train_to - cfg.horizon_days; t = t + 1) {
        DesignRow row;
        row.date = t;
        row.features.push_back(case_at(cum_new, t));
        row.features.push_back(case_at(cum_rec, t));
        if (cfg.with_sentiment) row.features.push_back(value_at(sent_used, t));
        Date target_day = t + cfg.horizon_days;
        std::int64_t ti = target_day - cases.start_date;
        if (ti < 0 || ti >= static_cast<std::int64_t>(cases.size()))
            throw DataError("CoverageGap: " + target_day.iso());
        row.target = static_cast<double>(cases.new_cases[ti]);
        design.rows.push_back(std::move(row));
    }
    std::size_t min_rows = design.feature_names.size() + 2;
    if (design.rows.size() < min_rows)
        throw DataError("TooFewRows: " + std::to_string(design.rows.size()) +
                        " rows for " + std::to_string(design.feature_names.size()) +
                        " features");
    return design;
}

FitResult ols_fit(const DesignMatrix& design, bool intercept, double alpha) {
    const int n = static_cast<int>(design.rows.size());
    const int p = static_cast<int>(design.feature_names.size());
    const int k = p + (intercept ? 1 : 0);
    if (n < p + 2) throw DataError("TooFewRows");

    Eigen::MatrixXd X(n, k);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) X(i, j) = design.rows[i].features[j];
        if (intercept) X(i, p) = 1.0;
        y(i) = design.rows[i].target;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    Eigen::VectorXd rdiag = qr.matrixR().diagonal().cwiseAbs();
    double rmax = rdiag.maxCoeff();
    double rmin = rdiag.minCoeff();
    if (qr.rank() < k || rmin == 0.0 || rmax / rmin > 1e10)
        throw DataError("RankDeficient: condition estimate too large");

    Eigen::VectorXd beta = qr.solve(y);
    Eigen::VectorXd resid = y - X * beta;
    double rss = resid.squaredNorm();

    double tss;
    if (intercept) {
        double mean = y.mean();
        tss = (y.array() - mean).square().sum();
    } else {
        tss = y.squaredNorm();
    }

    FitResult fit;
    fit.n = n;
    fit.p = p;
    fit.residuals.assign(resid.data(), resid.data() + n);
    fit.rmse_train = std::sqrt(rss / n);
    fit.r2 = tss > 0.0 ? 1.0 - rss / tss : 1.0;
    fit.adj_r2 = adj_r2(fit.r2, n, p);

    const int df = n - k;
    double sigma2 = df > 0 ? rss / df : 0.0;
    Eigen::MatrixXd xtx_inv = (X.transpose() * X).inverse();

    // zero residual variance relative to the target scale
    double yscale = std::max(1.0, y.cwiseAbs().maxCoeff());
    fit.zero_residual_variance = std::sqrt(rss / n) < 1e-10 * yscale;

    for (int j = 0; j < k; ++j) {
        std::string name = j < p ? design.feature_names[j] : "intercept";
        fit.coefficients[name] = beta(j);
        fit.std_errors[name] = std::sqrt(std::max(0.0, sigma2 * xtx_inv(j, j)));
    }
    fit.p_values = coef_t_test(fit);
    (void)alpha; // significance is judged by callers against their alpha
    return fit;
}

std::map<std::string, double> coef_t_test(const FitResult& fit) {
    const int df = fit.n - fit.p - 1;
    if (df < 1) throw ConfigError("DegenerateDof");
    std::map<std::string, double> out;
    for (const auto& [name, beta] : fit.coefficients) {
        double se = fit.std_errors.at(name);
        if (fit.zero_residual_variance || se == 0.0) {
            out[name] = fit.zero_residual_variance ? 0.0 : 0.5;
            continue;
        }
        double t = beta / se;
        out[name] = 1.0 - t_cdf(std::abs(t), df);
    }
    return out;
}

HorizonReport evaluate_horizons(const corpus::RegionSeries& cases,
                                const sentiment::DailySentiment& sent,
                                const FitConfig& base_cfg,
                                const std::vector<int>& horizons) {
    HorizonReport report;
    report.region = cases.region_id;

    series::DailySeries cum_new = series::cumulative(
        series::from_counts(cases.start_date, cases.new_cases));
    series::DailySeries cum_rec = series::cumulative(
        series::from_counts(cases.start_date, cases.recovered));

    for (int h : horizons) {
        HorizonEntry entry;
        entry.horizon = h;
        for (bool with_sent : {true, false}) {
            FitConfig cfg = base_cfg;
            cfg.horizon_days = h;
            cfg.with_sentiment = with_sent;
            DesignMatrix design = build_design(cases, sent, cfg);
            FitResult fit = ols_fit(design, cfg.intercept, cfg.alpha);

            // forecast the h days following train_to from observed features
            std::vector<double> pred, actual;
            for (int step = 1; step <= h; ++step) {
                Date d = cfg.train_to + step;
                Date t = d - h;
                std::int64_t ci = t - cases.start_date;
                std::int64_t di = d - cases.start_date;
                if (ci < 0 || di >= static_cast<std::int64_t>(cases.size()))
                    throw DataError("CoverageGap: " + d.iso());
                double yhat = fit.coefficients.count("intercept")
                                  ? fit.coefficients.at("intercept")
                                  : 0.0;
                yhat += fit.coefficients.at("cum_new") * cum_new.values[ci];
                yhat += fit.coefficients.at("cum_recovered") * cum_rec.values[ci];
                if (with_sent)
                    yhat += fit.coefficients.at("sentiment") * value_at(sent, t);
                pred.push_back(yhat);
                actual.push_back(static_cast<double>(cases.new_cases[di]));
            }
            double oos = rmse(pred, actual);
            if (with_sent) {
                entry.rmse_with = oos;
                entry.adj_r2_with = fit.adj_r2;
            } else {
                entry.rmse_without = oos;
                entry.adj_r2_without = fit.adj_r2;
            }
        }
        report.entries.push_back(entry);
    }
    return report;
}

std::string fit_to_json(const FitResult& fit, const FitConfig& cfg) {
    nlohmann::json j;
    j["coefficients"] = fit.coefficients;
    j["std_errors"] = fit.std_errors;
    j["p_values"] = fit.p_values;
    j["metrics"] = {{"rmse_train", fit.rmse_train},
                    {"r2", fit.r2},
                    {"adj_r2", fit.adj_r2},
                    {"n", fit.n},
                    {"p", fit.p},
                    {"zero_residual_variance", fit.zero_residual_variance},
                    {"reference_rmse_uncertainty", kReferenceRmseUncertainty}};
    j["config"] = {{"train_from", cfg.train_from.iso()},
                   {"train_to", cfg.train_to.iso()},
                   {"horizon_days", cfg.horizon_days},
                   {"with_sentiment", cfg.with_sentiment},
                   {"alpha", cfg.alpha},
                   {"intercept", cfg.intercept},
                   {"cumulative_sentiment", cfg.cumulative_sentiment}};
    return j.dump(2) + "\n";
}

std::string horizon_csv(const HorizonReport& report) {
    std::ostringstream os;
    os << "horizon,variant,rmse,adj_r2\n";
    char buf[64];
    for (const auto& e : report.entries) {
        std::snprintf(buf, sizeof(buf), "%d,with_sentiment,%.6f,%.6f\n",
                      e.horizon, e.rmse_with, e.adj_r2_with);
        os << buf;
        std::snprintf(buf, sizeof(buf), "%d,without_sentiment,%.6f,%.6f\n",
                      e.horizon, e.rmse_without, e.adj_r2_without);
        os << buf;
    }
    return os.str();
}

std::string render_horizon_table(const HorizonReport& report, bool color) {
    const char* bold = color ? "\x1b[1m" : "";
    const char* reset = color ? "\x1b[0m" : "";
    std::ostringstream os;
    os << bold << "Region: " << report.region << reset << "\n";
    os << "Time period     | With Sentiment      | Without Sentiment\n";
    os << "for Prediction  | RMSE      adjR2     | RMSE      adjR2\n";
    os << "----------------+---------------------+-------------------\n";
    char buf[128];
    for (const auto& e : report.entries) {
        std::snprintf(buf, sizeof(buf),
                      "%-15s | %-9.2f %-9.2f | %-9.2f %-9.2f\n",
                      (std::to_string(e.horizon) + " Days").c_str(),
                      e.rmse_with, e.adj_r2_with, e.rmse_without,
                      e.adj_r2_without);
        os << buf;
    }
    return os.str();
}

} // namespace episense::regress
