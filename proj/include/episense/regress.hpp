#ifndef EPISENSE_REGRESS_HPP
#define EPISENSE_REGRESS_HPP

#include "episense/corpus.hpp"
#include "episense/date.hpp"
#include "episense/sentiment.hpp"

#include <map>
#include <string>
#include <vector>

namespace episense::regress {

struct FitConfig {
    Date train_from;
    Date train_to;
    int horizon_days = 14;
    bool with_sentiment = true;
    double alpha = 0.1; // one-tailed significance level
    bool intercept = true;
    bool cumulative_sentiment = false;
};

struct DesignRow {
    std::vector<double> features;
    double target = 0.0;
    Date date;
};

struct DesignMatrix {
    std::vector<std::string> feature_names;
    std::vector<DesignRow> rows;
};

/// Documented reference constant: expected RMSE uncertainty for sample sizes
/// of this order, from prior literature.
inline constexpr double kReferenceRmseUncertainty = 0.129;

struct FitResult {
    std::map<std::string, double> coefficients; // includes "intercept" when fit
    std::map<std::string, double> std_errors;
    std::map<std::string, double> p_values; // one-tailed
    std::vector<double> residuals;
    double rmse_train = 0.0;
    double r2 = 0.0;
    double adj_r2 = 0.0;
    int n = 0;
    int p = 0; // predictors, excluding intercept
    bool zero_residual_variance = false;
};

struct HorizonEntry {
    int horizon = 0;
    double rmse_with = 0.0, adj_r2_with = 0.0;
    double rmse_without = 0.0, adj_r2_without = 0.0;
};

struct HorizonReport {
    std::string region;
    std::vector<HorizonEntry> entries; // ordered 14, 7, 3 by default
};

/// One row per day t in [train_from, train_to - horizon]; features are the
/// cumulative new/recovered counts at t (plus sentiment at t when enabled),
/// target is new_cases(t + horizon).
DesignMatrix build_design(const corpus::RegionSeries& cases,
                          const sentiment::DailySentiment& sent,
                          const FitConfig& cfg);

/// Least squares via column-pivoted QR; throws DataError("RankDeficient...")
/// when the (augmented) design is numerically rank deficient.
FitResult ols_fit(const DesignMatrix& design, bool intercept = true,
                  double alpha = 0.1);

double rmse(const std::vector<double>& pred, const std::vector<double>& actual);

/// 1 - (1-r2)(n-1)/(n-p-1)
double adj_r2(double r2, int n, int p);

/// Student-t CDF, absolute error below 1e-8.
double t_cdf(double t, int df);

/// One-tailed p-values (H0: beta = 0, alternative in the estimated sign).
std::map<std::string, double> coef_t_test(const FitResult& fit);

/// Fits with/without sentiment per horizon on the train window, then scores
/// out-of-sample RMSE on the horizon days following train_to.
HorizonReport evaluate_horizons(const corpus::RegionSeries& cases,
                                const sentiment::DailySentiment& sent,
                                const FitConfig& base_cfg,
                                const std::vector<int>& horizons = {14, 7, 3});

std::string fit_to_json(const FitResult& fit, const FitConfig& cfg);
std::string horizon_csv(const HorizonReport& report);
std::string render_horizon_table(const HorizonReport& report, bool color);

} // namespace episense::regress

#endif
