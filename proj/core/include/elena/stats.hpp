#pragma once

#include <string>
#include <vector>

namespace elena {

struct TrialGroup {
    std::string label;
    std::vector<double> observations;
};

struct SummaryStats {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation (n - 1 denominator)
    double cv = 0.0;      // stddev / |mean|
    bool cv_defined = true;  // false when the mean is zero
};

// Requires at least two observations.
SummaryStats summarize(const TrialGroup& group);

struct AnovaResult {
    double f = 0.0;
    double p = 1.0;
};

// Classic one-way ANOVA over >= 2 groups of >= 2 observations each:
// F = (SSB / dfB) / (SSW / dfW), p from the F survival function. Zero
// within-group variance with non-zero between-group variance reports
// F = +infinity, p = 0.
AnovaResult anova_oneway(const std::vector<TrialGroup>& groups);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

// P(F_{df1, df2} > f).
double f_survival(double f, double df1, double df2);

// Two-sided p of Welch's t statistic with Welch-Satterthwaite df.
double welch_t_test(const TrialGroup& a, const TrialGroup& b);

struct PairwiseComparison {
    std::string label_a;
    std::string label_b;
    double p_adjusted = 1.0;  // Bonferroni-adjusted two-sided p
    bool significant = false;
};

// Bonferroni-corrected Welch t-tests over all group pairs. This substitutes
// for a studentized-range post-hoc test and is labeled as such in reports.
std::vector<PairwiseComparison> welch_pairwise(const std::vector<TrialGroup>& groups,
                                               double alpha = 0.05);

struct SignificanceRow {
    std::string label;  // e.g. graph size
    double f = 0.0;
    double p = 1.0;
    std::vector<std::string> significant_pairs;  // "A vs B"
};

// CSV with columns label,f_value,p_value,significant_comparisons.
std::string significance_table_csv(const std::vector<SignificanceRow>& rows);

}  // namespace elena
