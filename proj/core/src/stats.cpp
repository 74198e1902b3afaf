#include "elena/stats.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "elena/errors.hpp"
#include "elena/io.hpp"

namespace elena {

namespace {

double group_mean(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

double sum_squared_deviation(const std::vector<double>& values, double mean) {
    double ss = 0.0;
    for (double v : values) {
        const double d = v - mean;
        ss += d * d;
    }
    return ss;
}

// Continued fraction for the incomplete beta (modified Lentz evaluation).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) {
        d = kTiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double numerator = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + numerator * d;
        if (std::fabs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + numerator / c;
        if (std::fabs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        h *= d * c;

        numerator = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + numerator * d;
        if (std::fabs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + numerator / c;
        if (std::fabs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) {
            break;
        }
    }
    return h;
}

}  // namespace

SummaryStats summarize(const TrialGroup& group) {
    const auto& values = group.observations;
    if (values.size() < 2) {
        throw ValidationError("summarize: need at least two observations");
    }
    SummaryStats stats;
    stats.mean = group_mean(values);
    const double variance =
        sum_squared_deviation(values, stats.mean) / static_cast<double>(values.size() - 1);
    stats.stddev = std::sqrt(variance);
    if (stats.mean == 0.0) {
        stats.cv_defined = false;
        stats.cv = std::numeric_limits<double>::quiet_NaN();
    } else {
        stats.cv = stats.stddev / std::fabs(stats.mean);
    }
    return stats;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw ValidationError("regularized_incomplete_beta: a and b must be positive");
    }
    if (x <= 0.0) {
        return 0.0;
    }
    if (x >= 1.0) {
        return 1.0;
    }
    // The prefactor is symmetric under (a, b, x) -> (b, a, 1 - x).
    const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                  a * std::log(x) + b * std::log1p(-x));
    // The continued fraction converges fast for x below the split point;
    // use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) above it.
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_survival(double f, double df1, double df2) {
    if (f <= 0.0) {
        return 1.0;
    }
    if (std::isinf(f)) {
        return 0.0;
    }
    return regularized_incomplete_beta(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f));
}

AnovaResult anova_oneway(const std::vector<TrialGroup>& groups) {
    if (groups.size() < 2) {
        throw ValidationError("anova_oneway: need at least two groups");
    }
    std::size_t total_count = 0;
    double total_sum = 0.0;
    for (const auto& group : groups) {
        if (group.observations.size() < 2) {
            throw ValidationError("anova_oneway: every group needs at least two observations");
        }
        total_count += group.observations.size();
        for (double v : group.observations) {
            total_sum += v;
        }
    }
    const double grand_mean = total_sum / static_cast<double>(total_count);

    double ss_between = 0.0;
    double ss_within = 0.0;
    for (const auto& group : groups) {
        const double mean = group_mean(group.observations);
        const double n = static_cast<double>(group.observations.size());
        ss_between += n * (mean - grand_mean) * (mean - grand_mean);
        ss_within += sum_squared_deviation(group.observations, mean);
    }

    const double df_between = static_cast<double>(groups.size() - 1);
    const double df_within = static_cast<double>(total_count - groups.size());

    AnovaResult result;
    if (ss_within <= 0.0) {
        if (ss_between <= 0.0) {
            result.f = 0.0;
            result.p = 1.0;
        } else {
            result.f = std::numeric_limits<double>::infinity();
            result.p = 0.0;
        }
        return result;
    }
    result.f = (ss_between / df_between) / (ss_within / df_within);
    result.p = f_survival(result.f, df_between, df_within);
    return result;
}

double welch_t_test(const TrialGroup& a, const TrialGroup& b) {
    const SummaryStats sa = summarize(a);
    const SummaryStats sb = summarize(b);
    const double na = static_cast<double>(a.observations.size());
    const double nb = static_cast<double>(b.observations.size());
    const double va = sa.stddev * sa.stddev / na;
    const double vb = sb.stddev * sb.stddev / nb;
    if (va + vb == 0.0) {
        return sa.mean == sb.mean ? 1.0 : 0.0;
    }
    const double t = (sa.mean - sb.mean) / std::sqrt(va + vb);
    const double df = (va + vb) * (va + vb) /
                      (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    // Two-sided p via the t/beta identity.
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

std::vector<PairwiseComparison> welch_pairwise(const std::vector<TrialGroup>& groups,
                                               double alpha) {
    std::vector<PairwiseComparison> comparisons;
    const std::size_t pair_count = groups.size() * (groups.size() - 1) / 2;
    if (pair_count == 0) {
        return comparisons;
    }
    for (std::size_t i = 0; i + 1 < groups.size(); ++i) {
        for (std::size_t j = i + 1; j < groups.size(); ++j) {
            PairwiseComparison comparison;
            comparison.label_a = groups[i].label;
            comparison.label_b = groups[j].label;
            const double raw_p = welch_t_test(groups[i], groups[j]);
            comparison.p_adjusted = std::min(1.0, raw_p * static_cast<double>(pair_count));
            comparison.significant = comparison.p_adjusted < alpha;
            comparisons.push_back(std::move(comparison));
        }
    }
    return comparisons;
}

std::string significance_table_csv(const std::vector<SignificanceRow>& rows) {
    std::ostringstream out;
    out << "label,f_value,p_value,significant_comparisons\n";
    for (const auto& row : rows) {
        std::string pairs;
        for (std::size_t i = 0; i < row.significant_pairs.size(); ++i) {
            if (i > 0) {
                pairs += "; ";
            }
            pairs += row.significant_pairs[i];
        }
        out << csv_quote(row.label) << "," << format_double(row.f) << ","
            << format_double(row.p) << "," << csv_quote(pairs) << "\n";
    }
    return out.str();
}

}  // namespace elena
