// Statistical comparison toolkit: two-sample and one-sample-vs-normal
// Kolmogorov-Smirnov tests (asymptotic p-values), Student's independent
// t-test (pooled by default, Welch optional) and the grouped comparison the
// experiment harness reports.
#pragma once

#include <span>
#include <string>

namespace heartml::eval {

struct Summary {
    double mean = 0.0;
    double sd = 0.0; // sample standard deviation (n - 1); 0 when n < 2
    std::size_t n = 0;
};

Summary summarize(std::span<const double> values);

struct StatTestResult {
    std::string method;
    double statistic = 0.0;
    double p_value = 1.0;
    double df = 0.0; // 0 when the test has no degrees-of-freedom notion
};

// D = sup |ECDF_a - ECDF_b|; p from the asymptotic Kolmogorov distribution
// with effective size n_a * n_b / (n_a + n_b).
StatTestResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// D against a normal fitted with the sample mean and standard deviation;
// indicative normality check, p again from the asymptotic distribution.
StatTestResult ks_one_sample_normal(std::span<const double> a);

// Two-sided independent two-sample t-test. equal_variance selects the
// pooled statistic with df = n_a + n_b - 2; otherwise Welch.
StatTestResult t_test_independent(std::span<const double> a, std::span<const double> b,
                                  bool equal_variance = true);

struct GroupComparison {
    Summary group_one;
    Summary group_two;
    StatTestResult normality_one;
    StatTestResult normality_two;
    StatTestResult ks;
    StatTestResult t_test;
};

GroupComparison group_compare(std::span<const double> group_one,
                              std::span<const double> group_two,
                              bool equal_variance = true);

// Survival function of the Kolmogorov distribution.
double kolmogorov_sf(double lambda);
// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);
// Standard normal CDF.
double normal_cdf(double z);
// Two-sided p-value for a t statistic.
double student_t_two_sided_p(double t, double df);

} // namespace heartml::eval
