#include "eval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/errors.hpp"

namespace heartml::eval {

using heartml::core::NumericError;
using heartml::core::ValidationError;

Summary summarize(std::span<const double> values) {
    Summary s;
    s.n = values.size();
    if (s.n == 0) return s;
    double total = 0.0;
    for (double v : values) total += v;
    s.mean = total / static_cast<double>(s.n);
    if (s.n < 2) return s;
    double ss = 0.0;
    for (double v : values) {
        const double d = v - s.mean;
        ss += d * d;
    }
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    return s;
}

double kolmogorov_sf(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 101; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    const double p = 2.0 * sum;
    return std::min(1.0, std::max(0.0, p));
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 3e-16;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw NumericError("incomplete_beta: continued fraction did not converge");
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) {
        throw ValidationError("incomplete_beta: a and b must be positive");
    }
    if (x < 0.0 || x > 1.0) {
        throw ValidationError("incomplete_beta: x must lie in [0, 1]");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double student_t_two_sided_p(double t, double df) {
    if (df <= 0.0) throw ValidationError("student_t_two_sided_p: df must be positive");
    if (!std::isfinite(t)) return 0.0;
    const double x = df / (df + t * t);
    return incomplete_beta(df / 2.0, 0.5, x);
}

StatTestResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw ValidationError("ks_two_sample: both samples must be non-empty");
    }
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size()) {
        const double v = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= v) ++i;
        while (j < sb.size() && sb[j] <= v) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na -
                                  static_cast<double>(j) / nb));
    }

    StatTestResult result;
    result.method = "ks_two_sample";
    result.statistic = d;
    const double ne = na * nb / (na + nb);
    result.p_value = kolmogorov_sf(std::sqrt(ne) * d);
    return result;
}

StatTestResult ks_one_sample_normal(std::span<const double> a) {
    const Summary s = summarize(a);
    if (s.n < 2) {
        throw ValidationError("ks_one_sample_normal: need at least two values");
    }
    if (s.sd == 0.0) {
        throw NumericError("ks_one_sample_normal: zero variance sample");
    }
    std::vector<double> sorted(a.begin(), a.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        const double f = normal_cdf((sorted[k] - s.mean) / s.sd);
        const double upper = static_cast<double>(k + 1) / n - f;
        const double lower = f - static_cast<double>(k) / n;
        d = std::max({d, upper, lower});
    }
    StatTestResult result;
    result.method = "ks_one_sample_normal";
    result.statistic = d;
    result.p_value = kolmogorov_sf(std::sqrt(n) * d);
    return result;
}

StatTestResult t_test_independent(std::span<const double> a, std::span<const double> b,
                                  bool equal_variance) {
    const Summary sa = summarize(a);
    const Summary sb = summarize(b);
    if (sa.n < 2 || sb.n < 2) {
        throw ValidationError("t_test_independent: both groups need at least two values");
    }
    const double na = static_cast<double>(sa.n), nb = static_cast<double>(sb.n);
    const double va = sa.sd * sa.sd, vb = sb.sd * sb.sd;

    StatTestResult result;
    double se = 0.0;
    if (equal_variance) {
        result.method = "t_test_pooled";
        result.df = na + nb - 2.0;
        const double pooled = ((na - 1.0) * va + (nb - 1.0) * vb) / result.df;
        se = std::sqrt(pooled * (1.0 / na + 1.0 / nb));
    } else {
        result.method = "t_test_welch";
        const double ta = va / na, tb = vb / nb;
        if (ta + tb > 0.0) {
            result.df = (ta + tb) * (ta + tb) /
                        (ta * ta / (na - 1.0) + tb * tb / (nb - 1.0));
        }
        se = std::sqrt(ta + tb);
    }
    if (se == 0.0) {
        if (sa.mean == sb.mean) {
            result.statistic = 0.0;
            result.p_value = 1.0;
            return result;
        }
        throw NumericError("t_test_independent: zero variance with unequal means");
    }
    result.statistic = (sa.mean - sb.mean) / se;
    result.p_value = student_t_two_sided_p(result.statistic, result.df);
    return result;
}

GroupComparison group_compare(std::span<const double> group_one,
                              std::span<const double> group_two, bool equal_variance) {
    if (group_one.size() < 2 || group_two.size() < 2) {
        throw ValidationError("group_compare: both groups need at least two values");
    }
    GroupComparison comparison;
    comparison.group_one = summarize(group_one);
    comparison.group_two = summarize(group_two);
    comparison.normality_one = ks_one_sample_normal(group_one);
    comparison.normality_two = ks_one_sample_normal(group_two);
    comparison.ks = ks_two_sample(group_one, group_two);
    comparison.t_test = t_test_independent(group_one, group_two, equal_variance);
    return comparison;
}

} // namespace heartml::eval
