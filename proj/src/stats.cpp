#include "hawkeslab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hawkeslab {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double q) {
    if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("normal_quantile: q in (0,1)");
    // Acklam's rational approximation, polished with one Halley step.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (q < plow) {
        double r = std::sqrt(-2.0 * std::log(q));
        x = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
            ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
    } else if (q <= 1.0 - plow) {
        double r = q - 0.5, s = r * r;
        x = (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) * r /
            (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0);
    } else {
        double r = std::sqrt(-2.0 * std::log(1.0 - q));
        x = -(((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
            ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
    }
    double e = normal_cdf(x) - q;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

namespace {

double gamma_p_series(double a, double x) {
    double term = 1.0 / a, sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_p: need a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_contfrac(a, x);
}

double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

double gamma_cdf(double x, double shape, double rate) {
    if (x <= 0.0) return 0.0;
    return gamma_p(shape, rate * x);
}

SampleSummary summarize(const std::vector<double>& xs) {
    SampleSummary s;
    s.n = xs.size();
    if (s.n == 0) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / s.n;
    if (s.n > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.variance = ss / (s.n - 1);
        s.std_error = std::sqrt(s.variance / s.n);
    }
    return s;
}

double ks_tail(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(i / na - j / nb));
    }
    double ne = na * nb / (na + nb);
    double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    return {d, ks_tail(lambda)};
}

KsResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
    const double n = static_cast<double>(xs.size());
    double d = ks_distance(std::move(xs), cdf);
    double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    return {d, ks_tail(lambda)};
}

double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf) {
    if (xs.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double f = cdf(xs[i]);
        d = std::max(d, std::fabs((i + 1) / n - f));
        d = std::max(d, std::fabs(f - i / n));
    }
    return d;
}

ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi_square_gof: size mismatch");
    double stat = 0.0;
    int dof = -1;  // totals constrained equal
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0.0) throw std::invalid_argument("chi_square_gof: nonpositive expected");
        double diff = observed[i] - expected[i];
        stat += diff * diff / expected[i];
        ++dof;
    }
    if (dof < 1) dof = 1;
    return {stat, static_cast<double>(dof), gamma_q(0.5 * dof, 0.5 * stat)};
}

ChiSquareResult chi_square_homogeneity(const std::vector<std::vector<double>>& counts) {
    const std::size_t rows = counts.size();
    if (rows < 2) throw std::invalid_argument("chi_square_homogeneity: need >= 2 samples");
    const std::size_t cols = counts[0].size();
    std::vector<double> col_tot(cols, 0.0), row_tot(rows, 0.0);
    double total = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        if (counts[r].size() != cols) throw std::invalid_argument("ragged count table");
        for (std::size_t c = 0; c < cols; ++c) {
            col_tot[c] += counts[r][c];
            row_tot[r] += counts[r][c];
            total += counts[r][c];
        }
    }
    double stat = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            double e = row_tot[r] * col_tot[c] / total;
            if (e > 0.0) {
                double diff = counts[r][c] - e;
                stat += diff * diff / e;
            }
        }
    double dof = static_cast<double>((rows - 1) * (cols - 1));
    return {stat, dof, gamma_q(0.5 * dof, 0.5 * stat)};
}

std::vector<std::vector<double>> bin_counts(const std::vector<std::vector<int>>& samples,
                                            double min_expected) {
    int max_val = 0;
    for (const auto& s : samples)
        for (int v : s) max_val = std::max(max_val, v);
    const std::size_t rows = samples.size();
    std::vector<std::vector<double>> raw(rows, std::vector<double>(max_val + 1, 0.0));
    for (std::size_t r = 0; r < rows; ++r)
        for (int v : samples[r]) raw[r][static_cast<std::size_t>(v)] += 1.0;
    // pool adjacent values until every row bin clears min_expected
    std::vector<std::vector<double>> out(rows);
    std::vector<double> acc(rows, 0.0);
    for (int v = 0; v <= max_val; ++v) {
        for (std::size_t r = 0; r < rows; ++r) acc[r] += raw[r][static_cast<std::size_t>(v)];
        double min_acc = acc[0];
        for (double x : acc) min_acc = std::min(min_acc, x);
        if (min_acc >= min_expected) {
            for (std::size_t r = 0; r < rows; ++r) out[r].push_back(acc[r]);
            std::fill(acc.begin(), acc.end(), 0.0);
        }
    }
    double rem = 0.0;
    for (double x : acc) rem += x;
    if (rem > 0.0) {
        if (out[0].empty()) {
            for (std::size_t r = 0; r < rows; ++r) out[r].push_back(acc[r]);
        } else {
            for (std::size_t r = 0; r < rows; ++r) out[r].back() += acc[r];
        }
    }
    return out;
}

HillEstimate hill_tail_index(std::vector<double> samples, double k_fraction, RngStream rng,
                             int bootstrap_rounds) {
    if (samples.size() < 1000) throw std::invalid_argument("hill: insufficient-samples (< 1e3)");
    if (!(k_fraction > 0.0) || k_fraction > 0.2)
        throw std::invalid_argument("hill: k_fraction must be in (0, 0.2]");
    auto estimate = [&](std::vector<double>& xs) {
        std::sort(xs.begin(), xs.end(), std::greater<double>());
        std::size_t k = static_cast<std::size_t>(k_fraction * xs.size());
        k = std::max<std::size_t>(k, 10);
        while (k + 1 < xs.size() && xs[k] <= 0.0) --k;  // guard: need positive order stats
        double ref = xs[k];
        double acc = 0.0;
        for (std::size_t i = 0; i < k; ++i) acc += std::log(xs[i] / ref);
        return std::make_pair(k, k / acc);
    };
    std::vector<double> work = samples;
    auto [k, alpha] = estimate(work);
    std::vector<double> boot(bootstrap_rounds);
    std::vector<double> resample(samples.size());
    for (int b = 0; b < bootstrap_rounds; ++b) {
        for (std::size_t i = 0; i < samples.size(); ++i) {
            std::size_t idx = static_cast<std::size_t>(rng.uniform() * samples.size());
            if (idx >= samples.size()) idx = samples.size() - 1;
            resample[i] = samples[idx];
        }
        boot[b] = estimate(resample).second;
    }
    std::sort(boot.begin(), boot.end());
    HillEstimate h;
    h.alpha = alpha;
    h.k = k;
    h.ci_low = boot[static_cast<std::size_t>(0.025 * (bootstrap_rounds - 1))];
    h.ci_high = boot[static_cast<std::size_t>(0.975 * (bootstrap_rounds - 1))];
    return h;
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));  // Newton on P_n
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        double w = 1.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

namespace {
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

double ecdf(const std::vector<double>& sorted_xs, double x) {
    auto it = std::upper_bound(sorted_xs.begin(), sorted_xs.end(), x);
    return static_cast<double>(it - sorted_xs.begin()) / static_cast<double>(sorted_xs.size());
}

}  // namespace hawkeslab
