#include "landsea/analysis.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "landsea/errors.hpp"

namespace landsea {

namespace {

// Continued fraction for the incomplete beta function, modified Lentz.
double beta_cf(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 1e-15;
    constexpr double fpmin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (!std::isfinite(t)) return 0.0;
    return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

RegressionSummary regress_counts_on_factor(const CountFactorPairs& input) {
    const auto& pairs = input.pairs;
    const int n = static_cast<int>(pairs.size());
    if (n < 3) throw InputError("regression needs at least 3 (factor, count) pairs");
    {
        std::set<int> factors;
        for (const auto& p : pairs) factors.insert(p.local_factor);
        if (factors.size() < 2)
            throw InputError("regression needs at least 2 distinct local factors");
    }

    double sx = 0.0, sy = 0.0;
    for (const auto& p : pairs) {
        sx += p.local_factor;
        sy += p.n_nonzero;
    }
    const double xbar = sx / n;
    const double ybar = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& p : pairs) {
        const double dx = p.local_factor - xbar;
        const double dy = p.n_nonzero - ybar;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    RegressionSummary s;
    s.n = n;
    s.slope = sxy / sxx;
    s.intercept = ybar - s.slope * xbar;
    double sse = 0.0;
    for (const auto& p : pairs) {
        const double r = p.n_nonzero - (s.intercept + s.slope * p.local_factor);
        sse += r * r;
    }
    s.r_squared = syy > 0.0 ? std::max(0.0, std::min(1.0, 1.0 - sse / syy)) : 0.0;
    const double sigma2 = sse / (n - 2);
    s.slope_std_error = std::sqrt(sigma2 / sxx);
    if (s.slope_std_error == 0.0) {
        // exact-fit and flat degenerate cases
        s.t_stat = 0.0;
        s.p_value = s.slope == 0.0 ? 1.0 : 0.0;
    } else {
        s.t_stat = s.slope / s.slope_std_error;
        s.p_value = student_t_two_sided_p(s.t_stat, n - 2);
    }

    std::map<int, std::pair<double, int>> acc;
    for (const auto& p : pairs) {
        acc[p.local_factor].first += p.n_nonzero;
        acc[p.local_factor].second += 1;
    }
    for (const auto& [f, sc] : acc) s.per_factor_means[f] = sc.first / sc.second;
    return s;
}

CountFactorPairs extract_pairs(const ScreeningReport& report) {
    if (report.per_response.empty())
        throw InputError("screening report has no responses");
    CountFactorPairs out;
    for (const auto& r : report.per_response)
        out.pairs.push_back({r.local_factor, r.n_nonzero, r.response_name});
    return out;
}

CountFactorPairs load_pairs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    CountFactorPairs out;
    std::string line;
    bool header_seen = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "response,local_factor,n_nonzero")
                throw InputError(path + ": expected header `response,local_factor,n_nonzero`");
            header_seen = true;
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw InputError(path + ": malformed row at line " + std::to_string(lineno));
        CountFactorPair p;
        p.response_name = line.substr(0, c1);
        auto parse_int = [&](std::string_view sv, const char* what) {
            int v = 0;
            auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
            if (ec != std::errc{} || ptr != sv.data() + sv.size())
                throw InputError(path + ": bad " + std::string(what) + " at line " +
                                 std::to_string(lineno));
            return v;
        };
        p.local_factor = parse_int(
            std::string_view(line).substr(c1 + 1, c2 - c1 - 1), "local_factor");
        p.n_nonzero = parse_int(std::string_view(line).substr(c2 + 1), "n_nonzero");
        out.pairs.push_back(std::move(p));
    }
    if (out.pairs.empty()) throw InputError(path + ": no data rows");
    return out;
}

}  // namespace landsea
