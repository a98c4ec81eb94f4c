#include "rb/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rb {

namespace {

constexpr double kSnapTol = 1e-12;

void check_n(int n) {
    if (n < 2) throw std::invalid_argument("family needs n >= 2, got " + std::to_string(n));
}

double check_param(int n, double p, double lo, double hi, const char* family) {
    if (std::isnan(p) || p < lo - kSnapTol || p > hi + kSnapTol) {
        throw std::invalid_argument(std::string(1, *family) + " parameter " + fmt_shortest(p) +
                                    " outside [" + fmt_shortest(lo) + ", " + fmt_shortest(hi) +
                                    "] for n=" + std::to_string(n));
    }
    return std::clamp(p, lo, hi);
}

// floor(1/p), rounding to the nearest integer when 1/p is within 1e-12 of it
// so breakpoint parameters land on the intended support size.
int floor_reciprocal(double p) {
    const double inv = 1.0 / p;
    const double nearest = std::round(inv);
    if (std::abs(inv - nearest) <= kSnapTol) return static_cast<int>(nearest);
    return static_cast<int>(std::floor(inv));
}

template <typename F>
double invert_monotone(F&& f, double lo, double hi, double target, const std::string& what) {
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    const bool increasing = f_hi >= f_lo;
    const double vmin = std::min(f_lo, f_hi);
    const double vmax = std::max(f_lo, f_hi);
    if (std::isnan(target) || target < vmin - kSnapTol || target > vmax + kSnapTol) {
        throw std::domain_error(what + ": target " + fmt_shortest(target) +
                                " outside attainable interval [" + fmt_shortest(vmin) + ", " +
                                fmt_shortest(vmax) + "]");
    }
    target = std::clamp(target, vmin, vmax);
    if (target == f_lo) return lo;
    if (target == f_hi) return hi;
    double a = lo, b = hi;
    double fa = f_lo, fb = f_hi;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = f(mid);
        if (fm == target) return mid;
        const bool root_above = increasing ? (fm < target) : (fm > target);
        if (root_above) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    // Where the curve is steep, adjacent parameters straddle the target by
    // many ulps in value; return whichever side lands closer.
    return std::abs(fa - target) <= std::abs(fb - target) ? a : b;
}

std::string norm_context(const char* fn, int n, Order alpha) {
    return std::string(fn) + "(n=" + std::to_string(n) + ", alpha=" + alpha.str() + ")";
}

}  // namespace

char family_letter(Family f) { return f == Family::V ? 'v' : 'w'; }

ProbVec v_dist(int n, double p) {
    check_n(n);
    p = check_param(n, p, 0.0, 1.0 / (n - 1), "v");
    if (p == 1.0 / n) return ProbVec::uniform(n);
    std::vector<double> w(static_cast<std::size_t>(n), p);
    w[0] = std::max(1.0 - (n - 1) * p, 0.0);
    return trusted_prob_vec(std::move(w));
}

ProbVec w_dist(int n, double p) {
    check_n(n);
    p = check_param(n, p, 1.0 / n, 1.0, "w");
    if (p == 1.0 / n) return ProbVec::uniform(n);
    const int m = std::min(floor_reciprocal(p), n);
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] = p;
    const double r = 1.0 - m * p;
    if (r > kSnapTol) w[static_cast<std::size_t>(m)] = r;
    return trusted_prob_vec(std::move(w));
}

double uniform_norm_value(int n, Order alpha) {
    check_n(n);
    if (alpha.is_infinite()) return 1.0 / n;
    if (alpha.is_one()) return 1.0;
    return std::pow(static_cast<double>(n), 1.0 / alpha.value() - 1.0);
}

double v_norm(int n, double p, Order alpha) {
    check_n(n);
    p = check_param(n, p, 0.0, 1.0 / (n - 1), "v");
    if (p == 1.0 / n) return uniform_norm_value(n, alpha);
    const double top = std::max(1.0 - (n - 1) * p, 0.0);
    if (alpha.is_infinite()) return std::max(top, p);
    const double a = alpha.value();
    if (a == 1.0) return 1.0;
    if (a > 1.0) {
        const double hi = std::max(top, p);
        double s = 0.0;
        if (top > 0.0) s += std::pow(top / hi, a);
        if (p > 0.0) s += (n - 1) * std::pow(p / hi, a);
        return hi * std::pow(s, 1.0 / a);
    }
    double s = 0.0;
    if (top > 0.0) s += std::pow(top, a);
    if (p > 0.0) s += (n - 1) * std::pow(p, a);
    return std::pow(s, 1.0 / a);
}

double w_norm(int n, double p, Order alpha) {
    check_n(n);
    p = check_param(n, p, 1.0 / n, 1.0, "w");
    if (p == 1.0 / n) return uniform_norm_value(n, alpha);
    if (alpha.is_infinite()) return p;
    const int m = std::min(floor_reciprocal(p), n);
    const double r = 1.0 - m * p;
    const double a = alpha.value();
    if (a == 1.0) return 1.0;
    if (a > 1.0) {
        double s = static_cast<double>(m);
        if (r > kSnapTol) s += std::pow(r / p, a);
        return p * std::pow(s, 1.0 / a);
    }
    double s = m * std::pow(p, a);
    if (r > kSnapTol) s += std::pow(r, a);
    return std::pow(s, 1.0 / a);
}

ExtremalParam invert_v_by_norm(int n, Order alpha, double target) {
    check_n(n);
    if (alpha.is_one()) {
        throw std::invalid_argument("norm inversion is undefined at order 1: the l1-norm is 1 everywhere");
    }
    const double p = invert_monotone([&](double q) { return v_norm(n, q, alpha); }, 0.0, 1.0 / n,
                                     target, norm_context("invert_v_by_norm", n, alpha));
    return ExtremalParam{Family::V, n, p};
}

ExtremalParam invert_w_by_norm(int n, Order alpha, double target) {
    check_n(n);
    if (alpha.is_one()) {
        throw std::invalid_argument("norm inversion is undefined at order 1: the l1-norm is 1 everywhere");
    }
    const double p = invert_monotone([&](double q) { return w_norm(n, q, alpha); }, 1.0 / n, 1.0,
                                     target, norm_context("invert_w_by_norm", n, alpha));
    return ExtremalParam{Family::W, n, p};
}

namespace {

double checked_entropy_target(int n, double h, const std::string& what) {
    const double hmax = std::log(static_cast<double>(n));
    if (std::isnan(h) || h < -kSnapTol || h > hmax + kSnapTol) {
        throw std::domain_error(what + ": entropy target " + fmt_shortest(h) + " outside [0, " +
                                fmt_shortest(hmax) + "]");
    }
    return std::clamp(h, 0.0, hmax);
}

double entropy_to_norm(Order alpha, double h) {
    if (alpha.is_infinite()) return std::exp(-h);
    return std::exp(h * (1.0 - alpha.value()) / alpha.value());
}

}  // namespace

ExtremalParam invert_v_by_entropy(int n, Order alpha, double h) {
    check_n(n);
    h = checked_entropy_target(n, h, norm_context("invert_v_by_entropy", n, alpha));
    if (h == 0.0) return ExtremalParam{Family::V, n, 0.0};
    if (h == std::log(static_cast<double>(n))) return ExtremalParam{Family::V, n, 1.0 / n};
    if (alpha.is_one()) {
        const double p =
            invert_monotone([&](double q) { return shannon_entropy(v_dist(n, q)); }, 0.0, 1.0 / n,
                            h, norm_context("invert_v_by_entropy", n, alpha));
        return ExtremalParam{Family::V, n, p};
    }
    return invert_v_by_norm(n, alpha, entropy_to_norm(alpha, h));
}

ExtremalParam invert_w_by_entropy(int n, Order alpha, double h) {
    check_n(n);
    h = checked_entropy_target(n, h, norm_context("invert_w_by_entropy", n, alpha));
    if (h == 0.0) return ExtremalParam{Family::W, n, 1.0};
    if (h == std::log(static_cast<double>(n))) return ExtremalParam{Family::W, n, 1.0 / n};
    if (alpha.is_one()) {
        const double p =
            invert_monotone([&](double q) { return shannon_entropy(w_dist(n, q)); }, 1.0 / n, 1.0,
                            h, norm_context("invert_w_by_entropy", n, alpha));
        return ExtremalParam{Family::W, n, p};
    }
    return invert_w_by_norm(n, alpha, entropy_to_norm(alpha, h));
}

}  // namespace rb
