#include "rb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rb {

namespace {

constexpr double kConsistencyTol = 1e-12;

void check_n(int n) {
    if (n < 2) throw std::invalid_argument("bounds need n >= 2, got " + std::to_string(n));
}

void check_distinct(Order alpha, Order beta) {
    if (alpha == beta) {
        throw std::invalid_argument("orders must be distinct, both are " + alpha.str());
    }
}

void check_ordered(const BoundReport& r, const char* what) {
    if (!(r.lower <= r.upper + kConsistencyTol)) {
        throw std::logic_error(std::string(what) + ": lower bound " + fmt17(r.lower) +
                               " exceeds upper bound " + fmt17(r.upper));
    }
}

}  // namespace

const char* to_string(BoundRegime r) {
    switch (r) {
        case BoundRegime::NormBetaInside: return "norm-beta-inside";
        case BoundRegime::NormBetaOutside: return "norm-beta-outside";
        case BoundRegime::BetaBelowAlpha: return "beta-below-alpha";
        case BoundRegime::BetaAboveAlpha: return "beta-above-alpha";
        case BoundRegime::EqualOrders: return "equal-orders";
        case BoundRegime::DegenerateOne: return "degenerate-one";
    }
    return "unknown";
}

BoundReport norm_bounds(int n, Order alpha, double fixed_norm, Order beta) {
    check_n(n);
    if (alpha.is_one()) {
        throw std::invalid_argument("norm bounds need alpha != 1: the l1-norm does not constrain p");
    }
    check_distinct(alpha, beta);
    const ExtremalParam pv = invert_v_by_norm(n, alpha, fixed_norm);
    const ExtremalParam pw = invert_w_by_norm(n, alpha, fixed_norm);

    BoundReport r;
    if (beta.is_one()) {
        r.lower = 1.0;
        r.upper = 1.0;
        r.lower_witness = pv;
        r.upper_witness = pw;
        r.regime = BoundRegime::DegenerateOne;
        return r;
    }
    const double lo1 = std::min(1.0, alpha.value());
    const double hi1 = std::max(1.0, alpha.value());
    const bool inside = beta.value() > lo1 && beta.value() < hi1;
    if (inside) {
        r.lower = v_norm(n, pv.p, beta);
        r.upper = w_norm(n, pw.p, beta);
        r.lower_witness = pv;
        r.upper_witness = pw;
        r.regime = BoundRegime::NormBetaInside;
    } else {
        r.lower = w_norm(n, pw.p, beta);
        r.upper = v_norm(n, pv.p, beta);
        r.lower_witness = pw;
        r.upper_witness = pv;
        r.regime = BoundRegime::NormBetaOutside;
    }
    check_ordered(r, "norm_bounds");
    return r;
}

BoundReport entropy_bounds(int n, Order alpha, double h, Order beta) {
    check_n(n);
    const ExtremalParam pv = invert_v_by_entropy(n, alpha, h);
    const ExtremalParam pw = invert_w_by_entropy(n, alpha, h);

    BoundReport r;
    if (alpha == beta) {
        r.lower = h;
        r.upper = h;
        r.lower_witness = pv;
        r.upper_witness = pw;
        r.regime = BoundRegime::EqualOrders;
        return r;
    }
    const double hv = renyi_entropy(v_dist(n, pv.p), beta);
    const double hw = renyi_entropy(w_dist(n, pw.p), beta);
    if (beta < alpha) {
        r.lower = hw;
        r.upper = hv;
        r.lower_witness = pw;
        r.upper_witness = pv;
        r.regime = BoundRegime::BetaBelowAlpha;
    } else {
        r.lower = hv;
        r.upper = hw;
        r.lower_witness = pv;
        r.upper_witness = pw;
        r.regime = BoundRegime::BetaAboveAlpha;
    }
    check_ordered(r, "entropy_bounds");
    return r;
}

BoundReport divergence_bounds(int n, Order alpha, double d, Order beta) {
    check_n(n);
    const double dmax = std::log(static_cast<double>(n));
    if (std::isnan(d) || d < -kConsistencyTol || d > dmax + kConsistencyTol) {
        throw std::domain_error("divergence target " + fmt_shortest(d) + " outside [0, " +
                                fmt_shortest(dmax) + "]");
    }
    d = std::clamp(d, 0.0, dmax);
    const BoundReport e = entropy_bounds(n, alpha, dmax - d, beta);
    BoundReport r;
    r.lower = dmax - e.upper;
    r.upper = dmax - e.lower;
    r.lower_witness = e.upper_witness;
    r.upper_witness = e.lower_witness;
    r.regime = e.regime;
    check_ordered(r, "divergence_bounds");
    return r;
}

namespace {

double family_coordinate(Family f, int n, double p, Order order, Plane plane) {
    if (plane == Plane::Norm) {
        return f == Family::V ? v_norm(n, p, order) : w_norm(n, p, order);
    }
    return renyi_entropy(f == Family::V ? v_dist(n, p) : w_dist(n, p), order);
}

RegionCurve sweep_family(Family f, int n, Order alpha, Order beta, int num_points, Plane plane) {
    const double lo = f == Family::V ? 0.0 : 1.0 / n;
    const double hi = f == Family::V ? 1.0 / n : 1.0;
    std::vector<double> params;
    params.reserve(static_cast<std::size_t>(num_points) + static_cast<std::size_t>(n));
    for (int i = 0; i < num_points; ++i) {
        const double t = static_cast<double>(i) / (num_points - 1);
        params.push_back(i == num_points - 1 ? hi : lo + t * (hi - lo));
    }
    if (f == Family::W) {
        for (int m = 2; m < n; ++m) params.push_back(1.0 / m);
    }
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                 params.end());

    RegionCurve curve;
    curve.family = f;
    curve.n = n;
    curve.alpha = alpha;
    curve.beta = beta;
    curve.points.reserve(params.size());
    for (double p : params) {
        curve.points.push_back({p, family_coordinate(f, n, p, alpha, plane),
                                family_coordinate(f, n, p, beta, plane)});
    }
    return curve;
}

}  // namespace

std::pair<RegionCurve, RegionCurve> region_boundary(int n, Order alpha, Order beta,
                                                    int num_points, Plane plane) {
    check_n(n);
    check_distinct(alpha, beta);
    if (num_points < 2) {
        throw std::invalid_argument("region sweep needs at least 2 points, got " +
                                    std::to_string(num_points));
    }
    if (plane == Plane::Norm && (alpha.is_one() || beta.is_one())) {
        throw std::invalid_argument("norm-plane region needs both orders != 1");
    }
    return {sweep_family(Family::V, n, alpha, beta, num_points, plane),
            sweep_family(Family::W, n, alpha, beta, num_points, plane)};
}

void write_csv(std::ostream& out, const RegionCurve& v_curve, const RegionCurve& w_curve) {
    out << "param,x,y,family\n";
    for (const RegionCurve* curve : {&v_curve, &w_curve}) {
        const char letter = family_letter(curve->family);
        for (const RegionCurve::Sample& s : curve->points) {
            out << fmt17(s.param) << ',' << fmt17(s.x) << ',' << fmt17(s.y) << ',' << letter
                << '\n';
        }
    }
}

}  // namespace rb
