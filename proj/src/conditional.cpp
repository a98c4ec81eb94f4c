#include "rb/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rb {

namespace {

constexpr double kHullTol = 1e-12;

}  // namespace

JointModel::JointModel(ProbVec prior, std::vector<ProbVec> posteriors)
    : prior_(std::move(prior)), posteriors_(std::move(posteriors)) {
    for (double w : prior_) {
        if (w <= 0.0) {
            throw std::invalid_argument("joint model prior must be strictly positive");
        }
    }
    if (posteriors_.size() != prior_.size()) {
        throw std::invalid_argument("joint model has " + std::to_string(prior_.size()) +
                                    " prior weights but " + std::to_string(posteriors_.size()) +
                                    " posteriors");
    }
    const std::size_t n = posteriors_.front().size();
    for (const ProbVec& q : posteriors_) {
        if (q.size() != n) {
            throw std::invalid_argument("joint model posteriors must share one alphabet size");
        }
    }
}

JointModel JointModel::parse(std::istream& in) {
    std::vector<ProbVec> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        rows.push_back(ProbVec::parse(line));
    }
    if (rows.size() < 3) {
        throw std::invalid_argument("joint model text needs a prior line and at least 2 posteriors");
    }
    ProbVec prior = rows.front();
    rows.erase(rows.begin());
    return JointModel(std::move(prior), std::move(rows));
}

double expected_norm(const JointModel& j, Order alpha) {
    double s = 0.0;
    for (std::size_t y = 0; y < j.num_outputs(); ++y) {
        s += j.prior()[y] * lp_norm(j.posteriors()[y], alpha);
    }
    return s;
}

double conditional_renyi(const JointModel& j, Order alpha) {
    const double hmax = std::log(static_cast<double>(j.n()));
    double h;
    if (alpha.is_one()) {
        h = 0.0;
        for (std::size_t y = 0; y < j.num_outputs(); ++y) {
            h += j.prior()[y] * shannon_entropy(j.posteriors()[y]);
        }
    } else if (alpha.is_infinite()) {
        h = -std::log(expected_norm(j, alpha));
    } else {
        const double a = alpha.value();
        h = a / (1.0 - a) * std::log(expected_norm(j, alpha));
    }
    return std::clamp(h, 0.0, hmax);
}

std::vector<std::array<double, 2>> convex_hull(std::vector<std::array<double, 2>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;

    auto cross = [](const std::array<double, 2>& o, const std::array<double, 2>& a,
                    const std::array<double, 2>& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };

    std::vector<std::array<double, 2>> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= kHullTol) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= kHullTol) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

HullRegion conditional_region(int n, Order alpha, Order beta, int num_points) {
    auto [v_curve, w_curve] = region_boundary(n, alpha, beta, num_points, Plane::Norm);
    std::vector<std::array<double, 2>> pts;
    pts.reserve(v_curve.points.size() + w_curve.points.size());
    for (const RegionCurve* curve : {&v_curve, &w_curve}) {
        for (const RegionCurve::Sample& s : curve->points) pts.push_back({s.x, s.y});
    }
    HullRegion region;
    region.vertices = convex_hull(std::move(pts));
    region.v_curve = std::move(v_curve);
    region.w_curve = std::move(w_curve);
    return region;
}

namespace {

double segment_distance(const std::array<double, 2>& a, const std::array<double, 2>& b,
                        double x, double y) {
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((x - a[0]) * dx + (y - a[1]) * dy) / len2, 0.0, 1.0);
    const double px = a[0] + t * dx - x;
    const double py = a[1] + t * dy - y;
    return std::hypot(px, py);
}

}  // namespace

double hull_signed_distance(const HullRegion& h, double x, double y) {
    const auto& v = h.vertices;
    if (v.size() < 2) return -std::numeric_limits<double>::infinity();
    bool inside = v.size() >= 3;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % v.size()];
        if (v.size() >= 3) {
            const double cr = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
            if (cr < 0.0) inside = false;
        }
        dist = std::min(dist, segment_distance(a, b, x, y));
    }
    return inside ? dist : -dist;
}

bool hull_contains(const HullRegion& h, double x, double y, double slack) {
    return hull_signed_distance(h, x, y) >= -slack;
}

double hull_area(const HullRegion& h) {
    const auto& v = h.vertices;
    if (v.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % v.size()];
        twice += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * twice;
}

void write_csv(std::ostream& out, const HullRegion& h) {
    out << "x,y\n";
    for (const auto& v : h.vertices) {
        out << fmt17(v[0]) << ',' << fmt17(v[1]) << '\n';
    }
}

}  // namespace rb
