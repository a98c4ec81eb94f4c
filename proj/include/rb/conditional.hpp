#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "rb/bounds.hpp"
#include "rb/simplex_core.hpp"

namespace rb {

// Joint distribution of (X, Y) given as the Y-marginal and the posteriors
// P_{X|Y}(.|y). The prior must be strictly positive with |Y| >= 2; all
// posteriors share a common length n >= 2.
class JointModel {
public:
    JointModel(ProbVec prior, std::vector<ProbVec> posteriors);

    // Text form: first line the prior, each following line one posterior,
    // comma-separated weights.
    static JointModel parse(std::istream& in);

    const ProbVec& prior() const noexcept { return prior_; }
    const std::vector<ProbVec>& posteriors() const noexcept { return posteriors_; }
    std::size_t n() const noexcept { return posteriors_.front().size(); }
    std::size_t num_outputs() const noexcept { return posteriors_.size(); }

private:
    ProbVec prior_;
    std::vector<ProbVec> posteriors_;
};

// Expected alpha-norm N_alpha(X|Y) = sum_y P_Y(y) ||P_{X|Y}(.|y)||_alpha.
double expected_norm(const JointModel& j, Order alpha);

// Conditional Renyi entropy (Arimoto) H_alpha(X|Y) = f_alpha(N_alpha(X|Y)),
// with the Shannon branch at alpha = 1 and -ln N_inf at infinity; clamped to
// [0, ln n].
double conditional_renyi(const JointModel& j, Order alpha);

// Convex hull of the norm-plane region: the conditional feasible set of
// (N_alpha, N_beta). Vertices are counterclockwise and strictly convex.
struct HullRegion {
    std::vector<std::array<double, 2>> vertices;
    RegionCurve v_curve;
    RegionCurve w_curve;
};

HullRegion conditional_region(int n, Order alpha, Order beta, int num_points);

// Signed distance to the hull boundary: positive inside, negative outside.
double hull_signed_distance(const HullRegion& h, double x, double y);

bool hull_contains(const HullRegion& h, double x, double y, double slack);

double hull_area(const HullRegion& h);

// CSV with header x,y; one vertex per row, closing vertex not repeated.
void write_csv(std::ostream& out, const HullRegion& h);

// Monotone-chain convex hull; collinear points are pruned (cross-product
// tolerance 1e-12). Exposed for tests.
std::vector<std::array<double, 2>> convex_hull(std::vector<std::array<double, 2>> pts);

}  // namespace rb
