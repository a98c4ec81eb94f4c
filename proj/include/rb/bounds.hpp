#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "rb/extremal.hpp"
#include "rb/simplex_core.hpp"

namespace rb {

// Which inequality pair produced a report. The norm regimes split on whether
// beta lies strictly between 1 and alpha; the beta-below/above regimes split
// on beta vs alpha and are shared by the entropy, divergence, and mutual
// information planes.
enum class BoundRegime {
    NormBetaInside,
    NormBetaOutside,
    BetaBelowAlpha,
    BetaAboveAlpha,
    EqualOrders,
    DegenerateOne,
};

const char* to_string(BoundRegime r);

struct BoundReport {
    double lower = 0.0;
    double upper = 0.0;
    ExtremalParam lower_witness;
    ExtremalParam upper_witness;
    BoundRegime regime = BoundRegime::EqualOrders;
};

// Sharp bounds on the beta-norm over all p with ||p||_alpha = fixed_norm.
// alpha = 1 is rejected; beta = 1 yields the degenerate report lower = upper
// = 1. The witnesses attain the bounds within the extremal families.
BoundReport norm_bounds(int n, Order alpha, double fixed_norm, Order beta);

// Sharp bounds on H_beta over all p with H_alpha(p) = h, h in [0, ln n].
BoundReport entropy_bounds(int n, Order alpha, double h, Order beta);

// Sharp bounds on D_beta(p || uniform) over all p with D_alpha(p || uniform)
// = d, d in [0, ln n]. The entropy report mapped through x -> ln n - x.
BoundReport divergence_bounds(int n, Order alpha, double d, Order beta);

enum class Plane { Norm, Entropy };

// One extremal family swept over its parameter range, sampled as (x, y) =
// (coordinate at alpha, coordinate at beta) in the requested plane. The W
// sweep always includes the breakpoints 1/m, m = 2..n-1.
struct RegionCurve {
    struct Sample {
        double param;
        double x;
        double y;
    };
    std::vector<Sample> points;
    Family family = Family::V;
    int n = 2;
    Order alpha = Order::one();
    Order beta = Order::one();
};

// Boundary curves (V first, W second) of the exact joint region of
// (alpha-coordinate, beta-coordinate) over the simplex. num_points >= 2
// samples per family; the norm plane rejects order 1.
std::pair<RegionCurve, RegionCurve> region_boundary(int n, Order alpha, Order beta,
                                                    int num_points, Plane plane);

// CSV with header param,x,y,family; V rows then W rows, 17 significant digits.
void write_csv(std::ostream& out, const RegionCurve& v_curve, const RegionCurve& w_curve);

}  // namespace rb
