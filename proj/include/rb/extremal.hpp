#pragma once

#include "rb/simplex_core.hpp"

namespace rb {

enum class Family { V, W };

char family_letter(Family f);  // 'v' or 'w'

// Point on one of the two extremal families. For V the parameter runs over
// [0, 1/(n-1)] (inversions only ever use [0, 1/n]); for W over [1/n, 1].
struct ExtremalParam {
    Family family;
    int n;
    double p;
};

// V family: (1 - (n-1)p, p, ..., p). p = 0 is deterministic, p = 1/n uniform.
ProbVec v_dist(int n, double p);

// W family: floor(1/p) copies of p, the residual 1 - floor(1/p) * p, zeros.
// p = 1/n is uniform, p = 1 deterministic.
ProbVec w_dist(int n, double p);

// Closed-form lp-norms of the family vectors; agree with lp_norm of the
// constructed vector but avoid building it.
double v_norm(int n, double p, Order alpha);
double w_norm(int n, double p, Order alpha);

// n^(1/alpha - 1): the norm shared by every family at the uniform vector.
double uniform_norm_value(int n, Order alpha);

// Strictly monotone parameter-from-norm inversions via bisection. Targets
// within 1e-12 of the attainable interval are clamped to it; targets further
// out raise std::domain_error naming the interval. alpha = 1 is rejected
// (the l1-norm is constantly 1 on the simplex).
ExtremalParam invert_v_by_norm(int n, Order alpha, double target);
ExtremalParam invert_w_by_norm(int n, Order alpha, double target);

// Parameter-from-entropy inversions, valid for every order including 1 and
// infinity. h must lie in [0, ln n] (1e-12 clamp applies).
ExtremalParam invert_v_by_entropy(int n, Order alpha, double h);
ExtremalParam invert_w_by_entropy(int n, Order alpha, double h);

}  // namespace rb
