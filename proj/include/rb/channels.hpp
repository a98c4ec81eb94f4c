#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rb/bounds.hpp"
#include "rb/simplex_core.hpp"

namespace rb {

// Discrete memoryless channel as a row-stochastic matrix: entry (x, y) is
// P_{Y|X}(y|x). Entries are nonnegative and every row sums to 1 within 1e-12.
class Dmc {
public:
    explicit Dmc(std::vector<std::vector<double>> rows);

    // Text form: one row per line, comma-separated entries.
    static Dmc parse(std::istream& in);

    std::size_t num_inputs() const noexcept { return rows_.size(); }
    std::size_t num_outputs() const noexcept { return rows_.front().size(); }
    bool is_square() const noexcept { return num_inputs() == num_outputs(); }

    double operator()(std::size_t x, std::size_t y) const noexcept { return rows_[x][y]; }
    const std::vector<double>& row(std::size_t x) const noexcept { return rows_[x]; }
    std::vector<double> column(std::size_t y) const;

private:
    std::vector<std::vector<double>> rows_;
};

// Row multisets all equal (elementwise after sorting, tolerance 1e-12).
bool is_uniformly_dispersive(const Dmc& c);

// Column multisets all equal.
bool is_uniformly_focusing(const Dmc& c);

bool is_strongly_symmetric(const Dmc& c);

// Square channels whose rows are the extremal family vectors: v_channel has
// 1-(n-1)p on the diagonal and p elsewhere; row x of w_channel is w_dist
// cyclically shifted by x. Both are strongly symmetric.
Dmc v_channel(int n, double p);
Dmc w_channel(int n, double p);

// Arimoto mutual information I_alpha(input; c) = H_alpha(X) - H_alpha(X|Y).
double arimoto_mutual_info(const ProbVec& input, const Dmc& c, Order alpha);

// Gallager exponent generator E_0(rho) = -ln sum_y (sum_x P_X(x)
// P(y|x)^{1/(1+rho)})^{1+rho}, rho > -1; exactly 0 at rho = 0.
double gallager_e0(double rho, const ProbVec& input, const Dmc& c);

// Random-coding exponent E_r(R) = max_{rho in [0,1]} E_0(rho) - rho R,
// located by a coarse scan plus golden-section refinement (rho tolerance
// 1e-10, ties resolved toward smaller rho).
double random_coding_exponent(double rate, const ProbVec& input, const Dmc& c);

// For a square uniformly focusing channel with I_alpha(uniform input) = t,
// the beta-order mutual information is sandwiched between the matched V and
// W channels (V gives the lower bound for beta < alpha, the upper bound for
// beta > alpha).
BoundReport focusing_mi_bounds(const Dmc& c, Order alpha, Order beta);

struct ExponentCurve {
    struct Sample {
        double rate;
        double er;
    };
    std::vector<Sample> points;
    std::string channel_id;
};

// E_r curves of the matched V and W channels bracket the channel's own curve
// (W below and V above for alpha <= 1/2, swapped for alpha >= 1). The open
// band alpha in (1/2, 1) is rejected.
struct ErBounds {
    ExponentCurve lower;
    ExponentCurve actual;
    ExponentCurve upper;
    ExtremalParam lower_witness;
    ExtremalParam upper_witness;
};

ErBounds er_bounds(const Dmc& c, Order alpha, std::span<const double> rates);

// CSV with header R,Er,channel; lower rows, then actual, then upper.
void write_csv(std::ostream& out, const ErBounds& b);

}  // namespace rb
