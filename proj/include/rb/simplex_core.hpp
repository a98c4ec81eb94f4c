#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rb {

// 17-significant-digit decimal, enough to round-trip any double.
std::string fmt17(double v);

// Shortest decimal that parses back to the same double.
std::string fmt_shortest(double v);

// Entropy/norm order: a positive extended real. The values 1 and infinity are
// exact tags so callers can branch on them without tolerance checks; every
// other positive double is a finite order. Backed by a single double, so the
// usual comparisons give the extended-real ordering for free.
class Order {
public:
    static Order finite(double alpha);
    static Order one() noexcept;
    static Order infinity() noexcept;

    // Accepts "inf" or a positive decimal literal. "1" yields the exact tag.
    static Order parse(std::string_view text);

    bool is_one() const noexcept { return value_ == 1.0; }
    bool is_infinite() const noexcept;
    double value() const noexcept { return value_; }

    // Shortest decimal that round-trips, or "inf".
    std::string str() const;

    friend bool operator==(Order a, Order b) noexcept { return a.value_ == b.value_; }
    friend bool operator!=(Order a, Order b) noexcept { return a.value_ != b.value_; }
    friend bool operator<(Order a, Order b) noexcept { return a.value_ < b.value_; }
    friend bool operator>(Order a, Order b) noexcept { return a.value_ > b.value_; }

private:
    explicit Order(double v) noexcept : value_(v) {}
    double value_;
};

// Probability vector on n >= 2 outcomes. Weights must be nonnegative (values
// in [-1e-12, 0) are snapped to 0) and sum to 1 within 1e-9; sums off by more
// than 1e-12 are renormalized so the stored vector sums to 1 within 1e-12.
class ProbVec {
public:
    explicit ProbVec(std::vector<double> weights);

    static ProbVec uniform(std::size_t n);

    // Comma-separated weights, e.g. "0.5,0.3,0.2".
    static ProbVec parse(std::string_view csv);

    std::size_t size() const noexcept { return w_.size(); }
    double operator[](std::size_t i) const noexcept { return w_[i]; }
    const std::vector<double>& weights() const noexcept { return w_; }

    std::vector<double>::const_iterator begin() const noexcept { return w_.begin(); }
    std::vector<double>::const_iterator end() const noexcept { return w_.end(); }

    double max_weight() const noexcept;

    std::string str() const;  // comma-separated, 17 significant digits

private:
    struct Trusted {};
    ProbVec(Trusted, std::vector<double> weights) : w_(std::move(weights)) {}

    std::vector<double> w_;

    friend ProbVec trusted_prob_vec(std::vector<double> weights);
};

// Internal: wraps already-validated weights without renormalizing, so sorted
// copies and closed-form family vectors keep their exact components.
ProbVec trusted_prob_vec(std::vector<double> weights);

struct RearrangedVec {
    ProbVec sorted;                          // weights in decreasing order
    std::vector<std::size_t> permutation;    // sorted index -> original index
};

// lp-norm (sum_i p_i^alpha)^(1/alpha); max weight at alpha = infinity. For
// alpha > 1 the sum is max-scaled so orders like 100 do not underflow.
double lp_norm(const ProbVec& p, Order alpha);

// Renyi entropy in nats, clamped to [0, ln n]. alpha = 1 is the Shannon
// branch (0 ln 0 = 0), alpha = infinity is min-entropy -ln max_i p_i.
double renyi_entropy(const ProbVec& p, Order alpha);

double shannon_entropy(const ProbVec& p);

// Renyi divergence D_alpha(p || uniform_n) = ln n - H_alpha(p).
double renyi_div_from_uniform(const ProbVec& p, Order alpha);

// alpha-logarithm: ln x at alpha = 1, else (x^(1-alpha) - 1)/(1 - alpha).
// Requires x > 0 and a finite order.
double q_log(double x, Order alpha);

// Stable sort into decreasing order; ties keep their original index order.
RearrangedVec decreasing_rearrangement(const ProbVec& p);

// True when q majorizes p: every prefix sum of the decreasing rearrangement
// of q weakly dominates the corresponding prefix sum for p (slack 1e-12).
bool majorizes(const ProbVec& q, const ProbVec& p);

// Minimum error probability of guessing the outcome: 1 - max_i p_i.
double error_probability(const ProbVec& p);

}  // namespace rb
