#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "json.hpp"
#include "rb/channels.hpp"
#include "rb/simplex_core.hpp"

namespace rb {

// Fixed default so shipped verification runs are reproducible; the CLI lets
// RB_SEED or --seed override it.
inline constexpr std::uint64_t kDefaultSeed = 123456789ull;

// Deterministic splitmix64 stream derived from (seed, trial index), so trial
// t draws the same numbers regardless of execution order.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    double uniform();  // [0, 1), 53-bit resolution
    double uniform(double lo, double hi);
    std::uint64_t below(std::uint64_t bound);  // [0, bound)

private:
    std::uint64_t state_;
};

// Uniform (Dirichlet(1,...,1)) sample from the simplex on n outcomes.
ProbVec sample_simplex(std::size_t n, TrialRng& rng);

// As above but rejects vectors with any zero weight (for priors).
ProbVec sample_positive_simplex(std::size_t n, TrialRng& rng);

// All compositions of m into n parts scaled by 1/m, in lexicographic order;
// C(m+n-1, n-1) points. Supported for n in {2,3,4}, m in [1, 200].
void grid_simplex(int n, int m, const std::function<void(const ProbVec&)>& visit);

// Outcome of one empirical check. A trial's margin is the least slack by
// which it satisfies the claimed bounds (negative = violated); violations
// counts margins below -slack, worst_slack is the minimum margin seen.
struct VerifyReport {
    long long trials = 0;
    long long violations = 0;
    double worst_slack = 0.0;
    nlohmann::ordered_json config;
    std::uint64_t seed = 0;

    // Fields exactly: trials, violations, worst_slack, config, seed.
    nlohmann::ordered_json to_json() const;
    std::string str() const;
};

// Empirical checks. `inflate` shrinks the admissible band by that amount
// before margins are scored; nonzero values are the self-test mode that
// must produce violations. Random draws keep a comfortable distance from
// the bounds (worst margins around 1e-2 even at 1e4 trials), so self-test
// mode also routes every fourth trial through an exact boundary sample,
// making any inflation above the slack detectable.

// Norm sandwich: ||p||_beta within norm_bounds at the sample's own
// alpha-norm, over Dirichlet samples.
VerifyReport verify_theorem1(int n, Order alpha, Order beta, long long trials, double slack,
                             std::uint64_t seed, double inflate = 0.0);

// Entropy sandwich via entropy_bounds; orders may include 1 and infinity.
VerifyReport verify_theorem2(int n, Order alpha, Order beta, long long trials, double slack,
                             std::uint64_t seed, double inflate = 0.0);

// Conditional region: random JointModels with 2..max_outputs outputs land
// inside the convex hull of the norm-plane region.
VerifyReport verify_theorem3(int n, Order alpha, Order beta, long long trials, double slack,
                             std::uint64_t seed, int max_outputs = 5, int hull_points = 512,
                             double inflate = 0.0);

// Mutual-information sandwich (order beta) plus exponent envelopes over the
// rate grid, on random square uniformly focusing channels.
VerifyReport verify_theorems45(int n, Order alpha, Order beta, std::span<const double> rates,
                               long long trials, double slack, std::uint64_t seed,
                               double inflate = 0.0);

// Random square uniformly focusing channel: circulant placement of a random
// base vector (Dirichlet draw or V/W mixture) with permuted rows.
Dmc random_focusing_channel(int n, TrialRng& rng);

// Same construction, with the base vector adjusted along a monotone mixture
// path until I_alpha(uniform; channel) hits target_mi.
Dmc random_matched_focusing_channel(int n, Order alpha, double target_mi, TrialRng& rng);

}  // namespace rb
