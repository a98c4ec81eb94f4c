#include "rb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rb/bounds.hpp"
#include "rb/conditional.hpp"
#include "rb/extremal.hpp"

namespace rb {

namespace {

constexpr double kSnapTol = 1e-12;

nlohmann::ordered_json order_json(Order o) {
    if (o.is_infinite()) return "inf";
    return o.value();
}

void check_trials(long long trials) {
    if (trials < 1) {
        throw std::invalid_argument("verification needs at least 1 trial, got " +
                                    std::to_string(trials));
    }
}

// Exact extremal-family member for self-test mode. Its margins against the
// sharp bounds are zero up to inversion noise, so any inflation above the
// slack must register as a violation, which Dirichlet draws alone cannot
// guarantee at small inflations.
ProbVec boundary_sample(int n, long long t, TrialRng& rng) {
    if (t % 2 == 0) return v_dist(n, rng.uniform(0.0, 1.0 / n));
    return w_dist(n, rng.uniform(1.0 / n, 1.0));
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t stream)
    : state_(seed ^ (0x9E3779B97F4A7C15ull * (stream + 0x632BE59BD9B4E019ull))) {}

std::uint64_t TrialRng::next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double TrialRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double TrialRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t TrialRng::below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
}

ProbVec sample_simplex(std::size_t n, TrialRng& rng) {
    if (n < 2) throw std::invalid_argument("simplex sample needs n >= 2");
    std::vector<double> w(n);
    double sum = 0.0;
    do {
        sum = 0.0;
        for (double& x : w) {
            x = -std::log1p(-rng.uniform());
            sum += x;
        }
    } while (!(sum > 0.0));
    for (double& x : w) x /= sum;
    return ProbVec(std::move(w));
}

ProbVec sample_positive_simplex(std::size_t n, TrialRng& rng) {
    for (;;) {
        ProbVec p = sample_simplex(n, rng);
        if (std::all_of(p.begin(), p.end(), [](double w) { return w > 0.0; })) return p;
    }
}

void grid_simplex(int n, int m, const std::function<void(const ProbVec&)>& visit) {
    if (n < 2 || n > 4) {
        throw std::invalid_argument("grid_simplex supports n in {2,3,4}, got " +
                                    std::to_string(n));
    }
    if (m < 1 || m > 200) {
        throw std::invalid_argument("grid_simplex supports resolution in [1, 200], got " +
                                    std::to_string(m));
    }
    const double scale = 1.0 / m;
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i <= m; ++i) {
        w[0] = i * scale;
        if (n == 2) {
            w[1] = (m - i) * scale;
            visit(ProbVec(w));
            continue;
        }
        for (int j = 0; i + j <= m; ++j) {
            w[1] = j * scale;
            if (n == 3) {
                w[2] = (m - i - j) * scale;
                visit(ProbVec(w));
                continue;
            }
            for (int k = 0; i + j + k <= m; ++k) {
                w[2] = k * scale;
                w[3] = (m - i - j - k) * scale;
                visit(ProbVec(w));
            }
        }
    }
}

nlohmann::ordered_json VerifyReport::to_json() const {
    nlohmann::ordered_json j;
    j["trials"] = trials;
    j["violations"] = violations;
    j["worst_slack"] = worst_slack;
    j["config"] = config;
    j["seed"] = seed;
    return j;
}

std::string VerifyReport::str() const { return to_json().dump(2); }

VerifyReport verify_theorem1(int n, Order alpha, Order beta, long long trials, double slack,
                             std::uint64_t seed, double inflate) {
    check_trials(trials);
    VerifyReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.config = {{"check", "theorem1"},  {"n", n},         {"alpha", order_json(alpha)},
                  {"beta", order_json(beta)}, {"slack", slack}, {"inflate", inflate}};
    double worst = std::numeric_limits<double>::infinity();
    for (long long t = 0; t < trials; ++t) {
        TrialRng rng(seed, static_cast<std::uint64_t>(t));
        const bool forced = inflate > 0.0 && t % 4 == 0;
        const ProbVec p = forced ? boundary_sample(n, t / 4, rng)
                                 : sample_simplex(static_cast<std::size_t>(n), rng);
        const BoundReport r = norm_bounds(n, alpha, lp_norm(p, alpha), beta);
        const double x = lp_norm(p, beta);
        const double margin = std::min(x - r.lower, r.upper - x) - inflate;
        if (margin < -slack) ++rep.violations;
        worst = std::min(worst, margin);
    }
    rep.worst_slack = worst;
    return rep;
}

VerifyReport verify_theorem2(int n, Order alpha, Order beta, long long trials, double slack,
                             std::uint64_t seed, double inflate) {
    check_trials(trials);
    VerifyReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.config = {{"check", "theorem2"},  {"n", n},         {"alpha", order_json(alpha)},
                  {"beta", order_json(beta)}, {"slack", slack}, {"inflate", inflate}};
    double worst = std::numeric_limits<double>::infinity();
    for (long long t = 0; t < trials; ++t) {
        TrialRng rng(seed, static_cast<std::uint64_t>(t));
        const bool forced = inflate > 0.0 && t % 4 == 0;
        const ProbVec p = forced ? boundary_sample(n, t / 4, rng)
                                 : sample_simplex(static_cast<std::size_t>(n), rng);
        const BoundReport r = entropy_bounds(n, alpha, renyi_entropy(p, alpha), beta);
        const double x = renyi_entropy(p, beta);
        const double margin = std::min(x - r.lower, r.upper - x) - inflate;
        if (margin < -slack) ++rep.violations;
        worst = std::min(worst, margin);
    }
    rep.worst_slack = worst;
    return rep;
}

VerifyReport verify_theorem3(int n, Order alpha, Order beta, long long trials, double slack,
                             std::uint64_t seed, int max_outputs, int hull_points,
                             double inflate) {
    check_trials(trials);
    if (max_outputs < 2) {
        throw std::invalid_argument("conditional check needs max_outputs >= 2, got " +
                                    std::to_string(max_outputs));
    }
    const HullRegion hull = conditional_region(n, alpha, beta, hull_points);
    VerifyReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.config = {{"check", "theorem3"},        {"n", n},
                  {"alpha", order_json(alpha)}, {"beta", order_json(beta)},
                  {"slack", slack},             {"max_outputs", max_outputs},
                  {"hull_points", hull_points}, {"inflate", inflate}};
    double worst = std::numeric_limits<double>::infinity();
    for (long long t = 0; t < trials; ++t) {
        TrialRng rng(seed, static_cast<std::uint64_t>(t));
        const std::size_t ny = 2 + rng.below(static_cast<std::uint64_t>(max_outputs - 1));
        ProbVec prior = sample_positive_simplex(ny, rng);
        std::vector<ProbVec> posteriors;
        posteriors.reserve(ny);
        // Self-test trials use identical deterministic posteriors. Their image
        // is the hull vertex (1, 1) with signed distance exactly zero, so the
        // shrunken hull must reject them.
        const bool forced = inflate > 0.0 && t % 4 == 0;
        for (std::size_t y = 0; y < ny; ++y) {
            posteriors.push_back(forced ? v_dist(n, 0.0)
                                        : sample_simplex(static_cast<std::size_t>(n), rng));
        }
        const JointModel j(std::move(prior), std::move(posteriors));
        const double x = expected_norm(j, alpha);
        const double y = expected_norm(j, beta);
        const double margin = hull_signed_distance(hull, x, y) - inflate;
        if (margin < -slack) ++rep.violations;
        worst = std::min(worst, margin);
    }
    rep.worst_slack = worst;
    return rep;
}

VerifyReport verify_theorems45(int n, Order alpha, Order beta, std::span<const double> rates,
                               long long trials, double slack, std::uint64_t seed,
                               double inflate) {
    check_trials(trials);
    if (rates.empty()) throw std::invalid_argument("exponent check needs a nonempty rate grid");
    VerifyReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.config = {{"check", "theorems45"},
                  {"n", n},
                  {"alpha", order_json(alpha)},
                  {"beta", order_json(beta)},
                  {"slack", slack},
                  {"rates", {{"count", rates.size()},
                             {"min", *std::min_element(rates.begin(), rates.end())},
                             {"max", *std::max_element(rates.begin(), rates.end())}}},
                  {"inflate", inflate}};
    const ProbVec u = ProbVec::uniform(static_cast<std::size_t>(n));
    double worst = std::numeric_limits<double>::infinity();
    for (long long t = 0; t < trials; ++t) {
        TrialRng rng(seed, static_cast<std::uint64_t>(t));
        const Dmc c = random_focusing_channel(n, rng);

        const BoundReport mi = focusing_mi_bounds(c, alpha, beta);
        const double x = arimoto_mutual_info(u, c, beta);
        double margin = std::min(x - mi.lower, mi.upper - x);

        const ErBounds eb = er_bounds(c, alpha, rates);
        for (std::size_t i = 0; i < rates.size(); ++i) {
            margin = std::min(margin, eb.actual.points[i].er - eb.lower.points[i].er);
            margin = std::min(margin, eb.upper.points[i].er - eb.actual.points[i].er);
        }
        margin -= inflate;
        if (margin < -slack) ++rep.violations;
        worst = std::min(worst, margin);
    }
    rep.worst_slack = worst;
    return rep;
}

namespace {

Dmc circulant_with_permuted_rows(const std::vector<double>& base, TrialRng& rng) {
    const std::size_t n = base.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i-- > 1;) {
        std::swap(perm[i], perm[rng.below(i + 1)]);
    }
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t i = 0; i < n; ++i) rows[perm[x]][(x + i) % n] = base[i];
    }
    return Dmc(std::move(rows));
}

}  // namespace

Dmc random_focusing_channel(int n, TrialRng& rng) {
    if (n < 2) throw std::invalid_argument("random channel needs n >= 2");
    std::vector<double> base;
    if (rng.uniform() < 0.5) {
        base = sample_simplex(static_cast<std::size_t>(n), rng).weights();
    } else {
        const ProbVec v = v_dist(n, rng.uniform(0.0, 1.0 / n));
        const ProbVec w = w_dist(n, rng.uniform(1.0 / n, 1.0));
        const double lam = rng.uniform();
        base.resize(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < base.size(); ++i) {
            base[i] = lam * v[i] + (1.0 - lam) * w[i];
        }
    }
    return circulant_with_permuted_rows(base, rng);
}

Dmc random_matched_focusing_channel(int n, Order alpha, double target_mi, TrialRng& rng) {
    if (n < 2) throw std::invalid_argument("random channel needs n >= 2");
    const double hmax = std::log(static_cast<double>(n));
    if (std::isnan(target_mi) || target_mi < -kSnapTol || target_mi > hmax + kSnapTol) {
        throw std::domain_error("target mutual information " + fmt_shortest(target_mi) +
                                " outside [0, " + fmt_shortest(hmax) + "]");
    }
    const double h_target = std::clamp(hmax - std::clamp(target_mi, 0.0, hmax), 0.0, hmax);

    const ProbVec start = sample_simplex(static_cast<std::size_t>(n), rng);
    const double h0 = renyi_entropy(start, alpha);
    std::vector<double> dir(static_cast<std::size_t>(n), 0.0);
    if (h_target >= h0) {
        std::fill(dir.begin(), dir.end(), 1.0 / n);
    } else {
        std::size_t top = 0;
        for (std::size_t i = 1; i < start.size(); ++i) {
            if (start[i] > start[top]) top = i;
        }
        dir[top] = 1.0;
    }
    const auto mix = [&](double s) {
        std::vector<double> w(start.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1.0 - s) * start[i] + s * dir[i];
        return ProbVec(std::move(w));
    };
    const auto entropy_at = [&](double s) { return renyi_entropy(mix(s), alpha); };

    const double f0 = entropy_at(0.0);
    const double f1 = entropy_at(1.0);
    const bool increasing = f1 >= f0;
    double lo = 0.0, hi = 1.0, s_star = h_target == f0 ? 0.0 : 1.0;
    if (h_target != f0 && h_target != f1) {
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double fm = entropy_at(mid);
            if (fm == h_target) {
                lo = hi = mid;
                break;
            }
            const bool above = increasing ? (fm < h_target) : (fm > h_target);
            if (above) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        s_star = 0.5 * (lo + hi);
    }
    return circulant_with_permuted_rows(mix(s_star).weights(), rng);
}

}  // namespace rb
