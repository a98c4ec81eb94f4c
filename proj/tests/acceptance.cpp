// Acceptance gate: one check per shipped criterion, each printed as a single
// [PASS]/[FAIL] line. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rb/bounds.hpp"
#include "rb/channels.hpp"
#include "rb/conditional.hpp"
#include "rb/extremal.hpp"
#include "rb/oracle.hpp"
#include "rb/simplex_core.hpp"
#include "support/subprocess.hpp"

using namespace rb;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail << what;
        }
    }
};

std::vector<double> rate_grid(int points, double max) {
    std::vector<double> r(points);
    for (int i = 0; i < points; ++i) r[i] = max * i / (points - 1);
    return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct OrderPair {
    Order a;
    Order b;
};

// The shipped configuration matrix: both norm regimes, both entropy regimes,
// an infinite order on each side, and one large finite order.
const std::vector<OrderPair> kConfigMatrix = {
    {Order::finite(2.0), Order::finite(0.5)},   {Order::finite(0.5), Order::finite(2.0)},
    {Order::finite(3.0), Order::finite(1.5)},   {Order::finite(3.0), Order::finite(100.0)},
    {Order::infinity(), Order::finite(2.0)},    {Order::finite(0.5), Order::infinity()}};

// ------------------------------------------------------------ criterion 1 ---

Check criterion1() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    for (const Order& beta : {Order::finite(0.5), Order::finite(1.5), Order::finite(100.0)}) {
        const VerifyReport rep =
            verify_theorem1(9, Order::finite(3.0), beta, 10000, 1e-9, kDefaultSeed);
        c.expect(rep.violations == 0, "violations at beta=" + beta.str() + ": " +
                                          std::to_string(rep.violations));
    }
    const double secs = seconds_since(t0);
    c.expect(secs < 10.0, "runtime " + std::to_string(secs) + "s exceeds 10s");
    return c;
}

// ------------------------------------------------------------ criterion 2 ---

Check criterion2() {
    Check c;
    const std::vector<OrderPair> configs = {{Order::finite(2.0), Order::finite(0.5)},
                                            {Order::one(), Order::infinity()},
                                            {Order::infinity(), Order::one()}};
    for (const OrderPair& cfg : configs) {
        const VerifyReport rep = verify_theorem2(7, cfg.a, cfg.b, 10000, 1e-9, kDefaultSeed);
        c.expect(rep.violations == 0, "violations at alpha=" + cfg.a.str() + " beta=" +
                                          cfg.b.str() + ": " + std::to_string(rep.violations));
    }

    const auto [v, w] =
        region_boundary(7, Order::finite(2.0), Order::finite(0.5), 256, Plane::Entropy);
    const double ln7 = std::log(7.0);
    const auto near = [](double x, double y, double tx, double ty) {
        return std::abs(x - tx) <= 1e-10 && std::abs(y - ty) <= 1e-10;
    };
    c.expect(near(v.points.front().x, v.points.front().y, 0.0, 0.0), "V curve misses (0,0)");
    c.expect(near(v.points.back().x, v.points.back().y, ln7, ln7),
             "V curve misses (ln 7, ln 7)");
    c.expect(near(w.points.back().x, w.points.back().y, 0.0, 0.0), "W curve misses (0,0)");
    c.expect(near(w.points.front().x, w.points.front().y, ln7, ln7),
             "W curve misses (ln 7, ln 7)");
    return c;
}

// ------------------------------------------------------------ criterion 3 ---

Check criterion3() {
    Check c;
    for (const auto& [n, m] : std::vector<std::pair<int, int>>{{2, 200}, {3, 100}}) {
        for (const OrderPair& cfg : kConfigMatrix) {
            long long norm_bad = 0;
            long long entropy_bad = 0;
            long long edge_bad = 0;
            grid_simplex(n, m, [&](const ProbVec& p) {
                const double xa = lp_norm(p, cfg.a);
                const double xb = lp_norm(p, cfg.b);
                const BoundReport nr = norm_bounds(n, cfg.a, xa, cfg.b);
                if (xb < nr.lower - 1e-9 || xb > nr.upper + 1e-9) ++norm_bad;
                const double ha = renyi_entropy(p, cfg.a);
                const double hb = renyi_entropy(p, cfg.b);
                const BoundReport er = entropy_bounds(n, cfg.a, ha, cfg.b);
                if (hb < er.lower - 1e-9 || hb > er.upper + 1e-9) ++entropy_bad;
                if (n == 2) {
                    const double dn = std::min(std::abs(xb - nr.lower), std::abs(nr.upper - xb));
                    const double dh = std::min(std::abs(hb - er.lower), std::abs(er.upper - hb));
                    if (dn > 1e-9 || dh > 1e-9) ++edge_bad;
                }
            });
            const std::string tag = " at n=" + std::to_string(n) + " alpha=" + cfg.a.str() +
                                    " beta=" + cfg.b.str();
            c.expect(norm_bad == 0, std::to_string(norm_bad) + " norm violations" + tag);
            c.expect(entropy_bad == 0,
                     std::to_string(entropy_bad) + " entropy violations" + tag);
            c.expect(edge_bad == 0,
                     std::to_string(edge_bad) + " points off the degenerate boundary" + tag);
        }
    }
    return c;
}

// ------------------------------------------------------------ criterion 4 ---

Check criterion4() {
    Check c;
    TrialRng rng(kDefaultSeed, 9004);
    const std::vector<Order> norm_orders = {Order::finite(0.25), Order::finite(0.5),
                                            Order::finite(2.0),  Order::finite(3.0),
                                            Order::finite(100.0), Order::infinity()};
    long long bad = 0;
    for (int t = 0; t < 1000; ++t) {
        const int n = 2 + static_cast<int>(rng.below(11));
        const bool entropy_plane = rng.below(2) == 1;
        const bool family_w = rng.below(2) == 1;
        // Targets are forward images of random parameters, drawn over the
        // monotone span of each family.
        const double lo = family_w ? 1.0 / n : 0.0;
        const double hi = family_w ? 1.0 : 1.0 / n;
        const double p = lo + rng.uniform(0.001, 0.999) * (hi - lo);
        double err = 0.0;
        if (entropy_plane) {
            const std::vector<Order> pool = {Order::finite(0.5), Order::one(),
                                             Order::finite(2.0), Order::finite(100.0),
                                             Order::infinity()};
            const Order a = pool[rng.below(pool.size())];
            const double target = renyi_entropy(family_w ? w_dist(n, p) : v_dist(n, p), a);
            const ExtremalParam e = family_w ? invert_w_by_entropy(n, a, target)
                                             : invert_v_by_entropy(n, a, target);
            const ProbVec d = family_w ? w_dist(n, e.p) : v_dist(n, e.p);
            err = std::abs(renyi_entropy(d, a) - target);
        } else {
            const Order a = norm_orders[rng.below(norm_orders.size())];
            const double target = family_w ? w_norm(n, p, a) : v_norm(n, p, a);
            const ExtremalParam e = family_w ? invert_w_by_norm(n, a, target)
                                             : invert_v_by_norm(n, a, target);
            err = std::abs((family_w ? w_norm(n, e.p, a) : v_norm(n, e.p, a)) - target);
        }
        if (err > 1e-10) ++bad;
    }
    c.expect(bad == 0, std::to_string(bad) + " round trips exceed 1e-10");

    const auto branch = [](int pieces, double p, double a) {
        double s = pieces * std::pow(p, a);
        const double r = 1.0 - pieces * p;
        if (r > 1e-15) s += std::pow(r, a);
        return std::pow(s, 1.0 / a);
    };
    for (int n = 3; n <= 12; ++n) {
        for (double a : {0.25, 0.5, 2.0, 3.0, 100.0}) {
            for (int m = 2; m < n; ++m) {
                const double bp = 1.0 / m;
                const double resid = std::abs(branch(m, bp, a) - branch(m - 1, bp, a));
                c.expect(resid <= 1e-12, "breakpoint residual " + std::to_string(resid) +
                                             " at n=" + std::to_string(n) +
                                             " m=" + std::to_string(m));
            }
        }
    }
    return c;
}

// ------------------------------------------------------------ criterion 5 ---

Check criterion5() {
    Check c;
    const VerifyReport rep = verify_theorem3(7, Order::finite(2.0), Order::finite(0.5), 10000,
                                             1e-6, kDefaultSeed, 5, 512);
    c.expect(rep.violations == 0,
             std::to_string(rep.violations) + " joint models left the hull");
    const double a512 =
        hull_area(conditional_region(7, Order::finite(2.0), Order::finite(0.5), 512));
    const double a1024 =
        hull_area(conditional_region(7, Order::finite(2.0), Order::finite(0.5), 1024));
    const double rel = std::abs(a1024 - a512) / a512;
    c.expect(rel < 1e-3, "hull area changed by " + std::to_string(rel) + " on refinement");
    return c;
}

// ------------------------------------------------------------ criterion 6 ---

Check criterion6() {
    Check c;
    TrialRng rng(kDefaultSeed, 9006);
    long long bad = 0;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int n = 3 + t % 6;
        const Dmc ch = random_focusing_channel(n, rng);
        const ProbVec u = ProbVec::uniform(n);
        for (double rho : {-0.5, 0.25, 0.5, 1.0, 2.0}) {
            const double lhs = gallager_e0(rho, u, ch) / rho;
            const double rhs = arimoto_mutual_info(u, ch, Order::finite(1.0 / (1.0 + rho)));
            const double err = std::abs(lhs - rhs);
            worst = std::max(worst, err);
            if (err > 1e-10) ++bad;
        }
    }
    c.expect(bad == 0, std::to_string(bad) + " identity failures, worst " +
                           std::to_string(worst));
    return c;
}

// ------------------------------------------------------------ criterion 7 ---

Check criterion7() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const double ln8 = std::log(8.0);
    const ProbVec u8 = ProbVec::uniform(8);
    const std::vector<double> rates = rate_grid(50, ln8);

    // (a) matched at I_{1/2} = (ln 8) / 4.
    {
        const double target = ln8 / 4.0;
        const Order half = Order::finite(0.5);
        const ExtremalParam pv = invert_v_by_entropy(8, half, ln8 - target);
        const ExtremalParam pw = invert_w_by_entropy(8, half, ln8 - target);
        const Dmc vch = v_channel(8, pv.p);
        const Dmc wch = w_channel(8, pw.p);
        c.expect(std::abs(random_coding_exponent(0.0, u8, vch) - target) <= 1e-9,
                 "E_r(0) of the matched V channel misses (ln 8)/4");
        c.expect(std::abs(random_coding_exponent(0.0, u8, wch) - target) <= 1e-9,
                 "E_r(0) of the matched W channel misses (ln 8)/4");
        long long order_bad = 0;
        for (double r : rates) {
            const double ev = random_coding_exponent(r, u8, vch);
            const double ew = random_coding_exponent(r, u8, wch);
            if (ew > ev + 1e-9) ++order_bad;
        }
        c.expect(order_bad == 0,
                 std::to_string(order_bad) + " rates violate E_r(W) <= E_r(V) at alpha=1/2");
    }

    // (b) matched at I_1 = (ln 8) / 2, ordering swapped.
    {
        const double target = ln8 / 2.0;
        const ExtremalParam pv = invert_v_by_entropy(8, Order::one(), ln8 - target);
        const ExtremalParam pw = invert_w_by_entropy(8, Order::one(), ln8 - target);
        const Dmc vch = v_channel(8, pv.p);
        const Dmc wch = w_channel(8, pw.p);
        long long order_bad = 0;
        for (double r : rates) {
            const double ev = random_coding_exponent(r, u8, vch);
            const double ew = random_coding_exponent(r, u8, wch);
            if (ev > ew + 1e-9) ++order_bad;
        }
        c.expect(order_bad == 0,
                 std::to_string(order_bad) + " rates violate E_r(V) <= E_r(W) at alpha=1");
    }

    // 100 random matched channels between the envelopes.
    TrialRng rng(kDefaultSeed, 9007);
    long long envelope_bad = 0;
    for (const Order& a : {Order::finite(0.5), Order::one()}) {
        const double target = a.is_one() ? ln8 / 2.0 : ln8 / 4.0;
        for (int t = 0; t < 50; ++t) {
            const Dmc ch = random_matched_focusing_channel(8, a, target, rng);
            const ErBounds b = er_bounds(ch, a, rates);
            for (std::size_t i = 0; i < rates.size(); ++i) {
                if (b.actual.points[i].er < b.lower.points[i].er - 1e-9 ||
                    b.actual.points[i].er > b.upper.points[i].er + 1e-9) {
                    ++envelope_bad;
                }
            }
        }
    }
    c.expect(envelope_bad == 0,
             std::to_string(envelope_bad) + " envelope violations over random channels");

    const double secs = seconds_since(t0);
    c.expect(secs < 30.0, "runtime " + std::to_string(secs) + "s exceeds 30s");
    return c;
}

// ------------------------------------------------------------ criterion 8 ---

Check criterion8() {
    Check c;
    bool threw = false;
    try {
        const std::vector<double> rates = {0.0, 0.3};
        (void)er_bounds(w_channel(4, 0.4), Order::finite(0.75), rates);
    } catch (const std::invalid_argument&) {
        threw = true;
    }
    c.expect(threw, "er_bounds accepted alpha = 0.75");

    const testsupport::CommandResult r = testsupport::run_command(
        std::string(RB_CLI_PATH) + " channel --family w --n 4 --p 0.4 --alpha 0.75 --rates 0,0.3");
    c.expect(r.exit_code == 2,
             "CLI exit code " + std::to_string(r.exit_code) + " instead of 2");
    return c;
}

// ------------------------------------------------------------ criterion 9 ---

Check criterion9() {
    Check c;
    const std::string cmd = std::string("RB_SEED=424242 ") + RB_CLI_PATH +
                            " verify --theorem 1 --trials 500";
    const testsupport::CommandResult r1 = testsupport::run_command(cmd);
    const testsupport::CommandResult r2 = testsupport::run_command(cmd);
    c.expect(r1.exit_code == 0, "verify exited " + std::to_string(r1.exit_code));
    c.expect(r1.output == r2.output, "verify output differs between identical runs");
    c.expect(r1.output.find("424242") != std::string::npos, "seed not echoed in the report");
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "norm sandwich oracle, n=9 alpha=3 beta in {1/2, 3/2, 100}, 1e4 trials each",
         criterion1},
        {2, "entropy sandwich oracle with order-one corners plus shared curve endpoints",
         criterion2},
        {3, "exhaustive n=2 (m=200) and n=3 (m=100) grids over the configuration matrix",
         criterion3},
        {4, "1000 inversion round trips and W-norm breakpoint continuity", criterion4},
        {5, "conditional hull holds 1e4 joint models and is stable under refinement",
         criterion5},
        {6, "E0(rho)/rho identity on 100 random focusing channels", criterion6},
        {7, "matched exponent envelopes at n=8 with 100 random matched channels", criterion7},
        {8, "excluded band alpha=0.75 rejected by library and CLI", criterion8},
        {9, "byte-identical verify output under a fixed RB_SEED", criterion9},
    };

    int failures = 0;
    for (const Criterion& cr : criteria) {
        Check c;
        try {
            c = cr.run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail << "unexpected exception: " << e.what();
        }
        if (c.ok) {
            std::printf("[PASS] criterion %d: %s\n", cr.id, cr.name);
        } else {
            ++failures;
            std::printf("[FAIL] criterion %d: %s -- %s\n", cr.id, cr.name,
                        c.detail.str().c_str());
        }
        std::fflush(stdout);
    }
    return failures;
}
