#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rb/bounds.hpp"
#include "rb/channels.hpp"
#include "rb/conditional.hpp"
#include "rb/extremal.hpp"
#include "rb/oracle.hpp"
#include "rb/simplex_core.hpp"

namespace {

using nlohmann::ordered_json;

constexpr double kLn2 = 0.69314718055994531;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ordered_json order_json(rb::Order o) {
    if (o.is_infinite()) return "inf";
    return o.value();
}

rb::Order parse_order(const std::string& text, const char* flag) {
    try {
        return rb::Order::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string(flag) + ": " + e.what());
    }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv("RB_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            throw ConfigError(std::string("RB_SEED is not a decimal integer: '") + env + "'");
        }
        return static_cast<std::uint64_t>(v);
    }
    return rb::kDefaultSeed;
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp(target);
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw ConfigError("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

void emit(const std::string& output_path, const std::string& content) {
    if (output_path.empty()) {
        std::cout << content;
    } else {
        atomic_write(output_path, content);
    }
}

ordered_json witness_json(const rb::ExtremalParam& w) {
    return {{"family", std::string(1, rb::family_letter(w.family))}, {"n", w.n}, {"p", w.p}};
}

ordered_json bound_report_json(const rb::BoundReport& r) {
    return {{"lower", r.lower},
            {"upper", r.upper},
            {"lower_witness", witness_json(r.lower_witness)},
            {"upper_witness", witness_json(r.upper_witness)},
            {"regime", rb::to_string(r.regime)}};
}

std::vector<double> rate_grid(int points, double max_rate) {
    std::vector<double> rates(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        rates[static_cast<std::size_t>(i)] = max_rate * i / (points - 1);
    }
    return rates;
}

// ---------------------------------------------------------------- bounds ---

struct BoundsArgs {
    int n = 0;
    std::string alpha, beta, plane;
    double value = 0.0;
    std::string format = "json";
    std::string output;
    bool bits = false;
};

int run_bounds(const BoundsArgs& a) {
    const rb::Order alpha = parse_order(a.alpha, "--alpha");
    const rb::Order beta = parse_order(a.beta, "--beta");
    if (a.bits && a.plane == "norm") {
        throw ConfigError("--bits applies to the entropy and divergence planes only");
    }
    rb::BoundReport r;
    if (a.plane == "norm") {
        r = rb::norm_bounds(a.n, alpha, a.value, beta);
    } else if (a.plane == "entropy") {
        r = rb::entropy_bounds(a.n, alpha, a.value, beta);
    } else {
        r = rb::divergence_bounds(a.n, alpha, a.value, beta);
    }
    const double scale = a.bits ? 1.0 / kLn2 : 1.0;

    std::string text;
    if (a.format == "json") {
        ordered_json j;
        j["plane"] = a.plane;
        j["n"] = a.n;
        j["alpha"] = order_json(alpha);
        j["beta"] = order_json(beta);
        j["value"] = a.value * scale;
        if (a.plane != "norm") j["unit"] = a.bits ? "bits" : "nats";
        j["lower"] = r.lower * scale;
        j["upper"] = r.upper * scale;
        j["lower_witness"] = witness_json(r.lower_witness);
        j["upper_witness"] = witness_json(r.upper_witness);
        j["regime"] = rb::to_string(r.regime);
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out << "plane,n,alpha,beta,value,lower,upper,lower_family,lower_p,upper_family,upper_p,regime\n";
        out << a.plane << ',' << a.n << ',' << alpha.str() << ',' << beta.str() << ','
            << rb::fmt17(a.value * scale) << ',' << rb::fmt17(r.lower * scale) << ','
            << rb::fmt17(r.upper * scale) << ',' << rb::family_letter(r.lower_witness.family)
            << ',' << rb::fmt17(r.lower_witness.p) << ','
            << rb::family_letter(r.upper_witness.family) << ',' << rb::fmt17(r.upper_witness.p)
            << ',' << rb::to_string(r.regime) << '\n';
        text = out.str();
    }
    emit(a.output, text);
    return 0;
}

// ---------------------------------------------------------------- region ---

struct RegionArgs {
    int n = 0;
    std::string alpha, beta, plane;
    int points = 512;
    bool hull = false;
    std::string joint_path;
    double slack = 1e-9;
    std::string output, hull_output;
    bool bits = false;
};

int run_region(const RegionArgs& a) {
    const rb::Order alpha = parse_order(a.alpha, "--alpha");
    const rb::Order beta = parse_order(a.beta, "--beta");
    const rb::Plane plane = a.plane == "norm" ? rb::Plane::Norm : rb::Plane::Entropy;
    if (a.bits && plane == rb::Plane::Norm) {
        throw ConfigError("--bits applies to the entropy plane only");
    }
    if (!a.joint_path.empty() && plane != rb::Plane::Norm) {
        throw ConfigError("--joint membership is defined in the norm plane; use --plane norm");
    }
    const double scale = a.bits ? 1.0 / kLn2 : 1.0;

    auto [v_curve, w_curve] = rb::region_boundary(a.n, alpha, beta, a.points, plane);
    if (a.bits) {
        for (rb::RegionCurve* c : {&v_curve, &w_curve}) {
            for (auto& s : c->points) {
                s.x *= scale;
                s.y *= scale;
            }
        }
    }
    std::ostringstream curves_csv;
    rb::write_csv(curves_csv, v_curve, w_curve);

    std::string hull_csv;
    std::optional<rb::HullRegion> hull;
    if (a.hull || !a.joint_path.empty()) {
        if (alpha.is_one() || beta.is_one()) {
            throw ConfigError("the hull is computed in the norm plane and needs both orders != 1");
        }
        hull = rb::conditional_region(a.n, alpha, beta, a.points);
    }
    if (a.hull) {
        rb::HullRegion display = *hull;
        if (plane == rb::Plane::Entropy) {
            const auto map_coord = [&](double x, rb::Order o) {
                const double h = o.is_infinite() ? -std::log(x)
                                                 : o.value() / (1.0 - o.value()) * std::log(x);
                return scale * std::clamp(h, 0.0, std::log(static_cast<double>(a.n)));
            };
            for (auto& v : display.vertices) {
                v = {map_coord(v[0], alpha), map_coord(v[1], beta)};
            }
        }
        std::ostringstream out;
        rb::write_csv(out, display);
        hull_csv = out.str();
    }

    if (!a.joint_path.empty()) {
        std::ifstream in(a.joint_path);
        if (!in) throw ConfigError("cannot read joint model file " + a.joint_path);
        const rb::JointModel j = rb::JointModel::parse(in);
        if (j.n() != static_cast<std::size_t>(a.n)) {
            throw ConfigError("joint model alphabet size " + std::to_string(j.n()) +
                              " does not match --n " + std::to_string(a.n));
        }
        const double x = rb::expected_norm(j, alpha);
        const double y = rb::expected_norm(j, beta);
        const double dist = rb::hull_signed_distance(*hull, x, y);
        ordered_json report;
        report["plane"] = "norm";
        report["n"] = a.n;
        report["alpha"] = order_json(alpha);
        report["beta"] = order_json(beta);
        report["point"] = {x, y};
        report["conditional_entropies"] = {rb::conditional_renyi(j, alpha),
                                           rb::conditional_renyi(j, beta)};
        report["signed_distance"] = dist;
        report["slack"] = a.slack;
        report["inside"] = dist >= -a.slack;
        if (!a.output.empty()) atomic_write(a.output, curves_csv.str());
        if (a.hull && !a.hull_output.empty()) atomic_write(a.hull_output, hull_csv);
        std::cout << report.dump(2) << "\n";
        return 0;
    }

    if (a.hull && a.hull_output.empty() && a.output.empty()) {
        std::cout << curves_csv.str() << "\n" << hull_csv;
        return 0;
    }
    emit(a.output, curves_csv.str());
    if (a.hull) {
        if (!a.hull_output.empty()) {
            atomic_write(a.hull_output, hull_csv);
        } else {
            std::cout << hull_csv;
        }
    }
    return 0;
}

// --------------------------------------------------------------- channel ---

struct ChannelArgs {
    std::string matrix_path;
    std::string family;
    int n = 0;
    double p = -1.0;
    bool family_sweep = false;
    std::string match_alpha;
    double match_value = -1.0;
    std::string alpha = "2";
    std::string beta;
    std::vector<double> rates;
    int rate_points = 50;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    std::string output;
    bool bits = false;
};

int run_channel(const ChannelArgs& a) {
    const int sources = static_cast<int>(!a.matrix_path.empty()) +
                        static_cast<int>(!a.family.empty()) + static_cast<int>(a.family_sweep);
    if (sources != 1) {
        throw ConfigError("choose exactly one channel source: --matrix, --family, or --family-sweep");
    }

    rb::Order alpha = parse_order(a.alpha, "--alpha");
    std::optional<rb::Order> beta;
    if (!a.beta.empty()) beta = parse_order(a.beta, "--beta");

    std::optional<rb::Dmc> channel;
    ordered_json matched_info;
    std::uint64_t seed = 0;
    if (!a.matrix_path.empty()) {
        std::ifstream in(a.matrix_path);
        if (!in) throw ConfigError("cannot read channel matrix file " + a.matrix_path);
        channel = rb::Dmc::parse(in);
    } else if (!a.family.empty()) {
        if (a.n < 2 || a.p < 0.0) {
            throw ConfigError("--family needs --n and --p");
        }
        channel = a.family == "v" ? rb::v_channel(a.n, a.p) : rb::w_channel(a.n, a.p);
    } else {
        if (a.n < 2 || a.match_alpha.empty() || a.match_value < 0.0) {
            throw ConfigError("--family-sweep needs --n, --match-alpha, and --match-value");
        }
        alpha = parse_order(a.match_alpha, "--match-alpha");
        seed = resolve_seed(a.seed);
        rb::TrialRng rng(seed, 0);
        channel = rb::random_matched_focusing_channel(a.n, alpha, a.match_value, rng);
        matched_info = {{"seed", seed},
                        {"match_alpha", order_json(alpha)},
                        {"match_value", a.match_value}};
    }

    const bool want_er = a.family_sweep || !a.rates.empty();
    std::vector<double> rates = a.rates;
    if (want_er && rates.empty()) {
        if (a.rate_points < 2) throw ConfigError("--rate-points must be at least 2");
        rates = rate_grid(a.rate_points, std::log(static_cast<double>(channel->num_inputs())));
    }
    for (double r : rates) {
        if (std::isnan(r) || r < 0.0) throw ConfigError("rates must be nonnegative");
    }

    const double scale = a.bits ? 1.0 / kLn2 : 1.0;
    const rb::ProbVec uniform_in = rb::ProbVec::uniform(channel->num_inputs());

    std::optional<rb::ErBounds> er;
    if (want_er) er = rb::er_bounds(*channel, alpha, rates);

    if (a.format == "csv") {
        if (!er) {
            throw ConfigError("csv format emits exponent curves; request them with --rates or --family-sweep");
        }
        rb::ErBounds display = *er;
        if (a.bits) {
            for (rb::ExponentCurve* c : {&display.lower, &display.actual, &display.upper}) {
                for (auto& s : c->points) {
                    s.rate *= scale;
                    s.er *= scale;
                }
            }
        }
        std::ostringstream out;
        rb::write_csv(out, display);
        emit(a.output, out.str());
        return 0;
    }

    ordered_json j;
    j["inputs"] = channel->num_inputs();
    j["outputs"] = channel->num_outputs();
    j["uniformly_dispersive"] = rb::is_uniformly_dispersive(*channel);
    j["uniformly_focusing"] = rb::is_uniformly_focusing(*channel);
    j["strongly_symmetric"] = rb::is_strongly_symmetric(*channel);
    j["unit"] = a.bits ? "bits" : "nats";
    if (!matched_info.is_null()) j["matched"] = matched_info;

    std::vector<rb::Order> table = {rb::Order::finite(0.5), rb::Order::one(),
                                    rb::Order::finite(2.0), rb::Order::infinity(), alpha};
    if (beta) table.push_back(*beta);
    std::sort(table.begin(), table.end());
    table.erase(std::unique(table.begin(), table.end()), table.end());
    ordered_json mi = ordered_json::array();
    for (rb::Order o : table) {
        mi.push_back({{"order", order_json(o)},
                      {"value", scale * rb::arimoto_mutual_info(uniform_in, *channel, o)}});
    }
    j["mutual_info"] = mi;

    if (beta) {
        rb::BoundReport r = rb::focusing_mi_bounds(*channel, alpha, *beta);
        ordered_json b = bound_report_json(r);
        b["lower"] = r.lower * scale;
        b["upper"] = r.upper * scale;
        b["beta_mutual_info"] = scale * rb::arimoto_mutual_info(uniform_in, *channel, *beta);
        j["mi_bounds"] = b;
    }

    if (er) {
        ordered_json curves;
        curves["alpha"] = order_json(alpha);
        ordered_json rlist = ordered_json::array();
        for (double r : rates) rlist.push_back(r * scale);
        curves["rates"] = rlist;
        for (const auto& [key, curve] :
             {std::pair<const char*, const rb::ExponentCurve*>{"lower", &er->lower},
              {"actual", &er->actual},
              {"upper", &er->upper}}) {
            ordered_json c;
            c["id"] = curve->channel_id;
            ordered_json vals = ordered_json::array();
            for (const auto& s : curve->points) vals.push_back(s.er * scale);
            c["er"] = vals;
            curves[key] = c;
        }
        curves["lower_witness"] = witness_json(er->lower_witness);
        curves["upper_witness"] = witness_json(er->upper_witness);
        j["er"] = curves;
    }

    emit(a.output, j.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- verify ---

struct VerifyArgs {
    std::string theorem;  // "1", "2", "3", "45", or empty = full suite
    std::optional<int> n;
    std::string alpha, beta;
    std::optional<long long> trials;
    std::optional<double> slack;
    std::optional<std::uint64_t> seed;
    bool self_test = false;
    int max_outputs = 5;
    int hull_points = 512;
    std::vector<double> rates;
    int rate_points = 12;
    std::string output;
};

rb::VerifyReport run_one_verify(const std::string& which, const VerifyArgs& a,
                                std::uint64_t seed) {
    const double inflate = a.self_test ? 1e-3 : 0.0;
    if (which == "1") {
        const int n = a.n.value_or(9);
        const rb::Order alpha = parse_order(a.alpha.empty() ? "3" : a.alpha, "--alpha");
        const rb::Order beta = parse_order(a.beta.empty() ? "0.5" : a.beta, "--beta");
        return rb::verify_theorem1(n, alpha, beta, a.trials.value_or(1000),
                                   a.slack.value_or(1e-9), seed, inflate);
    }
    if (which == "2") {
        const int n = a.n.value_or(7);
        const rb::Order alpha = parse_order(a.alpha.empty() ? "2" : a.alpha, "--alpha");
        const rb::Order beta = parse_order(a.beta.empty() ? "0.5" : a.beta, "--beta");
        return rb::verify_theorem2(n, alpha, beta, a.trials.value_or(1000),
                                   a.slack.value_or(1e-9), seed, inflate);
    }
    if (which == "3") {
        const int n = a.n.value_or(7);
        const rb::Order alpha = parse_order(a.alpha.empty() ? "2" : a.alpha, "--alpha");
        const rb::Order beta = parse_order(a.beta.empty() ? "0.5" : a.beta, "--beta");
        return rb::verify_theorem3(n, alpha, beta, a.trials.value_or(1000),
                                   a.slack.value_or(1e-6), seed, a.max_outputs, a.hull_points,
                                   inflate);
    }
    if (which == "45") {
        const int n = a.n.value_or(8);
        const rb::Order alpha = parse_order(a.alpha.empty() ? "0.5" : a.alpha, "--alpha");
        const rb::Order beta = parse_order(a.beta.empty() ? "2" : a.beta, "--beta");
        std::vector<double> rates = a.rates;
        if (rates.empty()) {
            if (a.rate_points < 2) throw ConfigError("--rate-points must be at least 2");
            rates = rate_grid(a.rate_points, std::log(static_cast<double>(n)));
        }
        return rb::verify_theorems45(n, alpha, beta, rates, a.trials.value_or(25),
                                     a.slack.value_or(1e-9), seed, inflate);
    }
    throw ConfigError("--theorem must be one of 1, 2, 3, 45");
}

int run_verify(const VerifyArgs& a) {
    const std::uint64_t seed = resolve_seed(a.seed);
    long long total_violations = 0;
    std::string text;
    if (a.theorem.empty()) {
        ordered_json all = ordered_json::array();
        for (const char* which : {"1", "2", "3", "45"}) {
            const rb::VerifyReport rep = run_one_verify(which, a, seed);
            total_violations += rep.violations;
            all.push_back(rep.to_json());
        }
        text = all.dump(2) + "\n";
    } else {
        const rb::VerifyReport rep = run_one_verify(a.theorem, a, seed);
        total_violations = rep.violations;
        text = rep.str() + "\n";
    }
    emit(a.output, text);
    return total_violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sharp bounds between lp-norms and Renyi entropies on the probability simplex"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "rb 1.0.0");

    BoundsArgs bounds_args;
    CLI::App* bounds = app.add_subcommand("bounds", "Sharp bound pair at a fixed coordinate");
    bounds->add_option("--n", bounds_args.n, "Alphabet size")->required()->check(CLI::Range(2, 1000000));
    bounds->add_option("--alpha", bounds_args.alpha, "Fixed order (decimal or 'inf')")->required();
    bounds->add_option("--beta", bounds_args.beta, "Bounded order (decimal or 'inf')")->required();
    bounds->add_option("--value", bounds_args.value, "Coordinate at the fixed order")->required();
    bounds->add_option("--plane", bounds_args.plane, "Coordinate plane")
        ->required()
        ->check(CLI::IsMember({"norm", "entropy", "divergence"}));
    bounds->add_option("--format", bounds_args.format)->check(CLI::IsMember({"json", "csv"}));
    bounds->add_option("--output", bounds_args.output, "Write to file (atomic) instead of stdout");
    bounds->add_flag("--bits", bounds_args.bits, "Display entropies/divergences in bits");

    RegionArgs region_args;
    CLI::App* region = app.add_subcommand("region", "Exact feasible region boundary curves");
    region->add_option("--n", region_args.n, "Alphabet size")->required()->check(CLI::Range(2, 1000000));
    region->add_option("--alpha", region_args.alpha, "x-axis order")->required();
    region->add_option("--beta", region_args.beta, "y-axis order")->required();
    region->add_option("--plane", region_args.plane, "Coordinate plane")
        ->required()
        ->check(CLI::IsMember({"norm", "entropy"}));
    region->add_option("--points", region_args.points, "Samples per family curve")
        ->check(CLI::Range(2, 10000000));
    region->add_flag("--hull", region_args.hull, "Also emit the convex hull (conditional region)");
    region->add_option("--joint", region_args.joint_path,
                       "Joint model file; reports hull membership of its (N_alpha, N_beta)");
    region->add_option("--slack", region_args.slack, "Membership slack for --joint");
    region->add_option("--output", region_args.output, "Curve CSV file");
    region->add_option("--hull-output", region_args.hull_output, "Hull CSV file");
    region->add_flag("--bits", region_args.bits, "Display entropies in bits");

    ChannelArgs channel_args;
    CLI::App* channel = app.add_subcommand("channel", "Channel classification, I_alpha, and E_r envelopes");
    channel->add_option("--matrix", channel_args.matrix_path, "Channel matrix file (rows, comma-separated)");
    channel->add_option("--family", channel_args.family, "Extremal channel family")
        ->check(CLI::IsMember({"v", "w"}));
    channel->add_flag("--family-sweep", channel_args.family_sweep,
                      "Random focusing channel matched to --match-alpha/--match-value, with envelopes");
    channel->add_option("--n", channel_args.n, "Alphabet size for --family/--family-sweep");
    channel->add_option("--p", channel_args.p, "Family parameter for --family");
    channel->add_option("--match-alpha", channel_args.match_alpha, "Matching order for --family-sweep");
    channel->add_option("--match-value", channel_args.match_value,
                        "Target I_alpha (nats) for --family-sweep");
    channel->add_option("--alpha", channel_args.alpha, "Analysis order (default 2)");
    channel->add_option("--beta", channel_args.beta, "Order for the mutual-information sandwich");
    channel->add_option("--rates", channel_args.rates, "Rate grid (nats) for E_r curves")
        ->delimiter(',');
    channel->add_option("--rate-points", channel_args.rate_points,
                        "Default rate-grid size when --rates is omitted");
    channel->add_option("--seed", channel_args.seed, "Seed for --family-sweep");
    channel->add_option("--format", channel_args.format)->check(CLI::IsMember({"json", "csv"}));
    channel->add_option("--output", channel_args.output, "Write to file (atomic) instead of stdout");
    channel->add_flag("--bits", channel_args.bits, "Display rates/exponents/information in bits");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "Empirical oracle runs; exit 0 iff no violations");
    verify->add_option("--theorem", verify_args.theorem, "1, 2, 3, or 45 (default: full suite)")
        ->check(CLI::IsMember({"1", "2", "3", "45"}));
    verify->add_option("--n", verify_args.n, "Alphabet size")->check(CLI::Range(2, 1000000));
    verify->add_option("--alpha", verify_args.alpha, "Fixed order");
    verify->add_option("--beta", verify_args.beta, "Second order");
    verify->add_option("--trials", verify_args.trials)->check(CLI::Range(1LL, 1000000000LL));
    verify->add_option("--slack", verify_args.slack, "Violation tolerance");
    verify->add_option("--seed", verify_args.seed, "Oracle seed (overrides RB_SEED)");
    verify->add_flag("--self-test", verify_args.self_test,
                     "Shrink the bands by 1e-3 to force detectable violations");
    verify->add_option("--max-outputs", verify_args.max_outputs, "Largest |Y| for theorem 3")
        ->check(CLI::Range(2, 1000));
    verify->add_option("--hull-points", verify_args.hull_points, "Hull sampling for theorem 3")
        ->check(CLI::Range(2, 10000000));
    verify->add_option("--rates", verify_args.rates, "Rate grid for theorem 45")->delimiter(',');
    verify->add_option("--rate-points", verify_args.rate_points,
                       "Default rate-grid size for theorem 45");
    verify->add_option("--output", verify_args.output, "Write report to file (atomic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (bounds->parsed()) return run_bounds(bounds_args);
        if (region->parsed()) return run_region(region_args);
        if (channel->parsed()) return run_channel(channel_args);
        return run_verify(verify_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
