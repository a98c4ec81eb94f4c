#include "rb/channels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "rb/conditional.hpp"
#include "rb/extremal.hpp"

namespace rb {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kMultisetTol = 1e-12;

}  // namespace

Dmc::Dmc(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
    if (rows_.size() < 2) {
        throw std::invalid_argument("channel needs at least 2 inputs, got " +
                                    std::to_string(rows_.size()));
    }
    const std::size_t ny = rows_.front().size();
    if (ny < 2) {
        throw std::invalid_argument("channel needs at least 2 outputs, got " + std::to_string(ny));
    }
    for (std::size_t x = 0; x < rows_.size(); ++x) {
        auto& row = rows_[x];
        if (row.size() != ny) {
            throw std::invalid_argument("channel row " + std::to_string(x) + " has " +
                                        std::to_string(row.size()) + " entries, expected " +
                                        std::to_string(ny));
        }
        double sum = 0.0;
        for (double& w : row) {
            if (std::isnan(w) || w < -kRowSumTol) {
                throw std::invalid_argument("channel entry out of range: " + fmt_shortest(w));
            }
            if (w < 0.0) w = 0.0;
            sum += w;
        }
        if (std::abs(sum - 1.0) > kRowSumTol) {
            throw std::invalid_argument("channel row " + std::to_string(x) + " sums to " +
                                        fmt17(sum) + ", outside 1 +/- 1e-12");
        }
    }
}

Dmc Dmc::parse(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            const std::string field = line.substr(pos, comma - pos);
            char* end = nullptr;
            const double v = std::strtod(field.c_str(), &end);
            if (end == field.c_str() || *end != '\0') {
                throw std::invalid_argument("cannot parse channel entry '" + field + "'");
            }
            row.push_back(v);
            pos = comma + 1;
            if (comma == line.size()) break;
        }
        rows.push_back(std::move(row));
    }
    return Dmc(std::move(rows));
}

std::vector<double> Dmc::column(std::size_t y) const {
    std::vector<double> col(num_inputs());
    for (std::size_t x = 0; x < num_inputs(); ++x) col[x] = rows_[x][y];
    return col;
}

namespace {

std::vector<double> sorted_desc(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

bool same_multiset(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > kMultisetTol) return false;
    }
    return true;
}

}  // namespace

bool is_uniformly_dispersive(const Dmc& c) {
    const std::vector<double> ref = sorted_desc(c.row(0));
    for (std::size_t x = 1; x < c.num_inputs(); ++x) {
        if (!same_multiset(ref, sorted_desc(c.row(x)))) return false;
    }
    return true;
}

bool is_uniformly_focusing(const Dmc& c) {
    const std::vector<double> ref = sorted_desc(c.column(0));
    for (std::size_t y = 1; y < c.num_outputs(); ++y) {
        if (!same_multiset(ref, sorted_desc(c.column(y)))) return false;
    }
    return true;
}

bool is_strongly_symmetric(const Dmc& c) {
    return is_uniformly_dispersive(c) && is_uniformly_focusing(c);
}

Dmc v_channel(int n, double p) {
    if (n < 2) throw std::invalid_argument("v channel needs n >= 2, got " + std::to_string(n));
    const double hi = 1.0 / n;
    if (std::isnan(p) || p < -kRowSumTol || p > hi + kRowSumTol) {
        throw std::invalid_argument("v channel parameter " + fmt_shortest(p) + " outside [0, " +
                                    fmt_shortest(hi) + "] for n=" + std::to_string(n));
    }
    const ProbVec base = v_dist(n, std::clamp(p, 0.0, hi));
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n), base[1]));
    for (std::size_t x = 0; x < rows.size(); ++x) rows[x][x] = base[0];
    return Dmc(std::move(rows));
}

Dmc w_channel(int n, double p) {
    const ProbVec base = w_dist(n, p);
    const std::size_t un = static_cast<std::size_t>(n);
    std::vector<std::vector<double>> rows(un, std::vector<double>(un, 0.0));
    for (std::size_t x = 0; x < un; ++x) {
        for (std::size_t i = 0; i < un; ++i) rows[x][(x + i) % un] = base[i];
    }
    return Dmc(std::move(rows));
}

double arimoto_mutual_info(const ProbVec& input, const Dmc& c, Order alpha) {
    if (input.size() != c.num_inputs()) {
        throw std::invalid_argument("input has " + std::to_string(input.size()) +
                                    " symbols but the channel has " +
                                    std::to_string(c.num_inputs()) + " inputs");
    }
    const std::size_t nx = c.num_inputs(), ny = c.num_outputs();
    std::vector<double> prior;
    std::vector<ProbVec> posteriors;
    for (std::size_t y = 0; y < ny; ++y) {
        double py = 0.0;
        for (std::size_t x = 0; x < nx; ++x) py += input[x] * c(x, y);
        if (py <= 0.0) continue;
        std::vector<double> post(nx);
        for (std::size_t x = 0; x < nx; ++x) post[x] = input[x] * c(x, y) / py;
        prior.push_back(py);
        posteriors.push_back(ProbVec(std::move(post)));
    }
    double h_cond;
    if (posteriors.size() == 1) {
        h_cond = renyi_entropy(posteriors.front(), alpha);
    } else {
        h_cond = conditional_renyi(JointModel(ProbVec(std::move(prior)), std::move(posteriors)),
                                   alpha);
    }
    return std::max(0.0, renyi_entropy(input, alpha) - h_cond);
}

double gallager_e0(double rho, const ProbVec& input, const Dmc& c) {
    if (input.size() != c.num_inputs()) {
        throw std::invalid_argument("input has " + std::to_string(input.size()) +
                                    " symbols but the channel has " +
                                    std::to_string(c.num_inputs()) + " inputs");
    }
    if (!(rho > -1.0)) {
        throw std::domain_error("gallager_e0 needs rho > -1, got " + fmt_shortest(rho));
    }
    if (rho == 0.0) return 0.0;
    const double s = 1.0 / (1.0 + rho);
    double total = 0.0;
    for (std::size_t y = 0; y < c.num_outputs(); ++y) {
        double inner = 0.0;
        for (std::size_t x = 0; x < c.num_inputs(); ++x) {
            const double w = c(x, y);
            if (w > 0.0 && input[x] > 0.0) inner += input[x] * std::pow(w, s);
        }
        if (inner > 0.0) total += std::pow(inner, 1.0 + rho);
    }
    return -std::log(total);
}

double random_coding_exponent(double rate, const ProbVec& input, const Dmc& c) {
    if (std::isnan(rate) || rate < 0.0) {
        throw std::invalid_argument("rate must be nonnegative, got " + fmt_shortest(rate));
    }
    const auto objective = [&](double rho) { return gallager_e0(rho, input, c) - rho * rate; };

    double best = 0.0;
    double best_rho = 0.0;
    constexpr int kScan = 32;
    for (int i = 1; i <= kScan; ++i) {
        const double rho = static_cast<double>(i) / kScan;
        const double val = objective(rho);
        if (val > best) {
            best = val;
            best_rho = rho;
        }
    }
    double a = std::max(0.0, best_rho - 1.0 / kScan);
    double b = std::min(1.0, best_rho + 1.0 / kScan);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c1 = b - invphi * (b - a);
    double c2 = a + invphi * (b - a);
    double f1 = objective(c1);
    double f2 = objective(c2);
    while (b - a > 1e-10) {
        if (f1 >= f2) {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - invphi * (b - a);
            f1 = objective(c1);
        } else {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + invphi * (b - a);
            f2 = objective(c2);
        }
    }
    best = std::max(best, objective(0.5 * (a + b)));
    return best;
}

namespace {

struct MatchedFamilies {
    double t;
    ExtremalParam pv;
    ExtremalParam pw;
    Dmc v;
    Dmc w;
};

MatchedFamilies matched_families(const Dmc& c, Order alpha, const char* what) {
    if (!c.is_square()) {
        throw std::invalid_argument(std::string(what) + " needs a square channel, got " +
                                    std::to_string(c.num_inputs()) + "x" +
                                    std::to_string(c.num_outputs()));
    }
    if (!is_uniformly_focusing(c)) {
        throw std::invalid_argument(std::string(what) + " needs a uniformly focusing channel");
    }
    const int n = static_cast<int>(c.num_inputs());
    const double t = arimoto_mutual_info(ProbVec::uniform(c.num_inputs()), c, alpha);
    const double hmax = std::log(static_cast<double>(n));
    const double h = std::clamp(hmax - t, 0.0, hmax);
    const ExtremalParam pv = invert_v_by_entropy(n, alpha, h);
    const ExtremalParam pw = invert_w_by_entropy(n, alpha, h);
    return MatchedFamilies{t, pv, pw, v_channel(n, pv.p), w_channel(n, pw.p)};
}

}  // namespace

BoundReport focusing_mi_bounds(const Dmc& c, Order alpha, Order beta) {
    if (alpha == beta) {
        throw std::invalid_argument("orders must be distinct, both are " + alpha.str());
    }
    const MatchedFamilies m = matched_families(c, alpha, "focusing_mi_bounds");
    const ProbVec u = ProbVec::uniform(c.num_inputs());
    const double iv = arimoto_mutual_info(u, m.v, beta);
    const double iw = arimoto_mutual_info(u, m.w, beta);

    BoundReport r;
    if (beta < alpha) {
        r.lower = iv;
        r.upper = iw;
        r.lower_witness = m.pv;
        r.upper_witness = m.pw;
        r.regime = BoundRegime::BetaBelowAlpha;
    } else {
        r.lower = iw;
        r.upper = iv;
        r.lower_witness = m.pw;
        r.upper_witness = m.pv;
        r.regime = BoundRegime::BetaAboveAlpha;
    }
    if (!(r.lower <= r.upper + 1e-12)) {
        throw std::logic_error("focusing_mi_bounds: lower bound " + fmt17(r.lower) +
                               " exceeds upper bound " + fmt17(r.upper));
    }
    return r;
}

ErBounds er_bounds(const Dmc& c, Order alpha, std::span<const double> rates) {
    if (!alpha.is_infinite() && alpha.value() > 0.5 && alpha.value() < 1.0) {
        throw std::invalid_argument("alpha = " + alpha.str() +
                                    " lies in the uncovered band (1/2, 1); exponent envelopes "
                                    "need alpha in (0, 1/2] or [1, inf]");
    }
    const MatchedFamilies m = matched_families(c, alpha, "er_bounds");
    const ProbVec u = ProbVec::uniform(c.num_inputs());

    ExponentCurve ev, ec, ew;
    ev.channel_id = "v(p=" + fmt_shortest(m.pv.p) + ")";
    ec.channel_id = "actual";
    ew.channel_id = "w(p=" + fmt_shortest(m.pw.p) + ")";
    for (double rate : rates) {
        ev.points.push_back({rate, random_coding_exponent(rate, u, m.v)});
        ec.points.push_back({rate, random_coding_exponent(rate, u, c)});
        ew.points.push_back({rate, random_coding_exponent(rate, u, m.w)});
    }

    ErBounds out;
    out.actual = std::move(ec);
    if (!alpha.is_infinite() && alpha.value() <= 0.5) {
        out.lower = std::move(ew);
        out.upper = std::move(ev);
        out.lower_witness = m.pw;
        out.upper_witness = m.pv;
    } else {
        out.lower = std::move(ev);
        out.upper = std::move(ew);
        out.lower_witness = m.pv;
        out.upper_witness = m.pw;
    }
    return out;
}

void write_csv(std::ostream& out, const ErBounds& b) {
    out << "R,Er,channel\n";
    for (const ExponentCurve* curve : {&b.lower, &b.actual, &b.upper}) {
        for (const ExponentCurve::Sample& s : curve->points) {
            out << fmt17(s.rate) << ',' << fmt17(s.er) << ',' << curve->channel_id << '\n';
        }
    }
}

}  // namespace rb
