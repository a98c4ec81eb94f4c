#include "rb/simplex_core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rb {

namespace {

constexpr double kSumTol = 1e-9;
constexpr double kExactTol = 1e-12;

std::string format_double(double v, const char* fmt) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

}  // namespace

std::string fmt17(double v) { return format_double(v, "%.17g"); }

std::string fmt_shortest(double v) {
    for (int prec = 1; prec <= 17; ++prec) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return fmt17(v);
}

Order Order::finite(double alpha) {
    if (!(alpha > 0.0) || std::isnan(alpha)) {
        throw std::invalid_argument("order must be a positive real, got " + fmt_shortest(alpha));
    }
    return Order(alpha);
}

Order Order::one() noexcept { return Order(1.0); }

Order Order::infinity() noexcept { return Order(std::numeric_limits<double>::infinity()); }

bool Order::is_infinite() const noexcept { return std::isinf(value_); }

Order Order::parse(std::string_view text) {
    if (text == "inf") return infinity();
    std::string s(text);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw std::invalid_argument("cannot parse order '" + s + "': expected 'inf' or a positive decimal");
    }
    if (std::isinf(v)) return infinity();
    return finite(v);
}

std::string Order::str() const {
    if (is_infinite()) return "inf";
    return fmt_shortest(value_);
}

ProbVec::ProbVec(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.size() < 2) {
        throw std::invalid_argument("probability vector needs at least 2 outcomes, got " +
                                    std::to_string(w_.size()));
    }
    for (double& w : w_) {
        if (std::isnan(w) || w < -kExactTol) {
            throw std::invalid_argument("probability weight out of range: " + fmt_shortest(w));
        }
        if (w < 0.0) w = 0.0;
    }
    double sum = std::accumulate(w_.begin(), w_.end(), 0.0);
    if (std::abs(sum - 1.0) > kSumTol) {
        throw std::invalid_argument("probability weights sum to " + fmt_shortest(sum) +
                                    ", outside 1 +/- 1e-9");
    }
    if (std::abs(sum - 1.0) > kExactTol) {
        for (double& w : w_) w /= sum;
    }
}

ProbVec trusted_prob_vec(std::vector<double> weights) {
    return ProbVec(ProbVec::Trusted{}, std::move(weights));
}

ProbVec ProbVec::uniform(std::size_t n) {
    if (n < 2) throw std::invalid_argument("uniform distribution needs n >= 2");
    return trusted_prob_vec(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ProbVec ProbVec::parse(std::string_view csv) {
    std::vector<double> w;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string_view::npos) comma = csv.size();
        std::string field(csv.substr(pos, comma - pos));
        char* end = nullptr;
        double v = std::strtod(field.c_str(), &end);
        if (end == field.c_str() || *end != '\0') {
            throw std::invalid_argument("cannot parse probability weight '" + field + "'");
        }
        w.push_back(v);
        pos = comma + 1;
        if (comma == csv.size()) break;
    }
    return ProbVec(std::move(w));
}

double ProbVec::max_weight() const noexcept { return *std::max_element(w_.begin(), w_.end()); }

std::string ProbVec::str() const {
    std::string out;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (i) out += ',';
        out += fmt17(w_[i]);
    }
    return out;
}

double lp_norm(const ProbVec& p, Order alpha) {
    if (alpha.is_infinite()) return p.max_weight();
    const double a = alpha.value();
    if (a > 1.0) {
        const double hi = p.max_weight();
        double s = 0.0;
        for (double w : p) {
            if (w > 0.0) s += std::pow(w / hi, a);
        }
        return hi * std::pow(s, 1.0 / a);
    }
    double s = 0.0;
    for (double w : p) {
        if (w > 0.0) s += std::pow(w, a);
    }
    return std::pow(s, 1.0 / a);
}

double renyi_entropy(const ProbVec& p, Order alpha) {
    const double hmax = std::log(static_cast<double>(p.size()));
    double h;
    if (alpha.is_one()) {
        h = 0.0;
        for (double w : p) {
            if (w > 0.0) h -= w * std::log(w);
        }
    } else if (alpha.is_infinite()) {
        h = -std::log(p.max_weight());
    } else {
        const double a = alpha.value();
        h = a / (1.0 - a) * std::log(lp_norm(p, alpha));
    }
    return std::clamp(h, 0.0, hmax);
}

double shannon_entropy(const ProbVec& p) { return renyi_entropy(p, Order::one()); }

double renyi_div_from_uniform(const ProbVec& p, Order alpha) {
    return std::log(static_cast<double>(p.size())) - renyi_entropy(p, alpha);
}

double q_log(double x, Order alpha) {
    if (!(x > 0.0)) throw std::domain_error("q_log requires x > 0, got " + fmt_shortest(x));
    if (alpha.is_infinite()) throw std::invalid_argument("q_log is undefined at infinite order");
    if (alpha.is_one()) return std::log(x);
    const double a = alpha.value();
    return (std::pow(x, 1.0 - a) - 1.0) / (1.0 - a);
}

RearrangedVec decreasing_rearrangement(const ProbVec& p) {
    std::vector<std::size_t> idx(p.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t i, std::size_t j) { return p[i] > p[j]; });
    std::vector<double> sorted(p.size());
    for (std::size_t k = 0; k < idx.size(); ++k) sorted[k] = p[idx[k]];
    return RearrangedVec{trusted_prob_vec(std::move(sorted)), std::move(idx)};
}

bool majorizes(const ProbVec& q, const ProbVec& p) {
    if (q.size() != p.size()) {
        throw std::invalid_argument("majorization compares vectors of equal length, got " +
                                    std::to_string(q.size()) + " and " + std::to_string(p.size()));
    }
    const ProbVec qs = decreasing_rearrangement(q).sorted;
    const ProbVec ps = decreasing_rearrangement(p).sorted;
    double qsum = 0.0, psum = 0.0;
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
        qsum += qs[k];
        psum += ps[k];
        if (psum > qsum + kExactTol) return false;
    }
    return true;
}

double error_probability(const ProbVec& p) { return 1.0 - p.max_weight(); }

}  // namespace rb
