#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "constants.hpp"
#include "error.hpp"

namespace skybus::quad {

namespace {

// Nodes/weights on [-1, 1], Newton iteration on P_n from the Chebyshev guess.
Rule legendre_unit(std::size_t n) {
    Rule r;
    r.nodes.assign(n, 0.0);
    r.weights.assign(n, 0.0);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double z = std::cos(constants::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / static_cast<double>(j);
            }
            pp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        r.nodes[i] = -z;
        r.nodes[n - 1 - i] = z;
        r.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.weights[n - 1 - i] = r.weights[i];
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

const Rule& cached_unit(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, Rule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, legendre_unit(n)).first;
    return it->second;
}

}  // namespace

Rule gauss_legendre(std::size_t n, double a, double b) {
    require(n >= 1, "Gauss-Legendre rule needs at least one node");
    const Rule& u = cached_unit(n);
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
    for (std::size_t i = 0; i < n; ++i) {
        r.nodes[i] = mid + half * u.nodes[i];
        r.weights[i] = half * u.weights[i];
    }
    return r;
}

Rule composite_gauss_legendre(const std::vector<double>& bp, std::size_t n_per_panel) {
    require(bp.size() >= 2, "composite rule needs at least two breakpoints");
    Rule r;
    r.nodes.reserve((bp.size() - 1) * n_per_panel);
    r.weights.reserve((bp.size() - 1) * n_per_panel);
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        const Rule p = gauss_legendre(n_per_panel, bp[k], bp[k + 1]);
        r.nodes.insert(r.nodes.end(), p.nodes.begin(), p.nodes.end());
        r.weights.insert(r.weights.end(), p.weights.begin(), p.weights.end());
    }
    return r;
}

Rule periodic_trapezoid(std::size_t n) {
    require(n >= 1, "trapezoid rule needs at least one node");
    Rule r;
    r.nodes.resize(n);
    r.weights.assign(n, constants::two_pi / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) r.nodes[i] = constants::two_pi * static_cast<double>(i) / static_cast<double>(n);
    return r;
}

std::vector<double> breakpoints(double lo, double hi, const std::vector<double>& scales,
                                const std::vector<Feature>& features) {
    require(hi > lo, "breakpoint interval must be non-empty");
    std::vector<double> pts{lo, hi};
    for (double s : scales) {
        if (!(s > 0.0)) continue;
        for (double x = 0.25 * s; lo + x < hi; x *= 2.0) pts.push_back(lo + x);
    }
    for (const auto& f : features) {
        if (!(f.width > 0.0)) continue;
        for (double k : {-2.0, -1.0, 0.0, 1.0, 2.0}) pts.push_back(f.center + k * f.width);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    const double min_gap = 1e-3 * (hi - lo);
    for (double p : pts) {
        if (p < lo || p > hi) continue;
        if (!out.empty() && p - out.back() < min_gap) {
            if (p == hi) out.back() = hi;
            continue;
        }
        out.push_back(p);
    }
    if (out.back() != hi) out.push_back(hi);
    if (out.size() < 2) out = {lo, hi};
    return out;
}

}  // namespace skybus::quad
