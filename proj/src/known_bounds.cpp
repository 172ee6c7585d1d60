#include "bell/known_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <stdexcept>

namespace bell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateEps = 1e-10;

double clamped_asin(double x) {
    return std::asin(std::clamp(x, -1.0, 1.0));
}

bool arcsin_criterion(const std::array<std::array<double, 2>, 2>& f, double tol) {
    const double total = f[0][0] + f[0][1] + f[1][0] + f[1][1];
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            if (std::abs(total - 2.0 * f[j][k]) > kPi + tol) return false;
    return true;
}

double dot8(const std::array<double, 8>& a, const std::array<double, 8>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < 8; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

bool tlm_satisfied(const Behavior& b, double tol) {
    std::array<std::array<double, 2>, 2> f{};
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) f[j][k] = clamped_asin(b.correlator(j, k));
    return arcsin_criterion(f, tol);
}

bool npa_satisfied(const Behavior& b, double tol) {
    std::array<std::array<double, 2>, 2> f{};
    for (int j = 0; j < 2; ++j) {
        const double ma = b.marginalA(j);
        const double da = 1.0 - ma * ma;
        for (int k = 0; k < 2; ++k) {
            const double mb = b.marginalB(k);
            const double db = 1.0 - mb * mb;
            const double cov = b.correlator(j, k) - ma * mb;
            if (da <= kDegenerateEps || db <= kDegenerateEps) {
                // Deterministic marginal: the correlator must factorize; its
                // arcsin term degenerates to 0.
                if (std::abs(cov) > kDegenerateEps) return false;
                f[j][k] = 0.0;
            } else {
                const double arg = cov / std::sqrt(da * db);
                if (std::abs(arg) > 1.0 + 1e-9)
                    throw std::domain_error("npa_satisfied: arcsin argument out of range "
                                            "(behavior is not no-signaling)");
                f[j][k] = clamped_asin(arg);
            }
        }
    }
    return arcsin_criterion(f, tol);
}

std::string qb_name_string(QBName name) {
    switch (name) {
        case QBName::QB1: return "qb1";
        case QBName::QB2: return "qb2";
        default: return "qb3";
    }
}

double qb_bound(QBName name, double x) {
    const double ax = std::abs(x);
    switch (name) {
        case QBName::QB1:
            if (x >= -1.0 / 3.0) return x + 3.0;
            return std::sqrt((x * x * x - 3.0 * x * x + 3.0 * x - 1.0) / x);
        case QBName::QB2:
            if (ax >= 2.0) return ax + 2.0;
            return std::sqrt(2.0 * x * x + 8.0);
        default:
            if (ax >= 2.0) return 3.0 * ax - 2.0;
            if (ax >= 1.0) return ax + 2.0;
            {
                const double x2 = x * x;
                const double num = 3.0 * x2 * x2 - 10.0 * x2 + 8.0;
                return x2 / (x2 - 1.0) + std::sqrt(num) / std::abs(x2 - 1.0);
            }
    }
}

void qb_template_parts(QBName name, CoefficientVector& base, CoefficientVector& direction) {
    base = CoefficientVector{};
    direction = CoefficientVector{};
    base[4] = base[5] = base[6] = 1.0;
    switch (name) {
        case QBName::QB1:
            direction[7] = 1.0;
            break;
        case QBName::QB2:
            base[7] = -1.0;
            direction[0] = 1.0;
            break;
        default:
            base[7] = -1.0;
            direction[0] = direction[1] = 1.0;
            direction[2] = -1.0;
            break;
    }
}

CoefficientVector qb_template(QBName name, double x) {
    CoefficientVector base, dir;
    qb_template_parts(name, base, dir);
    CoefficientVector c;
    for (std::size_t i = 0; i < 8; ++i) c[i] = base[i] + x * dir[i];
    return c;
}

const std::vector<double>& default_x_grid() {
    static const std::vector<double> grid = [] {
        std::vector<double> g;
        for (int i = 0; i <= 200; ++i) g.push_back(-4.0 + 8.0 * double(i) / 200.0);
        for (int i = 1; i <= 100; ++i) {
            const double x = 4.0 * std::pow(16.0, double(i) / 100.0);
            g.push_back(x);
            g.push_back(-x);
        }
        for (double bp : {1.0 / 3.0, 1.0, 2.0}) {
            g.push_back(bp);
            g.push_back(-bp);
        }
        std::sort(g.begin(), g.end());
        return g;
    }();
    return grid;
}

FunctionValuedBound FunctionValuedBound::make(QBName name, const SymmetryGroup& group) {
    FunctionValuedBound fb;
    fb.name = name;
    fb.x_grid = default_x_grid();
    fb.bound_at.reserve(fb.x_grid.size());
    for (double x : fb.x_grid) fb.bound_at.push_back(qb_bound(name, x));

    CoefficientVector base, dir;
    qb_template_parts(name, base, dir);

    std::vector<std::pair<std::array<double, 8>, std::array<double, 8>>> images;
    for (const auto& g : group.elements) {
        auto pb = g.apply(base.c);
        auto pd = g.apply(dir.c);
        if (std::find(images.begin(), images.end(), std::make_pair(pb, pd)) == images.end())
            images.emplace_back(pb, pd);
    }
    for (const auto& [pb, pd] : images) {
        auto it = std::find_if(fb.orbit.begin(), fb.orbit.end(),
                               [&](const OrbitGroup& og) { return og.direction == pd; });
        if (it == fb.orbit.end()) {
            fb.orbit.push_back({pd, {pb}});
        } else {
            it->bases.push_back(pb);
        }
    }
    return fb;
}

bool fv_violated(const Behavior& b, const FunctionValuedBound& fb, double tol) {
    const std::size_t n = fb.x_grid.size();
    for (const auto& og : fb.orbit) {
        const double slope = dot8(og.direction, b.v);
        double offset = -std::numeric_limits<double>::infinity();
        for (const auto& base : og.bases) offset = std::max(offset, dot8(base, b.v));

        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double margin = offset + slope * fb.x_grid[i] - fb.bound_at[i];
            if (margin > best) {
                best = margin;
                best_i = i;
            }
        }
        if (best > tol) return true;
        if (best > -10.0 * tol) {
            // Near-miss on the grid: golden-section refine in x to guard
            // against a maximum hiding between grid points.
            double lo = fb.x_grid[best_i > 0 ? best_i - 1 : 0];
            double hi = fb.x_grid[std::min(best_i + 1, n - 1)];
            auto phi = [&](double x) { return offset + slope * x - qb_bound(fb.name, x); };
            const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
            double x1 = hi - inv_gr * (hi - lo), x2 = lo + inv_gr * (hi - lo);
            double f1 = phi(x1), f2 = phi(x2);
            for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
                if (f1 < f2) {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + inv_gr * (hi - lo);
                    f2 = phi(x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - inv_gr * (hi - lo);
                    f1 = phi(x1);
                }
            }
            if (std::max(f1, f2) > tol) return true;
        }
    }
    return false;
}

}  // namespace bell
