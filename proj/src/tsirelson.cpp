#include "bell/tsirelson.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <utility>
#include <stdexcept>

namespace bell {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using std::complex;

constexpr double kPi = std::numbers::pi;

// Measurement operator cos(t) sx + (-1)^n sin(t) sy for apparatus n.
Matrix2cd measurement(double theta, int apparatus) {
    const double s = apparatus == 0 ? 1.0 : -1.0;
    Matrix2cd m;
    m << 0.0, complex<double>(std::cos(theta), -s * std::sin(theta)),
        complex<double>(std::cos(theta), s * std::sin(theta)), 0.0;
    return m;
}

Matrix4cd kron22(const Matrix2cd& a, const Matrix2cd& b) {
    Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

OperatorMatrix kron_dyn(const OperatorMatrix& a, const OperatorMatrix& b) {
    OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix4cd build_operator4(const CoefficientVector& c, double thetaA, double thetaB) {
    const Matrix2cd a0 = measurement(thetaA, 0);
    const Matrix2cd a1 = measurement(thetaA, 1);
    const Matrix2cd b0 = measurement(thetaB, 0);
    const Matrix2cd b1 = measurement(thetaB, 1);
    const Matrix2cd id = Matrix2cd::Identity();
    Matrix4cd z = Matrix4cd::Zero();
    z += c[0] * kron22(a0, id);
    z += c[1] * kron22(a1, id);
    z += c[2] * kron22(id, b0);
    z += c[3] * kron22(id, b1);
    z += c[4] * kron22(a0, b0);
    z += c[5] * kron22(a1, b0);
    z += c[6] * kron22(a0, b1);
    z += c[7] * kron22(a1, b1);
    return z;
}

double sqr(double x) { return x * x; }

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    long iterations = 0;
    bool converged = false;
};

// Maximizes f; ties contract, so flat objectives terminate.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& start, double step,
                             double tol, int max_iter) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> xs(n + 1, start);
    std::vector<double> fs(n + 1);
    for (std::size_t i = 0; i < n; ++i) xs[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) fs[i] = f(xs[i]);

    NelderMeadResult res;
    auto order = [&] {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fs[a] > fs[b]; });
        std::vector<std::vector<double>> xs2;
        std::vector<double> fs2;
        for (auto i : idx) {
            xs2.push_back(xs[i]);
            fs2.push_back(fs[i]);
        }
        xs = std::move(xs2);
        fs = std::move(fs2);
    };

    for (int it = 0; it < max_iter; ++it) {
        order();
        ++res.iterations;

        double diam = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t d = 0; d < n; ++d)
                diam = std::max(diam, std::abs(xs[i][d] - xs[0][d]));
        if (diam < tol) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < n; ++d) centroid[d] += xs[i][d] / double(n);

        auto affine = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d)
                p[d] = centroid[d] + t * (centroid[d] - xs[n][d]);
            return p;
        };

        const std::vector<double> xr = affine(1.0);
        const double fr = f(xr);
        if (fr > fs[0]) {
            const std::vector<double> xe = affine(2.0);
            const double fe = f(xe);
            if (fe > fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
        } else if (fr > fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            const bool outside = fr > fs[n];
            const std::vector<double> xc = affine(outside ? 0.5 : -0.5);
            const double fc = f(xc);
            if (fc > (outside ? fr : fs[n])) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t d = 0; d < n; ++d)
                        xs[i][d] = xs[0][d] + 0.5 * (xs[i][d] - xs[0][d]);
                    fs[i] = f(xs[i]);
                }
            }
        }
    }
    order();
    res.x = xs[0];
    res.value = fs[0];
    return res;
}

// Shared grid-scan + multistart refinement over the K-cube [0,pi]^K.
QuantumBoundResult solve_over_angles(
    std::size_t parties, const std::function<double(const std::vector<double>&)>& objective,
    const SolverOptions& opts) {
    const std::size_t k = parties;
    // Grid resolution per dimension: the configured density for K=2, thinned
    // for higher K to keep the scan tractable.
    int per_dim = opts.grid;
    if (k == 3) per_dim = std::min(opts.grid, 17);
    if (k == 4) per_dim = std::min(opts.grid, 9);
    if (k >= 5) per_dim = std::min(opts.grid, 7);
    per_dim = std::max(per_dim, 2);

    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= static_cast<std::size_t>(per_dim);

    std::vector<std::pair<double, std::size_t>> scored(total);
    std::vector<double> angles(k);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (std::size_t d = 0; d < k; ++d) {
            angles[d] = kPi * double(rem % per_dim) / double(per_dim - 1);
            rem /= static_cast<std::size_t>(per_dim);
        }
        scored[idx] = {objective(angles), idx};
    }
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    const double cell = kPi / double(per_dim - 1);
    const int starts = std::max(1, opts.multistart);

    QuantumBoundResult best;
    best.bound = -std::numeric_limits<double>::infinity();
    bool any_converged = false;
    int launched = 0;
    for (const auto& [val, idx] : scored) {
        if (launched >= starts) break;
        ++launched;
        std::size_t rem = idx;
        std::vector<double> start(k);
        for (std::size_t d = 0; d < k; ++d) {
            start[d] = kPi * double(rem % per_dim) / double(per_dim - 1);
            rem /= static_cast<std::size_t>(per_dim);
        }
        NelderMeadResult nm =
            nelder_mead(objective, start, cell, opts.angle_tol, opts.max_iterations);
        best.iterations += nm.iterations;
        any_converged = any_converged || nm.converged;
        if (nm.value > best.bound) {
            best.bound = nm.value;
            best.argmax = nm.x;
        }
    }
    if (!any_converged)
        throw std::runtime_error("quantum bound refinement failed to converge");

    // The eigenvalue objective is pi-periodic per angle (a sigma_z conjugation
    // absorbs the shift), so fold the argmax back into [0, pi].
    for (auto& a : best.argmax) {
        a = std::fmod(a, kPi);
        if (a < 0.0) a += kPi;
    }
    return best;
}

}  // namespace

OperatorMatrix build_operator(const CoefficientVector& c, MeasurementAngles angles) {
    return build_operator4(c, angles.thetaA, angles.thetaB);
}

QuarticCoefficients charpoly_from_matrix(const OperatorMatrix& z) {
    if (z.rows() != 4 || z.cols() != 4)
        throw std::invalid_argument("charpoly_from_matrix: expected a 4x4 matrix");
    if ((z - z.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("charpoly_from_matrix: matrix is not Hermitian");

    const OperatorMatrix z2 = z * z;
    const double p1 = z.trace().real();
    const double p2 = z2.trace().real();
    const double p3 = (z2 * z).trace().real();
    const double p4 = (z2 * z2).trace().real();

    const double e1 = p1;
    const double e2 = (e1 * p1 - p2) / 2.0;
    const double e3 = (e2 * p1 - e1 * p2 + p3) / 3.0;
    const double e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4.0;

    const double scale = std::max(1.0, z.cwiseAbs().maxCoeff());
    if (std::abs(e1) > 1e-10 * scale)
        throw std::invalid_argument(
            "charpoly_from_matrix: nonvanishing m^3 coefficient (input not traceless)");

    QuarticCoefficients q;
    q.mu2 = e2;
    q.mu3 = -e3;
    q.mu4 = e4;
    return q;
}

QuarticCoefficients mu_from_formula(const CoefficientVector& c,
                                    std::complex<double> u,
                                    std::complex<double> v) {
    if (std::abs(std::abs(u) - 1.0) > 1e-12 || std::abs(std::abs(v) - 1.0) > 1e-12)
        throw std::invalid_argument("mu_from_formula: u and v must have unit modulus");
    const auto ub = std::conj(u);
    const auto vb = std::conj(v);

    QuarticCoefficients q;
    q.u = u;
    q.v = v;
    q.e = u * v * c[4] + v * ub * c[5] + u * vb * c[6] + ub * vb * c[7];
    q.f = u * vb * c[4] + ub * vb * c[5] + u * v * c[6] + v * ub * c[7];
    q.g = u * c[0] + ub * c[1];
    q.h = v * c[2] + vb * c[3];

    const double e2 = std::norm(q.e), f2 = std::norm(q.f);
    const double g2 = std::norm(q.g), h2 = std::norm(q.h);
    q.mu2 = -(e2 + f2) - 2.0 * (g2 + h2);
    // Sign fixed so the quartic is det(mI - Z) and its largest root is the top
    // eigenvalue; the opposite sign would describe the negated spectrum and
    // break the derivative certificate.
    q.mu3 = -4.0 * std::real(q.f * q.h * std::conj(q.g) + q.e * std::conj(q.h) * std::conj(q.g));
    q.mu4 = e2 * f2 + sqr(g2 - h2) -
            2.0 * std::real(q.f * std::conj(q.e) * q.h * q.h +
                            q.e * q.f * std::conj(q.g) * std::conj(q.g));
    return q;
}

double max_eigenvalue(const OperatorMatrix& z) {
    if (z.rows() == 4) {
        Eigen::SelfAdjointEigenSolver<Matrix4cd> es(Matrix4cd(z), Eigen::EigenvaluesOnly);
        return es.eigenvalues().maxCoeff();
    }
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(z, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

QuantumBoundResult quantum_bound(const CoefficientVector& c, const SolverOptions& opts) {
    auto objective = [&c](const std::vector<double>& angles) {
        Eigen::SelfAdjointEigenSolver<Matrix4cd> es(build_operator4(c, angles[0], angles[1]),
                                                    Eigen::EigenvaluesOnly);
        return es.eigenvalues().maxCoeff();
    };
    QuantumBoundResult res = solve_over_angles(2, objective, opts);
    res.certificate_margin =
        certificate_check(c, res.bound + 1e-6, opts.certificate_grid);
    return res;
}

double certificate_check(const CoefficientVector& c, double m, int grid) {
    if (m < 0.0) throw std::invalid_argument("certificate_check: m must be >= 0");
    if (grid < 2) throw std::invalid_argument("certificate_check: grid must be >= 2");
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double ta = kPi * double(i) / double(grid - 1);
        const std::complex<double> u(std::cos(ta), std::sin(ta));
        for (int j = 0; j < grid; ++j) {
            const double tb = kPi * double(j) / double(grid - 1);
            const std::complex<double> v(std::cos(tb), std::sin(tb));
            const QuarticCoefficients q = mu_from_formula(c, u, v);
            const double d0 = sqr(sqr(m)) + q.mu2 * sqr(m) + q.mu3 * m + q.mu4;
            const double d1 = 4.0 * m * sqr(m) + 2.0 * q.mu2 * m + q.mu3;
            const double d2 = 6.0 * sqr(m) + q.mu2;
            worst = std::min({worst, d0, d1, d2, m});
        }
    }
    return worst;
}

OperatorMatrix build_operator_multiparty(int parties,
                                         const std::vector<MultipartyTerm>& terms,
                                         const std::vector<double>& angles) {
    if (parties < 2) throw std::invalid_argument("build_operator_multiparty: parties >= 2");
    if (angles.size() != static_cast<std::size_t>(parties))
        throw std::invalid_argument("build_operator_multiparty: one angle per party");
    const Eigen::Index dim = Eigen::Index(1) << parties;
    OperatorMatrix z = OperatorMatrix::Zero(dim, dim);
    for (const auto& term : terms) {
        if (term.word.apparatus.size() != static_cast<std::size_t>(parties))
            throw std::invalid_argument("build_operator_multiparty: word length mismatch");
        OperatorMatrix acc = OperatorMatrix::Identity(1, 1);
        for (int p = 0; p < parties; ++p) {
            const int app = term.word.apparatus[static_cast<std::size_t>(p)];
            OperatorMatrix factor;
            if (app < 0)
                factor = Matrix2cd::Identity();
            else if (app <= 1)
                factor = measurement(angles[static_cast<std::size_t>(p)], app);
            else
                throw std::invalid_argument("build_operator_multiparty: apparatus must be -1, 0, or 1");
            acc = kron_dyn(acc, factor);
        }
        z += term.weight * acc;
    }
    return z;
}

QuantumBoundResult quantum_bound_multiparty(int parties,
                                            const std::vector<MultipartyTerm>& terms,
                                            const SolverOptions& opts) {
    if (parties < 2) throw std::invalid_argument("quantum_bound_multiparty: parties >= 2");
    if (parties > 6)
        throw std::invalid_argument("quantum_bound_multiparty: parties > 6 not supported");
    auto objective = [parties, &terms](const std::vector<double>& angles) {
        return max_eigenvalue(build_operator_multiparty(parties, terms, angles));
    };
    return solve_over_angles(static_cast<std::size_t>(parties), objective, opts);
}

}  // namespace bell
