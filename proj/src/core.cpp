#include "bell/core.hpp"

#include <algorithm>

namespace bell {

double JointProbabilities::min_entry() const {
    double m = p[0][0][0][0];
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) m = std::min(m, p[j][k][a][b]);
    return m;
}

double functional_value(const CoefficientVector& c, const Behavior& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < 8; ++i) s += c[i] * b[i];
    return s;
}

JointProbabilities behavior_to_probabilities(const Behavior& b) {
    JointProbabilities jp;
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            const double ma = b.marginalA(j);
            const double mb = b.marginalB(k);
            const double e = b.correlator(j, k);
            for (int ai = 0; ai < 2; ++ai) {
                for (int bi = 0; bi < 2; ++bi) {
                    const double a = ai == 0 ? 1.0 : -1.0;
                    const double bb = bi == 0 ? 1.0 : -1.0;
                    jp.p[j][k][ai][bi] = (1.0 + a * ma + bb * mb + a * bb * e) / 4.0;
                }
            }
        }
    }
    return jp;
}

Behavior probabilities_to_behavior(const JointProbabilities& jp) {
    Behavior b;
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            double ma = 0.0, mb = 0.0, e = 0.0;
            for (int ai = 0; ai < 2; ++ai) {
                for (int bi = 0; bi < 2; ++bi) {
                    const double a = ai == 0 ? 1.0 : -1.0;
                    const double bb = bi == 0 ? 1.0 : -1.0;
                    const double p = jp.p[j][k][ai][bi];
                    ma += a * p;
                    mb += bb * p;
                    e += a * bb * p;
                }
            }
            // Marginals are recovered from every block; the reconstruction is
            // no-signaling by construction so any block gives the same value.
            b.v[static_cast<std::size_t>(j)] = ma;
            b.v[static_cast<std::size_t>(2 + k)] = mb;
            b.v[static_cast<std::size_t>(4 + j + 2 * k)] = e;
        }
    }
    return b;
}

bool is_nosig(const Behavior& b, double tol) {
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            const double ma = b.marginalA(j);
            const double mb = b.marginalB(k);
            const double e = b.correlator(j, k);
            // min over the four signed entries of (1 +- ma +- mb +- e)/4
            if (1.0 + ma + mb + e < -4.0 * tol) return false;
            if (1.0 + ma - mb - e < -4.0 * tol) return false;
            if (1.0 - ma + mb - e < -4.0 * tol) return false;
            if (1.0 - ma - mb + e < -4.0 * tol) return false;
        }
    }
    return true;
}

}  // namespace bell
