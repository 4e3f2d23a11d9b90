#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace groupest {

/// Gauss-Legendre rule on [-1, 1]. Nodes by Newton iteration on P_n with the
/// Chebyshev-angle initial guess; exact for polynomials of degree 2n-1 and
/// spectrally convergent for the smooth class-function integrands used here.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n) {
        if (n < 1) throw std::domain_error("GaussLegendre: need n >= 1");
        nodes.resize(n);
        weights.resize(n);
        const int half = (n + 1) / 2;
        for (int i = 0; i < half; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                // Legendre recurrence: p = P_n(x), dp = P_n'(x)
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
    }
};

}  // namespace groupest
