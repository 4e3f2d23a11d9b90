#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupest/core.hpp"
#include "groupest/cost.hpp"

namespace groupest {

/// The quadratic form of the minimum-cost problem: C_uv = sum over nontrivial
/// s of a_s times the multiplicity of s in u (x) v*. Real symmetric, and
/// entrywise <= 0 for a validated Holevo cost.
template <class Label>
struct CostMatrix {
    IrrepSet<Label> set;
    Eigen::MatrixXd entries;
};

/// Nonnegative unit vector of block weights |c_u| over an IrrepSet.
template <class Label>
struct CoefficientVector {
    IrrepSet<Label> set;
    Eigen::VectorXd values;
};

template <class Label>
CoefficientVector<Label> make_coefficient_vector(IrrepSet<Label> set, Eigen::VectorXd values) {
    if (static_cast<std::size_t>(values.size()) != set.size())
        throw std::invalid_argument("coefficient vector: size mismatch with IrrepSet");
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (!(values[i] >= -1e-12))
            throw std::domain_error("coefficient vector: negative entry");
        if (values[i] < 0.0) values[i] = 0.0;
    }
    if (std::abs(values.squaredNorm() - 1.0) > 1e-12)
        throw std::domain_error("coefficient vector: not unit norm");
    return CoefficientVector<Label>{std::move(set), std::move(values)};
}

template <class Label>
struct EstimationResult {
    CoefficientVector<Label> coefficients;
    double min_cost = 0.0;
    std::optional<double> fidelity;
    double matrix_cost = 0.0;      // constant + v^T C v
    double quadrature_cost = 0.0;  // independent Haar-integral route
    std::map<std::string, double> diagnostics;
};

template <group_model G>
CostMatrix<typename G::Label> cost_matrix(const G& g, const CostSpec<typename G::Label>& spec,
                                          const IrrepSet<typename G::Label>& s) {
    const auto n = static_cast<Eigen::Index>(s.size());
    std::vector<typename G::Label> conj;
    conj.reserve(s.size());
    for (const auto& l : s.labels) conj.push_back(g.conjugate(l));

    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            double entry = 0.0;
            for (const auto& [sigma, value] : spec.coeffs) {
                if (sigma == g.trivial()) continue;
                entry += value * g.cg_multiplicity(s.labels[a], conj[b], sigma);
            }
            c(a, b) = entry;
        }
    }
    return CostMatrix<typename G::Label>{s, std::move(c)};
}

/// Average cost of the strategy with block weights v: constant + v^T C v.
template <class Label>
double average_cost(const CostSpec<Label>& spec, const CostMatrix<Label>& c,
                    const CoefficientVector<Label>& v) {
    if (!c.set.same_labels(v.set))
        throw std::invalid_argument("average_cost: IrrepSet mismatch between matrix and vector");
    return spec.constant + v.values.dot(c.entries * v.values);
}

/// Outcome density of the optimal covariant measurement at class point x:
/// p(x) = |sum_u v_u chi^u(x)|^2. Depends on the state weights only, never on
/// the cost function.
template <group_model G>
double likelihood_density(const G& g, const CoefficientVector<typename G::Label>& v,
                          ClassPoint x) {
    std::complex<double> amp = 0.0;
    for (std::size_t i = 0; i < v.set.size(); ++i)
        amp += v.values[static_cast<Eigen::Index>(i)] *
               std::complex<double>(g.character(v.set.labels[i], x));
    return std::norm(amp);
}

/// Haar integral of cost(x) * p(x): the independent oracle for the matrix
/// route. Evaluated at n and 2n nodes; failure of the doubling check to meet
/// 1e-9 signals an unresolved integrand.
template <group_model G>
double average_cost_quadrature(const G& g, const CostSpec<typename G::Label>& spec,
                               const CoefficientVector<typename G::Label>& v,
                               int nodes = 1024) {
    const auto integrate = [&](int n) {
        const ClassRule rule = g.class_rule(n);
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * evaluate_cost(g, spec, rule.nodes[i]) *
                   likelihood_density(g, v, rule.nodes[i]);
        return acc;
    };
    const double coarse = integrate(nodes);
    const double fine = integrate(2 * nodes);
    if (std::abs(fine - coarse) > 1e-9 * std::max(1.0, std::abs(fine)))
        throw std::runtime_error("average_cost_quadrature: node-doubling check failed at 1e-9");
    return fine;
}

namespace detail {

/// Sign-canonicalize an eigenvector (largest-magnitude entry positive) and
/// clamp roundoff negatives. Returns nullopt when entries of both signs
/// remain, the Perron-Frobenius failure mode of a reducible matrix.
inline std::optional<Eigen::VectorXd> nonnegative_canonical(Eigen::VectorXd v, double tol) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i] < -tol) return std::nullopt;
        if (v[i] < 0.0) v[i] = 0.0;
    }
    v /= v.norm();
    return v;
}

}  // namespace detail

/// Minimum-eigenpair optimization of the block weights: the optimal state
/// weights are the ground eigenvector of the cost matrix and the optimal
/// cost is constant + lambda_min.
template <group_model G>
EstimationResult<typename G::Label> optimize_coefficients(
    const G& g, const CostSpec<typename G::Label>& spec,
    const IrrepSet<typename G::Label>& s, int quad_nodes = 1024) {
    const auto report = validate_holevo(g, spec);
    if (!report.ok()) {
        std::string msg = "optimize_coefficients: cost spec fails the Holevo condition";
        for (const auto& m : report.messages) msg += "; " + m;
        throw std::invalid_argument(msg);
    }

    auto c = cost_matrix(g, spec, s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c.entries);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("optimize_coefficients: eigensolver failed to converge");

    const double lambda = solver.eigenvalues()(0);
    const double scale = std::max(1.0, std::abs(lambda));
    auto canonical = detail::nonnegative_canonical(solver.eigenvectors().col(0), 1e-9 * scale);
    if (!canonical)
        throw std::runtime_error(
            "optimize_coefficients: reducible cost matrix (mixed-sign ground eigenvector); "
            "split the irrep set into connected components and optimize each");

    EstimationResult<typename G::Label> result;
    result.coefficients = CoefficientVector<typename G::Label>{s, *canonical};
    result.min_cost = spec.constant + lambda;
    result.matrix_cost = average_cost(spec, c, result.coefficients);
    result.quadrature_cost = average_cost_quadrature(g, spec, result.coefficients, quad_nodes);

    result.diagnostics["eigen_residual"] =
        (c.entries * *canonical - lambda * *canonical).cwiseAbs().maxCoeff();
    if (s.size() > 1) {
        const double gap = solver.eigenvalues()(1) - lambda;
        result.diagnostics["spectral_gap"] = gap;
        result.diagnostics["degenerate_minimum"] = (gap <= 1e-10 * scale) ? 1.0 : 0.0;
    }
    result.diagnostics["oracle_gap"] =
        std::abs(result.matrix_cost - result.quadrature_cost);
    return result;
}

/// i.i.d. estimated angles from the measurement outcome density
/// p(theta) * class_weight(theta), via inverse CDF on a trapezoid cumulative
/// table. Deterministic for a fixed seed.
inline std::vector<ClassPoint> sample_estimate_angle(const Su2& g,
                                                     const CoefficientVector<Su2::Label>& v,
                                                     std::uint64_t seed, int count,
                                                     int table_nodes = 8192) {
    if (count < 1) throw std::domain_error("sample_estimate_angle: count >= 1 required");
    if (table_nodes < 4096) table_nodes = 4096;

    const double two_pi = 2.0 * std::numbers::pi;
    const double h = two_pi / table_nodes;
    std::vector<double> density(table_nodes + 1);
    for (int i = 0; i <= table_nodes; ++i) {
        const ClassPoint x{h * i};
        density[i] = likelihood_density(g, v, x) * g.class_weight(x);
    }
    std::vector<double> cdf(table_nodes + 1, 0.0);
    for (int i = 1; i <= table_nodes; ++i)
        cdf[i] = cdf[i - 1] + 0.5 * h * (density[i - 1] + density[i]);
    const double total = cdf.back();
    if (!(total > 0.0) || !std::isfinite(total))
        throw std::runtime_error("sample_estimate_angle: degenerate outcome density");

    std::mt19937_64 rng(seed);
    std::vector<ClassPoint> samples;
    samples.reserve(count);
    for (int n = 0; n < count; ++n) {
        const double u = total * ((rng() >> 11) * 0x1.0p-53);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto j = std::max<std::ptrdiff_t>(1, it - cdf.begin()) - 1;
        const double span = cdf[j + 1] - cdf[j];
        const double frac = span > 0.0 ? (u - cdf[j]) / span : 0.0;
        samples.push_back(ClassPoint{h * (j + frac)});
    }
    return samples;
}

/// Z_M variant: exact discrete sampling over the M group points.
inline std::vector<ClassPoint> sample_estimate_angle(const Cyclic& g,
                                                     const CoefficientVector<Cyclic::Label>& v,
                                                     std::uint64_t seed, int count) {
    if (count < 1) throw std::domain_error("sample_estimate_angle: count >= 1 required");
    const ClassRule rule = g.class_rule(0);
    std::vector<double> cdf(rule.nodes.size());
    double acc = 0.0;
    for (std::size_t t = 0; t < rule.nodes.size(); ++t) {
        acc += rule.weights[t] * likelihood_density(g, v, rule.nodes[t]);
        cdf[t] = acc;
    }
    std::mt19937_64 rng(seed);
    std::vector<ClassPoint> samples;
    samples.reserve(count);
    for (int n = 0; n < count; ++n) {
        const double u = acc * ((rng() >> 11) * 0x1.0p-53);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto t = std::min<std::size_t>(it - cdf.begin(), rule.nodes.size() - 1);
        samples.push_back(rule.nodes[t]);
    }
    return samples;
}

}  // namespace groupest
