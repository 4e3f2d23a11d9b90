#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "groupest/bayes.hpp"
#include "groupest/core.hpp"
#include "groupest/cost.hpp"
#include "groupest/cyclic.hpp"
#include "groupest/su2.hpp"

namespace groupest {

/// One finite-size protocol run against its asymptotic cost law:
/// ratio = finite-N minimum cost / asymptote, approaching 1 as N grows.
template <class Label>
struct ProtocolReport {
    int n = 0;
    EstimationResult<Label> result;
    double asymptote = 0.0;
    double ratio = 0.0;
};

struct RefframeOptions {
    bool include_top = false;  // keep the j = N/2 sector despite m < d there
    int quad_nodes = 1024;
};

/// Reference-frame alignment with N spin-1/2 carriers: optimize the
/// transmission error 6 - 2 chi^1 over the tensor-power irrep set (top spin
/// dropped by default) and compare with the 8 pi^2 / N^2 law.
inline ProtocolReport<Su2::Label> refframe_protocol(int n_spins,
                                                    RefframeOptions opts = {}) {
    if (n_spins < 2) throw std::domain_error("refframe_protocol: N >= 2 required");
    const Su2 g;
    const auto s = su2::irrep_set_for_tensor_power(n_spins, opts.include_top);
    ProtocolReport<Su2::Label> report;
    report.n = n_spins;
    report.result = optimize_coefficients(g, refframe_cost(), s, opts.quad_nodes);
    report.asymptote = 8.0 * std::numbers::pi * std::numbers::pi / (double(n_spins) * n_spins);
    report.ratio = report.result.min_cost / report.asymptote;
    return report;
}

/// Block weights of N copies of a two-qubit maximally entangled state:
/// c_j = sqrt(d_j m_j / 2^N) over the full tensor-power set. These are fixed
/// by the input, not optimized.
inline CoefficientVector<Su2::Label> maxent_coefficients(int n_copies) {
    if (n_copies < 1) throw std::domain_error("maxent_coefficients: N >= 1 required");
    auto s = su2::irrep_set_for_tensor_power(n_copies, true);
    Eigen::VectorXd v(static_cast<Eigen::Index>(s.size()));
    const double log_dim = n_copies * std::log(2.0);
    for (std::size_t i = 0; i < s.size(); ++i)
        v[static_cast<Eigen::Index>(i)] =
            std::exp(0.5 * (std::log(double(s.dims[i])) + std::log(s.mults[i]) - log_dim));
    v /= v.norm();  // unit by the dimension identity; rescale roundoff away
    return CoefficientVector<Su2::Label>{std::move(s), std::move(v)};
}

/// Estimation of an unknown two-qubit maximally entangled state from N
/// copies. The reported cost is the optimal-measurement average for the
/// fixed input weights; fidelity = 1 - cost, approaching 1 - 3/(4N).
///
/// Diagnostics carry the tridiagonal closed form (1 - sum c_j c_{j+1})/2 and
/// the trivial-sector correction c_0^2/4 that separates it from the true
/// quadratic form whenever j = 0 occurs: spin 1 has multiplicity zero in
/// 0 (x) 0, so the matrix diagonal vanishes there and the closed form
/// undercounts the cost for even N.
inline ProtocolReport<Su2::Label> maxent_estimation(int n_copies, int quad_nodes = 1024) {
    const Su2 g;
    const auto spec = maxent_fidelity_cost();
    auto v = maxent_coefficients(n_copies);
    const auto c = cost_matrix(g, spec, v.set);

    EstimationResult<Su2::Label> result;
    result.matrix_cost = average_cost(spec, c, v);
    result.quadrature_cost = average_cost_quadrature(g, spec, v, quad_nodes);
    result.min_cost = result.matrix_cost;
    result.fidelity = 1.0 - result.min_cost;

    double closed = 0.0;
    for (std::size_t i = 0; i + 1 < v.set.size(); ++i)
        closed += v.values[static_cast<Eigen::Index>(i)] *
                  v.values[static_cast<Eigen::Index>(i + 1)];
    closed = 0.5 * (1.0 - closed);
    const bool has_trivial = v.set.labels.front() == g.trivial();
    const double correction = has_trivial ? 0.25 * v.values[0] * v.values[0] : 0.0;
    if (std::abs(closed + correction - result.matrix_cost) > 1e-12)
        throw std::runtime_error(
            "maxent_estimation: closed form and matrix route disagree beyond roundoff");
    result.diagnostics["closed_form_cost"] = closed;
    result.diagnostics["trivial_block_correction"] = correction;
    result.diagnostics["oracle_gap"] = std::abs(result.matrix_cost - result.quadrature_cost);

    result.coefficients = std::move(v);
    ProtocolReport<Su2::Label> report;
    report.n = n_copies;
    report.result = std::move(result);
    report.asymptote = 3.0 / (4.0 * n_copies);
    report.ratio = report.result.min_cost / report.asymptote;
    return report;
}

/// Both sides of the N-copy overlap identity at class point x:
/// cos^N(theta/2) and sum_j (c_j^2 / d_j) chi^j(theta). Equal pointwise.
inline std::pair<double, double> maxent_overlap_identity(int n_copies, ClassPoint x) {
    const Su2 g;
    const auto v = maxent_coefficients(n_copies);
    const double lhs = std::pow(std::cos(0.5 * x.angle), n_copies);
    double rhs = 0.0;
    for (std::size_t i = 0; i < v.set.size(); ++i) {
        const double c = v.values[static_cast<Eigen::Index>(i)];
        rhs += c * c / v.set.dims[i] * g.character(v.set.labels[i], x);
    }
    return {lhs, rhs};
}

/// Abelian special case: optimize the phase cost 1 - cos(delta) on Z_M over
/// a window of n consecutive labels. The asymptote field carries the exact
/// closed form 1 - cos(pi/(n+1)) (ground state of the tridiagonal window).
inline ProtocolReport<Cyclic::Label> phase_protocol(int modulus, int n_labels,
                                                    int quad_nodes = 1024) {
    if (n_labels < 1) throw std::domain_error("phase_protocol: n_labels >= 1 required");
    if (modulus <= n_labels + 1)
        throw std::domain_error("phase_protocol: M > n_labels + 1 required (label window "
                                "must not wrap)");
    const Cyclic g(modulus);
    std::vector<Cyclic::Label> labels;
    labels.reserve(n_labels);
    for (int k = 0; k < n_labels; ++k) labels.push_back(Cyclic::Label{k});
    const auto s = make_irrep_set(g, std::move(labels));

    ProtocolReport<Cyclic::Label> report;
    report.n = n_labels;
    report.result = optimize_coefficients(g, holevo_phase_cost(modulus), s, quad_nodes);
    report.asymptote = 1.0 - std::cos(std::numbers::pi / (n_labels + 1.0));
    report.ratio = report.result.min_cost / report.asymptote;
    return report;
}

}  // namespace groupest
