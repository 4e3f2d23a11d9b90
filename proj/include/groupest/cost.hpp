#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupest/core.hpp"
#include "groupest/cyclic.hpp"
#include "groupest/su2.hpp"

namespace groupest {

/// Invariant cost function in character form: c = constant + sum_s a_s chi^s*,
/// with the constant carrying the trivial-label term. The generalized Holevo
/// condition (a_s <= 0 for every nontrivial s) is checked by validate_holevo,
/// not enforced on construction.
template <class Label>
struct CostSpec {
    double constant = 0.0;
    std::map<Label, double> coeffs;  // nontrivial labels only
};

template <class Label>
struct HolevoReport {
    std::vector<Label> positive;           // a_s > 0 for nontrivial s
    std::vector<Label> trivial_in_coeffs;  // trivial label stored as a coeff
    std::vector<Label> asymmetric;         // a_s != a_{s*}
    std::vector<Label> invalid;            // label outside the group model
    std::vector<std::string> messages;

    bool ok() const {
        return positive.empty() && trivial_in_coeffs.empty() && asymmetric.empty() &&
               invalid.empty();
    }
};

template <group_model G>
HolevoReport<typename G::Label> validate_holevo(const G& g,
                                                const CostSpec<typename G::Label>& spec) {
    HolevoReport<typename G::Label> report;
    for (const auto& [label, a] : spec.coeffs) {
        try {
            g.dim(label);
        } catch (const std::domain_error&) {
            report.invalid.push_back(label);
            report.messages.push_back("label outside the group model");
            continue;
        }
        if (label == g.trivial()) {
            report.trivial_in_coeffs.push_back(label);
            report.messages.push_back("trivial label " + g.label_name(label) +
                                      " belongs in the constant term");
            continue;
        }
        if (!(a <= 0.0)) {  // also catches NaN
            report.positive.push_back(label);
            report.messages.push_back("coefficient at label " + g.label_name(label) +
                                      " must be <= 0, got " + std::to_string(a));
        }
        const auto conj = g.conjugate(label);
        const auto it = spec.coeffs.find(conj);
        if (it == spec.coeffs.end() || it->second != a) {
            report.asymmetric.push_back(label);
            report.messages.push_back("reality requires a[" + g.label_name(label) +
                                      "] == a[" + g.label_name(conj) + "]");
        }
    }
    return report;
}

/// c(x) = constant + sum_s a_s * conj(chi^s(x)); real by the reality
/// condition (exactly real for SU(2), real at group points for Z_M).
template <group_model G>
double evaluate_cost(const G& g, const CostSpec<typename G::Label>& spec, ClassPoint x) {
    std::complex<double> acc = spec.constant;
    for (const auto& [label, a] : spec.coeffs)
        acc += a * std::conj(std::complex<double>(g.character(label, x)));
    return acc.real();
}

/// Transmission error for reference-frame alignment: e = 6 - 2 chi^1.
inline CostSpec<Su2::Label> refframe_cost() {
    return CostSpec<Su2::Label>{6.0, {{Su2::Label{2}, -2.0}}};
}

/// Infidelity of a two-qubit maximally entangled state: c = (3 - chi^1)/4,
/// i.e. sin^2(theta/2) pointwise.
inline CostSpec<Su2::Label> maxent_fidelity_cost() {
    return CostSpec<Su2::Label>{0.75, {{Su2::Label{2}, -0.25}}};
}

/// Truncated negative delta: c = -sum_{s in S} d_s chi^s, the maximum
/// likelihood cost. The truncation set must cover every label reachable by
/// the Clebsch-Gordan series of the state set for the cost matrix to be
/// faithful to the full delta.
template <group_model G>
CostSpec<typename G::Label> delta_cost(const G& g, const IrrepSet<typename G::Label>& s) {
    CostSpec<typename G::Label> spec;
    spec.constant = -1.0;  // the -d_trivial term
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.labels[i] == g.trivial()) continue;
        spec.coeffs[s.labels[i]] = -static_cast<double>(s.dims[i]);
    }
    return spec;
}

/// Holevo's phase cost c(delta) = 1 - cos(delta) on Z_M, M >= 3.
inline CostSpec<Cyclic::Label> holevo_phase_cost(int modulus) {
    if (modulus < 3) throw std::domain_error("holevo_phase_cost: M >= 3 required");
    return CostSpec<Cyclic::Label>{
        1.0, {{Cyclic::Label{1}, -0.5}, {Cyclic::Label{modulus - 1}, -0.5}}};
}

template <class Label>
struct ExpandResult {
    CostSpec<Label> spec;
    double residual = 0.0;  // L2 error of the truncated expansion against f
};

/// Numerical character expansion of a class function: a_s is the Haar
/// integral of f * chi^s for every label up to max_label. The sign condition
/// is not enforced; callers inspect or validate the result.
template <group_model G>
ExpandResult<typename G::Label> expand_class_function(
    const G& g, const std::function<double(ClassPoint)>& f, typename G::Label max_label,
    int nodes = 1024) {
    const ClassRule rule = g.class_rule(nodes);
    const auto labels = g.labels_up_to(max_label);

    ExpandResult<typename G::Label> out;
    for (const auto& label : labels) {
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * f(rule.nodes[i]) *
                   std::complex<double>(g.character(label, rule.nodes[i]));
        if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
            throw std::runtime_error("expand_class_function: non-finite quadrature value");
        if (label == g.trivial())
            out.spec.constant = acc.real();
        else
            out.spec.coeffs[label] = acc.real();
    }

    double err2 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double diff = f(rule.nodes[i]) - evaluate_cost(g, out.spec, rule.nodes[i]);
        err2 += rule.weights[i] * diff * diff;
    }
    out.residual = std::sqrt(std::max(0.0, err2));
    return out;
}

}  // namespace groupest
