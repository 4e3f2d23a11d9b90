#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupest/core.hpp"
#include "groupest/quadrature.hpp"

namespace groupest {

/// SU(2): irreps labeled by spin j, stored exactly as twice_j so half-integer
/// spins never touch floating point. Classes are rotation angles theta in
/// [0, 2*pi]; all characters are real and self-conjugate.
struct Su2 {
    struct Label {
        int twice_j = 0;
        auto operator<=>(const Label&) const = default;
    };

    Label trivial() const { return Label{0}; }

    int dim(Label l) const {
        check(l);
        return l.twice_j + 1;
    }

    Label conjugate(Label l) const {
        check(l);
        return l;
    }

    /// chi^j(theta) = sin((2j+1) theta/2) / sin(theta/2). Near theta = 2*pi*k
    /// the ratio loses d^2 * ulp / |sin(theta/2)| digits to the rounding of
    /// the numerator argument, so there the character is evaluated as the
    /// exact Dirichlet sum over magnetic numbers; at theta = 0 and 2*pi this
    /// yields the limits 2j+1 and (-1)^{2j} (2j+1) exactly.
    double character(Label l, ClassPoint x) const {
        check(l);
        const double d = l.twice_j + 1;
        const double half = 0.5 * x.angle;
        const double s = std::sin(half);
        if (std::abs(s) < 5e-3) {
            const double k = std::round(x.angle / (2.0 * std::numbers::pi));
            const double u = x.angle - 2.0 * std::numbers::pi * k;
            const double parity =
                (l.twice_j % 2 != 0 && std::llround(k) % 2 != 0) ? -1.0 : 1.0;
            double sum = (l.twice_j % 2 == 0) ? 1.0 : 0.0;
            if (l.twice_j % 2 == 0) {
                for (int t = 1; t <= l.twice_j / 2; ++t) sum += 2.0 * std::cos(t * u);
            } else {
                for (int t = 0; t <= (l.twice_j - 1) / 2; ++t)
                    sum += 2.0 * std::cos((t + 0.5) * u);
            }
            return parity * sum;
        }
        return std::sin(d * half) / s;
    }

    /// Haar class density: integrating f(theta) * class_weight(theta) over
    /// [0, 2*pi] equals the Haar integral of the class function f.
    double class_weight(ClassPoint x) const {
        const double s = std::sin(0.5 * x.angle);
        return s * s / std::numbers::pi;
    }

    /// Multiplicity of c in the Clebsch-Gordan series of a (x) b: the
    /// triangle rule, 1 iff |ja-jb| <= jc <= ja+jb with ja+jb+jc integral.
    int cg_multiplicity(Label a, Label b, Label c) const {
        check(a);
        check(b);
        check(c);
        if ((a.twice_j + b.twice_j + c.twice_j) % 2 != 0) return 0;
        return (std::abs(a.twice_j - b.twice_j) <= c.twice_j &&
                c.twice_j <= a.twice_j + b.twice_j)
                   ? 1
                   : 0;
    }

    /// Gauss-Legendre nodes on [0, 2*pi] with Haar class weights folded in;
    /// weights sum to 1 up to quadrature error.
    ClassRule class_rule(int n_nodes) const {
        const GaussLegendre gl(n_nodes);
        ClassRule rule;
        rule.nodes.reserve(n_nodes);
        rule.weights.reserve(n_nodes);
        for (int i = 0; i < n_nodes; ++i) {
            const double theta = std::numbers::pi * (gl.nodes[i] + 1.0);
            const double s = std::sin(0.5 * theta);
            rule.nodes.push_back(ClassPoint{theta});
            rule.weights.push_back(gl.weights[i] * s * s);
        }
        return rule;
    }

    std::vector<Label> labels_up_to(Label max) const {
        check(max);
        std::vector<Label> out;
        out.reserve(max.twice_j + 1);
        for (int t = 0; t <= max.twice_j; ++t) out.push_back(Label{t});
        return out;
    }

    std::string label_name(Label l) const {
        if (l.twice_j % 2 == 0) return std::to_string(l.twice_j / 2);
        return std::to_string(l.twice_j) + "/2";
    }

private:
    void check(Label l) const {
        if (l.twice_j < 0)
            throw std::domain_error("Su2: negative spin label");
    }
};

namespace su2 {

/// Multiplicity of spin j in the N-fold tensor power of the fundamental:
/// m_j = (2j+1)/(N/2+j+1) * binom(N, N/2+j), exact integer arithmetic.
/// Valid for N <= 64 (the binomial fits unsigned 128-bit exactly and the
/// result fits 64 bits); larger N use tensor_power_multiplicity_real.
inline std::uint64_t tensor_power_multiplicity(int n_spins, Su2::Label j) {
    if (n_spins < 1) throw std::domain_error("tensor_power_multiplicity: N >= 1 required");
    if (n_spins > 64)
        throw std::domain_error("tensor_power_multiplicity: exact path limited to N <= 64");
    if (j.twice_j < 0 || j.twice_j > n_spins || (n_spins - j.twice_j) % 2 != 0)
        throw std::domain_error("tensor_power_multiplicity: invalid (N, j) pair");
    const int k = (n_spins + j.twice_j) / 2;
    unsigned __int128 binom = 1;
    for (int i = 1; i <= n_spins - k; ++i) {
        binom = binom * static_cast<unsigned>(k + i);
        binom /= static_cast<unsigned>(i);
    }
    unsigned __int128 m = binom * static_cast<unsigned>(j.twice_j + 1);
    m /= static_cast<unsigned>(k + 1);
    if (m > std::numeric_limits<std::uint64_t>::max())
        throw std::overflow_error("tensor_power_multiplicity: result exceeds 64 bits");
    return static_cast<std::uint64_t>(m);
}

/// Same quantity as a double, usable for any N (lgamma beyond the exact range).
inline double tensor_power_multiplicity_real(int n_spins, Su2::Label j) {
    if (n_spins <= 64) return static_cast<double>(tensor_power_multiplicity(n_spins, j));
    if (j.twice_j < 0 || j.twice_j > n_spins || (n_spins - j.twice_j) % 2 != 0)
        throw std::domain_error("tensor_power_multiplicity_real: invalid (N, j) pair");
    const double k = (n_spins + j.twice_j) / 2;
    const double log_binom =
        std::lgamma(n_spins + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n_spins - k + 1.0);
    return std::exp(log_binom + std::log(j.twice_j + 1.0) - std::log(k + 1.0));
}

/// Irrep content of the N-fold tensor power of a qubit: labels j = 0(1/2)
/// through N/2, with dims 2j+1 and the multiplicities above. The top label
/// j = N/2 can be dropped (its multiplicity space is too small for maximal
/// entanglement); sum d_j m_j = 2^N holds iff the top label is kept.
inline IrrepSet<Su2::Label> irrep_set_for_tensor_power(int n_spins, bool include_top) {
    if (n_spins < 1) throw std::domain_error("irrep_set_for_tensor_power: N >= 1 required");
    const int top = include_top ? n_spins : n_spins - 2;
    if (top < 0)
        throw std::domain_error(
            "irrep_set_for_tensor_power: no labels remain with include_top=false at N=1");
    std::vector<Su2::Label> labels;
    std::vector<int> dims;
    std::vector<double> mults;
    for (int t = n_spins % 2; t <= top; t += 2) {
        labels.push_back(Su2::Label{t});
        dims.push_back(t + 1);
        mults.push_back(tensor_power_multiplicity_real(n_spins, Su2::Label{t}));
    }
    return IrrepSet<Su2::Label>(std::move(labels), std::move(dims), std::move(mults));
}

}  // namespace su2
}  // namespace groupest
