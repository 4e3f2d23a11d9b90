#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupest/core.hpp"

namespace groupest {

/// Cyclic group Z_M: one-dimensional irreps labeled by the residue k, with
/// character e^{i k phi} at the group point phi = 2*pi*t/M. The class
/// "quadrature" is the exact finite average over the M group elements.
struct Cyclic {
    int modulus = 1;

    explicit Cyclic(int m) : modulus(m) {
        if (m < 1) throw std::domain_error("Cyclic: modulus >= 1 required");
    }

    struct Label {
        int k = 0;
        auto operator<=>(const Label&) const = default;
    };

    Label trivial() const { return Label{0}; }

    int dim(Label l) const {
        check(l);
        return 1;
    }

    Label conjugate(Label l) const {
        check(l);
        return Label{l.k == 0 ? 0 : modulus - l.k};
    }

    std::complex<double> character(Label l, ClassPoint x) const {
        check(l);
        return std::polar(1.0, l.k * x.angle);
    }

    int cg_multiplicity(Label a, Label b, Label c) const {
        check(a);
        check(b);
        check(c);
        return ((a.k + b.k) % modulus == c.k) ? 1 : 0;
    }

    /// Exact rule: the M group points with weight 1/M each. The node-count
    /// hint is ignored; the finite sum is already exact.
    ClassRule class_rule(int) const {
        ClassRule rule;
        rule.nodes.reserve(modulus);
        rule.weights.assign(modulus, 1.0 / modulus);
        for (int t = 0; t < modulus; ++t) rule.nodes.push_back(class_point(t));
        return rule;
    }

    /// Group point t (any integer; reduced mod M) as a class angle.
    ClassPoint class_point(int t) const {
        const int r = ((t % modulus) + modulus) % modulus;
        return ClassPoint{2.0 * std::numbers::pi * r / modulus};
    }

    std::vector<Label> labels_up_to(Label max) const {
        check(max);
        std::vector<Label> out;
        out.reserve(max.k + 1);
        for (int k = 0; k <= max.k; ++k) out.push_back(Label{k});
        return out;
    }

    std::string label_name(Label l) const { return std::to_string(l.k); }

private:
    void check(Label l) const {
        if (l.k < 0 || l.k >= modulus)
            throw std::domain_error("Cyclic: label out of range [0, M)");
    }
};

}  // namespace groupest
