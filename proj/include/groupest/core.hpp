#pragma once

#include <complex>
#include <concepts>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace groupest {

/// Conjugacy-class coordinate: the rotation angle theta in [0, 2*pi] for
/// SU(2), phi = 2*pi*t/M for the cyclic group Z_M.
struct ClassPoint {
    double angle = 0.0;
};

/// Quadrature rule for class functions against the normalized Haar measure:
/// sum_i weights[i] * f(nodes[i]) approximates the Haar integral of f.
/// Weights include the class-measure factor and sum to 1.
struct ClassRule {
    std::vector<ClassPoint> nodes;
    std::vector<double> weights;
};

/// Compile-time contract for a group model: irrep labels with dimensions,
/// conjugation, characters, the Clebsch-Gordan multiplicity of a label in a
/// tensor product, and a class quadrature rule.
template <class G>
concept group_model =
    requires(const G& g, const typename G::Label& a, const typename G::Label& b,
             const typename G::Label& c, ClassPoint x, int n) {
        requires std::totally_ordered<typename G::Label>;
        { g.trivial() } -> std::same_as<typename G::Label>;
        { g.dim(a) } -> std::convertible_to<int>;
        { g.conjugate(a) } -> std::same_as<typename G::Label>;
        { std::complex<double>(g.character(a, x)) };
        { g.cg_multiplicity(a, b, c) } -> std::convertible_to<int>;
        { g.class_rule(n) } -> std::convertible_to<ClassRule>;
        { g.labels_up_to(a) } -> std::convertible_to<std::vector<typename G::Label>>;
        { g.label_name(a) } -> std::convertible_to<std::string>;
    };

/// Ordered set of irrep labels with their dimensions and multiplicities.
/// Indexes every coefficient vector and cost matrix built on it.
///
/// Multiplicities are held as doubles: they are exact integers wherever the
/// exact value fits (see su2::tensor_power_multiplicity), and only the
/// dimension-weighted ratios m_j/2^N enter any computation at large N.
template <class Label>
struct IrrepSet {
    std::vector<Label> labels;  // strictly increasing
    std::vector<int> dims;
    std::vector<double> mults;

    IrrepSet() = default;
    IrrepSet(std::vector<Label> l, std::vector<int> d, std::vector<double> m)
        : labels(std::move(l)), dims(std::move(d)), mults(std::move(m)) {
        if (labels.size() != dims.size() || labels.size() != mults.size())
            throw std::invalid_argument("IrrepSet: labels/dims/mults size mismatch");
        if (labels.empty())
            throw std::invalid_argument("IrrepSet: empty label set");
        for (std::size_t i = 0; i + 1 < labels.size(); ++i)
            if (!(labels[i] < labels[i + 1]))
                throw std::invalid_argument("IrrepSet: labels must be strictly increasing");
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (dims[i] < 1) throw std::invalid_argument("IrrepSet: dimension < 1");
            if (!(mults[i] > 0.0)) throw std::invalid_argument("IrrepSet: multiplicity <= 0");
        }
    }

    std::size_t size() const { return labels.size(); }

    bool contains(const Label& l) const {
        for (const auto& k : labels)
            if (k == l) return true;
        return false;
    }

    std::size_t index_of(const Label& l) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == l) return i;
        throw std::invalid_argument("IrrepSet: label not in set");
    }

    bool same_labels(const IrrepSet& other) const { return labels == other.labels; }
};

/// Build an IrrepSet over explicit labels with unit multiplicities.
template <group_model G>
IrrepSet<typename G::Label> make_irrep_set(const G& g,
                                           std::vector<typename G::Label> labels) {
    std::vector<int> dims;
    std::vector<double> mults;
    dims.reserve(labels.size());
    for (const auto& l : labels) dims.push_back(g.dim(l));
    mults.assign(labels.size(), 1.0);
    return IrrepSet<typename G::Label>(std::move(labels), std::move(dims), std::move(mults));
}

}  // namespace groupest
