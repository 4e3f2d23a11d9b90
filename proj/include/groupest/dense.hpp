#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "groupest/bayes.hpp"
#include "groupest/core.hpp"
#include "groupest/su2.hpp"

namespace groupest::dense {

/// Collective spin operators on N qubits (bit set = spin up).
struct CollectiveOperators {
    Eigen::MatrixXd j_squared;
    Eigen::MatrixXd j_z;
    Eigen::MatrixXd j_minus;
};

inline CollectiveOperators build_collective_operators(int n_sites) {
    if (n_sites < 1 || n_sites > 12)
        throw std::domain_error("build_collective_operators: N in [1, 12] required");
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    CollectiveOperators ops;
    ops.j_z = Eigen::MatrixXd::Zero(dim, dim);
    ops.j_minus = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const int ups = __builtin_popcountll(static_cast<std::uint64_t>(b));
        ops.j_z(b, b) = ups - 0.5 * n_sites;
        for (int i = 0; i < n_sites; ++i)
            if (b & (Eigen::Index(1) << i)) ops.j_minus(b & ~(Eigen::Index(1) << i), b) += 1.0;
    }
    // J^2 = J- J+ + Jz (Jz + 1)
    ops.j_squared = ops.j_minus * ops.j_minus.transpose() +
                    ops.j_z * (ops.j_z + Eigen::MatrixXd::Identity(dim, dim));
    return ops;
}

/// Explicit Schur blocks of the N-qubit tensor power: for each total spin j
/// and multiplicity slot, the 2j+1 orthonormal columns spanning one
/// irreducible subspace, ordered by magnetic number m = j down to -j.
/// Blocks are listed by descending j, multiplicity index ascending, in
/// highest-weight construction order.
struct SchurBasis {
    struct Block {
        int twice_j = 0;
        int mult_index = 0;
        Eigen::MatrixXd vectors;  // 2^N rows, 2j+1 columns
    };
    int n_sites = 0;
    std::vector<Block> blocks;

    std::vector<const Block*> blocks_with(int twice_j) const {
        std::vector<const Block*> out;
        for (const auto& b : blocks)
            if (b.twice_j == twice_j) out.push_back(&b);
        return out;
    }
};

namespace detail {

inline std::vector<Eigen::Index> sector_states(int n_sites, int ups) {
    std::vector<Eigen::Index> out;
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    for (Eigen::Index b = 0; b < dim; ++b)
        if (__builtin_popcountll(static_cast<std::uint64_t>(b)) == ups) out.push_back(b);
    return out;
}

inline void apply_j_minus(const Eigen::VectorXd& in, Eigen::VectorXd& out, int n_sites) {
    out.setZero();
    for (Eigen::Index b = 0; b < in.size(); ++b) {
        if (in[b] == 0.0) continue;
        for (int i = 0; i < n_sites; ++i)
            if (b & (Eigen::Index(1) << i)) out[b & ~(Eigen::Index(1) << i)] += in[b];
    }
}

}  // namespace detail

/// Highest-weight construction: within each Jz sector the kernel of the
/// raising map gives the spin-j multiplicity slots; lowering generates each
/// block downward. Eigen-decomposition of (J^2, Jz) alone would scramble the
/// multiplicity pairing between m-levels, which the maximally entangled
/// blocks need intact.
inline SchurBasis schur_decompose(int n_sites) {
    if (n_sites < 1 || n_sites > 12)
        throw std::domain_error("schur_decompose: N in [1, 12] required");
    const Eigen::Index dim = Eigen::Index(1) << n_sites;

    SchurBasis basis;
    basis.n_sites = n_sites;
    for (int twice_j = n_sites; twice_j >= n_sites % 2; twice_j -= 2) {
        const int ups = (n_sites + twice_j) / 2;
        const auto sector = detail::sector_states(n_sites, ups);
        const auto n_cols = static_cast<Eigen::Index>(sector.size());

        Eigen::MatrixXd kernel;  // columns: highest-weight vectors in sector coords
        if (ups == n_sites) {
            kernel = Eigen::MatrixXd::Identity(1, 1);
        } else {
            const auto upper = detail::sector_states(n_sites, ups + 1);
            std::vector<Eigen::Index> row_of(static_cast<std::size_t>(dim), -1);
            for (std::size_t r = 0; r < upper.size(); ++r) row_of[upper[r]] = Eigen::Index(r);

            Eigen::MatrixXd raise =
                Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(upper.size()), n_cols);
            for (Eigen::Index c = 0; c < n_cols; ++c) {
                const Eigen::Index b = sector[c];
                for (int i = 0; i < n_sites; ++i)
                    if (!(b & (Eigen::Index(1) << i))) raise(row_of[b | (Eigen::Index(1) << i)], c) += 1.0;
            }
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(raise, Eigen::ComputeFullV);
            const auto& sv = svd.singularValues();
            Eigen::Index rank = 0;
            for (Eigen::Index i = 0; i < sv.size(); ++i) {
                if (sv[i] > 1e-6) {
                    ++rank;
                } else if (sv[i] > 1e-9) {
                    throw std::runtime_error(
                        "schur_decompose: ambiguous singular value, rank determination failed");
                }
            }
            kernel = svd.matrixV().rightCols(n_cols - rank);
        }

        for (Eigen::Index mult = 0; mult < kernel.cols(); ++mult) {
            SchurBasis::Block block;
            block.twice_j = twice_j;
            block.mult_index = static_cast<int>(mult);
            block.vectors = Eigen::MatrixXd::Zero(dim, twice_j + 1);
            for (Eigen::Index c = 0; c < n_cols; ++c)
                block.vectors(sector[c], 0) = kernel(c, mult);
            Eigen::VectorXd next(dim);
            for (int step = 1; step <= twice_j; ++step) {
                detail::apply_j_minus(block.vectors.col(step - 1), next, n_sites);
                const double nrm = next.norm();
                if (nrm < 1e-8)
                    throw std::runtime_error("schur_decompose: lowering chain collapsed early");
                block.vectors.col(step) = next / nrm;
            }
            basis.blocks.push_back(std::move(block));
        }
    }
    return basis;
}

/// SU(2) rotation by `angle` about the unit axis, as a 2x2 matrix:
/// U = cos(angle/2) - i sin(angle/2) (axis . sigma). Its class point is
/// `angle` regardless of axis.
inline Eigen::Matrix2cd axis_angle_unitary(const std::array<double, 3>& axis, double angle) {
    const double nrm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (!(nrm > 0.0)) throw std::domain_error("axis_angle_unitary: zero axis");
    const double x = axis[0] / nrm, y = axis[1] / nrm, z = axis[2] / nrm;
    const std::complex<double> i(0.0, 1.0);
    const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
    Eigen::Matrix2cd u;
    u << c - i * s * z, -i * s * (x - i * y), -i * s * (x + i * y), c + i * s * z;
    return u;
}

/// In-place single-qubit gate on tensor factor `site` (bit position, bit set
/// = spin up = row 0 of the 2x2 matrix).
inline void apply_single_qubit(Eigen::VectorXcd& state, const Eigen::Matrix2cd& u, int site) {
    const Eigen::Index mask = Eigen::Index(1) << site;
    for (Eigen::Index b = 0; b < state.size(); ++b) {
        if (b & mask) continue;
        const std::complex<double> lo = state[b];        // bit clear: spin down
        const std::complex<double> hi = state[b | mask]; // bit set: spin up
        state[b | mask] = u(0, 0) * hi + u(0, 1) * lo;
        state[b] = u(1, 0) * hi + u(1, 1) * lo;
    }
}

/// Born-rule probability of the optimal covariant measurement, from the
/// explicit 2^N-dimensional construction: |<eta| U_g^{(x)N} |Psi>|^2 with
/// Psi = sum_j (v_j/sqrt d_j) sum_n |j, n-th level, n-th slot> and eta the
/// same sum weighted by sqrt d_j. Must match likelihood_density(v, angle).
inline double dense_povm_probability(const SchurBasis& basis,
                                     const CoefficientVector<Su2::Label>& v,
                                     const std::array<double, 3>& axis, double angle) {
    const Eigen::Index dim = Eigen::Index(1) << basis.n_sites;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    Eigen::VectorXcd eta = Eigen::VectorXcd::Zero(dim);
    for (std::size_t i = 0; i < v.set.size(); ++i) {
        const int twice_j = v.set.labels[i].twice_j;
        const int d = twice_j + 1;
        const auto slots = basis.blocks_with(twice_j);
        if (static_cast<int>(slots.size()) < d)
            throw std::domain_error(
                "dense_povm_probability: multiplicity below dimension, the maximally "
                "entangled pairing needs m_j >= d_j");
        const double weight = v.values[static_cast<Eigen::Index>(i)] / std::sqrt(double(d));
        for (int n = 0; n < d; ++n) {
            psi += weight * slots[n]->vectors.col(n);
            eta += std::sqrt(double(d)) * slots[n]->vectors.col(n);
        }
    }
    const Eigen::Matrix2cd u = axis_angle_unitary(axis, angle);
    for (int site = 0; site < basis.n_sites; ++site) apply_single_qubit(psi, u, site);
    return std::norm(eta.dot(psi));
}

inline double dense_povm_probability(int n_sites, const CoefficientVector<Su2::Label>& v,
                                     const std::array<double, 3>& axis, double angle) {
    if (n_sites < 1 || n_sites > 8)
        throw std::domain_error("dense_povm_probability: N in [1, 8] required");
    return dense_povm_probability(schur_decompose(n_sites), v, axis, angle);
}

/// Overlap of N copies of a two-qubit maximally entangled state with its
/// rotated image, built on 2N qubits: equals cos^N(angle/2), axis-free.
inline double dense_maxent_overlap(int n_copies, const std::array<double, 3>& axis,
                                   double angle) {
    if (n_copies < 1 || n_copies > 4)
        throw std::domain_error("dense_maxent_overlap: N in [1, 4] required");
    const int qubits = 2 * n_copies;
    const Eigen::Index dim = Eigen::Index(1) << qubits;
    Eigen::VectorXcd ref = Eigen::VectorXcd::Zero(dim);
    const double amp = std::pow(0.5, 0.5 * n_copies);
    for (Eigen::Index b = 0; b < dim; ++b) {
        bool paired = true;
        for (int i = 0; i < n_copies && paired; ++i)
            paired = ((b >> (2 * i)) & 1) == ((b >> (2 * i + 1)) & 1);
        if (paired) ref[b] = amp;
    }
    Eigen::VectorXcd rotated = ref;
    const Eigen::Matrix2cd u = axis_angle_unitary(axis, angle);
    for (int i = 0; i < n_copies; ++i) apply_single_qubit(rotated, u, 2 * i);
    return ref.dot(rotated).real();
}

}  // namespace groupest::dense
