#pragma once

// Shared helpers for the test suites. Everything here is test-only and kept
// independent of the code paths it checks: densities come straight from
// Ginibre draws, overlaps from explicit grids, ranks from Eigen's SVD.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "entverify/qcore.hpp"
#include "entverify/rng.hpp"

namespace testsupport {

using entverify::ComplexMatrix;
using entverify::ComplexVector;
using entverify::cx;
using entverify::SystemShape;

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline ComplexMatrix random_ginibre(Eigen::Index d, std::uint64_t seed) {
    entverify::Rng rng(seed);
    ComplexMatrix g(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            g(r, c) = rng.complex_gaussian();
        }
    }
    return g;
}

inline ComplexMatrix random_hermitian(Eigen::Index d, std::uint64_t seed) {
    const ComplexMatrix g = random_ginibre(d, seed);
    return (g + g.adjoint()) / 2.0;
}

/// Hilbert-Schmidt-measure random density matrix (full rank almost surely).
inline entverify::DensityMatrix random_density(const SystemShape& shape, std::uint64_t seed) {
    ComplexMatrix g = random_ginibre(shape.total_dim(), seed);
    ComplexMatrix w = g * g.adjoint();
    w /= w.trace().real();
    w = (w + w.adjoint()) / 2.0;
    return entverify::DensityMatrix(shape, std::move(w));
}

/// Random unitary via QR of a Ginibre draw.
inline ComplexMatrix random_unitary(Eigen::Index d, std::uint64_t seed) {
    const ComplexMatrix g = random_ginibre(d, seed);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    return q;
}

/// Convex mixture of 2 D^2 random product pure states with Dirichlet-uniform
/// weights: separable by construction, generically full rank.
inline entverify::DensityMatrix random_separable(const SystemShape& shape, std::uint64_t seed) {
    const Eigen::Index d = shape.total_dim();
    const int components = static_cast<int>(2 * d * d);
    entverify::Rng rng(entverify::derive_seed(seed, 0xD1D1));

    std::vector<double> weights(static_cast<std::size_t>(components));
    double total = 0.0;
    for (double& w : weights) {
        double u = 0.0;
        do {
            u = rng.uniform();
        } while (u <= 0.0);
        w = -std::log(u);
        total += w;
    }

    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < components; ++i) {
        const entverify::PureState prod = entverify::random_product(
            shape, entverify::derive_seed(seed, static_cast<std::uint64_t>(i)));
        rho += (weights[static_cast<std::size_t>(i)] / total) * prod.amplitudes() *
               prod.amplitudes().adjoint();
    }
    rho = (rho + rho.adjoint()) / 2.0;
    rho /= rho.trace().real();
    return entverify::DensityMatrix(shape, std::move(rho));
}

/// Exhaustive product-overlap lower bound for qubit systems: every party runs
/// over a (theta, phi) Bloch grid. Independent of the seesaw implementation.
inline double grid_product_overlap(const ComplexMatrix& p, int parties, int theta_steps,
                                   int phi_steps) {
    std::vector<ComplexVector> states;
    for (int a = 0; a <= theta_steps; ++a) {
        const double theta = M_PI * a / theta_steps;
        for (int b = 0; b < phi_steps; ++b) {
            const double phi = 2.0 * M_PI * b / phi_steps;
            ComplexVector v(2);
            v[0] = std::cos(theta / 2.0);
            v[1] = std::polar(std::sin(theta / 2.0), phi);
            states.push_back(std::move(v));
        }
    }

    const std::size_t m = states.size();
    double best = 0.0;
    std::vector<std::size_t> idx(static_cast<std::size_t>(parties), 0);
    while (true) {
        ComplexVector full = ComplexVector::Ones(1);
        for (int k = 0; k < parties; ++k) {
            const ComplexVector& f = states[idx[static_cast<std::size_t>(k)]];
            ComplexVector next(full.size() * 2);
            for (Eigen::Index i = 0; i < full.size(); ++i) {
                next.segment(2 * i, 2) = full[i] * f;
            }
            full = std::move(next);
        }
        best = std::max(best, (full.dot(p * full)).real());

        int k = parties - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == m) {
            idx[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) {
            break;
        }
    }
    return best;
}

} // namespace testsupport
