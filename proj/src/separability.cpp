#include "entverify/separability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "entverify/rng.hpp"

namespace entverify {

namespace {

/// Amplitudes reshaped across a bipartition: row index runs over the left
/// parties (ascending), column index over the right parties.
ComplexMatrix bipartition_matrix(const PureState& psi, const Bipartition& bip) {
    const SystemShape& shape = psi.shape();
    const SystemShape left_shape = restrict_shape(shape, bip.left);
    const SystemShape right_shape = restrict_shape(shape, bip.right);

    ComplexMatrix m(left_shape.total_dim(), right_shape.total_dim());
    const int n = shape.parties();
    std::vector<int> full(static_cast<std::size_t>(n));
    for (std::int64_t a = 0; a < left_shape.total_dim(); ++a) {
        const std::vector<int> da = index_digits(left_shape, a);
        for (std::int64_t b = 0; b < right_shape.total_dim(); ++b) {
            const std::vector<int> db = index_digits(right_shape, b);
            for (std::size_t i = 0; i < bip.left.size(); ++i) {
                full[static_cast<std::size_t>(bip.left[i] - 1)] = da[i];
            }
            for (std::size_t i = 0; i < bip.right.size(); ++i) {
                full[static_cast<std::size_t>(bip.right[i] - 1)] = db[i];
            }
            m(a, b) = psi.amplitudes()[digits_index(shape, full)];
        }
    }
    return m;
}

/// Product vector with the given per-party factors.
ComplexVector product_vector(const std::vector<ComplexVector>& factors) {
    ComplexVector amps = ComplexVector::Ones(1);
    for (const ComplexVector& f : factors) {
        ComplexVector next(amps.size() * f.size());
        for (Eigen::Index i = 0; i < amps.size(); ++i) {
            next.segment(i * f.size(), f.size()) = amps[i] * f;
        }
        amps = std::move(next);
    }
    return amps;
}

} // namespace

Bipartition Bipartition::of(std::vector<int> left, int n) {
    if (n < 2) {
        throw BadPartySet("Bipartition: need at least 2 parties");
    }
    if (left.empty()) {
        throw BadPartySet("Bipartition: left group is empty");
    }
    std::sort(left.begin(), left.end());
    for (std::size_t i = 0; i < left.size(); ++i) {
        if (left[i] < 1 || left[i] > n) {
            throw BadPartySet("Bipartition: party index out of range");
        }
        if (i > 0 && left[i] == left[i - 1]) {
            throw BadPartySet("Bipartition: duplicate party index");
        }
    }
    Bipartition bip;
    bip.left = std::move(left);
    for (int k = 1; k <= n; ++k) {
        if (!std::binary_search(bip.left.begin(), bip.left.end(), k)) {
            bip.right.push_back(k);
        }
    }
    if (bip.right.empty()) {
        throw BadPartySet("Bipartition: right group is empty");
    }
    return bip;
}

std::pair<bool, double> is_ppt(const DensityMatrix& rho, const Bipartition& bip, double tol) {
    if (static_cast<int>(bip.left.size() + bip.right.size()) != rho.shape().parties()) {
        throw BadPartySet("is_ppt: bipartition does not cover the state's parties");
    }
    const ComplexMatrix pt = partial_transpose(rho, bip.left);
    const EigenDecomposition eig = hermitian_eig(pt);
    const double min_eig = eig.eigenvalues[0];
    return {min_eig >= -tol, min_eig};
}

bool pt_invariant(const DensityMatrix& rho, int party, double tol) {
    const ComplexMatrix pt = partial_transpose(rho, {party});
    return hs_norm(ComplexMatrix(pt - rho.matrix())) <= tol;
}

int schmidt_rank(const PureState& psi, const Bipartition& bip, double tol) {
    if (static_cast<int>(bip.left.size() + bip.right.size()) != psi.shape().parties()) {
        throw BadPartySet("schmidt_rank: bipartition does not cover the state's parties");
    }
    const ComplexMatrix m = bipartition_matrix(psi, bip);
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const RealVector sv = svd.singularValues();
    const double cutoff = tol * sv[0];
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > cutoff) {
            ++rank;
        }
    }
    return rank;
}

bool pure_is_product(const PureState& psi, double tol) {
    const DensityMatrix rho = psi.to_density();
    for (int k = 1; k <= psi.shape().parties(); ++k) {
        const DensityMatrix red = partial_trace(rho, {k});
        const double purity = (red.matrix() * red.matrix()).trace().real();
        if (purity < 1.0 - tol) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Seesaw
// ---------------------------------------------------------------------------

SeesawResult max_product_overlap(const ComplexMatrix& p, const SystemShape& shape,
                                 const SeesawConfig& cfg) {
    const Eigen::Index d = shape.total_dim();
    if (p.rows() != d || p.cols() != d) {
        throw ShapeMismatch("max_product_overlap: projector does not match shape");
    }
    if (!is_hermitian(p, 1e-10) || hs_norm(ComplexMatrix(p * p - p)) > 1e-10) {
        throw NotProjector("max_product_overlap: operator is not an orthogonal projector");
    }

    const int n = shape.parties();

    SeesawResult best;
    best.best_overlap = -1.0;
    best.restarts = cfg.restarts;

    for (int restart = 0; restart < cfg.restarts; ++restart) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(restart)));
        std::vector<ComplexVector> factors;
        factors.reserve(static_cast<std::size_t>(n));
        for (int k = 1; k <= n; ++k) {
            ComplexVector f(shape.dim(k));
            for (Eigen::Index i = 0; i < f.size(); ++i) {
                f[i] = rng.complex_gaussian();
            }
            f /= f.norm();
            factors.push_back(std::move(f));
        }

        ComplexVector full = product_vector(factors);
        double overlap = (full.dot(p * full)).real();
        bool converged = false;
        int sweeps = 0;

        while (sweeps < cfg.max_iters) {
            const double before = overlap;
            for (int k = 1; k <= n; ++k) {
                const int dk = shape.dim(k);
                // Columns of B are the product vectors with party k replaced
                // by each basis vector; M = B^dag P B is the environment seen
                // by party k.
                ComplexMatrix b = ComplexMatrix::Zero(d, dk);
                for (std::int64_t g = 0; g < d; ++g) {
                    const std::vector<int> digits = index_digits(shape, g);
                    cx amp = 1.0;
                    for (int m = 1; m <= n; ++m) {
                        if (m != k) {
                            amp *= factors[static_cast<std::size_t>(m - 1)]
                                          [digits[static_cast<std::size_t>(m - 1)]];
                        }
                    }
                    b(g, digits[static_cast<std::size_t>(k - 1)]) = amp;
                }
                ComplexMatrix env = b.adjoint() * p * b;
                env = (env + env.adjoint()) / 2.0;
                const EigenDecomposition eig = hermitian_eig(env);
                const double top = eig.eigenvalues[dk - 1];
                if (top + 1e-12 < overlap) {
                    throw Error("max_product_overlap: overlap decreased within a sweep");
                }
                overlap = top;
                factors[static_cast<std::size_t>(k - 1)] = eig.eigenvectors.col(dk - 1);
            }
            ++sweeps;
            if (overlap - before < cfg.tol_gain) {
                converged = true;
                break;
            }
        }

        best.iterations_per_restart.push_back(sweeps);
        best.converged.push_back(converged);
        if (overlap > best.best_overlap) {
            best.best_overlap = overlap;
            best.best_product = factors;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Entanglement depth
// ---------------------------------------------------------------------------

namespace {

void factorize_block(const PureState& block_state, const std::vector<int>& labels,
                     double tol, std::vector<std::vector<int>>& blocks) {
    const int m = static_cast<int>(labels.size());
    if (m == 1) {
        blocks.push_back(labels);
        return;
    }

    // Bipartitions with local party 1 pinned to the left group, enumerated in
    // ascending bitmask order over the remaining parties; the complement must
    // stay nonempty.
    const unsigned full_mask = (1u << (m - 1)) - 1u;
    for (unsigned mask = 0; mask < full_mask; ++mask) {
        std::vector<int> left_local{1};
        std::vector<int> right_local;
        for (int i = 0; i < m - 1; ++i) {
            if (mask & (1u << i)) {
                left_local.push_back(i + 2);
            } else {
                right_local.push_back(i + 2);
            }
        }
        const Bipartition bip = Bipartition::of(left_local, m);
        if (schmidt_rank(block_state, bip, tol) != 1) {
            continue;
        }

        // Rank-1 cut: peel the two factors off the top singular triple.
        const ComplexMatrix mat = bipartition_matrix(block_state, bip);
        Eigen::JacobiSVD<ComplexMatrix> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
        ComplexVector left_amps = svd.matrixU().col(0);
        ComplexVector right_amps = svd.matrixV().col(0).conjugate();
        left_amps /= left_amps.norm();
        right_amps /= right_amps.norm();

        std::vector<int> left_labels;
        std::vector<int> right_labels;
        for (int i : left_local) {
            left_labels.push_back(labels[static_cast<std::size_t>(i - 1)]);
        }
        for (int i : right_local) {
            right_labels.push_back(labels[static_cast<std::size_t>(i - 1)]);
        }

        const SystemShape& shape = block_state.shape();
        factorize_block(PureState(restrict_shape(shape, left_local), std::move(left_amps)),
                        left_labels, tol, blocks);
        factorize_block(PureState(restrict_shape(shape, right_local), std::move(right_amps)),
                        right_labels, tol, blocks);
        return;
    }
    blocks.push_back(labels);  // no product cut: genuine block
}

} // namespace

DepthReport pure_entanglement_depth(const PureState& psi, double tol) {
    const int n = psi.shape().parties();
    if (n > 10) {
        throw TooManyParties("pure_entanglement_depth: " + std::to_string(n) +
                             " parties exceeds the combinatorial cap of 10");
    }

    DepthReport report;
    if (n == 1) {
        report.partition = {{1}};
        report.depth = 1;
        return report;
    }

    std::vector<int> labels(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 1);
    factorize_block(psi, labels, tol, report.partition);

    std::sort(report.partition.begin(), report.partition.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return a.front() < b.front();
              });
    for (const std::vector<int>& block : report.partition) {
        report.depth = std::max(report.depth, static_cast<int>(block.size()));
    }
    return report;
}

} // namespace entverify
