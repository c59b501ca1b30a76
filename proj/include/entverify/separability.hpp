#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "entverify/qcore.hpp"

namespace entverify {

/// Split of the parties {1..n} into two nonempty complementary groups.
struct Bipartition {
    std::vector<int> left;
    std::vector<int> right;

    /// Build from the left group; the right group is the complement.
    static Bipartition of(std::vector<int> left, int n);
};

/// PPT test: min eigenvalue of the partial transpose over bip.left, compared
/// against -tol. The eigenvalue is returned for diagnostics. Transposing the
/// right group instead gives the same answer (the two transposes are each
/// other's matrix transpose).
std::pair<bool, double> is_ppt(const DensityMatrix& rho, const Bipartition& bip,
                               double tol = 1e-10);

/// True iff rho equals its partial transpose on `party` within tol in
/// Hilbert-Schmidt norm. For 2 x n systems invariance implies separability
/// across that cut; this function only tests the invariance.
bool pt_invariant(const DensityMatrix& rho, int party, double tol = 1e-12);

/// Rank of the amplitude matrix reshaped across the bipartition: singular
/// values above tol * (largest singular value) are counted. Rank 1 iff the
/// state is product across the cut.
int schmidt_rank(const PureState& psi, const Bipartition& bip, double tol = 1e-8);

/// Brute-force product test: every single-party reduced state has purity
/// tr(psi_k^2) >= 1 - tol. Serves as the independent oracle for the adaptive
/// verification protocol.
bool pure_is_product(const PureState& psi, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Seesaw product-overlap maximization
// ---------------------------------------------------------------------------

struct SeesawConfig {
    int restarts = 64;
    int max_iters = 500;      // sweeps per restart
    double tol_gain = 1e-12;  // convergence threshold on per-sweep overlap gain
    std::uint64_t seed = 1;
};

struct SeesawResult {
    double best_overlap = 0.0;
    std::vector<ComplexVector> best_product;  // one unit vector per party
    int restarts = 0;
    std::vector<int> iterations_per_restart;
    std::vector<bool> converged;
};

/// Maximize <a_1...a_n| P |a_1...a_n> over product states by alternating
/// per-party top-eigenvector updates. P must be a Hermitian projector within
/// 1e-10 (NotProjector otherwise). The overlap is non-decreasing within each
/// restart; restarts are independently seeded from cfg.seed by index.
SeesawResult max_product_overlap(const ComplexMatrix& p, const SystemShape& shape,
                                 const SeesawConfig& cfg = {});

// ---------------------------------------------------------------------------
// Entanglement depth
// ---------------------------------------------------------------------------
// Genuine entanglement is decided here for pure states only (no bipartition
// of Schmidt rank 1). For mixed states the two standard definitions -- convex
// combinations of states product across one fixed bipartition, versus across
// a possibly different bipartition per component -- are inequivalent, and
// neither comes with a decision procedure; both are left unimplemented.

/// Finest product factorization of a pure state: the blocks partition {1..n},
/// each block is internally genuine (no rank-1 bipartition), and depth is the
/// largest block size. Depth 1 iff fully product.
struct DepthReport {
    std::vector<std::vector<int>> partition;
    int depth = 0;
};

/// Recursive factorization over all block bipartitions in deterministic
/// subset order; n <= 10 (TooManyParties beyond). The finest factorization of
/// a pure state is unique, so the split order does not affect the result.
DepthReport pure_entanglement_depth(const PureState& psi, double tol = 1e-8);

} // namespace entverify
