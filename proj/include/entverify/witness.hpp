#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "entverify/measure.hpp"
#include "entverify/qcore.hpp"

namespace entverify {

// ---------------------------------------------------------------------------
// Real coordinates on the Hermitian matrices
// ---------------------------------------------------------------------------
// A D x D Hermitian matrix is treated as a vector in R^(D^2) through the
// isometry H -> (diag reals, sqrt(2) Re / sqrt(2) Im of the upper triangle),
// which maps the Hilbert-Schmidt inner product tr(AB) to the Euclidean one.

RealVector hermitian_to_coords(const ComplexMatrix& h);
ComplexMatrix coords_to_hermitian(const RealVector& v, Eigen::Index d);

// ---------------------------------------------------------------------------
// Free directions
// ---------------------------------------------------------------------------

/// Nonzero Hermitian direction invisible to a measurement set: tr(O_i H) = 0
/// for every generating observable including the implicitly adjoined identity
/// (so tr(H) = 0). Normalized to unit Hilbert-Schmidt norm.
struct FreeDirection {
    ComplexMatrix h;
    SystemShape shape;
    double hs_norm = 1.0;
};

/// Orthonormal basis of the orthogonal complement of span{I, O_1, ..., O_s}
/// inside the real space of Hermitian matrices. Empty exactly when the set is
/// informationally complete. Rank decisions use column-pivoted QR with
/// tolerance 1e-10 relative to the largest column norm.
std::vector<FreeDirection> free_directions(const std::vector<Observable>& observables,
                                           const SystemShape& shape);

/// Largest r such that rho + r'H stays positive semidefinite for all
/// |r'| <= r, from the extreme eigenvalues of rho^{-1/2} H rho^{-1/2}.
/// Requires rho strictly positive (min eigenvalue > 1e-8). Always at least
/// a / (2 op_norm(H)) where a is the minimum eigenvalue of rho.
double positivity_radius(const DensityMatrix& rho, const FreeDirection& dir);

// ---------------------------------------------------------------------------
// Indistinguishable-pair search
// ---------------------------------------------------------------------------

/// Decidable membership test for a state-space property, used as ground truth
/// by the witness search.
struct PropertyOracle {
    std::string name;
    std::function<bool(const DensityMatrix&)> test;
};

/// Positive partial transpose across party 1 vs the rest.
PropertyOracle ppt_property(double tol = 1e-10);

/// Separability for 2x2 and 2x3 systems, where it coincides with PPT.
PropertyOracle separable_2xn_property(double tol = 1e-10);

struct SearchConfig {
    int num_base = 4;     // random full-rank base states beside the maximally mixed one
    int num_random = 16;  // random unit combinations of the kernel basis
    std::uint64_t seed = 1;
};

/// Two states with identical statistics on every generating observable but
/// opposite property membership; rho satisfies the property, sigma does not.
struct WitnessPair {
    DensityMatrix rho;
    DensityMatrix sigma;
    double max_stat_gap = 0.0;
    std::string property_name;
};

struct SearchAttempt {
    int base_index = 0;
    int direction_index = 0;
    double r_star = 0.0;
    bool base_property = false;
};

struct SearchReport {
    int kernel_dim = 0;
    int bases_tried = 0;
    int directions_tried = 0;
    std::vector<SearchAttempt> attempts;
};

/// pair is empty when the search slice found no property flip (NotFound);
/// the report then carries the exhausted attempts for diagnostics. A miss is
/// not a disproof of existence.
struct WitnessSearchResult {
    std::optional<WitnessPair> pair;
    SearchReport report;
};

/// Search for an indistinguishable pair under an informationally incomplete
/// observable set (count < ic_budget, else ICError). Base points are the
/// maximally mixed state plus cfg.num_base random full-rank states; for each
/// base and each free direction (kernel basis plus cfg.num_random random unit
/// combinations), r' runs over a geometric grid of 24 points per sign from
/// the positivity radius down to radius * 2^-23. Deterministic in cfg.seed.
WitnessSearchResult indistinguishable_pair(const std::vector<Observable>& observables,
                                           const SystemShape& shape,
                                           const PropertyOracle& property,
                                           const SearchConfig& cfg = {});

} // namespace entverify
