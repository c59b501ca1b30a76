#include "entverify/witness.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "entverify/rng.hpp"
#include "entverify/separability.hpp"

namespace entverify {

namespace {

constexpr double kRankTol = 1e-10;
constexpr double kStatGapBound = 1e-9;
constexpr int kGridPoints = 24;

const double kSqrt2 = std::sqrt(2.0);

DensityMatrix random_full_rank_state(const SystemShape& shape, std::uint64_t seed) {
    // Ginibre square mixed half-and-half with the maximally mixed state:
    // full rank with minimum eigenvalue at least 1/(2D), so the positivity
    // radius stays usable.
    Rng rng(seed);
    const Eigen::Index d = shape.total_dim();
    ComplexMatrix g(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            g(r, c) = rng.complex_gaussian();
        }
    }
    ComplexMatrix w = g * g.adjoint();
    w /= w.trace().real();
    ComplexMatrix rho = 0.5 * w + 0.5 * ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    rho = (rho + rho.adjoint()) / 2.0;
    return DensityMatrix(shape, std::move(rho));
}

/// One-sided cone reaches along a Hermitian direction from a strictly
/// positive rho: rho + t*dir stays positive semidefinite for t in
/// [-backward, forward]. From the pencil rho + t dir >= 0 <=> I + t K >= 0
/// with K = rho^{-1/2} dir rho^{-1/2}.
struct LineReach {
    double forward;
    double backward;
};

LineReach pencil_reach(const DensityMatrix& rho, const ComplexMatrix& dir) {
    const EigenDecomposition eig = hermitian_eig(rho.matrix());
    const Eigen::Index d = rho.matrix().rows();
    ComplexMatrix inv_sqrt = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        inv_sqrt += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint() /
                    std::sqrt(eig.eigenvalues[i]);
    }
    ComplexMatrix pencil = inv_sqrt * dir * inv_sqrt;
    pencil = (pencil + pencil.adjoint()) / 2.0;
    const EigenDecomposition pe = hermitian_eig(pencil);
    const double lo = pe.eigenvalues[0];
    const double hi = pe.eigenvalues[d - 1];
    // A nonzero traceless direction always has lo < 0 < hi through a
    // congruence with an indefinite matrix.
    return LineReach{lo < 0.0 ? 1.0 / -lo : std::numeric_limits<double>::infinity(),
                     hi > 0.0 ? 1.0 / hi : std::numeric_limits<double>::infinity()};
}

std::optional<DensityMatrix> state_on_line(const SystemShape& shape, const ComplexMatrix& center,
                                           const ComplexMatrix& delta, double x) {
    ComplexMatrix m = center + x * delta;
    try {
        return DensityMatrix(shape, std::move(m));
    } catch (const InvariantViolation&) {
        return std::nullopt;
    }
}

/// Slide a base along its line through the maximally mixed state until it
/// sits within ~1e-7 of the property boundary, on the center's side. A base
/// that close to the boundary flips under essentially every free direction,
/// which is what makes the search reliable. The property region along any
/// line is scanned on both arms; when the whole admissible line shares one
/// property value the base is returned unchanged.
DensityMatrix refine_base_toward_boundary(const DensityMatrix& raw, const DensityMatrix& center,
                                          const PropertyOracle& property,
                                          const SystemShape& shape) {
    const ComplexMatrix delta = raw.matrix() - center.matrix();
    const double delta_norm = hs_norm(delta);
    if (delta_norm < 1e-10) {
        return raw;
    }
    const bool p_center = property.test(center);
    const bool p_raw = property.test(raw);

    double lo = 0.0;  // property(lo side) == p_center
    double hi = 1.0;  // property(hi side) != p_center once bracketed
    bool bracketed = p_raw != p_center;

    if (!bracketed) {
        // Scan both arms of the line, staying inside the positive cone.
        const LineReach reach = pencil_reach(center, delta);
        for (const double arm : {0.95 * reach.forward, -0.95 * reach.backward}) {
            double prev = 0.0;
            for (int step = 1; step <= 24 && !bracketed; ++step) {
                const double x = arm * step / 24.0;
                const std::optional<DensityMatrix> probe =
                    state_on_line(shape, center.matrix(), delta, x);
                if (!probe) {
                    break;
                }
                if (property.test(*probe) != p_center) {
                    lo = prev;
                    hi = x;
                    bracketed = true;
                } else {
                    prev = x;
                }
            }
            if (bracketed) {
                break;
            }
        }
        if (!bracketed) {
            return raw;  // the whole admissible line shares one property value
        }
    }

    while (std::abs(hi - lo) * delta_norm > 1e-7) {
        const double mid = (lo + hi) / 2.0;
        const std::optional<DensityMatrix> probe = state_on_line(shape, center.matrix(), delta, mid);
        if (!probe) {
            hi = mid;  // numerically outside the cone counts as the far side
            continue;
        }
        if (property.test(*probe) == p_center) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    const std::optional<DensityMatrix> refined = state_on_line(shape, center.matrix(), delta, lo);
    if (!refined) {
        return raw;
    }
    if (hermitian_eig(refined->matrix()).eigenvalues[0] <= 1e-7) {
        return raw;  // too close to the cone boundary for a usable radius
    }
    return *refined;
}

} // namespace

RealVector hermitian_to_coords(const ComplexMatrix& h) {
    const Eigen::Index d = h.rows();
    RealVector v(d * d);
    Eigen::Index pos = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        v[pos++] = h(i, i).real();
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j) {
            v[pos++] = kSqrt2 * h(i, j).real();
            v[pos++] = kSqrt2 * h(i, j).imag();
        }
    }
    return v;
}

ComplexMatrix coords_to_hermitian(const RealVector& v, Eigen::Index d) {
    ComplexMatrix h(d, d);
    Eigen::Index pos = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        h(i, i) = v[pos++];
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j) {
            const double re = v[pos++] / kSqrt2;
            const double im = v[pos++] / kSqrt2;
            h(i, j) = cx(re, im);
            h(j, i) = cx(re, -im);
        }
    }
    return h;
}

std::vector<FreeDirection> free_directions(const std::vector<Observable>& observables,
                                           const SystemShape& shape) {
    const Eigen::Index d = shape.total_dim();
    const Eigen::Index dim2 = d * d;

    Eigen::MatrixXd b(dim2, static_cast<Eigen::Index>(observables.size()) + 1);
    b.col(0) = hermitian_to_coords(ComplexMatrix::Identity(d, d));
    for (std::size_t i = 0; i < observables.size(); ++i) {
        if (!(observables[i].shape == shape)) {
            throw ShapeMismatch("free_directions: observable " + observables[i].label +
                                " does not match the target shape");
        }
        b.col(static_cast<Eigen::Index>(i) + 1) = hermitian_to_coords(observables[i].matrix);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
    qr.setThreshold(kRankTol);
    qr.compute(b);
    const Eigen::Index rank = qr.rank();

    // Trailing columns of the full Q factor are an orthonormal basis of the
    // complement of the observable span.
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim2, dim2);

    std::vector<FreeDirection> dirs;
    dirs.reserve(static_cast<std::size_t>(dim2 - rank));
    for (Eigen::Index c = rank; c < dim2; ++c) {
        ComplexMatrix h = coords_to_hermitian(q.col(c), d);
        const double norm = hs_norm(h);
        h /= norm;
        dirs.push_back(FreeDirection{std::move(h), shape, 1.0});
    }
    return dirs;
}

double positivity_radius(const DensityMatrix& rho, const FreeDirection& dir) {
    const double a = hermitian_eig(rho.matrix()).eigenvalues[0];
    if (a <= 1e-8) {
        throw NotStrictlyPositive("positivity_radius: min eigenvalue " + std::to_string(a) +
                                  " <= 1e-8");
    }
    const LineReach reach = pencil_reach(rho, dir.h);
    return std::min(reach.forward, reach.backward);
}

PropertyOracle ppt_property(double tol) {
    return PropertyOracle{
        "ppt",
        [tol](const DensityMatrix& rho) {
            const Bipartition bip = Bipartition::of({1}, rho.shape().parties());
            return is_ppt(rho, bip, tol).first;
        },
    };
}

PropertyOracle separable_2xn_property(double tol) {
    return PropertyOracle{
        "separable2xN",
        [tol](const DensityMatrix& rho) {
            const SystemShape& shape = rho.shape();
            if (shape.parties() != 2 || shape.dim(1) != 2 || shape.dim(2) > 3) {
                throw BadShape("separable2xN: ground truth only decidable on 2x2 and 2x3");
            }
            const Bipartition bip = Bipartition::of({1}, 2);
            return is_ppt(rho, bip, tol).first;
        },
    };
}

WitnessSearchResult indistinguishable_pair(const std::vector<Observable>& observables,
                                           const SystemShape& shape,
                                           const PropertyOracle& property,
                                           const SearchConfig& cfg) {
    const std::int64_t t = ic_budget(shape);
    const std::int64_t s = static_cast<std::int64_t>(observables.size());
    if (s >= t) {
        throw ICError("indistinguishable_pair: " + std::to_string(s) +
                      " observables reach the informationally complete budget t = " +
                      std::to_string(t) + "; the premise needs s < t");
    }

    const std::vector<FreeDirection> kernel = free_directions(observables, shape);
    std::vector<FreeDirection> dirs = kernel;
    for (int r = 0; r < cfg.num_random; ++r) {
        Rng rng(derive_seed(cfg.seed, 0x52000 + static_cast<std::uint64_t>(r)));
        ComplexMatrix h = ComplexMatrix::Zero(shape.total_dim(), shape.total_dim());
        for (const FreeDirection& dir : kernel) {
            h += rng.gaussian() * dir.h;
        }
        const double norm = hs_norm(h);
        if (norm < 1e-12) {
            continue;
        }
        h /= norm;
        dirs.push_back(FreeDirection{std::move(h), shape, 1.0});
    }

    const DensityMatrix center = maximally_mixed(shape);
    std::vector<DensityMatrix> bases;
    bases.push_back(center);
    for (int i = 0; i < cfg.num_base; ++i) {
        const DensityMatrix raw = random_full_rank_state(
            shape, derive_seed(cfg.seed, 0xB000 + static_cast<std::uint64_t>(i)));
        bases.push_back(refine_base_toward_boundary(raw, center, property, shape));
    }

    WitnessSearchResult result;
    result.report.kernel_dim = static_cast<int>(kernel.size());
    result.report.bases_tried = static_cast<int>(bases.size());
    result.report.directions_tried = static_cast<int>(dirs.size());

    for (std::size_t bi = 0; bi < bases.size(); ++bi) {
        const DensityMatrix& base = bases[bi];
        const bool base_prop = property.test(base);
        for (std::size_t di = 0; di < dirs.size(); ++di) {
            const FreeDirection& dir = dirs[di];
            // Each sign gets its own cone reach: the crossing of the property
            // boundary may sit beyond the symmetric radius on one side.
            const LineReach reach = pencil_reach(base, dir.h);
            const double r_star = std::min(reach.forward, reach.backward);
            result.report.attempts.push_back(
                SearchAttempt{static_cast<int>(bi), static_cast<int>(di), r_star, base_prop});

            for (const double arm : {reach.forward, -reach.backward}) {
                for (int step = 0; step < kGridPoints; ++step) {
                    const double rp = std::ldexp(arm, -step);
                    ComplexMatrix candidate_mat = base.matrix() + rp * dir.h;
                    std::optional<DensityMatrix> candidate;
                    try {
                        candidate.emplace(shape, std::move(candidate_mat));
                    } catch (const InvariantViolation&) {
                        continue;  // round-off pushed the boundary point outside
                    }
                    if (property.test(*candidate) == base_prop) {
                        continue;
                    }
                    const DensityMatrix& with = base_prop ? base : *candidate;
                    const DensityMatrix& without = base_prop ? *candidate : base;
                    double gap = 0.0;
                    const ComplexMatrix diff = with.matrix() - without.matrix();
                    for (const Observable& obs : observables) {
                        const cx g = (obs.matrix.cwiseProduct(diff.transpose())).sum();
                        gap = std::max(gap, std::abs(g));
                    }
                    if (gap > kStatGapBound) {
                        continue;  // not blind to the observables; keep searching
                    }
                    result.pair = WitnessPair{with, without, gap, property.name};
                    return result;
                }
            }
        }
    }
    return result;  // NotFound: pair empty, report populated
}

} // namespace entverify
