#include "entverify/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "entverify/rng.hpp"

namespace entverify {

namespace {

constexpr double kPhaseFloor = 1e-12;

std::vector<int> checked_party_set(const SystemShape& shape, std::vector<int> parties,
                                   const char* who) {
    if (parties.empty()) {
        throw BadPartySet(std::string(who) + ": empty party set");
    }
    std::sort(parties.begin(), parties.end());
    for (std::size_t i = 0; i < parties.size(); ++i) {
        if (parties[i] < 1 || parties[i] > shape.parties()) {
            throw BadPartySet(std::string(who) + ": party index out of range");
        }
        if (i > 0 && parties[i] == parties[i - 1]) {
            throw BadPartySet(std::string(who) + ": duplicate party index");
        }
    }
    return parties;
}

} // namespace

double hs_norm(const ComplexMatrix& a) { return a.norm(); }

double op_norm(const ComplexMatrix& hermitian) {
    const EigenDecomposition eig = hermitian_eig(hermitian);
    const Eigen::Index d = eig.eigenvalues.size();
    return std::max(std::abs(eig.eigenvalues[0]), std::abs(eig.eigenvalues[d - 1]));
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (a.rows() != a.cols()) {
        return false;
    }
    return hs_norm(ComplexMatrix(a - a.adjoint())) <= tol;
}

// ---------------------------------------------------------------------------
// Cyclic complex Jacobi
// ---------------------------------------------------------------------------
// Each rotation first makes the (p,q) entry real with a unit phase, then
// annihilates it with a classical symmetric 2x2 rotation. Rotations run in
// row-major pair order, which makes the decomposition deterministic.

EigenDecomposition hermitian_eig(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw NonHermitian("hermitian_eig: matrix is not square");
    }
    const Eigen::Index d = m.rows();
    const double scale = std::max(1.0, hs_norm(m));
    if (hs_norm(ComplexMatrix(m - m.adjoint())) > 1e-10 * scale) {
        throw NonHermitian("hermitian_eig: matrix is not Hermitian within tolerance");
    }

    ComplexMatrix a = (m + m.adjoint()) / 2.0;
    ComplexMatrix v = ComplexMatrix::Identity(d, d);

    const double off_eps = 1e-15 * std::max(1.0, hs_norm(a));
    const long max_sweeps = 100 * static_cast<long>(d);

    bool converged = d < 2;
    for (long sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (Eigen::Index p = 0; p < d - 1; ++p) {
            for (Eigen::Index q = p + 1; q < d; ++q) {
                const cx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= off_eps) {
                    continue;
                }
                converged = false;

                const cx phase = apq / r;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Plane transform G on coordinates (p,q):
                //   G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                const cx pc = std::conj(phase);
                // A <- A G (column update)
                for (Eigen::Index i = 0; i < d; ++i) {
                    const cx aip = a(i, p);
                    const cx aiq = a(i, q);
                    a(i, p) = c * aip - s * pc * aiq;
                    a(i, q) = s * aip + c * pc * aiq;
                }
                // A <- G^dag A (row update)
                for (Eigen::Index j = 0; j < d; ++j) {
                    const cx apj = a(p, j);
                    const cx aqj = a(q, j);
                    a(p, j) = c * apj - s * phase * aqj;
                    a(q, j) = s * apj + c * phase * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cx(a(p, p).real(), 0.0);
                a(q, q) = cx(a(q, q).real(), 0.0);
                // V <- V G
                for (Eigen::Index i = 0; i < d; ++i) {
                    const cx vip = v(i, p);
                    const cx viq = v(i, q);
                    v(i, p) = c * vip - s * pc * viq;
                    v(i, q) = s * vip + c * pc * viq;
                }
            }
        }
    }
    if (!converged) {
        throw NoConvergence("hermitian_eig: exceeded " + std::to_string(max_sweeps) +
                            " sweeps");
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return a(x, x).real() < a(y, y).real();
    });

    EigenDecomposition out;
    out.eigenvalues.resize(d);
    out.eigenvectors.resize(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        out.eigenvalues[i] = a(order[static_cast<std::size_t>(i)],
                               order[static_cast<std::size_t>(i)]).real();
        out.eigenvectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tensor algebra
// ---------------------------------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors) {
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (const ComplexMatrix& f : factors) {
        out = kron(out, f);
    }
    return out;
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

PureState::PureState(SystemShape shape, ComplexVector amplitudes)
    : shape_(std::move(shape)), amps_(std::move(amplitudes)) {
    if (amps_.size() != shape_.total_dim()) {
        throw ShapeMismatch("PureState: amplitude count " + std::to_string(amps_.size()) +
                            " does not match total dimension " +
                            std::to_string(shape_.total_dim()));
    }
    const double norm = amps_.norm();
    if (!(std::abs(norm - 1.0) <= 1e-12)) {  // negated so NaN input fails too
        throw InvariantViolation("PureState: vector norm " + std::to_string(norm) +
                                 " is not 1 within 1e-12");
    }
    // Rotate the global phase so the first nonzero amplitude is real >= 0.
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
        const double mag = std::abs(amps_[i]);
        if (mag > kPhaseFloor) {
            amps_ *= std::conj(amps_[i]) / mag;
            amps_[i] = cx(mag, 0.0);
            break;
        }
    }
}

DensityMatrix PureState::to_density() const {
    ComplexMatrix rho = amps_ * amps_.adjoint();
    return DensityMatrix(shape_, std::move(rho));
}

DensityMatrix::DensityMatrix(SystemShape shape, ComplexMatrix matrix)
    : shape_(std::move(shape)), mat_(std::move(matrix)) {
    const Eigen::Index d = shape_.total_dim();
    if (mat_.rows() != d || mat_.cols() != d) {
        throw ShapeMismatch("DensityMatrix: matrix is " + std::to_string(mat_.rows()) + "x" +
                            std::to_string(mat_.cols()) + ", shape needs " +
                            std::to_string(d));
    }
    if (!(hs_norm(ComplexMatrix(mat_ - mat_.adjoint())) <= 1e-12)) {
        throw InvariantViolation("DensityMatrix: not Hermitian within 1e-12");
    }
    const cx tr = mat_.trace();
    if (!(std::abs(tr - cx(1.0, 0.0)) <= 1e-12)) {
        throw InvariantViolation("DensityMatrix: trace deviates from 1 by more than 1e-12");
    }
    const EigenDecomposition eig = hermitian_eig(mat_);
    if (!(eig.eigenvalues[0] >= -1e-10)) {
        throw InvariantViolation("DensityMatrix: minimum eigenvalue " +
                                 std::to_string(eig.eigenvalues[0]) + " below -1e-10");
    }
}

// ---------------------------------------------------------------------------
// Multipartite operations
// ---------------------------------------------------------------------------

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const SystemShape& shape = rho.shape();
    const std::vector<int> kept = checked_party_set(shape, keep, "partial_trace");

    std::vector<int> traced;
    for (int k = 1; k <= shape.parties(); ++k) {
        if (!std::binary_search(kept.begin(), kept.end(), k)) {
            traced.push_back(k);
        }
    }

    const SystemShape out_shape = restrict_shape(shape, kept);
    const std::int64_t dk = out_shape.total_dim();
    std::int64_t dt = 1;
    for (int k : traced) {
        dt *= shape.dim(k);
    }

    const int n = shape.parties();
    std::vector<int> full_a(static_cast<std::size_t>(n));
    std::vector<int> full_b(static_cast<std::size_t>(n));

    ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
    for (std::int64_t a = 0; a < dk; ++a) {
        const std::vector<int> da = index_digits(out_shape, a);
        for (std::int64_t b = 0; b < dk; ++b) {
            const std::vector<int> db = index_digits(out_shape, b);
            cx sum = 0.0;
            for (std::int64_t t = 0; t < dt; ++t) {
                std::int64_t rest = t;
                for (std::size_t i = traced.size(); i-- > 0;) {
                    const int k = traced[i];
                    const int dim = shape.dim(k);
                    const int digit = static_cast<int>(rest % dim);
                    rest /= dim;
                    full_a[static_cast<std::size_t>(k - 1)] = digit;
                    full_b[static_cast<std::size_t>(k - 1)] = digit;
                }
                for (std::size_t i = 0; i < kept.size(); ++i) {
                    full_a[static_cast<std::size_t>(kept[i] - 1)] = da[i];
                    full_b[static_cast<std::size_t>(kept[i] - 1)] = db[i];
                }
                sum += rho.matrix()(digits_index(shape, full_a), digits_index(shape, full_b));
            }
            out(a, b) = sum;
        }
    }
    out = (out + out.adjoint()) / 2.0;
    return DensityMatrix(out_shape, std::move(out));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const SystemShape& shape,
                                const std::vector<int>& subset) {
    if (m.rows() != shape.total_dim() || m.cols() != shape.total_dim()) {
        throw ShapeMismatch("partial_transpose: matrix does not match shape");
    }
    const std::vector<int> sub = checked_party_set(shape, subset, "partial_transpose");
    if (static_cast<int>(sub.size()) == shape.parties()) {
        throw BadPartySet("partial_transpose: subset must be a proper subset of the parties");
    }

    const std::int64_t d = shape.total_dim();
    ComplexMatrix out(d, d);
    for (std::int64_t i = 0; i < d; ++i) {
        std::vector<int> di = index_digits(shape, i);
        for (std::int64_t j = 0; j < d; ++j) {
            std::vector<int> dj = index_digits(shape, j);
            std::vector<int> si = di;
            std::vector<int> sj = dj;
            for (int k : sub) {
                std::swap(si[static_cast<std::size_t>(k - 1)],
                          sj[static_cast<std::size_t>(k - 1)]);
            }
            out(i, j) = m(digits_index(shape, si), digits_index(shape, sj));
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, const std::vector<int>& subset) {
    return partial_transpose(rho.matrix(), rho.shape(), subset);
}

DensityMatrix apply_slocc(const DensityMatrix& rho, const std::vector<ComplexMatrix>& maps) {
    const SystemShape& shape = rho.shape();
    if (static_cast<int>(maps.size()) != shape.parties()) {
        throw ShapeMismatch("apply_slocc: expected one map per party");
    }
    for (int k = 1; k <= shape.parties(); ++k) {
        const ComplexMatrix& a = maps[static_cast<std::size_t>(k - 1)];
        const int d = shape.dim(k);
        if (a.rows() != d || a.cols() != d) {
            throw ShapeMismatch("apply_slocc: map for party " + std::to_string(k) +
                                " is not " + std::to_string(d) + "x" + std::to_string(d));
        }
        Eigen::JacobiSVD<ComplexMatrix> svd(a);
        if (svd.singularValues().minCoeff() <= 1e-10) {
            throw SingularMap("apply_slocc: map for party " + std::to_string(k) +
                              " is singular (min singular value <= 1e-10)");
        }
    }
    const ComplexMatrix t = kron_all(maps);
    ComplexMatrix out = t * rho.matrix() * t.adjoint();
    out /= out.trace().real();
    out = (out + out.adjoint()) / 2.0;
    return DensityMatrix(shape, std::move(out));
}

// ---------------------------------------------------------------------------
// Standard states
// ---------------------------------------------------------------------------

PureState bell() {
    ComplexVector amps = ComplexVector::Zero(4);
    amps[0] = amps[3] = 1.0 / std::sqrt(2.0);
    return PureState(SystemShape({2, 2}), std::move(amps));
}

PureState ghz(int n) {
    if (n < 2) {
        throw BadShape("ghz: need at least 2 parties");
    }
    const std::int64_t d = std::int64_t{1} << n;
    ComplexVector amps = ComplexVector::Zero(d);
    amps[0] = amps[d - 1] = 1.0 / std::sqrt(2.0);
    return PureState(SystemShape(std::vector<int>(static_cast<std::size_t>(n), 2)),
                     std::move(amps));
}

PureState w_state(int n) {
    if (n < 2) {
        throw BadShape("w_state: need at least 2 parties");
    }
    const std::int64_t d = std::int64_t{1} << n;
    ComplexVector amps = ComplexVector::Zero(d);
    for (int k = 0; k < n; ++k) {
        amps[std::int64_t{1} << k] = 1.0 / std::sqrt(static_cast<double>(n));
    }
    return PureState(SystemShape(std::vector<int>(static_cast<std::size_t>(n), 2)),
                     std::move(amps));
}

DensityMatrix maximally_mixed(const SystemShape& shape) {
    const std::int64_t d = shape.total_dim();
    ComplexMatrix rho = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    return DensityMatrix(shape, std::move(rho));
}

PureState basis_pure(const SystemShape& shape, std::int64_t index) {
    if (index < 0 || index >= shape.total_dim()) {
        throw IndexOutOfRange("basis_pure: index " + std::to_string(index) +
                              " outside 0.." + std::to_string(shape.total_dim() - 1));
    }
    ComplexVector amps = ComplexVector::Zero(shape.total_dim());
    amps[index] = 1.0;
    return PureState(shape, std::move(amps));
}

PureState random_pure(const SystemShape& shape, std::uint64_t seed) {
    Rng rng(seed);
    ComplexVector amps(shape.total_dim());
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        amps[i] = rng.complex_gaussian();
    }
    amps /= amps.norm();
    return PureState(shape, std::move(amps));
}

PureState random_product(const SystemShape& shape, std::uint64_t seed) {
    std::vector<ComplexVector> factors;
    factors.reserve(static_cast<std::size_t>(shape.parties()));
    for (int k = 1; k <= shape.parties(); ++k) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
        ComplexVector f(shape.dim(k));
        for (Eigen::Index i = 0; i < f.size(); ++i) {
            f[i] = rng.complex_gaussian();
        }
        f /= f.norm();
        factors.push_back(std::move(f));
    }
    ComplexVector amps = ComplexVector::Ones(1);
    for (const ComplexVector& f : factors) {
        ComplexVector next(amps.size() * f.size());
        for (Eigen::Index i = 0; i < amps.size(); ++i) {
            next.segment(i * f.size(), f.size()) = amps[i] * f;
        }
        amps = std::move(next);
    }
    amps /= amps.norm();
    return PureState(shape, std::move(amps));
}

DensityMatrix upb_shifts_state() {
    const double is2 = 1.0 / std::sqrt(2.0);
    const ComplexVector zero = (ComplexVector(2) << 1.0, 0.0).finished();
    const ComplexVector one = (ComplexVector(2) << 0.0, 1.0).finished();
    const ComplexVector plus = (ComplexVector(2) << is2, is2).finished();
    const ComplexVector minus = (ComplexVector(2) << is2, -is2).finished();

    auto product = [](const ComplexVector& a, const ComplexVector& b, const ComplexVector& c) {
        ComplexVector out(8);
        for (Eigen::Index i = 0; i < 2; ++i) {
            for (Eigen::Index j = 0; j < 2; ++j) {
                for (Eigen::Index k = 0; k < 2; ++k) {
                    out[4 * i + 2 * j + k] = a[i] * b[j] * c[k];
                }
            }
        }
        return out;
    };

    const std::vector<ComplexVector> basis = {
        product(zero, one, plus),
        product(one, plus, zero),
        product(plus, zero, one),
        product(minus, minus, minus),
    };

    ComplexMatrix proj = ComplexMatrix::Zero(8, 8);
    for (const ComplexVector& phi : basis) {
        proj += phi * phi.adjoint();
    }
    ComplexMatrix rho = (ComplexMatrix::Identity(8, 8) - proj) / 4.0;
    rho = (rho + rho.adjoint()) / 2.0;
    return DensityMatrix(SystemShape({2, 2, 2}), std::move(rho));
}

} // namespace entverify
