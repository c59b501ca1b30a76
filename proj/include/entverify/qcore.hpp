#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "entverify/errors.hpp"
#include "entverify/shape.hpp"

namespace entverify {

using cx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Norms. The default matrix norm in this library is the 2-norm sqrt(tr(A'A))
// (Hilbert-Schmidt / Frobenius); op_norm is the spectral norm and every call
// site that needs it says so explicitly.
// ---------------------------------------------------------------------------

double hs_norm(const ComplexMatrix& a);

/// Largest |eigenvalue| of a Hermitian matrix.
double op_norm(const ComplexMatrix& hermitian);

bool is_hermitian(const ComplexMatrix& a, double tol);

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition
// ---------------------------------------------------------------------------

struct EigenDecomposition {
    RealVector eigenvalues;      // ascending
    ComplexMatrix eigenvectors;  // orthonormal columns, eigenvectors() .col(i) <-> eigenvalues[i]
};

/// Cyclic complex Jacobi diagonalization. Deterministic sweep order; at most
/// 100*d sweeps before NoConvergence. Throws NonHermitian when the input is
/// not symmetric within 1e-10 (relative to max(1, |M|)).
EigenDecomposition hermitian_eig(const ComplexMatrix& m);

// ---------------------------------------------------------------------------
// Tensor algebra
// ---------------------------------------------------------------------------

/// Kronecker product, party-1-major block layout.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Left fold of kron over a list of factors.
ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors);

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

class DensityMatrix;

/// Normalized state vector on a composite system. Construction checks
/// <psi|psi> = 1 within 1e-12 and rotates the global phase so the first
/// nonzero amplitude is real nonnegative; equality tests are thus phase-free.
class PureState {
public:
    PureState(SystemShape shape, ComplexVector amplitudes);

    const SystemShape& shape() const { return shape_; }
    const ComplexVector& amplitudes() const { return amps_; }

    DensityMatrix to_density() const;

private:
    SystemShape shape_;
    ComplexVector amps_;
};

/// Density operator: Hermitian within 1e-12, trace one within 1e-12, and
/// minimum eigenvalue >= -1e-10 (round-off floor), all checked at construction.
class DensityMatrix {
public:
    DensityMatrix(SystemShape shape, ComplexMatrix matrix);

    const SystemShape& shape() const { return shape_; }
    const ComplexMatrix& matrix() const { return mat_; }

private:
    SystemShape shape_;
    ComplexMatrix mat_;
};

// ---------------------------------------------------------------------------
// Multipartite operations
// ---------------------------------------------------------------------------

/// Trace out every party not in `keep` (1-based, any order, no duplicates).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Transpose the parties in `subset` (proper nonempty subset). The result is
/// Hermitian and trace-one but in general not positive, hence a raw matrix.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const SystemShape& shape,
                                const std::vector<int>& subset);
ComplexMatrix partial_transpose(const DensityMatrix& rho, const std::vector<int>& subset);

/// (A_1 x ... x A_n) rho (A_1 x ... x A_n)^dag, renormalized to trace one.
/// Every A_k must be square of dimension d_k with min singular value > 1e-10.
DensityMatrix apply_slocc(const DensityMatrix& rho, const std::vector<ComplexMatrix>& maps);

// ---------------------------------------------------------------------------
// Standard states
// ---------------------------------------------------------------------------

PureState bell();
PureState ghz(int n);
PureState w_state(int n);
DensityMatrix maximally_mixed(const SystemShape& shape);
PureState basis_pure(const SystemShape& shape, std::int64_t index);

/// Haar-distributed: a vector of independent standard complex Gaussians,
/// normalized.
PureState random_pure(const SystemShape& shape, std::uint64_t seed);

/// Tensor product of independent Haar-random single-party states.
PureState random_product(const SystemShape& shape, std::uint64_t seed);

/// Three-qubit state (1/4)(I - sum of the four "shifts" product projectors
/// |0,1,+>, |1,+,0>, |+,0,1>, |-,-,->): PPT across every cut yet entangled.
DensityMatrix upb_shifts_state();

} // namespace entverify
