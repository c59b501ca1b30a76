#include "entverify/measure.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "entverify/rng.hpp"

namespace entverify {

Observable::Observable(SystemShape shape_in, ComplexMatrix matrix_in, std::string label_in)
    : shape(std::move(shape_in)), matrix(std::move(matrix_in)), label(std::move(label_in)) {
    if (matrix.rows() != shape.total_dim() || matrix.cols() != shape.total_dim()) {
        throw ShapeMismatch("Observable: matrix does not match shape (label " + label + ")");
    }
    if (!is_hermitian(matrix, 1e-12)) {
        throw NonHermitian("Observable: not Hermitian within 1e-12 (label " + label + ")");
    }
}

Observable probe_diag(int m, int d) {
    if (d < 2 || m < 0 || m >= d) {
        throw IndexOutOfRange("probe_diag: level " + std::to_string(m) +
                              " outside 0.." + std::to_string(d - 1));
    }
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(m, m) = 1.0;
    return Observable(SystemShape({d}), std::move(e), "E_" + std::to_string(m));
}

Observable probe_re(int l, int j, int d) {
    if (d < 2 || l < 0 || l >= d || j < 0 || j >= d || l == j) {
        throw IndexOutOfRange("probe_re: bad levels (" + std::to_string(l) + "," +
                              std::to_string(j) + ") for dimension " + std::to_string(d));
    }
    ComplexMatrix f = ComplexMatrix::Zero(d, d);
    f(j, l) = 1.0;
    f(l, j) = 1.0;
    return Observable(SystemShape({d}), std::move(f),
                      "ReProbe_" + std::to_string(l) + "_" + std::to_string(j));
}

Observable probe_im(int l, int j, int d) {
    if (d < 2 || l < 0 || l >= d || j < 0 || j >= d || l == j) {
        throw IndexOutOfRange("probe_im: bad levels (" + std::to_string(l) + "," +
                              std::to_string(j) + ") for dimension " + std::to_string(d));
    }
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    g(j, l) = cx(0.0, 1.0);
    g(l, j) = cx(0.0, -1.0);
    return Observable(SystemShape({d}), std::move(g),
                      "ImProbe_" + std::to_string(l) + "_" + std::to_string(j));
}

Observable embed_local(const Observable& local, int k, const SystemShape& shape) {
    if (k < 1 || k > shape.parties()) {
        throw BadPartySet("embed_local: party " + std::to_string(k) + " outside 1.." +
                          std::to_string(shape.parties()));
    }
    if (local.matrix.rows() != shape.dim(k)) {
        throw ShapeMismatch("embed_local: observable dimension " +
                            std::to_string(local.matrix.rows()) + " does not match party " +
                            std::to_string(k) + " dimension " + std::to_string(shape.dim(k)));
    }
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int p = 1; p <= shape.parties(); ++p) {
        if (p == k) {
            out = kron(out, local.matrix);
        } else {
            out = kron(out, ComplexMatrix::Identity(shape.dim(p), shape.dim(p)));
        }
    }
    return Observable(shape, std::move(out), local.label + "@" + std::to_string(k));
}

Observable random_observable(const SystemShape& shape, std::uint64_t seed, std::string label) {
    Rng rng(seed);
    const Eigen::Index d = shape.total_dim();
    ComplexMatrix g(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            g(r, c) = rng.complex_gaussian();
        }
    }
    ComplexMatrix h = (g + g.adjoint()) / 2.0;
    return Observable(shape, std::move(h), std::move(label));
}

std::int64_t ic_budget(const SystemShape& shape) {
    std::int64_t t = 1;
    for (int d : shape.dims()) {
        t *= static_cast<std::int64_t>(d) * d;
    }
    return t - 1;
}

PureBudgets pure_budgets(const SystemShape& shape) {
    if (shape.parties() < 2) {
        throw BadShape("pure_budgets: need at least 2 parties");
    }
    PureBudgets b{0, 0, 0};
    for (int k = 2; k <= shape.parties(); ++k) {
        const std::int64_t d = shape.dim(k);
        b.upper += 2 * d - 1;
        b.adaptive_lower += 2 * (d - 1);
        b.nonadaptive_lower += 4 * d - 5;
    }
    return b;
}

void MeasurementLedger::append(std::string label, double value) {
    labels_.insert(label);
    entries_.push_back(Entry{std::move(label), value});
}

StateOracle::StateOracle(SystemShape shape, std::variant<PureState, DensityMatrix> state,
                         bool pure)
    : shape_(std::move(shape)), state_(std::move(state)), pure_(pure) {}

StateOracle StateOracle::from_pure(PureState psi) {
    SystemShape shape = psi.shape();
    return StateOracle(std::move(shape), std::move(psi), true);
}

StateOracle StateOracle::from_density(DensityMatrix rho) {
    SystemShape shape = rho.shape();
    return StateOracle(std::move(shape), std::move(rho), false);
}

double StateOracle::expectation(const Observable& obs) {
    if (!(obs.shape == shape_)) {
        throw ShapeMismatch("expectation: observable shape does not match oracle shape");
    }
    cx value;
    if (std::holds_alternative<PureState>(state_)) {
        const ComplexVector& psi = std::get<PureState>(state_).amplitudes();
        value = psi.dot(obs.matrix * psi);
    } else {
        const ComplexMatrix& rho = std::get<DensityMatrix>(state_).matrix();
        value = (obs.matrix.cwiseProduct(rho.transpose())).sum();
    }
    if (std::abs(value.imag()) > 1e-10) {
        throw NonHermitian("expectation: imaginary part " + std::to_string(value.imag()) +
                           " for observable " + obs.label);
    }
    ledger_.append(obs.label, value.real());
    return value.real();
}

} // namespace entverify
