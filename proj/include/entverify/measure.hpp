#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "entverify/qcore.hpp"

namespace entverify {

// ---------------------------------------------------------------------------
// Observables
// ---------------------------------------------------------------------------

/// Hermitian operator measured in the accurate-measurement model. The label
/// is the ledger key: canonical forms are "E_m@k", "ReProbe_l_j@k",
/// "ImProbe_l_j@k" for the probes used by the verification protocol.
struct Observable {
    Observable(SystemShape shape, ComplexMatrix matrix, std::string label);

    SystemShape shape;
    ComplexMatrix matrix;
    std::string label;
};

/// E_m = |m><m| on a d-dimensional party. Label "E_m".
Observable probe_diag(int m, int d);

/// |j><l| + |l><j|. Label "ReProbe_l_j".
Observable probe_re(int l, int j, int d);

/// i(|j><l| - |l><j|). Label "ImProbe_l_j".
Observable probe_im(int l, int j, int d);

/// I x ... x O_k x ... x I acting nontrivially on party k only. The label
/// becomes "<local label>@k".
Observable embed_local(const Observable& local, int k, const SystemShape& shape);

/// Gaussian-ensemble random Hermitian (standard normal in Hilbert-Schmidt
/// coordinates), for randomized observable sets.
Observable random_observable(const SystemShape& shape, std::uint64_t seed, std::string label);

// ---------------------------------------------------------------------------
// Budgets
// ---------------------------------------------------------------------------

/// Observable count of an informationally complete setup: prod d_k^2 - 1.
std::int64_t ic_budget(const SystemShape& shape);

struct PureBudgets {
    std::int64_t upper;              // sum_{k=2}^n (2 d_k - 1)
    std::int64_t adaptive_lower;     // sum_{k=2}^n 2 (d_k - 1)
    std::int64_t nonadaptive_lower;  // sum_{k=2}^n (4 d_k - 5)
};

/// The three pure-state verification budgets; requires n >= 2.
PureBudgets pure_budgets(const SystemShape& shape);

// ---------------------------------------------------------------------------
// Measurement bookkeeping
// ---------------------------------------------------------------------------

/// Append-only record of measured expectations. `count()` is the number of
/// distinct labels seen: re-measuring the same observable is free in the
/// exact-value model, so the budget counts observables, not queries.
class MeasurementLedger {
public:
    struct Entry {
        std::string label;
        double value;
    };

    void append(std::string label, double value);

    const std::vector<Entry>& entries() const { return entries_; }
    std::int64_t count() const { return static_cast<std::int64_t>(labels_.size()); }

private:
    std::vector<Entry> entries_;
    std::set<std::string> labels_;
};

/// Black-box state access: the hidden state can only be probed through
/// expectation(). Whether the box was loaded with a pure state is exposed as
/// a flag (a caller promise, not a measurement result).
class StateOracle {
public:
    static StateOracle from_pure(PureState psi);
    static StateOracle from_density(DensityMatrix rho);

    /// Exact tr(O rho); appends (label, value) to the ledger. Throws
    /// ShapeMismatch on shape disagreement and NonHermitian if the imaginary
    /// part of the trace exceeds 1e-10.
    double expectation(const Observable& obs);

    const SystemShape& shape() const { return shape_; }
    const MeasurementLedger& ledger() const { return ledger_; }
    bool holds_pure() const { return pure_; }

private:
    StateOracle(SystemShape shape, std::variant<PureState, DensityMatrix> state, bool pure);

    SystemShape shape_;
    std::variant<PureState, DensityMatrix> state_;
    bool pure_;
    MeasurementLedger ledger_;
};

} // namespace entverify
