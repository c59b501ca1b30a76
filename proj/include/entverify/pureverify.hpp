#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "entverify/measure.hpp"
#include "entverify/qcore.hpp"

namespace entverify {

/// Floating-point stand-ins for the protocol's exact tests: epsilon_norm for
/// the "s != 1" decision, tau_zero for the "diagonal probability = 0" support
/// scan. Both must be strictly positive and below 1e-2.
struct VerifyConfig {
    double epsilon_norm = 1e-9;
    double tau_zero = 1e-9;

    void validate() const;
};

/// Amplitudes of one party's reduced state recovered through local probes:
/// l is the first basis level with nonvanishing probability, alphas[j - l]
/// estimates the amplitude at level j (alphas[0] real positive), and s is the
/// accumulated squared norm whose deviation from one flags mixedness.
struct PartyReconstruction {
    int k = 0;
    int l = 0;
    std::vector<cx> alphas;
    double s = 0.0;
    int observables_used = 0;
};

/// Outcome of the product test: b = 0 (product) or 1 (entangled), the
/// per-party reconstructions in examination order, the observable budget
/// actually consumed, and -- when b = 0 -- the reconstructed factor state of
/// parties 2..n (party 1 is never measured).
struct Verdict {
    int b = 0;
    std::vector<PartyReconstruction> reconstructions;
    std::int64_t total_observables = 0;
    std::optional<PureState> reconstructed_state;
};

/// Reconstruct party k (2 <= k <= n) of a globally pure hidden state: scan
/// diagonal probes until a level passes tau_zero, then recover the remaining
/// amplitudes from paired coherence probes. Uses at most 2 d_k - 1
/// observables. Throws NoSupportFound if the scan exhausts all levels, which
/// for a valid state means tau_zero is too aggressive or the input is corrupt.
PartyReconstruction reconstruct_party(StateOracle& oracle, int k, const VerifyConfig& cfg);

/// Adaptive local-measurement product test for pure states. Examines parties
/// 2..n in order, stopping at the first whose reconstruction norm deviates
/// from one by more than epsilon_norm. Refuses oracles flagged as mixed
/// (NotPureInput): the guarantee only holds under the purity promise.
Verdict verify_pure_product(StateOracle& oracle, const VerifyConfig& cfg = {});

} // namespace entverify
