#include "entverify/pureverify.hpp"

#include <cmath>
#include <string>

namespace entverify {

void VerifyConfig::validate() const {
    if (!(epsilon_norm > 0.0) || !(epsilon_norm < 1e-2) ||
        !(tau_zero > 0.0) || !(tau_zero < 1e-2)) {
        throw InvalidConfig("VerifyConfig: epsilon_norm and tau_zero must lie in (0, 1e-2)");
    }
}

PartyReconstruction reconstruct_party(StateOracle& oracle, int k, const VerifyConfig& cfg) {
    cfg.validate();
    const SystemShape& shape = oracle.shape();
    if (k < 2 || k > shape.parties()) {
        throw BadPartySet("reconstruct_party: party " + std::to_string(k) +
                          " outside 2.." + std::to_string(shape.parties()));
    }
    const int d = shape.dim(k);

    PartyReconstruction rec;
    rec.k = k;

    // Support scan: first level whose diagonal probability clears tau_zero.
    // Bounded at d; exhausting it is impossible for a valid state, so it
    // signals a corrupt oracle or an oversized tau_zero.
    int l = -1;
    double prob_l = 0.0;
    for (int m = 0; m < d; ++m) {
        const double p = oracle.expectation(embed_local(probe_diag(m, d), k, shape));
        ++rec.observables_used;
        if (p > cfg.tau_zero) {
            l = m;
            prob_l = p;
            break;
        }
    }
    if (l < 0) {
        throw NoSupportFound("reconstruct_party: no level of party " + std::to_string(k) +
                             " exceeds tau_zero");
    }

    rec.l = l;
    const double alpha_l = std::sqrt(prob_l);
    rec.alphas.assign(static_cast<std::size_t>(d - l), cx(0.0, 0.0));
    rec.alphas[0] = alpha_l;
    rec.s = prob_l;

    for (int j = l + 1; j < d; ++j) {
        const double x = oracle.expectation(embed_local(probe_re(l, j, d), k, shape));
        const double y = oracle.expectation(embed_local(probe_im(l, j, d), k, shape));
        rec.observables_used += 2;
        const cx alpha = cx(x, y) / (2.0 * alpha_l);
        rec.alphas[static_cast<std::size_t>(j - l)] = alpha;
        rec.s += std::norm(alpha);
    }
    return rec;
}

Verdict verify_pure_product(StateOracle& oracle, const VerifyConfig& cfg) {
    cfg.validate();
    if (!oracle.holds_pure()) {
        throw NotPureInput("verify_pure_product: oracle holds a state flagged as mixed");
    }
    const SystemShape& shape = oracle.shape();
    const int n = shape.parties();

    Verdict verdict;
    for (int k = 2; k <= n && verdict.b == 0; ++k) {
        PartyReconstruction rec = reconstruct_party(oracle, k, cfg);
        verdict.total_observables += rec.observables_used;
        const bool failed = std::abs(rec.s - 1.0) > cfg.epsilon_norm;
        verdict.reconstructions.push_back(std::move(rec));
        if (failed) {
            verdict.b = 1;  // first failing party ends the run
        }
    }

    if (verdict.b == 0 && n >= 2) {
        // Tensor the per-party factors (parties 2..n; party 1 is never
        // measured and stays unreconstructed).
        ComplexVector amps = ComplexVector::Ones(1);
        for (const PartyReconstruction& rec : verdict.reconstructions) {
            const int d = shape.dim(rec.k);
            ComplexVector factor = ComplexVector::Zero(d);
            for (int j = rec.l; j < d; ++j) {
                factor[j] = rec.alphas[static_cast<std::size_t>(j - rec.l)];
            }
            ComplexVector next(amps.size() * d);
            for (Eigen::Index i = 0; i < amps.size(); ++i) {
                next.segment(i * d, d) = amps[i] * factor;
            }
            amps = std::move(next);
        }
        amps /= amps.norm();
        std::vector<int> dims(shape.dims().begin() + 1, shape.dims().end());
        verdict.reconstructed_state = PureState(SystemShape(dims), std::move(amps));
    }
    return verdict;
}

} // namespace entverify
