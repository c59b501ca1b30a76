// Command-line driver: verify a pure state file, search indistinguishability
// witnesses, certify the three-qubit bound-entangled example, print budgets.
//
// Exit codes: 0 success/product, 1 parse error, 2 precondition or invariant
// violation, 3 entangled verdict, 4 witness search exhausted.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entverify/io.hpp"
#include "entverify/pureverify.hpp"
#include "entverify/qcore.hpp"
#include "entverify/rng.hpp"
#include "entverify/separability.hpp"
#include "entverify/witness.hpp"

namespace {

constexpr const char* kArtifactVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitEntangled = 3;
constexpr int kExitNotFound = 4;

using entverify::io::json;

entverify::SystemShape parse_shape(const std::string& text) {
    std::vector<int> dims;
    std::string token;
    for (char ch : text) {
        if (ch == ',' || ch == 'x' || ch == 'X') {
            if (!token.empty()) {
                dims.push_back(std::stoi(token));
                token.clear();
            }
        } else if (ch >= '0' && ch <= '9') {
            token.push_back(ch);
        } else if (ch != '(' && ch != ')' && ch != ' ') {
            throw entverify::ParseError("bad shape string: " + text);
        }
    }
    if (!token.empty()) {
        dims.push_back(std::stoi(token));
    }
    if (dims.empty()) {
        throw entverify::ParseError("bad shape string: " + text);
    }
    return entverify::SystemShape(dims);
}

void emit(const json& result, const std::string& out_path, const json& manifest_config,
          const std::string& command, std::uint64_t seed) {
    std::cout << result.dump(2) << "\n";
    if (out_path.empty()) {
        return;
    }
    entverify::io::write_json_file(out_path, result);
    const json manifest{{"artifact_version", kArtifactVersion},
                        {"command", command},
                        {"config", manifest_config},
                        {"outputs", json::array({out_path})},
                        {"seed", seed}};
    entverify::io::write_json_file(out_path + ".manifest.json", manifest);
}

int cmd_verify(const std::string& state_file, double eps, double tau,
               const std::string& out_path) {
    const json doc = entverify::io::load_json_file(state_file);
    entverify::PureState psi = entverify::io::pure_from_json(doc);
    entverify::StateOracle oracle = entverify::StateOracle::from_pure(std::move(psi));
    entverify::VerifyConfig cfg;
    cfg.epsilon_norm = eps;
    cfg.tau_zero = tau;
    const entverify::Verdict verdict = entverify::verify_pure_product(oracle, cfg);

    emit(entverify::io::to_json(verdict), out_path,
         json{{"state_file", state_file}, {"eps", eps}, {"tau", tau}}, "verify", 0);
    return verdict.b == 0 ? kExitOk : kExitEntangled;
}

int cmd_witness(const std::string& shape_text, const std::string& observables_file,
                int random_count, const std::string& property_name, std::uint64_t seed,
                const std::string& out_path) {
    const entverify::SystemShape shape = parse_shape(shape_text);

    std::vector<entverify::Observable> observables;
    if (!observables_file.empty()) {
        const json doc = entverify::io::load_json_file(observables_file);
        if (!doc.is_array()) {
            throw entverify::ParseError(observables_file + ": expected an array of observables");
        }
        for (const json& item : doc) {
            observables.push_back(entverify::io::observable_from_json(item));
        }
    } else {
        for (int i = 0; i < random_count; ++i) {
            observables.push_back(entverify::random_observable(
                shape, entverify::derive_seed(seed, 0xA000 + static_cast<std::uint64_t>(i)),
                "R_" + std::to_string(i)));
        }
    }

    entverify::PropertyOracle property;
    if (property_name == "ppt") {
        property = entverify::ppt_property();
    } else if (property_name == "separable2xN") {
        property = entverify::separable_2xn_property();
    } else {
        throw entverify::InvalidConfig("unknown property: " + property_name);
    }

    entverify::SearchConfig cfg;
    cfg.seed = seed;
    const entverify::WitnessSearchResult result =
        entverify::indistinguishable_pair(observables, shape, property, cfg);

    const json manifest_config{{"shape", shape.dims()},
                               {"observables", static_cast<std::int64_t>(observables.size())},
                               {"property", property_name}};
    if (result.pair) {
        emit(entverify::io::to_json(*result.pair,
                                    static_cast<std::int64_t>(observables.size())),
             out_path, manifest_config, "witness", seed);
        return kExitOk;
    }
    json diagnostics = entverify::io::to_json(result.report);
    diagnostics["found"] = false;
    emit(diagnostics, out_path, manifest_config, "witness", seed);
    return kExitNotFound;
}

int cmd_upb(std::uint64_t seed) {
    const entverify::DensityMatrix rho = entverify::upb_shifts_state();
    bool all_pass = true;

    bool invariant = true;
    for (int party = 1; party <= 3; ++party) {
        invariant = invariant && entverify::pt_invariant(rho, party, 1e-12);
    }
    std::cout << (invariant ? "[PASS]" : "[FAIL]")
              << " partial-transpose invariance on every qubit (tol 1e-12)\n";
    all_pass = all_pass && invariant;

    bool ppt = true;
    double worst = 1.0;
    for (int party = 1; party <= 3; ++party) {
        const auto [ok, min_eig] =
            entverify::is_ppt(rho, entverify::Bipartition::of({party}, 3), 1e-10);
        ppt = ppt && ok;
        worst = std::min(worst, min_eig);
    }
    std::cout << (ppt ? "[PASS]" : "[FAIL]")
              << " PPT across all bipartitions (min eigenvalue " << worst << ")\n";
    all_pass = all_pass && ppt;

    // Range projector: the state is (1/4) x the projector onto its range.
    const entverify::ComplexMatrix projector = 4.0 * rho.matrix();
    entverify::SeesawConfig cfg;
    cfg.seed = seed;
    const entverify::SeesawResult seesaw =
        entverify::max_product_overlap(projector, rho.shape(), cfg);
    const bool gap = seesaw.best_overlap < 1.0 - 1e-3;
    std::cout << (gap ? "[PASS]" : "[FAIL]")
              << " no product state in the range: max product overlap " << seesaw.best_overlap
              << " stays below 1\n";
    all_pass = all_pass && gap;

    return all_pass ? kExitOk : kExitPrecondition;
}

int cmd_budget(const std::string& shape_text) {
    const entverify::SystemShape shape = parse_shape(shape_text);
    const std::int64_t t = entverify::ic_budget(shape);
    const entverify::PureBudgets budgets = entverify::pure_budgets(shape);

    std::cout << "shape              (";
    for (std::size_t i = 0; i < shape.dims().size(); ++i) {
        std::cout << (i ? "," : "") << shape.dims()[i];
    }
    std::cout << ")\n";
    std::cout << "ic budget t        " << t << "\n";
    std::cout << "adaptive upper     " << budgets.upper << "\n";
    std::cout << "adaptive lower     " << budgets.adaptive_lower << "\n";
    std::cout << "non-adaptive lower " << budgets.nonadaptive_lower << "\n";
    std::cout << "ratio t/upper      "
              << static_cast<double>(t) / static_cast<double>(budgets.upper) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entverify: multipartite entanglement verification toolkit"};
    app.require_subcommand(1);

    std::string state_file;
    double eps = 1e-9;
    double tau = 1e-9;
    std::string out_path;
    CLI::App* verify = app.add_subcommand("verify", "test whether a pure state file is product");
    verify->add_option("state", state_file, "state file (kind \"pure\")")->required();
    verify->add_option("--eps", eps, "norm-deviation threshold");
    verify->add_option("--tau", tau, "support-scan threshold");
    verify->add_option("--json", out_path, "write the verdict JSON here");

    std::string shape_text;
    std::string observables_file;
    int random_count = 0;
    std::string property_name = "ppt";
    std::uint64_t seed = 1;
    std::string witness_out;
    CLI::App* witness =
        app.add_subcommand("witness", "find two property-opposite states the observables cannot tell apart");
    witness->add_option("shape", shape_text, "party dimensions, e.g. 2x2")->required();
    witness->add_option("--observables", observables_file, "JSON array of observables");
    witness->add_option("--random", random_count, "generate this many random observables");
    witness->add_option("--property", property_name, "ppt or separable2xN");
    witness->add_option("--seed", seed, "master seed");
    witness->add_option("--json", witness_out, "write the witness JSON here");

    std::uint64_t upb_seed = 1;
    CLI::App* upb = app.add_subcommand("upb", "certify the three-qubit bound-entangled example");
    upb->add_option("--seed", upb_seed, "seesaw master seed");

    std::string budget_shape;
    CLI::App* budget = app.add_subcommand("budget", "print measurement budgets for a shape");
    budget->add_option("shape", budget_shape, "party dimensions, e.g. 2x2x2")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (app.got_subcommand(verify)) {
            return cmd_verify(state_file, eps, tau, out_path);
        }
        if (app.got_subcommand(witness)) {
            if (observables_file.empty() && random_count <= 0) {
                throw entverify::InvalidConfig("witness: need --observables or --random");
            }
            return cmd_witness(shape_text, observables_file, random_count, property_name, seed,
                               witness_out);
        }
        if (app.got_subcommand(upb)) {
            return cmd_upb(upb_seed);
        }
        if (app.got_subcommand(budget)) {
            return cmd_budget(budget_shape);
        }
    } catch (const entverify::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const entverify::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
    return kExitParse;
}
