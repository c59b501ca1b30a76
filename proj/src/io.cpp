#include "entverify/io.hpp"

#include <fstream>

namespace entverify::io {

namespace {

json complex_to_json(cx z) { return json::array({z.real(), z.imag()}); }

cx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("expected [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_data(const ComplexMatrix& m) {
    json data = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            data.push_back(complex_to_json(m(r, c)));
        }
    }
    return data;
}

json vector_data(const ComplexVector& v) {
    json data = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        data.push_back(complex_to_json(v[i]));
    }
    return data;
}

SystemShape shape_from_json(const json& j) {
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty()) {
        throw ParseError("state file: missing or empty \"dims\"");
    }
    std::vector<int> dims;
    for (const json& d : j["dims"]) {
        if (!d.is_number_integer()) {
            throw ParseError("state file: non-integer entry in \"dims\"");
        }
        dims.push_back(d.get<int>());
    }
    try {
        return SystemShape(dims);
    } catch (const BadShape& e) {
        throw ParseError(std::string("state file: ") + e.what());
    }
}

ComplexVector data_as_vector(const json& j, Eigen::Index expected) {
    if (!j.contains("data") || !j["data"].is_array()) {
        throw ParseError("state file: missing \"data\"");
    }
    const json& data = j["data"];
    if (static_cast<Eigen::Index>(data.size()) != expected) {
        throw ParseError("state file: expected " + std::to_string(expected) +
                         " data entries, got " + std::to_string(data.size()));
    }
    ComplexVector v(expected);
    for (Eigen::Index i = 0; i < expected; ++i) {
        v[i] = complex_from_json(data[static_cast<std::size_t>(i)]);
    }
    return v;
}

ComplexMatrix data_as_matrix(const json& j, Eigen::Index d) {
    const ComplexVector flat = data_as_vector(j, d * d);
    ComplexMatrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            m(r, c) = flat[r * d + c];
        }
    }
    return m;
}

void check_kind(const json& j, const std::string& expected) {
    const std::string kind = kind_of(j);
    if (kind != expected) {
        throw ParseError("state file: expected kind \"" + expected + "\", got \"" + kind +
                         "\"");
    }
}

} // namespace

std::string kind_of(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw ParseError("state file: missing \"kind\"");
    }
    return j["kind"].get<std::string>();
}

json to_json(const PureState& psi) {
    return json{{"dims", psi.shape().dims()},
                {"kind", "pure"},
                {"data", vector_data(psi.amplitudes())}};
}

json to_json(const DensityMatrix& rho) {
    return json{{"dims", rho.shape().dims()},
                {"kind", "density"},
                {"data", matrix_data(rho.matrix())}};
}

json to_json(const Observable& obs) {
    return json{{"dims", obs.shape.dims()},
                {"kind", "observable"},
                {"label", obs.label},
                {"data", matrix_data(obs.matrix)}};
}

PureState pure_from_json(const json& j) {
    check_kind(j, "pure");
    const SystemShape shape = shape_from_json(j);
    return PureState(shape, data_as_vector(j, shape.total_dim()));
}

DensityMatrix density_from_json(const json& j) {
    check_kind(j, "density");
    const SystemShape shape = shape_from_json(j);
    return DensityMatrix(shape, data_as_matrix(j, shape.total_dim()));
}

Observable observable_from_json(const json& j) {
    check_kind(j, "observable");
    const SystemShape shape = shape_from_json(j);
    std::string label = "O";
    if (j.contains("label")) {
        if (!j["label"].is_string()) {
            throw ParseError("state file: \"label\" must be a string");
        }
        label = j["label"].get<std::string>();
    }
    return Observable(shape, data_as_matrix(j, shape.total_dim()), std::move(label));
}

json to_json(const Verdict& verdict) {
    json parties = json::array();
    for (const PartyReconstruction& rec : verdict.reconstructions) {
        json alphas = json::array();
        for (const cx& a : rec.alphas) {
            alphas.push_back(complex_to_json(a));
        }
        parties.push_back(json{{"k", rec.k},
                               {"l", rec.l},
                               {"s", rec.s},
                               {"alphas", std::move(alphas)}});
    }
    return json{{"b", verdict.b},
                {"total_observables", verdict.total_observables},
                {"parties", std::move(parties)}};
}

json to_json(const MeasurementLedger& ledger) {
    json out = json::array();
    for (const MeasurementLedger::Entry& e : ledger.entries()) {
        out.push_back(json{{"label", e.label}, {"value", e.value}});
    }
    return out;
}

json to_json(const WitnessPair& pair, std::int64_t observable_count) {
    return json{{"rho", to_json(pair.rho)},
                {"sigma", to_json(pair.sigma)},
                {"report",
                 json{{"max_stat_gap", pair.max_stat_gap},
                      {"property", pair.property_name},
                      {"observable_count", observable_count}}}};
}

json to_json(const SearchReport& report) {
    json attempts = json::array();
    for (const SearchAttempt& a : report.attempts) {
        attempts.push_back(json{{"base_index", a.base_index},
                                {"direction_index", a.direction_index},
                                {"r_star", a.r_star},
                                {"base_property", a.base_property}});
    }
    return json{{"kernel_dim", report.kernel_dim},
                {"bases_tried", report.bases_tried},
                {"directions_tried", report.directions_tried},
                {"attempts", std::move(attempts)}};
}

json to_json(const SeesawResult& result) {
    json product = json::array();
    for (const ComplexVector& f : result.best_product) {
        product.push_back(vector_data(f));
    }
    return json{{"best_overlap", result.best_overlap},
                {"best_product", std::move(product)},
                {"restarts", result.restarts},
                {"iterations_per_restart", result.iterations_per_restart},
                {"converged", result.converged}};
}

json to_json(const DepthReport& report) {
    return json{{"partition", report.partition}, {"depth", report.depth}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write " + path);
    }
    out << j.dump(2) << "\n";
}

} // namespace entverify::io
