#include "sepcert/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sepcert/version.hpp"
#include "json.hpp"

namespace sepcert {

using nlohmann::json;

namespace {

cplx parse_pair(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(Error::Kind::Parse,
                    "parse error: " + where + " must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json pair_of(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

DensityMatrix StateDocument::density() const {
    if (is_pure()) return pure_to_density(std::get<PureState>(state));
    return std::get<DensityMatrix>(state);
}

StateDocument parse_state_document(const std::string& text, double tol) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Error::Kind::Parse, std::string("parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j.contains("data"))
        throw Error(Error::Kind::Parse, "parse error: expected fields 'kind' and 'data'");
    const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
    const json& data = j["data"];

    if (kind == "pure") {
        if (!data.is_array() || data.size() != 4)
            throw Error(Error::Kind::Parse, "parse error: pure data must be 4 [re, im] pairs");
        std::array<cplx, 4> amp;
        for (int i = 0; i < 4; ++i)
            amp[static_cast<size_t>(i)] = parse_pair(data[static_cast<size_t>(i)],
                                                     "data[" + std::to_string(i) + "]");
        return StateDocument{PureState(amp)};
    }
    if (kind == "density") {
        if (!data.is_array() || data.size() != 4)
            throw Error(Error::Kind::Parse, "parse error: density data must be 4 rows");
        CMat m(4, 4);
        for (int i = 0; i < 4; ++i) {
            const json& row = data[static_cast<size_t>(i)];
            if (!row.is_array() || row.size() != 4)
                throw Error(Error::Kind::Parse,
                            "parse error: row " + std::to_string(i) + " must have 4 pairs");
            for (int k = 0; k < 4; ++k)
                m(i, k) = parse_pair(row[static_cast<size_t>(k)],
                                     "data[" + std::to_string(i) + "][" + std::to_string(k) + "]");
        }
        return StateDocument{validate_density(m, tol)};
    }
    throw Error(Error::Kind::Parse, "parse error: kind must be \"pure\" or \"density\"");
}

StateDocument load_state_file(const std::string& path, double tol) {
    std::ifstream in(path);
    if (!in)
        throw Error(Error::Kind::Parse, "parse error: cannot open file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_state_document(ss.str(), tol);
}

std::string serialize_pure(const PureState& p) {
    json data = json::array();
    for (int i = 0; i < 4; ++i) data.push_back(pair_of(p[i]));
    return json{{"kind", "pure"}, {"data", data}}.dump();
}

std::string serialize_density(const DensityMatrix& rho) {
    json data = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int k = 0; k < 4; ++k) row.push_back(pair_of(rho.matrix()(i, k)));
        data.push_back(row);
    }
    return json{{"kind", "density"}, {"data", data}}.dump();
}

ReportDocument make_report(const CriterionReport& cr, double concurrence_value, double chsh_value,
                           uint64_t seed, const SearchConfig& cfg, double validation_tol) {
    ReportDocument r;
    r.verdict = to_string(cr.verdict);
    r.min_m_plus = cr.min_m_plus;
    r.min_m_minus_observed = cr.min_m_minus_observed;
    r.witness_angles = cr.witness_frame.flat_angles();
    r.ppt_spectrum = cr.ppt.spectrum;
    r.ppt_min_eigenvalue = cr.ppt.min_eigenvalue;
    r.ppt_verdict = to_string(cr.ppt.verdict);
    r.agreement = cr.agreement;
    r.converged = cr.converged;
    r.concurrence = concurrence_value;
    r.chsh_max = chsh_value;
    r.version = kVersion;
    r.seed = seed;
    r.grid_points_per_angle = cfg.grid_points_per_angle;
    r.refinement_iterations = cfg.refinement_iterations;
    r.refinement_tolerance = cfg.refinement_tolerance;
    r.violation_threshold = cfg.violation_threshold;
    r.validation_tol = validation_tol;
    return r;
}

std::string serialize_report(const ReportDocument& r) {
    json j;
    j["verdict"] = r.verdict;
    j["min_m_plus"] = r.min_m_plus;
    j["min_m_minus_observed"] = r.min_m_minus_observed;
    j["witness_angles"] = r.witness_angles;
    j["ppt_spectrum"] = r.ppt_spectrum;
    j["ppt_min_eigenvalue"] = r.ppt_min_eigenvalue;
    j["ppt_verdict"] = r.ppt_verdict;
    j["agreement"] = r.agreement;
    j["converged"] = r.converged;
    j["concurrence"] = r.concurrence;
    j["chsh_max"] = r.chsh_max;
    j["version"] = r.version;
    j["seed"] = r.seed;
    j["config"] = {{"grid_points_per_angle", r.grid_points_per_angle},
                   {"refinement_iterations", r.refinement_iterations},
                   {"refinement_tolerance", r.refinement_tolerance},
                   {"violation_threshold", r.violation_threshold},
                   {"validation_tol", r.validation_tol}};
    return j.dump(2);
}

ReportDocument parse_report(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Error::Kind::Parse, std::string("parse error: ") + e.what());
    }
    try {
        ReportDocument r;
        r.verdict = j.at("verdict").get<std::string>();
        r.min_m_plus = j.at("min_m_plus").get<double>();
        r.min_m_minus_observed = j.at("min_m_minus_observed").get<double>();
        r.witness_angles = j.at("witness_angles").get<std::array<double, 6>>();
        r.ppt_spectrum = j.at("ppt_spectrum").get<std::array<double, 4>>();
        r.ppt_min_eigenvalue = j.at("ppt_min_eigenvalue").get<double>();
        r.ppt_verdict = j.at("ppt_verdict").get<std::string>();
        r.agreement = j.at("agreement").get<bool>();
        r.converged = j.at("converged").get<bool>();
        r.concurrence = j.at("concurrence").get<double>();
        r.chsh_max = j.at("chsh_max").get<double>();
        r.version = j.at("version").get<std::string>();
        r.seed = j.at("seed").get<uint64_t>();
        const json& cfg = j.at("config");
        r.grid_points_per_angle = cfg.at("grid_points_per_angle").get<int>();
        r.refinement_iterations = cfg.at("refinement_iterations").get<int>();
        r.refinement_tolerance = cfg.at("refinement_tolerance").get<double>();
        r.violation_threshold = cfg.at("violation_threshold").get<double>();
        r.validation_tol = cfg.at("validation_tol").get<double>();
        return r;
    } catch (const json::exception& e) {
        throw Error(Error::Kind::Parse, std::string("parse error: ") + e.what());
    }
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace sepcert
