#pragma once

#include <string>
#include <variant>

#include "sepcert/search.hpp"

namespace sepcert {

/// Parsed state file: {"kind": "pure"|"density", "data": ...} with complex
/// numbers as [re, im] pairs -- 4 pairs for a ket, a 4x4 array of pairs for
/// a density matrix.
struct StateDocument {
    std::variant<PureState, DensityMatrix> state;

    bool is_pure() const { return std::holds_alternative<PureState>(state); }
    /// The density matrix to analyze (pure states are projected up).
    DensityMatrix density() const;
};

StateDocument parse_state_document(const std::string& text, double tol = 1e-9);
StateDocument load_state_file(const std::string& path, double tol = 1e-9);

std::string serialize_pure(const PureState& p);
std::string serialize_density(const DensityMatrix& rho);

/// Flat, machine-readable analysis record. Serializes to JSON and parses
/// back losslessly.
struct ReportDocument {
    std::string verdict;
    double min_m_plus;
    double min_m_minus_observed;
    std::array<double, 6> witness_angles;
    std::array<double, 4> ppt_spectrum;
    double ppt_min_eigenvalue;
    std::string ppt_verdict;
    bool agreement;
    bool converged;
    double concurrence;
    double chsh_max;
    std::string version;
    uint64_t seed;
    // config echo
    int grid_points_per_angle;
    int refinement_iterations;
    double refinement_tolerance;
    double violation_threshold;
    double validation_tol;

    bool operator==(const ReportDocument&) const = default;
};

ReportDocument make_report(const CriterionReport& cr, double concurrence_value, double chsh_value,
                           uint64_t seed, const SearchConfig& cfg, double validation_tol);

std::string serialize_report(const ReportDocument& r);
ReportDocument parse_report(const std::string& text);

/// Doubles printed with 17 significant digits (round-trip exact).
std::string format_double(double x);

}  // namespace sepcert
