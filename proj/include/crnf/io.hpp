#pragma once

#include "crnf/normalform.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace crnf::io {

using Json = nlohmann::ordered_json;

Json coeff_to_json(const GaussCoeff &c);
/// `where` prefixes diagnostics, e.g. "terms[0].monomials[2]".
GaussCoeff coeff_from_json(const Json &j, const std::string &where);

/// [{"dz": [...], "dzb": [...], "re": "p/q", "im": "p/q"}, ...] in canonical order.
Json monomials_to_json(const BihomPoly &p);
BihomPoly monomials_from_json(const Json &j, int n_vars, Bidegree bidegree, const std::string &where);

/// {"n_vars", "degree", "terms": [{"m", "n", "monomials"}]}.
Json manifold_to_json(const Manifold &m);
/// Throws ParseError with the offending path for malformed input, duplicate
/// monomials or parts, exponent/bidegree mismatches and parts of degree < 3.
Manifold manifold_from_json(const Json &j);

/// {"n_vars", "max_normal_weight", "F": [{"m", "n", "components": [monomials...]}],
///  "G": [{"m", "n", "monomials"}]}. The identity terms are written too.
Json map_to_json(const FormalMap &t);
FormalMap map_from_json(const Json &j);

Json invariants_to_json(const InvariantData &inv);
Json residuals_to_json(const ResidualReport &r);
Json solver_log_to_json(const std::vector<SolverLogEntry> &log);

/// Top-level report {status, invariants, map, manifold, residuals, solver_log};
/// absent pieces are null.
struct ReportParts {
    std::string status;
    const InvariantData *invariants = nullptr;
    const FormalMap *map = nullptr;
    const Manifold *manifold = nullptr;
    const ResidualReport *residuals = nullptr;
    const std::vector<SolverLogEntry> *solver_log = nullptr;
};
Json report_to_json(const ReportParts &parts);

/// Reads and parses a JSON file; ParseError on I/O or syntax failure.
Json read_json_file(const std::filesystem::path &path);
/// Writes `text` to a sibling temporary and renames it over `path`.
void write_file_atomic(const std::filesystem::path &path, const std::string &text);

} // namespace crnf::io
