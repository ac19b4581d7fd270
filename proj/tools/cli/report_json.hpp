#pragma once

// JSON shapes of the report artifacts written by the command-line tool.

#include <string>
#include <vector>

#include "json.hpp"

#include "invscheme/backlund.hpp"
#include "invscheme/integrals.hpp"
#include "invscheme/schemes.hpp"
#include "invscheme/symmetry.hpp"

namespace invscheme::cli {

using nlohmann::json;

json to_json(const SchemeParams& p);

/// {name, mean, max_abs_drift, values: [...]}
json to_json(const IntegralReport& r);

/// {scheme, n, residuals: [...], params}
json residual_record(const std::string& scheme, long n,
                     const std::vector<double>& residuals, const json& params);

/// {direction, alphas: {alpha1, alpha2}, max_residual, verdict, ...}
json to_json(const CompatibilityReport& r);

/// {scheme, generator, s, max_residual, pass}
json to_json(const InvarianceRow& r);

json to_json(const ConvergenceStudy& s);

/// Writes `j` pretty-printed with a trailing newline.
void write_json(const std::string& path, const json& j);

}  // namespace invscheme::cli
