#pragma once

#include <string>

#include "graphon/grid.hpp"
#include "graphon/optimizer.hpp"
#include "graphon/sampler.hpp"
#include "graphon/series.hpp"

namespace graphon {

// Every floating value is written with 17 significant digits. The schemas
// are described in docs/report-schema.md.

inline constexpr const char* kCsvHeader =
    "eps,tau,regime,a,b,c,d,mu,entropy,grad_norm,iterations,converged,residual_eps,residual_tau";

std::string csv_row(const SolverReport& r);

std::string report_to_json(const SolverReport& r);
// Throws DomainError on missing fields or malformed input.
SolverReport report_from_json(const std::string& text);

std::string series_to_json(const SeriesPrediction& p, Regime regime, double e, double scale, int k);
std::string diagnostics_to_json(const Diagnostics& d);
std::string mc_report_to_json(const McReport& r);

}  // namespace graphon
