#pragma once

// Tomogram CSV: header "X,theta,w", rows theta-major then X ascending.
// Phase-space CSV: header "q,p,f", q-major. Floats use the shortest decimal
// form that round-trips.

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "tomokit/radon.hpp"
#include "tomokit/states.hpp"

namespace tomo::io {

std::string format_double(double v);

std::string tomogram_csv(const OpticalTomogram& w);
std::string phase_csv(const PhaseSpaceField& f);

/// Ingests a tomogram CSV. Shape problems (header, ragged slices, non-uniform
/// X or angle spacing, partial angular coverage) raise NumericGuard, as do
/// slices whose mass is off by more than 1e-2; smaller deficits are
/// renormalized.
OpticalTomogram parse_tomogram_csv(std::istream& in);
OpticalTomogram read_tomogram_csv(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace tomo::io
