#pragma once

#include <string>
#include <vector>

#include "stokesrec/balayage.hpp"
#include "stokesrec/bem.hpp"
#include "stokesrec/bergman.hpp"
#include "stokesrec/moments.hpp"
#include "stokesrec/prony.hpp"

namespace stokesrec {

// Scenario file: JSON with an outer curve, a list of obstacle curves and a
// disjointness margin; each curve carries {kind, center, kind-specific
// parameters, n}. Parsing validates the schema (parse_error) and all
// geometry invariants (validation_error).
Scenario parse_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& text);
std::string scenario_to_text(const Scenario& s);

// MeasurementSet file: the forward/inverse contract. Holds the Gamma0 mesh
// data, every f_k and q0_k, m, the kernel constants and provenance.
void save_measurements(const MeasurementSet& ms, const std::string& path);
MeasurementSet load_measurements(const std::string& path);

// MomentTable: CSV rows (j, k, Re, Im) plus a JSON header next to it.
void save_moments(const MomentTable& table, const std::string& csv_path);
MomentTable load_moments(const std::string& csv_path);
std::string moments_header_path(const std::string& csv_path);

void save_prony(const PronySolution& sol, const std::string& path);
PronySolution load_prony(const std::string& path);

// Contour polylines as CSV (level, vertex, x, y); the vertex index restarts
// at 0 for each polyline and closed rings repeat their first point.
void save_contours(const std::vector<Contour>& contours, const std::string& path);
std::vector<Contour> load_contours(const std::string& path);

// Flat CSV grid (x, y, value) and binary PGM raster of a grid field.
void save_grid_csv(const GridField& field, const std::string& path);
void save_pgm(const GridField& field, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace stokesrec
