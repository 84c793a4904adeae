#pragma once

#include <string>

#include "hgraph/field.hpp"

namespace hgraph {

/// CSV export: one header row (x1,...,x2n,value), then one row per node in
/// the canonical node order (row-major, axis 1 fastest).  Numbers use the
/// shortest round-trip decimal form, so identical inputs give bit-stable
/// files and import reproduces the field exactly.  RFC-4180 quoting.
void export_field_csv(const ScalarField& f, const std::string& path);

/// Import against an existing domain; validates the row count and the node
/// coordinates.  Throws std::runtime_error on malformed input.
ScalarField import_field_csv(GridPtr dom, const std::string& path);

/// Structured JSON export: domain spec plus a flat value array in canonical
/// node order; round-trips bitwise.
void export_field_json(const ScalarField& f, const std::string& path);

/// Rebuilds domain and field from a JSON export.
ScalarField import_field_json(const std::string& path);

/// Builds a field from a JSON spec (object with a "type" key):
///   zero | constant {value} | coordinate {axis} | linear {coefficients}
///   | polynomial {monomials:[{coefficient, exponents}]}
///   | random_smooth {seed, amplitude, max_freq, compact}
///   | bump_cosine {amplitude} | bump_random {seed, amplitude, max_freq}
/// plus an optional additive "shift".
ScalarField field_from_spec(GridPtr dom, const std::string& json_spec);

/// Builds a GridDomain from a JSON object {n, m, lo?, hi?}; lo/hi default to
/// the unit box.  `m` may be a scalar or per-axis array.
GridPtr domain_from_spec(const std::string& json_spec);

}  // namespace hgraph
