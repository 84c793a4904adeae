#pragma once

#include <cstdint>
#include <random>

#include "hgraph/field.hpp"

namespace hgraph {

/// Deterministic uniform double in [-1, 1) from the top 53 bits of an
/// mt19937_64 draw (bit-stable across standard libraries).
double uniform_pm1(std::mt19937_64& rng);

/// Smooth trigonometric field with frequencies up to max_freq per axis,
/// normalized to |f|_inf = amplitude.  With compact=true the field is
/// multiplied by the product sine bump and forced to exactly 0 on the
/// boundary.  Bit-stable for a fixed seed.
ScalarField smooth_random_field(GridPtr dom, std::uint64_t seed, double amplitude, int max_freq = 2,
                                bool compact = false);

/// Product bump prod_k sin(pi t_k) in box-normalized coordinates, normalized
/// to max 1, exactly 0 on the boundary.
ScalarField cosine_bump(GridPtr dom);

/// Seeded low-frequency sine sum vanishing exactly on the boundary,
/// normalized to |.|_inf = 1.
ScalarField random_bump(GridPtr dom, std::uint64_t seed, int max_freq = 3);

}  // namespace hgraph
