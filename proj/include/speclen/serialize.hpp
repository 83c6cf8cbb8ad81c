#pragma once

#include <string>

#include "speclen/spectral_triple.hpp"

namespace speclen {

inline constexpr int kTripleSchemaVersion = 1;

/**
 * Serialize a triple to the versioned JSON schema {schema_version, points:
 * [[label, coords...]], spinor_dim, weights, dirac: {n, entries: [[row, col,
 * re, im], ...]}}. Dirac entries are the nonzero values in (row, col) order;
 * doubles print in shortest round-trip form, so the round trip is bit-exact.
 */
std::string triple_to_json(const SpectralTriple& t);

/** Parse the schema back into a validated triple (edge bookkeeping is not part of the schema). */
SpectralTriple triple_from_json(const std::string& text);

void save_triple(const SpectralTriple& t, const std::string& path);
SpectralTriple load_triple(const std::string& path);

/** Double formatted with 17 significant digits (CSV float convention). */
std::string fmt17(double v);

}  // namespace speclen
