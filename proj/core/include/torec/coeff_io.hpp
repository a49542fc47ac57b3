#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "torec/measurements.hpp"
#include "torec/trig_polynomial.hpp"

namespace torec {

// Coefficient tables travel as CSV: header "xi_1,...,xi_d,re,im", rows in
// lexicographic frequency order, doubles printed with %.17g so a write/read
// round trip is bit exact.

std::string coeffs_to_csv(const std::vector<std::pair<FrequencyIndex, cplx>>& entries, int dim);
std::vector<std::pair<FrequencyIndex, cplx>> coeffs_from_csv(const std::string& text,
                                                             int expect_dim = -1);

void coeffs_write(const std::string& path,
                  const std::vector<std::pair<FrequencyIndex, cplx>>& entries, int dim);
std::vector<std::pair<FrequencyIndex, cplx>> coeffs_read(const std::string& path,
                                                         int expect_dim = -1);

// Measurement files add "# phantom=" above the CSV header.
void measurements_write(const std::string& path, const Measurements& meas);
Measurements measurements_read(const std::string& path);

// All coefficients of a polynomial's block, lex order.
std::vector<std::pair<FrequencyIndex, cplx>> poly_entries(const TrigPolynomial& f);

// Grid rasters go out as 16-bit binary PGM (big-endian samples, row major)
// with a JSON sidecar recording the affine value range, written to
// path + ".json". Rescaling maps [min,max] onto [0,65535].
void grid_write_pgm(const std::string& path, const GridField& field);
GridField grid_read_pgm(const std::string& path);  // values restored from the sidecar range

// Plain-value raster: one grid row per line, comma separated, %.17g.
std::string grid_to_csv(const GridField& field);
void grid_write_csv(const std::string& path, const GridField& field);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// FNV-1a, 64-bit: content fingerprints for run manifests.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64_str(const std::string& s);
std::uint64_t fnv1a64_file(const std::string& path);
std::string hash_hex(std::uint64_t h);

}  // namespace torec
