#pragma once

#include <filesystem>

#include "gsqg/spectral_field.hpp"

namespace gsqg {

/// GSQG1 snapshot: ASCII "GSQG1", little-endian u32 n, f64 period, then n*n little-endian f64
/// physical samples in row-major order. Reading back what was written is bit-exact.
void write_snapshot(const std::filesystem::path& path, const PhysicalField& field);
PhysicalField read_snapshot(const std::filesystem::path& path, double dealias_fraction = 2.0 / 3.0);

}  // namespace gsqg
