#include "gsqg/snapshot.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace gsqg {

namespace {

constexpr std::array<char, 5> kMagic = {'G', 'S', 'Q', 'G', '1'};

template <typename U>
void put_le(std::vector<unsigned char>& out, U value) {
  for (std::size_t b = 0; b < sizeof(U); ++b) out.push_back(static_cast<unsigned char>((value >> (8 * b)) & 0xFF));
}

template <typename U>
U get_le(const unsigned char* p) {
  U value = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) value |= static_cast<U>(p[b]) << (8 * b);
  return value;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const PhysicalField& field) {
  const Grid& grid = *field.grid;
  std::vector<unsigned char> bytes;
  bytes.reserve(kMagic.size() + 4 + 8 + 8 * grid.size());
  bytes.insert(bytes.end(), kMagic.begin(), kMagic.end());
  put_le<std::uint32_t>(bytes, static_cast<std::uint32_t>(grid.n()));
  put_le<std::uint64_t>(bytes, std::bit_cast<std::uint64_t>(grid.period()));
  for (double v : field.samples) put_le<std::uint64_t>(bytes, std::bit_cast<std::uint64_t>(v));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open snapshot for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing snapshot: " + path.string());
}

PhysicalField read_snapshot(const std::filesystem::path& path, double dealias_fraction) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot: " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  const std::size_t header = kMagic.size() + 4 + 8;
  if (bytes.size() < header || std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
    throw IoError("not a GSQG1 snapshot: " + path.string());
  }
  const auto n = get_le<std::uint32_t>(bytes.data() + kMagic.size());
  const double period = std::bit_cast<double>(get_le<std::uint64_t>(bytes.data() + kMagic.size() + 4));
  const std::size_t count = static_cast<std::size_t>(n) * n;
  if (bytes.size() != header + 8 * count) {
    throw IoError("snapshot size does not match its header: " + path.string());
  }

  GridSpec spec{static_cast<int>(n), period, dealias_fraction};
  PhysicalField field{Grid::create(spec), std::vector<double>(count)};
  for (std::size_t i = 0; i < count; ++i) {
    field.samples[i] = std::bit_cast<double>(get_le<std::uint64_t>(bytes.data() + header + 8 * i));
  }
  return field;
}

}  // namespace gsqg
