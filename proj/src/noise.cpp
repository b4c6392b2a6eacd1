#include "qpflow/noise.hpp"

#include <bit>
#include <stdexcept>

namespace qpflow {

std::uint64_t NoiseField::word(std::int64_t t, std::int64_t x) const {
  // Zig-zag fold of x into an unsigned counter, injective over all of int64.
  std::uint64_t u;
  if (x >= 0)
    u = static_cast<std::uint64_t>(x) * 2;
  else
    u = static_cast<std::uint64_t>(-(x + 1)) * 2 + 1;

  const std::uint64_t m = seed_ ^
                          (static_cast<std::uint64_t>(t) * 0x9E3779B97F4A7C15ull) ^
                          std::rotl(u * 0xBF58476D1CE4E5B9ull, 31);

  std::uint64_t z = m;
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

std::vector<int> noise_row(const Noise& field, std::int64_t t, const Domain& domain) {
  std::vector<int> row(static_cast<std::size_t>(domain.size()));
  for (std::int64_t i = 0; i < domain.size(); ++i)
    row[static_cast<std::size_t>(i)] = field.bit(t, domain.site(i));
  return row;
}

void NoiseTable::set_row(std::int64_t t, const Domain& domain, const std::vector<int>& row) {
  if (static_cast<std::int64_t>(row.size()) != domain.size())
    throw std::invalid_argument("NoiseTable::set_row: row size does not match domain");
  for (std::int64_t i = 0; i < domain.size(); ++i)
    set(t, domain.site(i), row[static_cast<std::size_t>(i)]);
}

}  // namespace qpflow
