#ifndef QPFLOW_NOISE_HPP
#define QPFLOW_NOISE_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qpflow/domain.hpp"

namespace qpflow {

// Space-time coin field omega(t, x) in {0, 1}.  All dynamics in this library
// consume noise through this interface so tests can substitute explicit
// tables for the counter-based generator.
class Noise {
 public:
  virtual ~Noise() = default;
  virtual int bit(std::int64_t t, std::int64_t x) const = 0;
};

// Counter-based field: the bit at (t, x) is a pure function of (seed, t, x),
// so arbitrary space-time points can be evaluated in any order and the same
// seed always reproduces the same field.
//
// Pipeline (all arithmetic mod 2^64):
//   u(x)  = 2x for x >= 0, -2x-1 for x < 0          (zig-zag)
//   m     = seed XOR (t * 0x9E3779B97F4A7C15)
//                XOR rotl(u(x) * 0xBF58476D1CE4E5B9, 31)
//   z     = splitmix64 finalizer of m
//   bit   = top bit of z
class NoiseField : public Noise {
 public:
  explicit NoiseField(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Full 64-bit word before thresholding; exposed for statistical tests.
  std::uint64_t word(std::int64_t t, std::int64_t x) const;

  int bit(std::int64_t t, std::int64_t x) const override {
    return static_cast<int>(word(t, x) >> 63);
  }

 private:
  std::uint64_t seed_;
};

inline int noise_bit(const NoiseField& field, std::int64_t t, std::int64_t x) {
  return field.bit(t, x);
}

// Bits for every stored site of the domain, in site order.
std::vector<int> noise_row(const Noise& field, std::int64_t t, const Domain& domain);

// Explicit noise assignment for tests and crafted counterexamples.  Bits not
// present in the table fall back to default_bit.
class NoiseTable : public Noise {
 public:
  explicit NoiseTable(int default_bit = 0) : default_bit_(default_bit) {}

  void set(std::int64_t t, std::int64_t x, int bit) { bits_[key(t, x)] = bit; }

  // Installs row t over the domain sites, row[i] belonging to domain.site(i).
  void set_row(std::int64_t t, const Domain& domain, const std::vector<int>& row);

  int bit(std::int64_t t, std::int64_t x) const override {
    auto it = bits_.find(key(t, x));
    return it == bits_.end() ? default_bit_ : it->second;
  }

 private:
  // Exact pairing for the ranges tests use (|t|, |x| < 2^31).
  static std::uint64_t key(std::int64_t t, std::int64_t x) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
  }
  std::unordered_map<std::uint64_t, int> bits_;
  int default_bit_;
};

// View of another field with time shifted forward by t_offset.  Together with
// flows started from intermediate states this expresses the cocycle property
// phi(t+s, w) = phi(t, shift_s w) o phi(s, w).
class ShiftedNoise : public Noise {
 public:
  ShiftedNoise(const Noise& base, std::int64_t t_offset)
      : base_(base), t_offset_(t_offset) {}

  int bit(std::int64_t t, std::int64_t x) const override {
    return base_.bit(t + t_offset_, x);
  }

 private:
  const Noise& base_;
  std::int64_t t_offset_;
};

}  // namespace qpflow

#endif  // QPFLOW_NOISE_HPP
