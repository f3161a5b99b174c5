#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace hdclt {

/// Counter-based Philox4x32-10 block cipher. Each (key, stream) pair yields an
/// independent stream; outputs are a pure function of (key, stream, counter),
/// so replications are reproducible regardless of scheduling.
class Philox4x32 {
 public:
  Philox4x32(std::uint64_t key, std::uint64_t stream) noexcept
      : key0_(static_cast<std::uint32_t>(key)),
        key1_(static_cast<std::uint32_t>(key >> 32)),
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)),
        block_(0),
        have_(0) {}

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type(0); }

  result_type operator()() noexcept {
    if (have_ == 0) refill();
    return out_[--have_];
  }

 private:
  void refill() noexcept {
    std::uint32_t c0 = static_cast<std::uint32_t>(block_);
    std::uint32_t c1 = static_cast<std::uint32_t>(block_ >> 32);
    std::uint32_t c2 = stream_lo_;
    std::uint32_t c3 = stream_hi_;
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t(0xD2511F53u) * c0;
      const std::uint64_t p1 = std::uint64_t(0xCD9E8D57u) * c2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      c0 = hi1 ^ c1 ^ k0;
      c1 = lo1;
      c2 = hi0 ^ c3 ^ k1;
      c3 = lo0;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    out_[0] = (std::uint64_t(c0) << 32) | c1;
    out_[1] = (std::uint64_t(c2) << 32) | c3;
    have_ = 2;
    ++block_;
  }

  std::uint32_t key0_, key1_, stream_lo_, stream_hi_;
  std::uint64_t block_;
  std::uint64_t out_[2];
  int have_;
};

/// Deterministic stream of doubles keyed by (master_seed, stream_id). The
/// stream for a given pair is bit-identical across runs and thread counts.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept
      : engine_(master_seed, stream_id),
        master_seed_(master_seed),
        stream_id_(stream_id),
        cached_normal_(0),
        has_cached_normal_(false) {}

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() noexcept { return engine_(); }

  /// Uniform on the open interval (0, 1); never returns 0 or 1, safe for log().
  double uniform() noexcept {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
  }

  /// Standard normal via Box-Muller (pair cached).
  double normal() noexcept {
    if (has_cached_normal_) {
      has_cached_normal_ = false;
      return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_normal_ = r * std::sin(a);
    has_cached_normal_ = true;
    return r * std::cos(a);
  }

  /// Standard exponential.
  double exponential() noexcept { return -std::log(uniform()); }

  /// Beta(1/2, 3/2) via the gamma-ratio representation
  /// Z1^2 / (Z1^2 + Z2^2 + 2E) with Z normal, E exponential.
  double beta_half_threehalf() noexcept {
    const double z1 = normal();
    const double z2 = normal();
    const double e = exponential();
    return z1 * z1 / (z1 * z1 + z2 * z2 + 2.0 * e);
  }

  double rademacher() noexcept { return (engine_() & 1u) ? 1.0 : -1.0; }

  // Bulk fills (vectorized transforms); deterministic for a given stream but
  // not interleavable with the scalar calls above.
  void fill_uniform(std::span<double> out) noexcept;
  void fill_normal(std::span<double> out) noexcept;
  void fill_exponential(std::span<double> out) noexcept;

  /// Derive a child stream; mixes the parent stream_id so distinct parents
  /// produce disjoint child families.
  RngStream substream(std::uint64_t k) const noexcept {
    return RngStream(master_seed_, mix(stream_id_, k));
  }

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t x = a + 0x9E3779B97F4A7C15ull * (b + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
  }

 private:
  Philox4x32 engine_;
  std::uint64_t master_seed_, stream_id_;
  double cached_normal_;
  bool has_cached_normal_;
};

}  // namespace hdclt
