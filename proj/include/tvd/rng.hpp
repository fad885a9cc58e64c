#pragma once

#include <cstdint>
#include <vector>

namespace tvd {

//! SplitMix64 step; used for seeding and for deriving independent sub-seeds.
std::uint64_t splitmix64(std::uint64_t& state);

//! Deterministic sub-seed for a (seed, stream tag) pair.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

//! xoshiro256** seeded through SplitMix64. Standard normals use Box-Muller
//! with the second variate cached, so a given seed reproduces bit-exactly
//! within one build.
class Rng
{
public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  //! Uniform on [0, 1) with 53 random bits.
  double uniform();
  //! Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }
  double normal();
  //! Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);

  double exponential(double rate);
  double gamma(double shape, double rate);
  double beta(double a, double b);

private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

//! Uniformly random permutation of 0..n-1 (Fisher-Yates).
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

} // namespace tvd
