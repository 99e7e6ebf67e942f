#pragma once

#include <cstdint>
#include <random>

namespace aisel {

/// Deterministic seed derivation: hashes a root seed with up to three
/// stream indices so that (root, batch, temperature, particle) always maps
/// to the same stream regardless of thread scheduling.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t s1 = 0,
                          std::uint64_t s2 = 0, std::uint64_t s3 = 0);

/// A self-contained random stream. Streams are cheap to create; parallel
/// code makes one per unit of work via derive_seed and never shares them.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  static RngStream child(std::uint64_t root, std::uint64_t s1 = 0,
                         std::uint64_t s2 = 0, std::uint64_t s3 = 0) {
    return RngStream(derive_seed(root, s1, s2, s3));
  }

  /// U(0,1), never exactly 0 or 1.
  double uniform();
  /// N(0,1)
  double normal();
  double gamma(double shape, double scale);
  double chi_squared(double df);
  /// integer in [0, n)
  std::size_t uniform_index(std::size_t n);

  std::mt19937_64& generator() { return gen_; }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace aisel
