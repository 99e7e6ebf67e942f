#include "aisel/rng.hpp"

namespace aisel {

namespace {

// splitmix64 finalizer; good avalanche, standard constants.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t s1,
                          std::uint64_t s2, std::uint64_t s3) {
  std::uint64_t h = mix(root);
  h = mix(h ^ (s1 + 0x1000000001ULL));
  h = mix(h ^ (s2 + 0x2000000002ULL));
  h = mix(h ^ (s3 + 0x3000000003ULL));
  return h;
}

double RngStream::uniform() {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x;
  do {
    x = u(gen_);
  } while (x <= 0.0 || x >= 1.0);
  return x;
}

double RngStream::normal() { return normal_(gen_); }

double RngStream::gamma(double shape, double scale) {
  std::gamma_distribution<double> g(shape, scale);
  return g(gen_);
}

double RngStream::chi_squared(double df) {
  std::chi_squared_distribution<double> c(df);
  return c(gen_);
}

std::size_t RngStream::uniform_index(std::size_t n) {
  std::uniform_int_distribution<std::size_t> d(0, n - 1);
  return d(gen_);
}

}  // namespace aisel
