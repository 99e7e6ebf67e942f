#include "aisel/gauss_hermite.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "aisel/weights.hpp"

namespace aisel {

namespace {

// Positive half of the symmetric 32-point rule; node 0 mirrors node 31 etc.
constexpr std::array<double, 16> kHalfNodes = {
    1.94840741569399345e-01, 5.84978765435932413e-01, 9.76500463589682788e-01,
    1.37037641095287177e+00, 1.76765410946320145e+00, 2.16949918360611216e+00,
    2.57724953773231746e+00, 2.99249082500237407e+00, 3.41716749281857091e+00,
    3.85375548547144486e+00, 4.30554795335119866e+00, 4.77716450350259603e+00,
    5.27555098651588050e+00, 5.81222594951591365e+00, 6.40949814926966077e+00,
    7.12581390983072804e+00};

constexpr std::array<double, 16> kHalfLogWeights = {
    -9.80193848010107449e-01, -1.28208519572236757e+00,
    -1.88869071734807958e+00, -2.80580420383819318e+00,
    -4.04250597313504567e+00, -5.61168919261789334e+00,
    -7.53087584023768919e+00, -9.82346009510441576e+00,
    -1.25206230937489185e+01, -1.56643689040109741e+01,
    -1.93125637416709175e+01, -2.35478569110603679e+01,
    -2.84949541948557155e+01, -3.43586706102169188e+01,
    -4.15264695956004530e+01, -5.09701213348565503e+01};

std::array<double, 32> make_nodes() {
  std::array<double, 32> out{};
  for (int i = 0; i < 16; ++i) {
    out[15 - i] = -kHalfNodes[i];
    out[16 + i] = kHalfNodes[i];
  }
  return out;
}

std::array<double, 32> make_log_weights() {
  std::array<double, 32> out{};
  for (int i = 0; i < 16; ++i) {
    out[15 - i] = kHalfLogWeights[i];
    out[16 + i] = kHalfLogWeights[i];
  }
  return out;
}

const double kLogSqrtPi = 0.5 * std::log(std::numbers::pi);

}  // namespace

const std::array<double, 32> GaussHermite32::nodes = make_nodes();
const std::array<double, 32> GaussHermite32::log_weights = make_log_weights();

double log_gh_integrate_normal(const std::function<double(double)>& log_f,
                               double mean, double sd) {
  // integral f(x) N(x; m, s^2) dx = (1/sqrt(pi)) sum_i w_i f(m + sqrt(2) s x_i)
  std::vector<double> terms(GaussHermite32::n);
  const double c = std::sqrt(2.0) * sd;
  for (int i = 0; i < GaussHermite32::n; ++i) {
    terms[i] = GaussHermite32::log_weights[i] +
               log_f(mean + c * GaussHermite32::nodes[i]);
  }
  return log_sum_exp(terms) - kLogSqrtPi;
}

double log_gh_integrate_2d(const std::function<double(double, double)>& log_g,
                           double mode_x, double mode_y, double scale_x,
                           double scale_y) {
  // integral g = 2 sx sy sum_ij w_i w_j exp(x_i^2 + x_j^2)
  //              g(mx + sqrt(2) sx x_i, my + sqrt(2) sy x_j)
  const double cx = std::sqrt(2.0) * scale_x;
  const double cy = std::sqrt(2.0) * scale_y;
  std::vector<double> terms;
  terms.reserve(GaussHermite32::n * GaussHermite32::n);
  for (int i = 0; i < GaussHermite32::n; ++i) {
    const double xi = GaussHermite32::nodes[i];
    const double lwx = GaussHermite32::log_weights[i] + xi * xi;
    for (int j = 0; j < GaussHermite32::n; ++j) {
      const double xj = GaussHermite32::nodes[j];
      terms.push_back(lwx + GaussHermite32::log_weights[j] + xj * xj +
                      log_g(mode_x + cx * xi, mode_y + cy * xj));
    }
  }
  return log_sum_exp(terms) + std::log(2.0 * scale_x * scale_y);
}

}  // namespace aisel
