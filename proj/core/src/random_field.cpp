#include "hgraph/random_field.hpp"

#include <cmath>
#include <random>

namespace hgraph {

double uniform_pm1(std::mt19937_64& rng) {
  const double t = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * t - 1.0;
}

namespace {

// box-normalized coordinate t_k(x) in [0,1]
double unit_coord(const GridDomain& dom, NodeIndex x, int axis) {
  return (dom.coordinate(x, axis) - dom.low()[axis]) / (dom.high()[axis] - dom.low()[axis]);
}

void normalize_inf(Eigen::VectorXd& v, double target) {
  const double m = v.cwiseAbs().maxCoeff();
  if (m > 0.0) v *= target / m;
}

}  // namespace

ScalarField smooth_random_field(GridPtr dom, std::uint64_t seed, double amplitude, int max_freq,
                                bool compact) {
  std::mt19937_64 rng(seed);
  const int d = dom->dim();
  constexpr int kTerms = 4;
  std::vector<double> freq(static_cast<size_t>(kTerms * d));
  std::vector<double> phase(static_cast<size_t>(kTerms * d));
  std::vector<double> coef(static_cast<size_t>(kTerms));
  for (int r = 0; r < kTerms; ++r) {
    for (int k = 0; k < d; ++k) {
      freq[static_cast<size_t>(r * d + k)] =
          static_cast<double>(rng() % static_cast<std::uint64_t>(max_freq + 1));
      phase[static_cast<size_t>(r * d + k)] = 3.14159265358979323846 * (uniform_pm1(rng) + 1.0);
    }
    coef[static_cast<size_t>(r)] = uniform_pm1(rng);
  }

  Eigen::VectorXd v = Eigen::VectorXd::Zero(dom->num_nodes());
  for (NodeIndex x = 0; x < dom->num_nodes(); ++x) {
    double s = 0.0;
    for (int r = 0; r < kTerms; ++r) {
      double term = coef[static_cast<size_t>(r)];
      for (int k = 0; k < d; ++k) {
        const double t = unit_coord(*dom, x, k);
        term *= std::cos(3.14159265358979323846 * freq[static_cast<size_t>(r * d + k)] * t +
                         phase[static_cast<size_t>(r * d + k)]);
      }
      s += term;
    }
    v[x] = s;
  }
  normalize_inf(v, amplitude);

  ScalarField f(dom, std::move(v));
  if (compact) {
    const ScalarField bump = cosine_bump(dom);
    Eigen::VectorXd w = f.values().cwiseProduct(bump.values());
    f = ScalarField(dom, std::move(w));
    normalize_inf(f.values(), amplitude);
    f.set_boundary(0.0);
  }
  return f;
}

ScalarField cosine_bump(GridPtr dom) {
  Eigen::VectorXd v(dom->num_nodes());
  for (NodeIndex x = 0; x < dom->num_nodes(); ++x) {
    double s = 1.0;
    for (int k = 0; k < dom->dim(); ++k) {
      s *= std::sin(3.14159265358979323846 * unit_coord(*dom, x, k));
    }
    v[x] = s;
  }
  normalize_inf(v, 1.0);
  ScalarField f(dom, std::move(v));
  f.set_boundary(0.0);
  return f;
}

ScalarField random_bump(GridPtr dom, std::uint64_t seed, int max_freq) {
  std::mt19937_64 rng(seed);
  const int d = dom->dim();
  constexpr int kTerms = 4;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dom->num_nodes());
  std::vector<int> freq(static_cast<size_t>(kTerms * d));
  std::vector<double> coef(static_cast<size_t>(kTerms));
  for (int r = 0; r < kTerms; ++r) {
    for (int k = 0; k < d; ++k) {
      freq[static_cast<size_t>(r * d + k)] = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_freq));
    }
    coef[static_cast<size_t>(r)] = uniform_pm1(rng);
  }
  for (NodeIndex x = 0; x < dom->num_nodes(); ++x) {
    double s = 0.0;
    for (int r = 0; r < kTerms; ++r) {
      double term = coef[static_cast<size_t>(r)];
      for (int k = 0; k < d; ++k) {
        term *= std::sin(3.14159265358979323846 * freq[static_cast<size_t>(r * d + k)] *
                         unit_coord(*dom, x, k));
      }
      s += term;
    }
    v[x] = s;
  }
  normalize_inf(v, 1.0);
  ScalarField f(dom, std::move(v));
  f.set_boundary(0.0);
  return f;
}

}  // namespace hgraph
