#ifndef GQD_SAMPLING_HPP
#define GQD_SAMPLING_HPP

// Seeded generators used by the test suites and the `verify` command.

#include <cmath>
#include <random>

#include "gqd/errors.hpp"
#include "gqd/matkit.hpp"
#include "gqd/states.hpp"

namespace gqd {

using Rng = std::mt19937_64;

/// Uniform on the unit sphere.
inline Vec3 random_unit_vector(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    Vec3 v{normal(rng), normal(rng), normal(rng)};
    const double n = norm(v);
    if (n > 1e-8) return scaled(v, 1.0 / n);
  }
}

/// Haar-ish random single-qubit unitary exp(-i theta n.sigma / 2) times a phase.
inline CMat2 random_unitary2(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  const Vec3 n = random_unit_vector(rng);
  const double theta = angle(rng);
  const cplx phase = std::polar(1.0, angle(rng));
  const CMat2 u = CMat2::identity() * cplx(std::cos(theta / 2)) - bloch_operator(n) * cplx(0.0, std::sin(theta / 2));
  return u * phase;
}

/// Rejection sampling: p1 in [0, 1/2], the rest in [-1/4, 1/4], keep PSD candidates.
inline CsParams sample_cs_params(Rng& rng) {
  std::uniform_real_distribution<double> diag(0.0, 0.5);
  std::uniform_real_distribution<double> off(-0.25, 0.25);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    CsParams p{diag(rng), off(rng), off(rng), off(rng), off(rng), off(rng), off(rng)};
    if (validate_state(cs_layout(p)).ok()) return p;
  }
  throw NoConvergence("sample_cs_params: rejection budget exhausted");
}

/// Rejection sampling: q1..q3 in [0, 1], off-diagonals in [-1/2, 1/2].
inline XParams sample_x_params(Rng& rng) {
  std::uniform_real_distribution<double> diag(0.0, 1.0);
  std::uniform_real_distribution<double> off(-0.5, 0.5);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    XParams q{diag(rng), diag(rng), diag(rng), off(rng), off(rng), off(rng), off(rng)};
    if (validate_state(x_layout(q)).ok()) return q;
  }
  throw NoConvergence("sample_x_params: rejection budget exhausted");
}

}  // namespace gqd

#endif  // GQD_SAMPLING_HPP
