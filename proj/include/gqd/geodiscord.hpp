#ifndef GQD_GEODISCORD_HPP
#define GQD_GEODISCORD_HPP

// Two-sided geometric discord under the Hilbert-Schmidt distance.
//
// For paired von Neumann measurements along unit axes k (qubit A) and l
// (qubit B) the squared distance between rho and its measured
// classical-classical state is
//
//   D^2 = (1/4) [ |x|^2 + |y|^2 + |T|_F^2 - ((k.x)^2 + (l.y)^2 + (k^T T l)^2) ]
//
// and G is its minimum over (k, l), i.e. the subtracted objective maximized.
// For fixed l the objective is a quadratic form in k whose maximum is the top
// eigenvector of x x^T + (T l)(T l)^T, and symmetrically for fixed k, so the
// maximization alternates exact half-steps from several starting points.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gqd/errors.hpp"
#include "gqd/matkit.hpp"
#include "gqd/states.hpp"

namespace gqd {

class MeasurementAxes {
 public:
  /// Normalizes both axes; throws DomainError on a zero vector.
  MeasurementAxes(const Vec3& k, const Vec3& l) : k_(unit(k)), l_(unit(l)) {}

  const Vec3& k() const { return k_; }
  const Vec3& l() const { return l_; }

 private:
  static Vec3 unit(const Vec3& v) {
    const double n = norm(v);
    if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("measurement axis must be a nonzero finite vector");
    return scaled(v, 1.0 / n);
  }

  Vec3 k_;
  Vec3 l_;
};

/// Projectors (1 +/- n.sigma)/2.
inline std::array<CMat2, 2> axis_projectors(const Vec3& n) {
  const CMat2 s = bloch_operator(n);
  return {(CMat2::identity() + s) * cplx(0.5), (CMat2::identity() - s) * cplx(0.5)};
}

/// Measurement-induced classical-classical state
/// chi = sum_{i,j} (P_i x Q_j) rho (P_i x Q_j).
inline DensityMatrix micc(const DensityMatrix& rho, const MeasurementAxes& axes) {
  const auto pa = axis_projectors(axes.k());
  const auto pb = axis_projectors(axes.l());
  CMat4 chi;
  for (const auto& a : pa)
    for (const auto& b : pb) {
      const CMat4 proj = kron(a, b);
      chi += proj * rho.matrix() * proj;
    }
  return DensityMatrix(chi);
}

/// tr[(rho - tau)^2]
inline double hs_distance_sq(const DensityMatrix& rho, const DensityMatrix& tau) {
  const CMat4 d = rho.matrix() - tau.matrix();
  return trace(d * d).real();
}

/// (k.x)^2 + (l.y)^2 + (k^T T l)^2
inline double objective(const BlochForm& b, const MeasurementAxes& axes) {
  const double kx = dot(axes.k(), b.x);
  const double ly = dot(axes.l(), b.y);
  const double ktl = dot(axes.k(), b.t * axes.l());
  return kx * kx + ly * ly + ktl * ktl;
}

inline double eq5_distance(const BlochForm& b, const MeasurementAxes& axes) {
  return 0.25 * (b.total() - objective(b, axes));
}

// ---------------------------------------------------------------------------
// Maximization

struct OptimizerSettings {
  double tol = 1e-12;
  int max_iters = 500;
  int random_restarts = 8;
  std::uint64_t restart_seed = 0x5eedULL;
  // Keep the previous axis when it is within this relative gap of the half-step optimum.
  double keep_gap = 1e-15;
};

struct OptResult {
  double lambda_max = 0.0;
  MeasurementAxes axes{{0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}};
  int iterations = 0;
  bool converged = false;
  int restarts_used = 0;
  // Largest single-iteration decrease seen over all runs (0 for strict ascent).
  double max_descent = 0.0;
};

namespace detail {

/// Argmax over unit u of u^T (a a^T + c c^T) u. Keeps `previous` when its
/// value is already within `keep_gap` (relative) of the top eigenvalue, so a
/// degenerate top eigenspace does not make the axis jump around.
inline Vec3 best_axis(const Vec3& a, const Vec3& c, const Vec3& previous, double keep_gap) {
  const RMat3 m = outer(a, a) + outer(c, c);
  const auto eig = hermitian_eigen(m);
  const double top = eig.values[2];
  const double pa = dot(a, previous);
  const double pc = dot(c, previous);
  if (top - (pa * pa + pc * pc) <= keep_gap * std::max(1.0, top)) return previous;

  Vec3 v = column(eig.vectors, 2);
  if (dot(v, previous) < 0.0) v = scaled(v, -1.0);
  return v;
}

inline Vec3 best_k(const BlochForm& b, const Vec3& l, const Vec3& k_prev, double keep) {
  return best_axis(b.x, b.t * l, k_prev, keep);
}

inline Vec3 best_l(const BlochForm& b, const Vec3& k, const Vec3& l_prev, double keep) {
  return best_axis(b.y, transpose(b.t) * k, l_prev, keep);
}

inline Vec3 normalized_or(const Vec3& v, const Vec3& fallback) {
  const double n = norm(v);
  return n > 1e-12 ? scaled(v, 1.0 / n) : fallback;
}

}  // namespace detail

/// One alternating ascent from (k0, l0). `history`, if given, receives the
/// objective after every full iteration, starting with the initial value.
inline OptResult ascend_from(const BlochForm& b, const Vec3& k0, const Vec3& l0,
                             const OptimizerSettings& settings = {}, std::vector<double>* history = nullptr) {
  MeasurementAxes axes(k0, l0);
  double value = objective(b, axes);
  if (history) history->push_back(value);

  OptResult r;
  r.restarts_used = 1;
  Vec3 k = axes.k();
  Vec3 l = axes.l();
  for (int it = 1; it <= settings.max_iters; ++it) {
    k = detail::best_k(b, l, k, settings.keep_gap);
    l = detail::best_l(b, k, l, settings.keep_gap);
    const double next = objective(b, MeasurementAxes(k, l));
    if (history) history->push_back(next);
    r.max_descent = std::max(r.max_descent, value - next);
    const double gain = next - value;
    value = next;
    r.iterations = it;
    if (gain < settings.tol) {
      r.converged = true;
      break;
    }
  }
  r.axes = MeasurementAxes(k, l);
  r.lambda_max = objective(b, r.axes);
  return r;
}

/// Deterministic starting pairs: singular-vector pairs of T, the normalized
/// Bloch vectors, coordinate axes, then pseudo-random unit pairs.
inline std::vector<std::pair<Vec3, Vec3>> restart_seeds(const BlochForm& b, const OptimizerSettings& settings = {}) {
  std::vector<std::pair<Vec3, Vec3>> seeds;

  const auto eig = hermitian_eigen(transpose(b.t) * b.t);
  for (int i = 2; i >= 0; --i) {
    const Vec3 v = column(eig.vectors, static_cast<std::size_t>(i));
    seeds.emplace_back(detail::normalized_or(b.t * v, v), v);
  }
  if (norm(b.x) > 1e-12 && norm(b.y) > 1e-12)
    seeds.emplace_back(scaled(b.x, 1.0 / norm(b.x)), scaled(b.y, 1.0 / norm(b.y)));
  for (std::size_t i = 0; i < 3; ++i) {
    Vec3 e{};
    e[i] = 1.0;
    seeds.emplace_back(e, e);
  }

  std::mt19937_64 rng(settings.restart_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&] {
    for (;;) {
      const Vec3 v{normal(rng), normal(rng), normal(rng)};
      if (norm(v) > 1e-6) return scaled(v, 1.0 / norm(v));
    }
  };
  for (int i = 0; i < settings.random_restarts; ++i) {
    const Vec3 k = draw();
    const Vec3 l = draw();
    seeds.emplace_back(k, l);
  }
  return seeds;
}

inline OptResult maximize_alternating(const BlochForm& b, const OptimizerSettings& settings = {}) {
  OptResult best;
  best.lambda_max = -1.0;
  bool any_converged = false;
  double max_descent = 0.0;
  int runs = 0;
  for (const auto& [k0, l0] : restart_seeds(b, settings)) {
    const OptResult r = ascend_from(b, k0, l0, settings);
    ++runs;
    any_converged = any_converged || r.converged;
    max_descent = std::max(max_descent, r.max_descent);
    if (r.lambda_max > best.lambda_max) best = r;
  }
  best.converged = any_converged;
  best.restarts_used = runs;
  best.max_descent = max_descent;
  return best;
}

/// Largest eigenvalue of a a^T + c c^T, via its 2x2 Gram matrix.
inline double rank2_top_eigenvalue(const Vec3& a, const Vec3& c) {
  const double aa = dot(a, a);
  const double cc = dot(c, c);
  const double ac = dot(a, c);
  const double half = 0.5 * (aa - cc);
  return 0.5 * (aa + cc) + std::sqrt(half * half + ac * ac);
}

/// Exhaustive oracle: l over a resolution x 2*resolution latitude/longitude
/// grid, exact optimal k for each l, then one ascent from the best grid point.
inline OptResult maximize_grid(const BlochForm& b, int resolution = 64, const OptimizerSettings& settings = {}) {
  if (resolution < 8) throw DomainError("maximize_grid: resolution must be at least 8");
  const int n_lat = resolution;
  const int n_lon = 2 * resolution;
  const RMat3 tt = b.t;

  double best_value = -1.0;
  Vec3 best_l{0.0, 0.0, 1.0};
  for (int i = 0; i < n_lat; ++i) {
    const double theta = M_PI * (i + 0.5) / n_lat;
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    for (int j = 0; j < n_lon; ++j) {
      const double phi = 2.0 * M_PI * j / n_lon;
      const Vec3 l{st * std::cos(phi), st * std::sin(phi), ct};
      const double ly = dot(l, b.y);
      const double value = rank2_top_eigenvalue(b.x, tt * l) + ly * ly;
      if (value > best_value) {
        best_value = value;
        best_l = l;
      }
    }
  }

  const auto eig = hermitian_eigen(outer(b.x, b.x) + outer(tt * best_l, tt * best_l));
  const Vec3 k = column(eig.vectors, 2);
  OptResult r = ascend_from(b, k, best_l, settings);
  r.restarts_used = 1;
  return r;
}

// ---------------------------------------------------------------------------

enum class Method { Alternating, Grid };

inline const char* to_string(Method m) { return m == Method::Grid ? "grid" : "alternating"; }

struct GResult {
  double g = 0.0;      // clamped at 0
  double g_raw = 0.0;  // (total - lambda_max) / 4 as computed
  double total = 0.0;  // |x|^2 + |y|^2 + |T|_F^2
  OptResult opt;
};

inline GResult geometric_measure(const BlochForm& b, Method method = Method::Alternating) {
  GResult r;
  r.opt = method == Method::Grid ? maximize_grid(b) : maximize_alternating(b);
  r.total = b.total();
  r.g_raw = 0.25 * (r.total - r.opt.lambda_max);
  r.g = std::max(0.0, r.g_raw);
  return r;
}

inline GResult geometric_measure(const DensityMatrix& rho, Method method = Method::Alternating) {
  return geometric_measure(bloch_decompose(rho), method);
}

// ---------------------------------------------------------------------------
// Printed closed-form candidates for lambda_max on CS states. These are
// evaluated as written and compared with the numerical value; they are never
// used in its place.

struct ClosedFormReport {
  int case_number = 0;
  std::array<double, 3> coefficients{};  // weights of l1^2, l2^2, l3^2
  double candidate = 0.0;                // max over the unit constraint
  double numerical = 0.0;                // lambda_max from the grid oracle
  double difference = 0.0;               // candidate - numerical
};

namespace detail {

inline ClosedFormReport finish_closed_form(int case_number, const std::array<double, 3>& coeff, const CsParams& p) {
  ClosedFormReport r;
  r.case_number = case_number;
  r.coefficients = coeff;
  r.candidate = *std::max_element(coeff.begin(), coeff.end());
  r.numerical = maximize_grid(bloch_decompose(cs_to_matrix(p))).lambda_max;
  r.difference = r.candidate - r.numerical;
  return r;
}

}  // namespace detail

/// l'^2 = 4 p6^2 - ((2 p6)^2 - (4 p1 - 1)^2) l3^2, for |p3| = |p5| = 0.
inline ClosedFormReport closed_form_case1(const CsParams& p, double tol = 1e-12) {
  if (std::abs(p.p3) > tol || std::abs(p.p5) > tol) throw WrongCase("case 1 requires p3 = p5 = 0");
  const double a = 4.0 * p.p6 * p.p6;
  const double c = 4.0 * p.p1 - 1.0;
  // On the unit sphere 4 p6^2 = 4 p6^2 (l1^2 + l2^2 + l3^2), so l1 and l2 both weigh 4 p6^2.
  return detail::finish_closed_form(1, {a, a, c * c}, p);
}

/// l'^2 = 4(p6+p7)^2 l1^2 + 4((p6-p7) - 2p3)^2 l2^2 + (4p1 - 4p5 - 1)^2 l3^2, for p3, p5 != 0.
inline ClosedFormReport closed_form_case2(const CsParams& p, double tol = 1e-12) {
  if (std::abs(p.p3) <= tol || std::abs(p.p5) <= tol) throw WrongCase("case 2 requires p3 != 0 and p5 != 0");
  const double w1 = 4.0 * (p.p6 + p.p7) * (p.p6 + p.p7);
  const double d = (p.p6 - p.p7) - 2.0 * p.p3;
  const double w2 = 4.0 * d * d;
  const double e = 4.0 * p.p1 - 4.0 * p.p5 - 1.0;
  return detail::finish_closed_form(2, {w1, w2, e * e}, p);
}

}  // namespace gqd

#endif  // GQD_GEODISCORD_HPP
