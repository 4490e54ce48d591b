#ifndef GQD_VERIFY_HPP
#define GQD_VERIFY_HPP

// Self-verification suite behind `gqd verify`: every module invariant checked
// on seeded random samples. Deterministic for a fixed (samples, seed).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gqd/geodiscord.hpp"
#include "gqd/matkit.hpp"
#include "gqd/models.hpp"
#include "gqd/qst.hpp"
#include "gqd/sampling.hpp"
#include "gqd/states.hpp"
#include "gqd/sweep.hpp"

namespace gqd {

struct CheckOutcome {
  std::string module;
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed residual
  double tolerance = 0.0;  // pass iff worst <= tolerance
};

namespace detail {

inline CMat2 random_cmat2(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMat2 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const double re = n(rng);
      const double im = n(rng);
      m(i, j) = cplx(re, im);
    }
  return m;
}

inline CMat4 random_hermitian4(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMat4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double re = n(rng);
      const double im = n(rng);
      m(i, j) = cplx(re, im);
    }
  return m + adjoint(m);
}

inline DensityMatrix local_rotate(const DensityMatrix& rho, const CMat2& u, const CMat2& v) {
  const CMat4 w = kron(u, v);
  CMat4 m = w * rho.matrix() * adjoint(w);
  m = (m + adjoint(m)) * cplx(0.5);
  return DensityMatrix(m);
}

}  // namespace detail

/// Runs every invariant with `samples` random instances each.
inline std::vector<CheckOutcome> run_invariant_suite(int samples, std::uint64_t seed) {
  std::vector<CheckOutcome> out;
  const int n = std::max(1, samples);
  auto check = [&](const char* module, const char* name, double tol, const std::function<double(Rng&)>& body) {
    Rng rng(seed ^ std::hash<std::string>{}(name));
    CheckOutcome c{module, name, false, 0.0, tol};
    try {
      c.worst = body(rng);
      c.passed = c.worst <= tol;
    } catch (const std::exception&) {
      c.worst = std::numeric_limits<double>::infinity();
      c.passed = false;
    }
    out.push_back(c);
  };

  // matkit ------------------------------------------------------------------
  check("matkit", "kron bilinearity", 1e-12, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const CMat2 a = detail::random_cmat2(rng), b = detail::random_cmat2(rng), c = detail::random_cmat2(rng);
      worst = std::max(worst, max_abs(kron(a + b, c) - (kron(a, c) + kron(b, c))));
    }
    return worst;
  });
  check("matkit", "eigendecomposition reconstructs and is orthonormal", 1e-10, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const CMat4 a = detail::random_hermitian4(rng);
      const auto e = hermitian_eigen(a);
      worst = std::max(worst, max_abs(apply_spectral(e, [](double x) { return x; }) - a));
      worst = std::max(worst, max_abs(adjoint(e.vectors) * e.vectors - CMat4::identity()));
    }
    return worst;
  });
  check("matkit", "herm_exp(a,s) herm_exp(a,-s) = I", 1e-9, [&](Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const CMat4 a = detail::random_hermitian4(rng);
      const double s = u(rng) * 10.0 / frobenius_norm(a);
      worst = std::max(worst, max_abs(herm_exp(a, s) * herm_exp(a, -s) - CMat4::identity()));
    }
    return worst;
  });
  check("matkit", "trace herm_exp = sum exp(s lambda) (relative)", 1e-10, [&](Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const CMat4 a = detail::random_hermitian4(rng);
      const double s = u(rng) * 10.0 / frobenius_norm(a);
      const auto e = hermitian_eigen(a);
      double expected = 0.0;
      for (double l : e.values) expected += std::exp(s * l);
      worst = std::max(worst, std::abs(trace(herm_exp(a, s)) - expected) / expected);
    }
    return worst;
  });

  // states ------------------------------------------------------------------
  check("states", "hadamard conjugation is an involution", 1e-13, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const DensityMatrix rho = random_density_matrix(rng());
      worst = std::max(worst, max_abs(hadamard_conjugate(hadamard_conjugate(rho)).matrix() - rho.matrix()));
    }
    return worst;
  });
  check("states", "Hadamard image of CS is X and of X is CS", 0.0, [&](Rng& rng) {
    double failures = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!admits_x(classify(hadamard_conjugate(cs_to_matrix(sample_cs_params(rng)))))) failures += 1;
      if (!admits_cs(classify(hadamard_conjugate(x_to_matrix(sample_x_params(rng)))))) failures += 1;
    }
    return failures;
  });
  check("states", "CS Bloch form matches the generic layout", 1e-12, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const CsParams p = sample_cs_params(rng);
      const BlochForm b = bloch_decompose(cs_to_matrix(p));
      BlochForm e;
      e.y = {4 * p.p2, 0, 0};
      e.x = {4 * p.p4, 0, 0};
      e.t(0, 0) = 2 * (p.p6 + p.p7);
      e.t(1, 1) = 2 * (p.p7 - p.p6);
      e.t(1, 2) = -4 * p.p5;
      e.t(2, 1) = -4 * p.p3;
      e.t(2, 2) = 4 * p.p1 - 1;
      for (std::size_t k = 0; k < 3; ++k)
        worst = std::max({worst, std::abs(b.x[k] - e.x[k]), std::abs(b.y[k] - e.y[k])});
      worst = std::max(worst, max_abs(b.t - e.t));
    }
    return worst;
  });
  check("states", "X Bloch form matches the generic layout", 1e-12, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const XParams q = sample_x_params(rng);
      const BlochForm b = bloch_decompose(x_to_matrix(q));
      const Vec3 y{0, 0, 2 * (q.q1 + q.q3) - 1};
      const Vec3 x{0, 0, 2 * (q.q1 + q.q2) - 1};
      for (std::size_t k = 0; k < 3; ++k) worst = std::max({worst, std::abs(b.x[k] - x[k]), std::abs(b.y[k] - y[k])});
      worst = std::max({worst, std::abs(b.t(0, 0) - 2 * (q.q6 + q.q4)), std::abs(b.t(1, 1) - 2 * (q.q6 - q.q4)),
                        std::abs(b.t(2, 2) - (1 - 2 * (q.q2 + q.q3)))});
    }
    return worst;
  });
  check("states", "bloch_compose inverts bloch_decompose", 1e-12, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const DensityMatrix rho = random_density_matrix(rng());
      worst = std::max(worst, max_abs(bloch_compose(bloch_decompose(rho)) - rho.matrix()));
    }
    return worst;
  });
  check("states", "parameter extraction round-trips", 1e-12, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const DensityMatrix a = cs_to_matrix(sample_cs_params(rng));
      const DensityMatrix b = x_to_matrix(sample_x_params(rng));
      worst = std::max(worst, max_abs(cs_to_matrix(extract_cs_params(a)).matrix() - a.matrix()));
      worst = std::max(worst, max_abs(x_to_matrix(extract_x_params(b)).matrix() - b.matrix()));
    }
    return worst;
  });
  check("states", "R equality for (p, derive_x_from_cs(p))", 1e-10, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const CsParams p = sample_cs_params(rng);
      const auto rep = check_condition6(p, derive_x_from_cs(p), 1e-10);
      worst = std::max(worst, rep.max_r_deviation);
    }
    return worst;
  });

  // geodiscord --------------------------------------------------------------
  check("geodiscord", "Bloch distance equals tr[(rho - chi)^2]", 1e-12, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const DensityMatrix rho = random_density_matrix(rng());
      const MeasurementAxes axes(random_unit_vector(rng), random_unit_vector(rng));
      worst = std::max(worst, std::abs(eq5_distance(bloch_decompose(rho), axes) - hs_distance_sq(rho, micc(rho, axes))));
    }
    return worst;
  });
  check("geodiscord", "G invariant under local unitaries", 1e-8, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const DensityMatrix rho = random_density_matrix(rng());
      const CMat2 u = random_unitary2(rng), v = random_unitary2(rng);
      worst = std::max(worst, std::abs(geometric_measure(rho).g_raw -
                                       geometric_measure(detail::local_rotate(rho, u, v)).g_raw));
    }
    return worst;
  });
  check("geodiscord", "G(CS) = G(Hadamard image)", 1e-8, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const DensityMatrix rho = cs_to_matrix(sample_cs_params(rng));
      worst = std::max(worst, std::abs(geometric_measure(rho).g_raw - geometric_measure(hadamard_conjugate(rho)).g_raw));
    }
    return worst;
  });
  check("geodiscord", "alternating ascent is monotone", 1e-14, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      worst = std::max(worst, maximize_alternating(bloch_decompose(random_density_matrix(rng()))).max_descent);
    return worst;
  });
  check("geodiscord", "optimum beats random probes", 1e-9, [&](Rng& rng) {
    double worst = 0.0;
    const int instances = std::max(1, n / 10);
    for (int i = 0; i < instances; ++i) {
      const BlochForm b = bloch_decompose(random_density_matrix(rng()));
      const double best = maximize_alternating(b).lambda_max;
      for (int j = 0; j < 1000; ++j) {
        const MeasurementAxes probe(random_unit_vector(rng), random_unit_vector(rng));
        worst = std::max(worst, objective(b, probe) - best);
      }
    }
    return worst;
  });
  check("geodiscord", "objective invariant under axis flips", 0.0, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const BlochForm b = bloch_decompose(random_density_matrix(rng()));
      const Vec3 k = random_unit_vector(rng), l = random_unit_vector(rng);
      const double v = objective(b, MeasurementAxes(k, l));
      worst = std::max({worst, std::abs(objective(b, MeasurementAxes(scaled(k, -1), l)) - v),
                        std::abs(objective(b, MeasurementAxes(k, scaled(l, -1))) - v)});
    }
    return worst;
  });
  check("geodiscord", "G = 0 on classical-classical product states", 1e-10, [&](Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = unit(rng), c = unit(rng);
      const CMat2 u = random_unitary2(rng), v = random_unitary2(rng);
      const CMat2 ra = u * CMat2{{a, 0.0}, {0.0, 1 - a}} * adjoint(u);
      const CMat2 rb = v * CMat2{{c, 0.0}, {0.0, 1 - c}} * adjoint(v);
      CMat4 m = kron(ra, rb);
      m = (m + adjoint(m)) * cplx(0.5);
      worst = std::max(worst, std::abs(geometric_measure(DensityMatrix(m)).g_raw));
    }
    return worst;
  });

  // models ------------------------------------------------------------------
  check("models", "nanopore state is 2pi/a periodic in t", 1e-12, [&](Rng& rng) {
    std::uniform_real_distribution<double> beta(0.0, 5.0), t(0.0, 1000.0);
    std::uniform_int_distribution<int> half_n(1, 60);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      NanoporeParams p{beta(rng), 2 * half_n(rng), 0.001, t(rng)};
      NanoporeParams q = p;
      q.time += 2 * M_PI / p.a();
      worst = std::max(worst, max_abs(nanopore_layout(p) - nanopore_layout(q)));
    }
    return worst;
  });
  check("models", "nanopore at beta = 0 is I/4 with G = 0", 0.0, [&](Rng& rng) {
    std::uniform_real_distribution<double> t(0.0, 3000.0);
    double worst = 0.0;
    for (int i = 0; i < std::max(1, n / 10); ++i) {
      const DensityMatrix rho = nanopore_state({0.0, 100, 0.001, t(rng)});
      worst = std::max({worst, max_abs(rho.matrix() - CMat4::identity() * cplx(0.25)), geometric_measure(rho).g});
    }
    return worst;
  });
  check("models", "thermal oracle commutes with H", 1e-10, [&](Rng& rng) {
    std::uniform_real_distribution<double> c(-2.0, 2.0), temp(0.1, 10.0);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const XxzDmParams p{c(rng), c(rng), c(rng), temp(rng)};
      const CMat4 h = xxz_dm_hamiltonian(p);
      const CMat4 rho = xxz_dm_thermal_oracle(p).matrix();
      worst = std::max(worst, max_abs(rho * h - h * rho));
    }
    return worst;
  });
  check("models", "thermal oracle is centrosymmetric", 1e-12, [&](Rng& rng) {
    std::uniform_real_distribution<double> c(-2.0, 2.0), temp(0.1, 10.0);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      worst = std::max(worst, centrosymmetry_residual(xxz_dm_thermal_oracle({c(rng), c(rng), c(rng), temp(rng)}).matrix()));
    return worst;
  });
  check("models", "G(T = 50) < 1e-3 for J = Dx = 1", 1e-3, [&](Rng&) {
    double worst = 0.0;
    for (double jz : {0.0, 0.4, 0.9}) worst = std::max(worst, geometric_measure(xxz_dm_thermal_oracle({1.0, jz, 1.0, 50.0})).g);
    return worst;
  });
  check("models", "generated model states validate", 0.0, [&](Rng& rng) {
    std::uniform_real_distribution<double> beta(0.0, 5.0), t(0.0, 3000.0), c(-2.0, 2.0), temp(0.1, 10.0);
    double failures = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!validate_state(nanopore_layout({beta(rng), 100, 0.001, t(rng)})).ok()) failures += 1;
      if (!validate_state(xxz_dm_thermal_oracle({c(rng), c(rng), c(rng), temp(rng)}).matrix()).ok()) failures += 1;
    }
    return failures;
  });

  // sweep -------------------------------------------------------------------
  SweepSpec small;
  small.model = ModelKind::XxzDm;
  small.fixed = {{"J", 1.0}, {"Dx", 1.0}};
  small.axes = {SweepAxis::uniform("T", 0.1, 5.0, std::max(2, n / 5)), SweepAxis::explicit_values("Jz", {0.0, 0.4, 0.9})};
  check("sweep", "jobs = 1 and jobs = 8 give identical CSV", 0.0, [&](Rng&) {
    SweepSpec a = small, b = small;
    a.jobs = 1;
    b.jobs = 8;
    return csv_string(run_sweep(a)) == csv_string(run_sweep(b)) ? 0.0 : 1.0;
  });
  check("sweep", "0 <= G <= total/4 on every row", 1e-12, [&](Rng&) {
    double worst = 0.0;
    const auto points = grid_points(small);
    const auto table = run_sweep(small);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double total = bloch_decompose(evaluate_point(small, points[i])).total();
      const double g = table.rows[i].result.g;
      worst = std::max({worst, -g, g - total / 4});
    }
    return worst;
  });
  check("sweep", "G(row state) = G(Hadamard image) on a 5% sample", 1e-8, [&](Rng&) {
    double worst = 0.0;
    const auto points = grid_points(small);
    for (std::size_t i = 0; i < points.size(); i += 20) {
      const DensityMatrix rho = evaluate_point(small, points[i]);
      worst = std::max(worst, std::abs(geometric_measure(rho).g_raw - geometric_measure(hadamard_conjugate(rho)).g_raw));
    }
    return worst;
  });

  // cli ---------------------------------------------------------------------
  check("cli", "qst1 print/parse round-trip is exact", 0.0, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const DensityMatrix rho = random_density_matrix(rng());
      worst = std::max(worst, max_abs(parse_state(format_state(rho)).rho.matrix() - rho.matrix()));
    }
    return worst;
  });
  check("cli", "converting twice restores the parameters", 1e-12, [&](Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const CsParams p = sample_cs_params(rng);
      const CsParams back = derive_cs_from_x(derive_x_from_cs(p));
      const auto a = p.values(), b = back.values();
      for (std::size_t k = 0; k < 7; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
  });
  return out;
}

}  // namespace gqd

#endif  // GQD_VERIFY_HPP
