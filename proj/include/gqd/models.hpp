#ifndef GQD_MODELS_HPP
#define GQD_MODELS_HPP

#include <cmath>
#include <string>

#include "gqd/errors.hpp"
#include "gqd/matkit.hpp"
#include "gqd/states.hpp"

namespace gqd {

// ---------------------------------------------------------------------------
// Spin pair in a nanopore (dipolar free induction decay)

struct NanoporeParams {
  double beta = 0.0;      // hbar omega_0 / (k_B T)
  int n_spins = 2;        // N >= 2
  double coupling = 0.0;  // D
  double time = 0.0;      // t

  double a() const { return 1.5 * coupling; }

  void validate() const {
    if (n_spins < 2) throw DomainError("nanopore: n_spins must be at least 2");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("nanopore: beta must be finite and >= 0");
    if (!std::isfinite(coupling) || !std::isfinite(time)) throw DomainError("nanopore: non-finite coupling or time");
  }
};

struct NanoporeCorrelations {
  double p = 0.0;
  double q_plus_r = 0.0;
  double q_minus_r = 0.0;
  double u = 0.0;
};

/// x^n for a non-negative integer n by repeated squaring; keeps the sign of
/// negative bases for odd n.
inline double int_pow(double x, unsigned n) {
  double result = 1.0;
  while (n > 0) {
    if (n & 1U) result *= x;
    x *= x;
    n >>= 1U;
  }
  return result;
}

inline NanoporeCorrelations nanopore_correlations(const NanoporeParams& params) {
  params.validate();
  const double th = std::tanh(0.5 * params.beta);
  const double at = params.a() * params.time;
  const auto n = static_cast<unsigned>(params.n_spins);
  const double c = std::cos(at);

  NanoporeCorrelations out;
  out.p = 0.5 * th * int_pow(c, n - 1);
  out.q_plus_r = 0.25 * th * th;
  out.q_minus_r = 0.25 * th * th * int_pow(std::cos(2.0 * at), n - 2);
  out.u = 0.25 * th * int_pow(c, n - 2) * std::sin(at);
  return out;
}

/// Reduced two-spin density matrix
///   [ 1/4      p/2-iu   p/2-iu   q-r    ]
///   [ p/2+iu   1/4      q+r      p/2+iu ]
///   [ p/2+iu   q+r      1/4      p/2+iu ]
///   [ q-r      p/2-iu   p/2-iu   1/4    ]
inline CMat4 nanopore_layout(const NanoporeParams& params) {
  const auto c = nanopore_correlations(params);
  const cplx e(0.5 * c.p, -c.u);
  const cplx f = std::conj(e);
  return CMat4{
      {0.25, e, e, c.q_minus_r},
      {f, 0.25, c.q_plus_r, f},
      {f, c.q_plus_r, 0.25, f},
      {c.q_minus_r, e, e, 0.25},
  };
}

inline DensityMatrix nanopore_state(const NanoporeParams& params) {
  const CMat4 m = nanopore_layout(params);
  const auto v = validate_state(m);
  if (!v.ok()) {
    throw InvalidState("nanopore state invalid at beta=" + std::to_string(params.beta) + " N=" +
                       std::to_string(params.n_spins) + " D=" + std::to_string(params.coupling) +
                       " t=" + std::to_string(params.time) + ": " + v.describe());
  }
  return DensityMatrix(m);
}

// ---------------------------------------------------------------------------
// Two-qubit XXZ chain with an x-directed Dzyaloshinskii-Moriya term

struct XxzDmParams {
  double j = 0.0;
  double jz = 0.0;
  double dx = 0.0;
  double temperature = 1.0;  // k_B = 1

  double beta() const { return 1.0 / temperature; }
  double omega_prime() const { return std::sqrt((j + jz) * (j + jz) + 4.0 * dx * dx); }
};

/// J (sx sx + sy sy) + Jz sz sz + Dx (sy sz - sz sy)
inline CMat4 xxz_dm_hamiltonian(const XxzDmParams& params) {
  auto pp = [](std::size_t a, std::size_t b) { return kron(pauli(a), pauli(b)); };
  return pp(1, 1) * cplx(params.j) + pp(2, 2) * cplx(params.j) + pp(3, 3) * cplx(params.jz) +
         (pp(2, 3) - pp(3, 2)) * cplx(params.dx);
}

/// exp(-H/T) / tr exp(-H/T)
inline DensityMatrix xxz_dm_thermal_oracle(const XxzDmParams& params) {
  if (!(params.temperature > 0.0)) throw DomainError("xxz-dm: temperature must be positive");
  const CMat4 h = xxz_dm_hamiltonian(params);
  // Shifting by the ground energy keeps exp() finite at low temperature.
  const double e0 = hermitian_eigen(h).values[0];
  CMat4 m = herm_exp(h - CMat4::identity() * cplx(e0), -params.beta());
  m *= cplx(1.0 / trace(m).real());
  m = (m + adjoint(m)) * cplx(0.5);
  return DensityMatrix(m);
}

/// Printed closed form (1/2Z') [[mu+, -xi, xi, mu-], [xi, nu+, nu-, -xi],
/// [-xi, nu-, nu+, xi], [mu-, xi, -xi, mu+]], assembled verbatim and not
/// validated. Throws DegenerateAngles when an arctan argument is 0/0.
inline CMat4 xxz_dm_thermal_closed_layout(const XxzDmParams& params) {
  if (!(params.temperature > 0.0)) throw DomainError("xxz-dm: temperature must be positive");
  const double b = params.beta();
  const double w = params.omega_prime();
  const double lo = params.j + params.jz - w;
  const double hi = params.j + params.jz + w;
  if (lo == 0.0 || hi == 0.0) throw DegenerateAngles("xxz-dm closed form: arctan argument undefined (D_x = 0)");

  const double phi = std::atan(2.0 * params.dx / lo);
  const double varphi = std::atan(2.0 * params.dx / hi);
  const double e_minus = std::exp(b * (params.j - w));
  const double e_plus = std::exp(b * (params.j + w));

  const double mu_common = std::exp(-b * params.jz);
  const double mu_spread = e_minus * std::sin(phi) * std::sin(phi) + e_plus * std::sin(varphi) * std::sin(varphi);
  const double nu_common = std::exp(-b * (params.jz - 2.0 * params.j));
  const double nu_spread = e_minus * std::cos(phi) * std::cos(phi) + e_plus * std::cos(varphi) * std::cos(varphi);
  // The second term pairs sin(varphi) with cos(phi) as printed.
  const cplx xi(0.0, e_minus * std::sin(phi) * std::cos(phi) + e_plus * std::sin(varphi) * std::cos(phi));
  const double z = 2.0 * std::exp(-b * params.j) * std::cosh(b * (params.j - params.jz)) +
                   2.0 * std::exp(b * params.j) * std::cosh(b * w);

  const cplx mu_p = mu_common + mu_spread;
  const cplx mu_m = mu_common - mu_spread;
  const cplx nu_p = nu_common + nu_spread;
  const cplx nu_m = nu_common - nu_spread;
  CMat4 m{
      {mu_p, -xi, xi, mu_m},
      {xi, nu_p, nu_m, -xi},
      {-xi, nu_m, nu_p, xi},
      {mu_m, xi, -xi, mu_p},
  };
  return m * cplx(1.0 / (2.0 * z));
}

inline DensityMatrix xxz_dm_thermal_closed(const XxzDmParams& params) {
  const CMat4 m = xxz_dm_thermal_closed_layout(params);
  const auto v = validate_state(m);
  if (!v.ok()) throw InvalidState("xxz-dm closed form fails validation: " + v.describe());
  return DensityMatrix(m);
}

/// Printed closed form measured against the exp(-beta H) oracle.
struct ThermalDeviation {
  bool degenerate = false;
  double max_entry_deviation = 0.0;
  double trace = 0.0;
  StateValidation validation;
};

inline ThermalDeviation compare_thermal_forms(const XxzDmParams& params) {
  ThermalDeviation d;
  CMat4 closed;
  try {
    closed = xxz_dm_thermal_closed_layout(params);
  } catch (const DegenerateAngles&) {
    d.degenerate = true;
    return d;
  }
  const DensityMatrix oracle = xxz_dm_thermal_oracle(params);
  d.max_entry_deviation = max_abs(closed - oracle.matrix());
  d.trace = trace(closed).real();
  d.validation = validate_state(closed);
  return d;
}

}  // namespace gqd

#endif  // GQD_MODELS_HPP
