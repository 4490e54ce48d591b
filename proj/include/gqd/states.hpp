#ifndef GQD_STATES_HPP
#define GQD_STATES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gqd/errors.hpp"
#include "gqd/matkit.hpp"

namespace gqd {

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kShapeTolerance = 1e-9;

/// Outcome of checking a 4x4 matrix against the density-matrix invariants.
struct StateValidation {
  bool finite = true;
  bool hermitian = true;
  bool unit_trace = true;
  bool positive = true;
  double hermiticity_residual = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;

  bool ok() const { return finite && hermitian && unit_trace && positive; }

  std::string describe() const {
    std::ostringstream os;
    os.precision(6);
    if (!finite) os << "non-finite entries; ";
    if (!hermitian) os << "hermiticity residual " << hermiticity_residual << "; ";
    if (!unit_trace) os << "trace deviation " << trace_deviation << "; ";
    if (!positive) os << "min eigenvalue " << min_eigenvalue << "; ";
    std::string s = os.str();
    if (s.size() >= 2) s.resize(s.size() - 2);
    return s;
  }
};

inline StateValidation validate_state(const CMat4& m, double tol = kStateTolerance) {
  StateValidation v;
  v.finite = all_finite(m);
  if (!v.finite) {
    v.hermitian = v.unit_trace = v.positive = false;
    return v;
  }
  v.hermiticity_residual = hermiticity_residual(m);
  v.hermitian = v.hermiticity_residual <= tol;
  v.trace_deviation = std::abs(trace(m) - cplx(1.0));
  v.unit_trace = v.trace_deviation <= tol;
  if (v.hermitian) {
    v.min_eigenvalue = hermitian_eigen(m).values[0];
    v.positive = v.min_eigenvalue >= -tol;
  } else {
    v.positive = false;
  }
  return v;
}

/// A validated two-qubit density matrix. Construction throws InvalidState on
/// any violated invariant, naming which one.
class DensityMatrix {
 public:
  explicit DensityMatrix(const CMat4& m, double tol = kStateTolerance) : m_(m) {
    const auto v = validate_state(m_, tol);
    if (!v.ok()) throw InvalidState("invalid density matrix: " + v.describe());
  }

  static DensityMatrix maximally_mixed() { return DensityMatrix(CMat4::identity() * cplx(0.25)); }

  const CMat4& matrix() const { return m_; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  CMat4 m_;
};

/// Centrosymmetric family:
///   [ p1       p2+ip3   p4+ip5   p6     ]
///   [ p2-ip3   1/2-p1   p7       p4-ip5 ]
///   [ p4-ip5   p7       1/2-p1   p2-ip3 ]
///   [ p6       p4+ip5   p2+ip3   p1     ]
struct CsParams {
  double p1 = 0.0, p2 = 0.0, p3 = 0.0, p4 = 0.0, p5 = 0.0, p6 = 0.0, p7 = 0.0;

  std::array<double, 7> values() const { return {p1, p2, p3, p4, p5, p6, p7}; }
  static CsParams from_values(const std::array<double, 7>& v) { return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]}; }
};

/// X family: diagonal (q1, q2, q3, 1-q1-q2-q3), outer anti-diagonal q4+iq5,
/// inner anti-diagonal q6+iq7.
struct XParams {
  double q1 = 0.0, q2 = 0.0, q3 = 0.0, q4 = 0.0, q5 = 0.0, q6 = 0.0, q7 = 0.0;

  std::array<double, 7> values() const { return {q1, q2, q3, q4, q5, q6, q7}; }
  static XParams from_values(const std::array<double, 7>& v) { return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]}; }
};

inline CMat4 cs_layout(const CsParams& p) {
  const cplx a(p.p2, p.p3);
  const cplx b(p.p4, p.p5);
  const double inner = 0.5 - p.p1;
  return CMat4{
      {p.p1, a, b, p.p6},
      {std::conj(a), inner, p.p7, std::conj(b)},
      {std::conj(b), p.p7, inner, std::conj(a)},
      {p.p6, b, a, p.p1},
  };
}

inline CMat4 x_layout(const XParams& q) {
  const cplx outer(q.q4, q.q5);
  const cplx inner(q.q6, q.q7);
  return CMat4{
      {q.q1, 0.0, 0.0, outer},
      {0.0, q.q2, inner, 0.0},
      {0.0, std::conj(inner), q.q3, 0.0},
      {std::conj(outer), 0.0, 0.0, 1.0 - q.q1 - q.q2 - q.q3},
  };
}

inline DensityMatrix cs_to_matrix(const CsParams& p) { return DensityMatrix(cs_layout(p)); }
inline DensityMatrix x_to_matrix(const XParams& q) { return DensityMatrix(x_layout(q)); }

// ---------------------------------------------------------------------------
// Shape classification

enum class Shape { CS, X, Both, Neither };

inline const char* to_string(Shape s) {
  switch (s) {
    case Shape::CS: return "CS";
    case Shape::X: return "X";
    case Shape::Both: return "Both";
    case Shape::Neither: return "Neither";
  }
  return "?";
}

inline bool admits_cs(Shape s) { return s == Shape::CS || s == Shape::Both; }
inline bool admits_x(Shape s) { return s == Shape::X || s == Shape::Both; }

/// max |m[i][j] - m[3-i][3-j]|
inline double centrosymmetry_residual(const CMat4& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r = std::max(r, std::abs(m(i, j) - m(3 - i, 3 - j)));
  return r;
}

/// Residual of the equality constraints of the CS layout beyond centrosymmetry.
inline double cs_layout_residual(const CMat4& m) {
  double r = centrosymmetry_residual(m);
  r = std::max(r, std::abs(m(1, 1) - (0.5 - m(0, 0))));
  r = std::max(r, std::abs(m(2, 2) - (0.5 - m(0, 0))));
  r = std::max(r, std::abs(m(0, 3).imag()));
  r = std::max(r, std::abs(m(1, 2).imag()));
  r = std::max(r, std::abs(m(1, 0) - std::conj(m(0, 1))));
  r = std::max(r, std::abs(m(2, 0) - std::conj(m(0, 2))));
  return r;
}

inline double x_pattern_residual(const CMat4& m) {
  static constexpr std::array<std::array<std::size_t, 2>, 8> kZeros = {
      {{0, 1}, {0, 2}, {1, 0}, {2, 0}, {1, 3}, {3, 1}, {2, 3}, {3, 2}}};
  double r = 0.0;
  for (const auto& [i, j] : kZeros) r = std::max(r, std::abs(m(i, j)));
  return r;
}

inline Shape classify(const DensityMatrix& rho, double tol = kShapeTolerance) {
  const bool cs = cs_layout_residual(rho.matrix()) <= tol;
  const bool x = x_pattern_residual(rho.matrix()) <= tol;
  if (cs && x) return Shape::Both;
  if (cs) return Shape::CS;
  if (x) return Shape::X;
  return Shape::Neither;
}

inline CsParams extract_cs_params(const DensityMatrix& rho, double tol = kShapeTolerance) {
  if (!admits_cs(classify(rho, tol))) throw WrongShape("state is not centrosymmetric");
  const CMat4& m = rho.matrix();
  return {m(0, 0).real(), m(0, 1).real(), m(0, 1).imag(), m(0, 2).real(),
          m(0, 2).imag(), m(0, 3).real(), m(1, 2).real()};
}

inline XParams extract_x_params(const DensityMatrix& rho, double tol = kShapeTolerance) {
  if (!admits_x(classify(rho, tol))) throw WrongShape("state does not have the X pattern");
  const CMat4& m = rho.matrix();
  return {m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(0, 3).real(),
          m(0, 3).imag(), m(1, 2).real(), m(1, 2).imag()};
}

// ---------------------------------------------------------------------------
// Hadamard conjugation

/// H x H with exact entries (-1)^popcount(i & j) / 2.
inline const CMat4& hadamard2() {
  static const CMat4 kHH = [] {
    CMat4 m;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = ((i & j) == 1 || (i & j) == 2) ? -0.5 : 0.5;
    return m;
  }();
  return kHH;
}

/// (H x H) rho (H x H)
inline DensityMatrix hadamard_conjugate(const DensityMatrix& rho) {
  return DensityMatrix(hadamard2() * rho.matrix() * hadamard2());
}

inline XParams derive_x_from_cs(const CsParams& p) {
  try {
    return extract_x_params(hadamard_conjugate(cs_to_matrix(p)));
  } catch (const WrongShape& e) {
    throw std::logic_error(std::string("Hadamard image of a CS state lost the X pattern: ") + e.what());
  }
}

inline CsParams derive_cs_from_x(const XParams& q) {
  try {
    return extract_cs_params(hadamard_conjugate(x_to_matrix(q)));
  } catch (const WrongShape& e) {
    throw std::logic_error(std::string("Hadamard image of an X state lost the CS pattern: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Pauli-basis decomposition

/// R[mu][nu] = tr[rho (sigma_mu x sigma_nu)], real part.
inline Matrix<double, 4, 4> pauli_correlations(const CMat4& m) {
  Matrix<double, 4, 4> r;
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu) r(mu, nu) = trace(m * kron(pauli(mu), pauli(nu))).real();
  return r;
}

/// Local Bloch vectors and correlation matrix.
struct BlochForm {
  Vec3 x{};  // qubit A: tr[rho (sigma_i x 1)]
  Vec3 y{};  // qubit B: tr[rho (1 x sigma_j)]
  RMat3 t;   // tr[rho (sigma_i x sigma_j)]

  /// |x|^2 + |y|^2 + |T|_F^2
  double total() const {
    const double tf = frobenius_norm(t);
    return dot(x, x) + dot(y, y) + tf * tf;
  }
};

inline BlochForm bloch_from_correlations(const Matrix<double, 4, 4>& r) {
  BlochForm b;
  for (std::size_t i = 0; i < 3; ++i) {
    b.x[i] = r(i + 1, 0);
    b.y[i] = r(0, i + 1);
    for (std::size_t j = 0; j < 3; ++j) b.t(i, j) = r(i + 1, j + 1);
  }
  return b;
}

inline BlochForm bloch_decompose(const DensityMatrix& rho) { return bloch_from_correlations(pauli_correlations(rho.matrix())); }

/// (1/4)[1x1 + sum x_i s_i x 1 + sum y_j 1 x s_j + sum T_ij s_i x s_j]; PSD not guaranteed.
inline CMat4 bloch_compose(const BlochForm& b) {
  CMat4 m = CMat4::identity();
  for (std::size_t i = 0; i < 3; ++i) {
    m += kron(pauli(i + 1), pauli(0)) * cplx(b.x[i]);
    m += kron(pauli(0), pauli(i + 1)) * cplx(b.y[i]);
    for (std::size_t j = 0; j < 3; ++j) m += kron(pauli(i + 1), pauli(j + 1)) * cplx(b.t(i, j));
  }
  return m * cplx(0.25);
}

/// Correlation matrix seen after (H x H) conjugation: H swaps sigma_x and
/// sigma_z and flips sigma_y, so R -> O R O with O a signed permutation.
inline Matrix<double, 4, 4> hadamard_frame(const Matrix<double, 4, 4>& r) {
  Matrix<double, 4, 4> o;
  o(0, 0) = 1.0;
  o(1, 3) = 1.0;
  o(2, 2) = -1.0;
  o(3, 1) = 1.0;
  return o * r * o;
}

// ---------------------------------------------------------------------------
// Equivalence conditions between a CS and an X parameterization

struct Condition6Report {
  static constexpr std::array<const char*, 5> kClauseNames = {
      "|p2| = |2(q1+q3)-1|/4", "|p4| = |2(q1+q2)-1|/4", "p7 = q4", "p6 = q6",
      "q2+q3 = (1 - sqrt(16(p1^2+p3^2+p5^2) - 8p1 + 1))/2"};

  std::array<bool, 5> verbatim_satisfied{};
  std::array<double, 5> clause_residuals{};
  double radicand = 0.0;
  bool radicand_negative = false;
  // Plus branch of the square-root clause, evaluated only when the minus branch fails.
  bool alternate_branch_evaluated = false;
  bool alternate_branch_satisfied = false;
  double alternate_branch_residual = 0.0;

  // R_X compared with R_CS expressed in the Hadamard-rotated Pauli frame.
  bool r_matrices_equal = false;
  double max_r_deviation = 0.0;
  // R_X compared with R_CS entrywise without any frame change.
  double literal_r_deviation = 0.0;
  // CS correlation entry T_22: the trace formula gives 2(p7 - p6), the printed form 2(p6 - p7).
  double t22_trace_formula = 0.0;
  double t22_printed = 0.0;
  double tolerance = 0.0;

  bool all_verbatim() const {
    return std::all_of(verbatim_satisfied.begin(), verbatim_satisfied.end(), [](bool b) { return b; });
  }
};

inline Condition6Report check_condition6(const CsParams& p, const XParams& q, double tol = kStateTolerance) {
  Condition6Report rep;
  rep.tolerance = tol;

  auto clause = [&](std::size_t i, double residual) {
    rep.clause_residuals[i] = residual;
    rep.verbatim_satisfied[i] = residual <= tol;
  };
  rep.t22_trace_formula = 2.0 * (p.p7 - p.p6);
  rep.t22_printed = 2.0 * (p.p6 - p.p7);
  clause(0, std::abs(std::abs(p.p2) - std::abs((2.0 * (q.q1 + q.q3) - 1.0) / 4.0)));
  clause(1, std::abs(std::abs(p.p4) - std::abs((2.0 * (q.q1 + q.q2) - 1.0) / 4.0)));
  clause(2, std::abs(p.p7 - q.q4));
  clause(3, std::abs(p.p6 - q.q6));

  rep.radicand = 16.0 * (p.p1 * p.p1 + p.p3 * p.p3 + p.p5 * p.p5) - 8.0 * p.p1 + 1.0;
  if (rep.radicand < 0.0) {
    rep.radicand_negative = true;
    rep.clause_residuals[4] = std::numeric_limits<double>::quiet_NaN();
    rep.verbatim_satisfied[4] = false;
  } else {
    const double root = std::sqrt(rep.radicand);
    clause(4, std::abs(q.q2 + q.q3 - (1.0 - root) / 2.0));
    if (!rep.verbatim_satisfied[4]) {
      rep.alternate_branch_evaluated = true;
      rep.alternate_branch_residual = std::abs(q.q2 + q.q3 - (1.0 + root) / 2.0);
      rep.alternate_branch_satisfied = rep.alternate_branch_residual <= tol;
    }
  }

  const auto r_cs = pauli_correlations(cs_layout(p));
  const auto r_x = pauli_correlations(x_layout(q));
  rep.max_r_deviation = max_abs(r_x - hadamard_frame(r_cs));
  rep.literal_r_deviation = max_abs(r_x - r_cs);
  rep.r_matrices_equal = rep.max_r_deviation <= tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Random states

/// G G^dagger / tr(G G^dagger) with G a 4x4 complex Ginibre matrix.
inline DensityMatrix random_density_matrix(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMat4 g;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  CMat4 m = g * adjoint(g);
  m *= cplx(1.0 / trace(m).real());
  // Exact Hermiticity; the product leaves roundoff in the imaginary diagonal.
  m = (m + adjoint(m)) * cplx(0.5);
  return DensityMatrix(m);
}

}  // namespace gqd

#endif  // GQD_STATES_HPP
