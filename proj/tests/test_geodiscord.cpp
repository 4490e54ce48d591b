#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "gqd/geodiscord.hpp"
#include "gqd/sampling.hpp"
#include "gqd/states.hpp"

namespace {

using namespace gqd;

CMat4 bell_matrix() {
  CMat4 m;
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return m;
}

DensityMatrix ket00() { return DensityMatrix(CMat4::diagonal({1, 0, 0, 0})); }

const CsParams kPExample{0.3, 0.05, 0.0, 0.05, 0.0, 0.1, 0.05};

DensityMatrix local_rotate(const DensityMatrix& rho, const CMat2& u, const CMat2& v) {
  const CMat4 w = kron(u, v);
  CMat4 m = w * rho.matrix() * adjoint(w);
  return DensityMatrix((m + adjoint(m)) * cplx(0.5));
}

TEST(MeasurementAxes, NormalizesAndRejectsZero) {
  const MeasurementAxes a({0, 0, 2}, {3, 4, 0});
  EXPECT_EQ(a.k()[2], 1.0);
  EXPECT_DOUBLE_EQ(a.l()[0], 0.6);
  EXPECT_THROW(MeasurementAxes({0, 0, 0}, {1, 0, 0}), DomainError);
  EXPECT_THROW(MeasurementAxes({1, 0, 0}, {NAN, 0, 0}), DomainError);
}

TEST(Micc, Examples) {
  const MeasurementAxes z({0, 0, 1}, {0, 0, 1});
  const CMat4 quarter = CMat4::identity() * cplx(0.25);
  EXPECT_LE(max_abs(micc(DensityMatrix(quarter), z).matrix() - quarter), 1e-16);
  EXPECT_LE(max_abs(micc(DensityMatrix(bell_matrix()), z).matrix() - CMat4::diagonal({0.5, 0, 0, 0.5})), 1e-16);
  EXPECT_LE(max_abs(micc(ket00(), z).matrix() - ket00().matrix()), 1e-16);
}

TEST(Micc, IsIdempotentAndValid) {
  Rng rng(3);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const DensityMatrix rho = random_density_matrix(s);
    const MeasurementAxes axes(random_unit_vector(rng), random_unit_vector(rng));
    const DensityMatrix chi = micc(rho, axes);
    EXPECT_LE(max_abs(micc(chi, axes).matrix() - chi.matrix()), 1e-13);
  }
}

TEST(HsDistance, Examples) {
  const DensityMatrix quarter = DensityMatrix::maximally_mixed();
  const DensityMatrix bell(bell_matrix());
  EXPECT_NEAR(hs_distance_sq(bell, quarter), 0.75, 1e-15);
  EXPECT_NEAR(hs_distance_sq(bell, DensityMatrix(CMat4::diagonal({0.5, 0, 0, 0.5}))), 0.5, 1e-15);
  EXPECT_EQ(hs_distance_sq(bell, bell), 0.0);
}

TEST(Objective, RealSymmetricExample) {
  // numpy brute force: lambda_max = 0.17 along k = l = e1.
  const BlochForm b = bloch_decompose(cs_to_matrix(kPExample));
  EXPECT_NEAR(objective(b, MeasurementAxes({1, 0, 0}, {1, 0, 0})), 0.17, 1e-15);
  EXPECT_NEAR(objective(b, MeasurementAxes({0, 0, 1}, {0, 0, 1})), 0.04, 1e-15);
}

TEST(BlochDistance, MatchesDirectTrace) {
  Rng rng(11);
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const DensityMatrix rho = random_density_matrix(s);
    const MeasurementAxes axes(random_unit_vector(rng), random_unit_vector(rng));
    const double direct = hs_distance_sq(rho, micc(rho, axes));
    worst = std::max(worst, std::abs(direct - eq5_distance(bloch_decompose(rho), axes)));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Alternating, KnownStates) {
  EXPECT_EQ(maximize_alternating(BlochForm{}).lambda_max, 0.0);

  const OptResult bell = maximize_alternating(bloch_decompose(DensityMatrix(bell_matrix())));
  EXPECT_NEAR(bell.lambda_max, 1.0, 1e-12);
  EXPECT_TRUE(bell.converged);

  const OptResult zero = maximize_alternating(bloch_decompose(ket00()));
  EXPECT_NEAR(zero.lambda_max, 3.0, 1e-12);
  EXPECT_NEAR(std::abs(zero.axes.k()[2]), 1.0, 1e-9);
  EXPECT_NEAR(std::abs(zero.axes.l()[2]), 1.0, 1e-9);
}

TEST(Alternating, MonotoneAscent) {
  Rng rng(17);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const BlochForm b = bloch_decompose(random_density_matrix(s));
    std::vector<double> history;
    ascend_from(b, random_unit_vector(rng), random_unit_vector(rng), {}, &history);
    for (std::size_t i = 1; i < history.size(); ++i) EXPECT_GE(history[i], history[i - 1] - 1e-14);
    EXPECT_LE(maximize_alternating(b).max_descent, 1e-14);
  }
}

TEST(Alternating, AgreesWithGridOracle) {
  double worst = 0.0;
  for (std::uint64_t s = 500; s < 700; ++s) {
    const BlochForm b = bloch_decompose(random_density_matrix(s));
    worst = std::max(worst, std::abs(maximize_alternating(b).lambda_max - maximize_grid(b).lambda_max));
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(Grid, RejectsCoarseResolution) { EXPECT_THROW(maximize_grid(BlochForm{}, 4), DomainError); }

TEST(Rank2TopEigenvalue, MatchesJacobi) {
  Rng rng(2);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Vec3 a{n(rng), n(rng), n(rng)};
    const Vec3 c{n(rng), n(rng), n(rng)};
    const double jac = hermitian_eigen(outer(a, a) + outer(c, c)).values[2];
    EXPECT_NEAR(rank2_top_eigenvalue(a, c), jac, 1e-12 * std::max(1.0, jac));
  }
}

TEST(GeometricMeasure, KnownValues) {
  EXPECT_LE(geometric_measure(DensityMatrix::maximally_mixed()).g, 1e-12);
  EXPECT_LE(geometric_measure(ket00()).g, 1e-12);
  EXPECT_NEAR(geometric_measure(DensityMatrix(bell_matrix())).g, 0.5, 1e-9);
  EXPECT_NEAR(geometric_measure(DensityMatrix(bell_matrix()), Method::Grid).g, 0.5, 1e-9);
  EXPECT_NEAR(geometric_measure(cs_to_matrix(kPExample)).g, 0.0125, 1e-12);
}

TEST(GeometricMeasure, Werner) {
  // w |Phi+><Phi+| + (1-w) I/4 has G = w^2 / 2.
  for (double w : {0.0, 0.3, 0.6, 1.0}) {
    const CMat4 m = bell_matrix() * cplx(w) + CMat4::identity() * cplx(0.25 * (1 - w));
    EXPECT_NEAR(geometric_measure(DensityMatrix(m)).g, 0.5 * w * w, 1e-12) << w;
  }
}

TEST(GeometricMeasure, ClassicalClassicalStatesVanish) {
  Rng rng(23);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const MeasurementAxes axes(random_unit_vector(rng), random_unit_vector(rng));
    const DensityMatrix chi = micc(random_density_matrix(s), axes);
    EXPECT_LE(geometric_measure(chi).g, 1e-10);
  }
}

TEST(GeometricMeasure, BoundedByTotal) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const GResult g = geometric_measure(random_density_matrix(s));
    EXPECT_GE(g.g_raw, -1e-12);
    EXPECT_LE(g.g, 0.25 * g.total + 1e-15);
  }
}

TEST(GeometricMeasure, CsAndXAgree) {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const CsParams p = sample_cs_params(rng);
    const DensityMatrix cs = cs_to_matrix(p);
    EXPECT_NEAR(geometric_measure(cs).g, geometric_measure(x_to_matrix(derive_x_from_cs(p))).g, 1e-8);
  }
}

TEST(GeometricMeasure, LocalUnitaryInvariance) {
  Rng rng(37);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const DensityMatrix rho = random_density_matrix(s);
    const DensityMatrix rotated = local_rotate(rho, random_unitary2(rng), random_unitary2(rng));
    EXPECT_NEAR(geometric_measure(rho).g, geometric_measure(rotated).g, 1e-8);
  }
}

TEST(GeometricMeasure, SwapAndTransposeSymmetry) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const BlochForm b = bloch_decompose(random_density_matrix(s));
    BlochForm swapped;
    swapped.x = b.y;
    swapped.y = b.x;
    swapped.t = transpose(b.t);
    EXPECT_NEAR(geometric_measure(b).g, geometric_measure(swapped).g, 1e-10);
  }
}

TEST(ClosedForm, CaseGuards) {
  EXPECT_THROW(closed_form_case1({0.25, 0, 0.05, 0, 0, 0, 0}), WrongCase);
  EXPECT_THROW(closed_form_case2({0.25, 0, 0.05, 0, 0, 0, 0}), WrongCase);
  EXPECT_THROW(closed_form_case2(kPExample), WrongCase);
}

TEST(ClosedForm, Case1ReportsCandidateAgainstGrid) {
  const ClosedFormReport r = closed_form_case1({0.4, 0, 0, 0, 0, 0.2, 0});
  EXPECT_EQ(r.case_number, 1);
  EXPECT_NEAR(r.coefficients[0], 0.16, 1e-15);
  EXPECT_NEAR(r.coefficients[2], 0.36, 1e-15);
  EXPECT_NEAR(r.candidate, 0.36, 1e-15);
  // Numerical optimum for x = y = 0, T = diag(0.4, -0.4, 0.6).
  EXPECT_NEAR(r.numerical, 0.36, 1e-10);
  EXPECT_NEAR(r.difference, r.candidate - r.numerical, 0.0);
}

TEST(ClosedForm, Case2ProducesFiniteReport) {
  const CsParams p{0.3, 0.0, 0.02, 0.0, 0.03, 0.05, 0.02};
  ASSERT_TRUE(validate_state(cs_layout(p)).ok());
  const ClosedFormReport r = closed_form_case2(p);
  EXPECT_EQ(r.case_number, 2);
  EXPECT_TRUE(std::isfinite(r.candidate));
  EXPECT_NEAR(r.numerical, maximize_alternating(bloch_decompose(cs_to_matrix(p))).lambda_max, 1e-8);
}

}  // namespace
