#include <gtest/gtest.h>

#include <cmath>

#include "gqd/sampling.hpp"
#include "gqd/states.hpp"

namespace {

using namespace gqd;

CMat4 bell_matrix() {
  CMat4 m;
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return m;
}

const CMat4 kQuarter = CMat4::identity() * cplx(0.25);
const CsParams kPExample{0.3, 0.05, 0.0, 0.05, 0.0, 0.1, 0.05};
const CsParams kBellCs{0.5, 0, 0, 0, 0, 0.5, 0};
const XParams kBellX{0.5, 0, 0, 0.5, 0, 0, 0};

void expect_params_near(const std::array<double, 7>& a, const std::array<double, 7>& b, double tol) {
  for (std::size_t i = 0; i < 7; ++i) EXPECT_NEAR(a[i], b[i], tol) << "parameter " << i + 1;
}

TEST(DensityMatrix, RejectsEachBrokenInvariant) {
  CMat4 m = kQuarter;
  m(0, 1) = 0.1;  // not Hermitian
  EXPECT_THROW(DensityMatrix{m}, InvalidState);
  EXPECT_THROW(DensityMatrix{kQuarter * cplx(0.9 / 1.0)}, InvalidState);
  const CMat4 negative = CMat4::diagonal({0.6, 0.6, 0.0, -0.2});
  try {
    DensityMatrix d(negative);
    FAIL() << "expected InvalidState";
  } catch (const InvalidState& e) {
    EXPECT_NE(std::string(e.what()).find("min eigenvalue"), std::string::npos);
  }
}

TEST(CsToMatrix, MaximallyMixed) {
  EXPECT_EQ(cs_to_matrix({0.25, 0, 0, 0, 0, 0, 0}).matrix(), kQuarter);
}

TEST(CsToMatrix, CornerEntries) {
  const CMat4 m = cs_to_matrix({0.25, 0, 0, 0, 0, 0.25, 0}).matrix();
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(m(i, i), cplx(0.25));
  EXPECT_EQ(m(0, 3), cplx(0.25));
  EXPECT_EQ(m(3, 0), cplx(0.25));
  EXPECT_EQ(m(1, 2), cplx(0.0));
}

TEST(CsToMatrix, RealSymmetricExample) {
  const CMat4 expected{{.3, .05, .05, .1}, {.05, .2, .05, .05}, {.05, .05, .2, .05}, {.1, .05, .05, .3}};
  const CMat4 m = cs_to_matrix(kPExample).matrix();
  EXPECT_LE(max_abs(m - expected), 1e-16);
  EXPECT_EQ(centrosymmetry_residual(m), 0.0);
}

TEST(CsToMatrix, NonPositiveParamsRejected) {
  EXPECT_THROW(cs_to_matrix({0.5, 0.25, 0, 0, 0, 0, 0}), InvalidState);
}

TEST(XToMatrix, Examples) {
  EXPECT_EQ(x_to_matrix({0.25, 0.25, 0.25, 0, 0, 0, 0}).matrix(), kQuarter);
  EXPECT_EQ(x_to_matrix(kBellX).matrix(), bell_matrix());
  const CMat4 m = x_to_matrix({0.4, 0.3, 0.2, 0, 0, 0.1, 0}).matrix();
  EXPECT_NEAR(m(3, 3).real(), 0.1, 1e-15);
  EXPECT_EQ(m(1, 2), cplx(0.1));
  EXPECT_EQ(m(2, 1), cplx(0.1));
  EXPECT_EQ(x_pattern_residual(m), 0.0);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(DensityMatrix(kQuarter)), Shape::Both);
  EXPECT_EQ(classify(DensityMatrix(bell_matrix())), Shape::Both);
  EXPECT_EQ(classify(cs_to_matrix(kPExample)), Shape::CS);
  EXPECT_EQ(classify(x_to_matrix({0.4, 0.3, 0.2, 0, 0, 0.1, 0.05})), Shape::X);
  EXPECT_EQ(classify(random_density_matrix(1)), Shape::Neither);
}

TEST(Extract, Examples) {
  expect_params_near(extract_cs_params(DensityMatrix(kQuarter)).values(), {0.25, 0, 0, 0, 0, 0, 0}, 0.0);
  expect_params_near(extract_x_params(DensityMatrix(bell_matrix())).values(), kBellX.values(), 0.0);
  EXPECT_THROW(extract_x_params(cs_to_matrix(kPExample)), WrongShape);
  EXPECT_THROW(extract_cs_params(random_density_matrix(9)), WrongShape);
}

TEST(Extract, RoundTripsOnSampledFamilies) {
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const CsParams p = sample_cs_params(rng);
    expect_params_near(extract_cs_params(cs_to_matrix(p)).values(), p.values(), 1e-12);
    const XParams q = sample_x_params(rng);
    expect_params_near(extract_x_params(x_to_matrix(q)).values(), q.values(), 1e-12);
  }
}

TEST(HadamardConjugate, ExactTwoQubitHadamard) {
  EXPECT_LE(max_abs(hadamard2() - kron(hadamard(), hadamard())), 1e-15);
  EXPECT_EQ(hadamard2() * hadamard2(), CMat4::identity());
  expect_params_near(derive_x_from_cs({0.25, 0, 0, 0, 0, 0, 0}).values(), {0.25, 0.25, 0.25, 0, 0, 0, 0}, 0.0);
}

TEST(HadamardConjugate, FixedPoints) {
  EXPECT_LE(max_abs(hadamard_conjugate(DensityMatrix(kQuarter)).matrix() - kQuarter), 1e-15);
  EXPECT_LE(max_abs(hadamard_conjugate(DensityMatrix(bell_matrix())).matrix() - bell_matrix()), 1e-15);
}

TEST(HadamardConjugate, MapsCsToXAndBack) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix cs = cs_to_matrix(sample_cs_params(rng));
    const DensityMatrix x = hadamard_conjugate(cs);
    EXPECT_LE(x_pattern_residual(x.matrix()), 1e-12);
    EXPECT_TRUE(admits_x(classify(x)));
    EXPECT_LE(max_abs(hadamard_conjugate(x).matrix() - cs.matrix()), 1e-13);

    const DensityMatrix xs = x_to_matrix(sample_x_params(rng));
    EXPECT_TRUE(admits_cs(classify(hadamard_conjugate(xs))));
  }
}

TEST(HadamardConjugate, InvolutionOnGenericStates) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const DensityMatrix rho = random_density_matrix(s);
    EXPECT_LE(max_abs(hadamard_conjugate(hadamard_conjugate(rho)).matrix() - rho.matrix()), 1e-13);
  }
}

TEST(DeriveX, OracleValues) {
  expect_params_near(derive_x_from_cs({0.25, 0, 0, 0, 0, 0, 0}).values(), {0.25, 0.25, 0.25, 0, 0, 0, 0}, 1e-15);
  // Bell state is a fixed point of H x H (numpy: HH @ rho @ HH).
  expect_params_near(derive_x_from_cs(kBellCs).values(), kBellX.values(), 1e-15);
  // numpy oracle for the real symmetric example.
  expect_params_near(derive_x_from_cs(kPExample).values(), {0.425, 0.175, 0.175, 0.075, 0.0, 0.025, 0.0}, 1e-15);
}

TEST(DeriveX, Involution) {
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const CsParams p = sample_cs_params(rng);
    expect_params_near(derive_cs_from_x(derive_x_from_cs(p)).values(), p.values(), 1e-12);
  }
}

TEST(BlochDecompose, Examples) {
  const BlochForm mixed = bloch_decompose(DensityMatrix(kQuarter));
  EXPECT_EQ(mixed.total(), 0.0);

  const BlochForm bell = bloch_decompose(DensityMatrix(bell_matrix()));
  EXPECT_EQ(norm(bell.x), 0.0);
  EXPECT_EQ(norm(bell.y), 0.0);
  EXPECT_LE(max_abs(bell.t - RMat3::diagonal({1.0, -1.0, 1.0})), 1e-15);

  const BlochForm p = bloch_decompose(cs_to_matrix(kPExample));
  EXPECT_NEAR(p.x[0], 0.2, 1e-15);
  EXPECT_NEAR(p.y[0], 0.2, 1e-15);
  EXPECT_EQ(p.x[1], 0.0);
  EXPECT_EQ(p.y[2], 0.0);
  // T_22 = 2(p7 - p6) by the trace formula.
  EXPECT_LE(max_abs(p.t - RMat3::diagonal({0.3, -0.1, 0.2})), 1e-15);
}

TEST(BlochDecompose, CsAndXSparsityPatterns) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const CsParams p = sample_cs_params(rng);
    const BlochForm b = bloch_decompose(cs_to_matrix(p));
    EXPECT_NEAR(b.y[0], 4 * p.p2, 1e-12);
    EXPECT_NEAR(b.x[0], 4 * p.p4, 1e-12);
    EXPECT_NEAR(b.t(0, 0), 2 * (p.p6 + p.p7), 1e-12);
    EXPECT_NEAR(b.t(1, 1), 2 * (p.p7 - p.p6), 1e-12);
    EXPECT_NEAR(b.t(1, 2), -4 * p.p5, 1e-12);
    EXPECT_NEAR(b.t(2, 1), -4 * p.p3, 1e-12);
    EXPECT_NEAR(b.t(2, 2), 4 * p.p1 - 1, 1e-12);
    for (auto [r, c] : {std::pair{0, 1}, {0, 2}, {1, 0}, {2, 0}}) EXPECT_NEAR(b.t(r, c), 0.0, 1e-12);

    const XParams q = sample_x_params(rng);
    const BlochForm bx = bloch_decompose(x_to_matrix(q));
    EXPECT_NEAR(bx.y[2], 2 * (q.q1 + q.q3) - 1, 1e-12);
    EXPECT_NEAR(bx.x[2], 2 * (q.q1 + q.q2) - 1, 1e-12);
    EXPECT_NEAR(bx.t(0, 0), 2 * (q.q6 + q.q4), 1e-12);
    EXPECT_NEAR(bx.t(1, 1), 2 * (q.q6 - q.q4), 1e-12);
    EXPECT_NEAR(bx.t(2, 2), 1 - 2 * (q.q2 + q.q3), 1e-12);
    EXPECT_NEAR(bx.x[0], 0.0, 1e-12);
    EXPECT_NEAR(bx.t(0, 2), 0.0, 1e-12);
  }
}

TEST(BlochCompose, InvertsDecomposition) {
  EXPECT_EQ(bloch_compose(BlochForm{}), kQuarter);
  BlochForm bell;
  bell.t = RMat3::diagonal({1.0, -1.0, 1.0});
  EXPECT_LE(max_abs(bloch_compose(bell) - bell_matrix()), 1e-16);
  for (std::uint64_t s = 100; s < 200; ++s) {
    const DensityMatrix rho = random_density_matrix(s);
    EXPECT_LE(max_abs(bloch_compose(bloch_decompose(rho)) - rho.matrix()), 1e-12);
  }
}

TEST(BlochForm, EntriesBounded) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto r = pauli_correlations(random_density_matrix(s).matrix());
    for (double v : r.data()) EXPECT_LE(std::abs(v), 1.0 + 1e-10);
  }
}

TEST(HadamardFrame, MatchesMatrixConjugation) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const DensityMatrix rho = random_density_matrix(s);
    const auto direct = pauli_correlations(hadamard_conjugate(rho).matrix());
    EXPECT_LE(max_abs(direct - hadamard_frame(pauli_correlations(rho.matrix()))), 1e-14);
  }
}

TEST(Condition6, ReportsBothT22Signs) {
  const auto rep = check_condition6(kPExample, derive_x_from_cs(kPExample));
  EXPECT_NEAR(rep.t22_trace_formula, -0.1, 1e-15);
  EXPECT_NEAR(rep.t22_printed, 0.1, 1e-15);
  EXPECT_NEAR(bloch_decompose(cs_to_matrix(kPExample)).t(1, 1), rep.t22_trace_formula, 1e-15);
}

TEST(Condition6, MaximallyMixedPair) {
  const auto rep = check_condition6({0.25, 0, 0, 0, 0, 0, 0}, {0.25, 0.25, 0.25, 0, 0, 0, 0});
  EXPECT_TRUE(rep.all_verbatim());
  EXPECT_TRUE(rep.r_matrices_equal);
  EXPECT_FALSE(rep.alternate_branch_evaluated);
}

TEST(Condition6, BellFixedPointViolatesVerbatimClauses) {
  const auto rep = check_condition6(kBellCs, kBellX);
  EXPECT_TRUE(rep.verbatim_satisfied[0]);
  EXPECT_TRUE(rep.verbatim_satisfied[1]);
  EXPECT_FALSE(rep.verbatim_satisfied[2]);  // p7 = q4
  EXPECT_FALSE(rep.verbatim_satisfied[3]);  // p6 = q6
  EXPECT_TRUE(rep.verbatim_satisfied[4]);
  EXPECT_TRUE(rep.r_matrices_equal);
  EXPECT_EQ(rep.literal_r_deviation, 0.0);
}

TEST(Condition6, GenericREqualityOnDerivedPairs) {
  Rng rng(8);
  int verbatim = 0;
  for (int i = 0; i < 200; ++i) {
    const CsParams p = sample_cs_params(rng);
    const auto rep = check_condition6(p, derive_x_from_cs(p), 1e-10);
    EXPECT_TRUE(rep.r_matrices_equal) << rep.max_r_deviation;
    EXPECT_FALSE(rep.radicand_negative);  // radicand = (4p1-1)^2 + 16(p3^2 + p5^2)
    verbatim += rep.all_verbatim() ? 1 : 0;
    EXPECT_EQ(rep.r_matrices_equal, rep.max_r_deviation <= rep.tolerance);
  }
  // Clauses p7 = q4 and p6 = q6 fail for generic samples.
  EXPECT_LT(verbatim, 200);
}

TEST(Condition6, AlternateBranchReportedWhenMinusBranchFails) {
  // p1 = 0 puts sqrt(...) = 1, so the minus branch wants q2 + q3 = 0 and the plus branch 1.
  const auto rep = check_condition6({0.0, 0, 0, 0, 0, 0, 0.5}, {0.0, 0.5, 0.5, 0, 0, 0.5, 0});
  EXPECT_FALSE(rep.verbatim_satisfied[4]);
  EXPECT_TRUE(rep.alternate_branch_evaluated);
  EXPECT_TRUE(rep.alternate_branch_satisfied);
}

TEST(RandomDensityMatrix, DeterministicAndValid) {
  EXPECT_EQ(random_density_matrix(42).matrix(), random_density_matrix(42).matrix());
  EXPECT_NE(random_density_matrix(42).matrix(), random_density_matrix(43).matrix());
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto v = validate_state(random_density_matrix(s).matrix());
    EXPECT_TRUE(v.ok());
    EXPECT_GE(v.min_eigenvalue, -1e-12);
  }
}

}  // namespace
