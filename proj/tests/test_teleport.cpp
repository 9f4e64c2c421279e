#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/teleport.hpp"
#include "core/verify.hpp"

#include <random>

using namespace qcpd;
using qmat::Bell;
using qmat::Mat;
using teleport::PairCorrelators;
using teleport::Set;
using teleport::SetFamily;

TEST_CASE("correction tables follow the outcome ordering") {
  // assuming resource |k>, outcome k needs no correction
  const std::pair<Set, Bell> diag[] = {{Set::SPhiPlus, Bell::PhiPlus},
                                       {Set::SPhiMinus, Bell::PhiMinus},
                                       {Set::SPsiPlus, Bell::PsiPlus},
                                       {Set::SPsiMinus, Bell::PsiMinus}};
  for (const auto &[s, b] : diag)
    CHECK((teleport::correction(s, b) - Mat::Identity(2, 2)).norm() < 1e-15);
  // spot-check one off-diagonal entry per set against the fixed tables
  const Mat z = qmat::pauli(qmat::Pauli::Z);
  const Mat x = qmat::pauli(qmat::Pauli::X);
  CHECK((teleport::correction(Set::SPhiPlus, Bell::PhiMinus) - z).norm() < 1e-15);
  CHECK((teleport::correction(Set::SPhiMinus, Bell::PsiMinus) - x).norm() < 1e-15);
  CHECK((teleport::correction(Set::SPsiPlus, Bell::PhiMinus) - z * x).norm() < 1e-15);
  CHECK((teleport::correction(Set::SPsiMinus, Bell::PsiPlus) - z).norm() < 1e-15);
}

TEST_CASE("x-state entries and reconstruction") {
  const PairCorrelators c{0.3, 0.4, -0.2, 0.1};
  const auto x = teleport::x_entries(c);
  CHECK(x.a == doctest::Approx((1 + 2 * 0.3 + 0.1) / 4));
  CHECK(x.b == doctest::Approx((1 - 0.1) / 4));
  CHECK(x.c == doctest::Approx((0.4 - 0.2) / 4));
  CHECK(x.d == doctest::Approx((1 - 2 * 0.3 + 0.1) / 4));
  CHECK(x.e == doctest::Approx((0.4 + 0.2) / 4));

  const Mat rho = teleport::rho23_from_correlators(c);
  CHECK(qmat::is_density_matrix(rho));
  // correlators read back through Pauli expectations
  const Mat sz = qmat::pauli(qmat::Pauli::Z), id = Mat::Identity(2, 2);
  auto expval = [&](const Mat &op) { return (rho * op).trace().real(); };
  CHECK(expval(qmat::tensor(sz, id)) == doctest::Approx(c.z));
  CHECK(expval(qmat::tensor(id, sz)) == doctest::Approx(c.z));
  CHECK(expval(qmat::tensor(sz, sz)) == doctest::Approx(c.zz));
  const Mat sx = qmat::pauli(qmat::Pauli::X), sy = qmat::pauli(qmat::Pauli::Y);
  CHECK(expval(qmat::tensor(sx, sx)) == doctest::Approx(c.xx));
  CHECK(expval(qmat::tensor(sy, sy)) == doctest::Approx(c.yy));
}

TEST_CASE("physicality boundary") {
  CHECK(PairCorrelators{0, 0, 0, 0}.physical());
  CHECK(PairCorrelators{0, 1, -1, 1}.physical());          // Phi+ Bell state
  CHECK(PairCorrelators{0, 1, 1, -1}.physical());          // Psi+ Bell state
  CHECK_FALSE(PairCorrelators{0, 1.5, 1.5, 0}.physical()); // |c| > b
  CHECK_FALSE(PairCorrelators{1.2, 0, 0, 1}.physical());
  CHECK_THROWS_AS(teleport::rho23_from_correlators({0, 1.5, 1.5, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(teleport::rho1_from_z(1.5), std::invalid_argument);
}

TEST_CASE("outcome probabilities depend only on z") {
  const PairCorrelators c{0.6, 0.1, 0.05, 0.3};
  const auto out = teleport::engine(teleport::rho1_from_z(c.z),
                                    teleport::rho23_from_correlators(c),
                                    Set::SPhiPlus);
  const double z2 = 0.36;
  for (const auto &o : out) {
    const bool psi = o.j == Bell::PsiPlus || o.j == Bell::PsiMinus;
    CHECK(o.probability == doctest::Approx(psi ? (1 - z2) / 4 : (1 + z2) / 4));
  }
}

TEST_CASE("frozen closed-form values") {
  const PairCorrelators c{0.5, 0.3, -0.1, 0.25};
  CHECK(teleport::mean_fidelity(c, Set::SPsiPlus) == doctest::Approx(0.84375));
  CHECK(teleport::mean_fidelity(c, Set::SPhiPlus) == doctest::Approx(0.90625));
  CHECK(teleport::d_min(c).value == doctest::Approx(0.1875));
  // z^2 + zz > 0 here, so the Phi family wins the distance
  CHECK(teleport::d_min(c).arg == SetFamily::Phi);
}

TEST_CASE("plus/minus sets of a family give identical means") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const PairCorrelators c = verify::random_correlators(rng);
    CHECK(teleport::mean_fidelity(c, Set::SPsiPlus) ==
          doctest::Approx(teleport::mean_fidelity(c, Set::SPsiMinus)));
    CHECK(teleport::mean_trace_distance(c, Set::SPhiPlus) ==
          doctest::Approx(teleport::mean_trace_distance(c, Set::SPhiMinus)));
  }
}

TEST_CASE("engine agrees with closed forms") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 100; ++i) {
    const PairCorrelators c = verify::random_correlators(rng);
    const Mat rho1 = teleport::rho1_from_z(c.z);
    const Mat rho23 = teleport::rho23_from_correlators(c);
    for (Set s : teleport::kSetLabels) {
      CHECK(std::abs(teleport::engine_mean_fidelity(rho1, rho23, s) -
                     teleport::mean_fidelity(c, s)) < 1e-10);
      CHECK(std::abs(teleport::engine_mean_trace_distance(rho1, rho23, s) -
                     teleport::mean_trace_distance(c, s)) < 1e-10);
    }
  }
}

TEST_CASE("bob outputs are normalized and match the engine") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const PairCorrelators c = verify::random_correlators(rng);
    const auto out = teleport::engine(teleport::rho1_from_z(c.z),
                                      teleport::rho23_from_correlators(c),
                                      Set::SPsiPlus);
    for (const auto &o : out) {
      if (o.degenerate) continue;
      CHECK(std::abs(o.bob_state.trace().real() - 1) < 1e-12);
      const Mat expect = teleport::bob_output(c, o.j, SetFamily::Psi);
      CHECK((o.bob_state - expect).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("fidelity and distance ignore xx and yy") {
  const PairCorrelators a{0.4, 0.3, 0.2, 0.1};
  const PairCorrelators b{0.4, -0.1, 0.05, 0.1};
  CHECK(std::abs(teleport::f_max(a).value - teleport::f_max(b).value) < 1e-15);
  CHECK(std::abs(teleport::d_min(a).value - teleport::d_min(b).value) < 1e-15);
}

TEST_CASE("piecewise branches of the minimal distance") {
  // zz >= z^2
  auto high = teleport::sign_analysis({0.6, 0, 0, 0.5});
  CHECK(high.region == teleport::SignAnalysis::Region::High);
  CHECK(high.branch_value == doctest::Approx(0.6 * (1 - 0.36) / 2));
  // zz <= -z^2
  auto low = teleport::sign_analysis({0.6, 0, 0, -0.5});
  CHECK(low.region == teleport::SignAnalysis::Region::Low);
  CHECK(low.branch_value == doctest::Approx(0.6 * (1 + 0.36) / 2));
  // |zz| <= z^2
  auto mid = teleport::sign_analysis({0.6, 0, 0, 0.1});
  CHECK(mid.region == teleport::SignAnalysis::Region::Mid);
  CHECK(mid.branch_value == doctest::Approx(0.6 * (1 - 0.1) / 2));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const PairCorrelators c = verify::random_correlators(rng);
    CHECK(std::abs(teleport::sign_analysis(c).branch_value -
                   teleport::d_min_closed_form(c.z, c.zz)) < 1e-12);
    CHECK(std::abs(teleport::d_min(c).value -
                   teleport::d_min_closed_form(c.z, c.zz)) < 1e-12);
  }
}

TEST_CASE("z = 0 hides nothing from the detector measures") {
  for (double zz : {-0.9, -0.3, 0.0, 0.4, 0.99}) {
    const PairCorrelators c{0, 0, 0, zz};
    CHECK(std::abs(teleport::f_max(c).value - 1) < 1e-12);
    CHECK(teleport::d_min(c).value < 1e-12);
  }
}

TEST_CASE("bell resource teleports exactly") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int i = 0; i < 20; ++i) {
    Mat m(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int cc = 0; cc < 2; ++cc) m(r, cc) = std::complex<double>(g(rng), g(rng));
    Mat rho1 = m * m.adjoint();
    rho1 /= rho1.trace().real();
    const auto out = teleport::engine(
        rho1, qmat::bell_projector(qmat::Bell::PsiMinus), Set::SPsiMinus);
    for (const auto &o : out) {
      CHECK(o.probability == doctest::Approx(0.25));
      CHECK((o.bob_state - rho1).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}
