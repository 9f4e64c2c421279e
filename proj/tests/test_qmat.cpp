#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/qmat.hpp"

#include <random>

using namespace qcpd;
using qmat::Mat;

namespace {

std::mt19937_64 rng(42);

Mat random_density(int dim) {
  std::normal_distribution<double> g;
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = std::complex<double>(g(rng), g(rng));
  Mat rho = m * m.adjoint();
  return rho / rho.trace().real();
}

} // namespace

TEST_CASE("pauli algebra") {
  const Mat id = qmat::pauli(qmat::Pauli::I);
  for (auto p : {qmat::Pauli::X, qmat::Pauli::Y, qmat::Pauli::Z}) {
    const Mat s = qmat::pauli(p);
    CHECK((s * s - id).norm() == doctest::Approx(0));
    CHECK(s.trace().real() == doctest::Approx(0));
    CHECK((s - s.adjoint()).norm() == doctest::Approx(0));
  }
  const Mat x = qmat::pauli(qmat::Pauli::X), y = qmat::pauli(qmat::Pauli::Y),
            z = qmat::pauli(qmat::Pauli::Z);
  CHECK((x * y - std::complex<double>(0, 1) * z).norm() == doctest::Approx(0));
  CHECK((x * z + z * x).norm() == doctest::Approx(0)); // anticommute
}

TEST_CASE("bell states orthonormal, projectors resolve identity") {
  Mat sum = Mat::Zero(4, 4);
  for (auto b1 : qmat::kBellLabels) {
    const auto v1 = qmat::bell_state(b1);
    for (auto b2 : qmat::kBellLabels) {
      const auto ip = (qmat::bell_state(b2).adjoint() * v1)(0, 0);
      CHECK(std::abs(ip - (b1 == b2 ? 1.0 : 0.0)) < 1e-14);
    }
    const Mat p = qmat::bell_projector(b1);
    CHECK((p * p - p).norm() < 1e-14); // projector
    sum += p;
  }
  CHECK((sum - Mat::Identity(4, 4)).norm() < 1e-14);
}

TEST_CASE("bell sign conventions") {
  // |Phi+-> = (|00> +- |11>)/sqrt2, |Psi+-> = (|01> +- |10>)/sqrt2
  const auto phim = qmat::bell_state(qmat::Bell::PhiMinus);
  CHECK(std::abs(phim(0) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(phim(3) + 1 / std::sqrt(2.0)) < 1e-15);
  const auto psip = qmat::bell_state(qmat::Bell::PsiPlus);
  CHECK(std::abs(psip(1) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(psip(2) - 1 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("tensor product ordering: factor 0 is most significant") {
  Mat a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 5, 6, 7, 8;
  const Mat t = qmat::tensor(a, b);
  REQUIRE(t.rows() == 4);
  CHECK(t(0, 0) == std::complex<double>(5));  // a00*b00
  CHECK(t(2, 0) == std::complex<double>(15)); // a10*b00
  CHECK(t(0, 2) == std::complex<double>(10)); // a01*b00
}

TEST_CASE("partial trace recovers tensor factors") {
  const Mat a = random_density(2), b = random_density(2), c = random_density(2);
  const Mat rho = qmat::tensor(a, qmat::tensor(b, c));
  CHECK((qmat::partial_trace(rho, {0}, {2, 2, 2}) - a).norm() < 1e-13);
  CHECK((qmat::partial_trace(rho, {1}, {2, 2, 2}) - b).norm() < 1e-13);
  CHECK((qmat::partial_trace(rho, {2}, {2, 2, 2}) - c).norm() < 1e-13);
  const Mat bc = qmat::partial_trace(rho, {1, 2}, {2, 2, 2});
  CHECK((bc - qmat::tensor(b, c)).norm() < 1e-13);
}

TEST_CASE("partial trace preserves trace on entangled states") {
  const Mat rho = random_density(8);
  for (auto keep : {std::vector<int>{0}, {1}, {2}, {0, 2}}) {
    const Mat r = qmat::partial_trace(rho, keep, {2, 2, 2});
    CHECK(std::abs(r.trace().real() - 1.0) < 1e-13);
    CHECK((r - r.adjoint()).norm() < 1e-13);
  }
}

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(qmat::DensityMatrix(random_density(4)));
  Mat bad = Mat::Identity(2, 2); // trace 2
  CHECK_THROWS_AS(qmat::DensityMatrix{bad}, std::invalid_argument);
  Mat neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(qmat::DensityMatrix{neg}, std::invalid_argument);
  Mat nonherm = random_density(2);
  nonherm(0, 1) += std::complex<double>(0.1, 0.0);
  std::string why;
  CHECK_FALSE(qmat::is_density_matrix(nonherm, &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("sqrt_psd squares back") {
  const Mat rho = random_density(4);
  const Mat s = qmat::sqrt_psd(rho);
  CHECK((s * s - rho).norm() < 1e-12);
}

TEST_CASE("fidelity") {
  const Mat rho = random_density(2);
  CHECK(qmat::uhlmann_fidelity(rho, rho) == doctest::Approx(1.0));
  Mat up = Mat::Zero(2, 2), down = Mat::Zero(2, 2);
  up(0, 0) = 1;
  down(1, 1) = 1;
  CHECK(qmat::uhlmann_fidelity(up, down) == doctest::Approx(0.0));
  // pure-state fidelity is the squared overlap
  Mat plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK(qmat::uhlmann_fidelity(up, plus) == doctest::Approx(0.5));
}

TEST_CASE("trace distance and Bloch form") {
  Mat up = Mat::Zero(2, 2), down = Mat::Zero(2, 2);
  up(0, 0) = 1;
  down(1, 1) = 1;
  CHECK(qmat::trace_distance(up, down) == doctest::Approx(1.0));
  for (int i = 0; i < 50; ++i) {
    const Mat r1 = random_density(2), r2 = random_density(2);
    CHECK(std::abs(qmat::trace_distance(r1, r2) -
                   qmat::trace_distance_bloch(r1, r2)) < 1e-12);
    CHECK(qmat::trace_distance(r1, r1) < 1e-13);
  }
}
