#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/chains.hpp"
#include "core/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace qcpd;
using chains::ModelSpec;
using chains::ThermalPoint;
using teleport::PairCorrelators;

namespace {

double max_diff(const PairCorrelators &a, const PairCorrelators &b) {
  return std::max({std::abs(a.z - b.z), std::abs(a.xx - b.xx),
                   std::abs(a.yy - b.yy), std::abs(a.zz - b.zz)});
}

} // namespace

TEST_CASE("hamiltonian matrix basics") {
  const auto H = chains::hamiltonian_matrix(ModelSpec::xxz(1.3, 0.7), 4);
  REQUIRE(H.rows() == 16);
  CHECK((H - H.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  // all-up state (index 0): diagonal L*(delta - h/2), no off-diagonal terms
  CHECK(H(0, 0) == doctest::Approx(4 * (1.3 - 0.35)));
  CHECK(H.col(0).cwiseAbs().sum() == doctest::Approx(std::abs(H(0, 0))));

  const auto Hxy = chains::hamiltonian_matrix(ModelSpec::xy(0.8, 0.3), 4);
  CHECK((Hxy - Hxy.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(Hxy(0, 0) == doctest::Approx(-2.0)); // -L/2 field term
}

TEST_CASE("strong field polarizes the XXZ ground state") {
  const PairCorrelators c =
      chains::ed_correlators({ModelSpec::xxz(1.0, 50.0), 0.0}, 8);
  CHECK(c.z == doctest::Approx(1.0));
  CHECK(c.zz == doctest::Approx(1.0));
  CHECK(std::abs(c.xx) < 1e-10);
}

TEST_CASE("symmetry-resolved ED equals dense ED") {
  const ModelSpec models[] = {ModelSpec::xxz(1.3, 0.7), ModelSpec::xxz(-0.4, 2.0),
                              ModelSpec::xy(1.2, 0.6), ModelSpec::xy(0.7, 0.0),
                              ModelSpec::xy(1.5, 1.0)};
  for (const ModelSpec &m : models) {
    for (int L : {4, 6}) {
      // identical spectra
      auto table = chains::ed_moments(m, L);
      Eigen::MatrixXd H = chains::hamiltonian_matrix(m, L);
      Eigen::VectorXd w;
      sym_eig(H, w);
      std::sort(table.energy.begin(), table.energy.end());
      REQUIRE(static_cast<long>(table.energy.size()) == w.size());
      for (long i = 0; i < w.size(); ++i)
        CHECK(std::abs(table.energy[i] - w(i)) < 1e-10);
      // identical thermal correlators
      for (double kT : {0.0, 0.3, 2.0}) {
        const ThermalPoint p{m, kT};
        CHECK(max_diff(chains::ed_correlators(p, L),
                       chains::ed_correlators_dense(p, L)) < 1e-10);
      }
    }
  }
}

TEST_CASE("dense ED is translation invariant") {
  const ThermalPoint p{ModelSpec::xy(1.1, 0.4), 0.5};
  const PairCorrelators c0 = chains::ed_correlators_dense(p, 6, 0);
  for (int site : {1, 3, 5})
    CHECK(max_diff(c0, chains::ed_correlators_dense(p, 6, site)) < 1e-10);
}

TEST_CASE("thermal energy equals -dlnZ/dbeta") {
  const auto table = chains::ed_moments(ModelSpec::xxz(0.8, 1.5), 6);
  const double kT = 0.7, eps = 1e-6;
  auto lnz = [&](double beta) {
    const double emin = *std::min_element(table.energy.begin(), table.energy.end());
    double s = 0;
    for (double e : table.energy) s += std::exp(-beta * (e - emin));
    return std::log(s) - beta * emin;
  };
  const double beta = 1 / kT;
  const double num = -(lnz(beta + eps) - lnz(beta - eps)) / (2 * eps);
  CHECK(std::abs(chains::boltzmann_energy(table, kT) - num) < 1e-5);
}

TEST_CASE("infinite temperature limit is featureless") {
  const PairCorrelators c =
      chains::ed_correlators({ModelSpec::xy(1.3, 0.5), 1e6}, 6);
  CHECK(std::abs(c.z) < 1e-5);
  CHECK(std::abs(c.xx) < 1e-5);
  CHECK(std::abs(c.zz) < 1e-5);
}

TEST_CASE("ED correlators stay physical") {
  for (double kT : {0.0, 0.1, 1.0})
    for (const ModelSpec &m : {ModelSpec::xxz(2.5, 12.0), ModelSpec::xy(1.5, 0.5)})
      CHECK(chains::ed_correlators({m, kT}, 8).physical(1e-9));
}

TEST_CASE("free fermions: decoupled limit") {
  // lambda = 0: independent spins in a transverse field
  for (double kT : {0.2, 1.0, 5.0}) {
    const PairCorrelators c = chains::xy_correlators({ModelSpec::xy(0, 0.5), kT});
    CHECK(c.z == doctest::Approx(std::tanh(1 / (2 * kT))).epsilon(1e-9));
    CHECK(std::abs(c.xx) < 1e-9);
    CHECK(std::abs(c.yy) < 1e-9);
    CHECK(c.zz == doctest::Approx(c.z * c.z).epsilon(1e-9));
  }
}

TEST_CASE("free fermions: gamma sign swaps the in-plane correlators") {
  const PairCorrelators plus = chains::xy_correlators({ModelSpec::xy(1.4, 0.7), 0.3});
  const PairCorrelators minus = chains::xy_correlators({ModelSpec::xy(1.4, -0.7), 0.3});
  CHECK(plus.xx == doctest::Approx(minus.yy).epsilon(1e-9));
  CHECK(plus.yy == doctest::Approx(minus.xx).epsilon(1e-9));
  CHECK(plus.z == doctest::Approx(minus.z).epsilon(1e-9));
}

TEST_CASE("free fermions: strong-coupling Ising limit") {
  const PairCorrelators c = chains::xy_correlators({ModelSpec::xy(50.0, 1.0), 0.0});
  CHECK(c.xx > 0.99); // x-ordered ferromagnet
  CHECK(std::abs(c.yy) < 0.05);
}

TEST_CASE("free fermions match ED at modest sizes") {
  // high temperature: thermodynamic-limit and L=12 agree closely
  for (const ModelSpec &m : {ModelSpec::xy(1.0, 1.0), ModelSpec::xy(2.0, 0.0)}) {
    const ThermalPoint p{m, 1.0};
    CHECK(max_diff(chains::ed_correlators(p, 12), chains::xy_correlators(p)) <
          1e-2);
  }
}

TEST_CASE("free fermions reject unsupported input") {
  CHECK_THROWS_AS(
      chains::xy_correlators({ModelSpec::xxz(1.0, 1.0), 0.1}),
      std::invalid_argument);
  CHECK_THROWS_AS(chains::correlator_provider({ModelSpec::xxz(1.0, 1.0), 0.1},
                                              chains::Strategy::FreeFermion),
                  std::invalid_argument);
}

TEST_CASE("critical point equations") {
  CHECK(chains::xxz_qcp_delta1(12.0) == 2.0);
  CHECK(chains::xxz_qcp_delta1(4.0) == 0.0);
  CHECK(std::abs(chains::xxz_qcp_delta2(12.0) - 4.875) < 1e-3);
  // the weak-field limit is 1, approached only logarithmically in h
  const double weak = chains::xxz_qcp_delta2(1e-8);
  CHECK(weak > 1.0);
  CHECK(weak - 1.0 < 0.03);
  CHECK(chains::xxz_qcp_delta2(1e-12) < weak);
  double prev = 1.0;
  for (double h : {2.0, 6.0, 12.0, 24.0}) { // monotone in h
    const double d2 = chains::xxz_qcp_delta2(h);
    CHECK(d2 > prev);
    prev = d2;
  }
  CHECK_THROWS_AS(chains::xxz_qcp_delta2(-1.0), std::invalid_argument);
}

TEST_CASE("disk cache round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qcpd_cache_test";
  fs::create_directories(dir);
  chains::set_spectrum_cache_dir(dir.string());
  const ThermalPoint p{ModelSpec::xy(0.9, 0.25), 0.4};
  const PairCorrelators first = chains::ed_correlators(p, 6);
  bool found = false;
  for (const auto &e : fs::directory_iterator(dir))
    found |= e.path().extension() == ".bin";
  CHECK(found);
  const PairCorrelators second = chains::ed_correlators(p, 6);
  CHECK(max_diff(first, second) == 0.0);
  chains::set_spectrum_cache_dir("");
  fs::remove_all(dir);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(chains::ed_moments(ModelSpec::xxz(1, 1), 5),
                  std::invalid_argument); // odd L
  CHECK_THROWS_AS(chains::ed_moments(ModelSpec::xxz(1, 1), 18),
                  std::invalid_argument);
  CHECK_THROWS_AS(chains::ed_correlators({ModelSpec::xxz(1, 1), -0.5}, 6),
                  std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::xy(-0.5, 0.0), std::invalid_argument);
}
