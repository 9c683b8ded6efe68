#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <spincorr/gellmann.hpp>
#include <spincorr/spectrum.hpp>
#include <spincorr/unitary.hpp>
#include <spincorr/vectorize.hpp>

using namespace spincorr;

namespace {
const double pi = std::acos(-1.0);

rvec make_rvec(std::initializer_list<double> v) {
  rvec x(static_cast<int>(v.size()));
  int i = 0;
  for (double e : v) x(i++) = e;
  return x;
}
}  // namespace

TEST_CASE("su(4) generators are orthonormal, Hermitian and traceless") {
  const auto& g = su4_generators();
  for (int i = 0; i < 15; ++i) {
    CHECK(hermiticity_error(g[i]) == 0.0);
    CHECK(std::abs(g[i].trace()) < 1e-15);
    for (int j = 0; j < 15; ++j) {
      double want = (i == j) ? 2.0 : 0.0;
      CHECK(std::abs((g[i] * g[j]).trace() - want) < 1e-15);
    }
  }
}

TEST_CASE("generator entries sit on the right levels") {
  const auto& g = su4_generators();
  CHECK(g[0](0, 1) == cplx(1.0));
  CHECK(g[1](0, 1) == -iu);
  CHECK(g[1](1, 0) == iu);
  CHECK(g[2](0, 0) == cplx(1.0));
  CHECK(g[2](1, 1) == cplx(-1.0));
  CHECK(g[3](0, 2) == cplx(1.0));
  CHECK(g[4](0, 2) == -iu);
  CHECK(g[5](1, 2) == cplx(1.0));
  CHECK(g[6](1, 2) == -iu);
  CHECK(g[7](2, 2).real() == doctest::Approx(-2.0 / std::sqrt(3.0)));
  CHECK(g[8](0, 3) == cplx(1.0));
  CHECK(g[9](0, 3) == -iu);
  CHECK(g[9](3, 0) == iu);
  CHECK(g[10](1, 3) == cplx(1.0));
  CHECK(g[11](1, 3) == -iu);
  CHECK(g[12](2, 3) == cplx(1.0));
  CHECK(g[13](2, 3) == -iu);
  CHECK(g[14](3, 3).real() == doctest::Approx(-3.0 / std::sqrt(6.0)));
}

TEST_CASE("su(2) element is special unitary with the stated entries") {
  cmat u = su2_matrix(0.7, 1.3, 0.4);
  CHECK(unitarity_error(u) < 1e-15);
  CHECK(std::abs(u.determinant() - cplx(1.0)) < 1e-15);
  CHECK(std::abs(u(0, 0) - std::cos(0.7) * std::exp(iu * 0.4)) < 1e-15);
  CHECK(std::abs(u(0, 1) + std::sin(0.7) * std::exp(-iu * 1.3) * std::exp(-iu * 0.4)) < 1e-15);
  CHECK(std::abs(u(1, 0) - std::sin(0.7) * std::exp(iu * 1.3) * std::exp(iu * 0.4)) < 1e-15);
}

TEST_CASE("third su(2) parameter never reaches a diagonal-spectrum state") {
  cmat lam = cmat::Zero(2, 2);
  lam(0, 0) = 0.75;
  lam(1, 1) = 0.25;
  cmat u1 = su2_matrix(0.7, 1.3, 0.4), u2 = su2_matrix(0.7, 1.3, 1.9);
  cmat r1 = u1 * lam * u1.adjoint(), r2 = u2 * lam * u2.adjoint();
  CHECK((r1 - r2).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("encoded su(2) state matches its closed form") {
  const double lam = 0.8, f1 = 0.6, f2 = 2.1;
  cmat d = cmat::Zero(2, 2);
  d(0, 0) = lam;
  d(1, 1) = 1 - lam;
  cmat u = su2_matrix(f1, f2, 0.9);
  rvec x = xhat(u * d * u.adjoint());
  const double sc = std::sin(f1) * std::cos(f1);
  CHECK(x(0) == doctest::Approx((2 * lam - 1) * sc * std::cos(f2)).epsilon(1e-12));
  CHECK(x(1) == doctest::Approx(-(2 * lam - 1) * sc * std::sin(f2)).epsilon(1e-12));
  CHECK(x(2) == doctest::Approx(0.5 * (1 + (2 * lam - 1) * std::cos(2 * f1))).epsilon(1e-12));
}

TEST_CASE("single-generator factors match the eigensolver exponential") {
  for (int gen = 1; gen <= 15; ++gen) {
    const cmat& g = su4_generators()[gen - 1];
    for (double phi : {0.3, 1.1, 2.7}) {
      cmat direct = su4_factor_of_generator(gen, phi);
      cmat viaexp = evolution_operator(g, -phi);  // exp(i g phi)
      CHECK((direct - viaexp).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("twelve-factor product is special unitary and splits at zero angles") {
  rvec phi(12);
  for (int i = 0; i < 12; ++i) phi(i) = 0.1 + 0.05 * i;
  cmat u = su4_matrix(phi);
  CHECK(unitarity_error(u) < 1e-14);
  CHECK(std::abs(u.determinant() - cplx(1.0)) < 1e-13);

  // zeroed factors drop out of the product exactly
  rvec phi2 = rvec::Zero(12);
  phi2(1) = 0.8;
  phi2(5) = 0.4;
  cmat expect = su4_factor_of_generator(2, 0.8) * su4_factor_of_generator(10, 0.4);
  CHECK((su4_matrix(phi2) - expect).cwiseAbs().maxCoeff() < 1e-14);

  CHECK((su4_matrix(rvec::Zero(12)) - cmat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("factor ranges alternate between pi and pi/2") {
  for (int p = 0; p < 12; ++p)
    CHECK(su4_param_upper(p) == doctest::Approx(p % 2 == 0 ? pi : pi / 2));
}

TEST_CASE("multiplicities and encodable parameter counts") {
  CHECK(multiplicities(make_rvec({0.4, 0.3, 0.2, 0.1})) == std::vector<int>{1, 1, 1, 1});
  CHECK(multiplicities(make_rvec({0.3, 0.3, 0.25, 0.15})) == std::vector<int>{2, 1, 1});
  CHECK(multiplicities(make_rvec({0.375, 0.375, 0.125, 0.125})) == std::vector<int>{2, 2});
  CHECK(multiplicities(make_rvec({5. / 16, 5. / 16, 5. / 16, 1. / 16})) == std::vector<int>{3, 1});
  CHECK(multiplicities(make_rvec({0.25, 0.25, 0.25, 0.25})) == std::vector<int>{4});

  CHECK(encoded_param_count(make_rvec({0.4, 0.3, 0.2, 0.1})) == 12);
  CHECK(encoded_param_count(make_rvec({0.3, 0.3, 0.25, 0.15})) == 10);
  CHECK(encoded_param_count(make_rvec({0.375, 0.375, 0.125, 0.125})) == 8);
  CHECK(encoded_param_count(make_rvec({5. / 16, 5. / 16, 5. / 16, 1. / 16})) == 6);
  CHECK(encoded_param_count(make_rvec({0.25, 0.25, 0.25, 0.25})) == 0);
  CHECK(encoded_param_count(make_rvec({0.75, 0.25})) == 2);
  CHECK(encoded_param_count(make_rvec({0.5, 0.5})) == 0);
}

TEST_CASE("closed-form active factor sets") {
  auto a = active_factor_positions(make_rvec({0.4, 0.3, 0.2, 0.1}));
  REQUIRE(a.has_value());
  CHECK(a->size() == 12);
  a = active_factor_positions(make_rvec({0.3, 0.3, 0.25, 0.15}));
  REQUIRE(a.has_value());
  CHECK(a->size() == 10);
  a = active_factor_positions(make_rvec({5. / 16, 5. / 16, 5. / 16, 1. / 16}));
  REQUIRE(a.has_value());
  CHECK(*a == std::vector<int>{0, 1, 2, 3, 4, 5});
  a = active_factor_positions(make_rvec({0.25, 0.25, 0.25, 0.25}));
  REQUIRE(a.has_value());
  CHECK(a->empty());
  CHECK(!active_factor_positions(make_rvec({0.375, 0.375, 0.125, 0.125})).has_value());
}

TEST_CASE("vectorization round-trips and indexes the upper triangle row-major") {
  CHECK(pair_index(0, 1, 4) == 0);
  CHECK(pair_index(0, 3, 4) == 2);
  CHECK(pair_index(1, 3, 4) == 4);
  CHECK(pair_index(2, 3, 4) == 5);

  cmat rho(3, 3);
  rho << cplx(0.5), cplx(0.1, 0.2), cplx(-0.05, 0.01),  //
      cplx(0.1, -0.2), cplx(0.3), cplx(0.02, -0.03),    //
      cplx(-0.05, -0.01), cplx(0.02, 0.03), cplx(0.2);
  rvec x = xhat(rho);
  REQUIRE(x.size() == 8);
  CHECK(x(0) == doctest::Approx(0.1));
  CHECK(x(3) == doctest::Approx(0.2));
  CHECK(x(4) == doctest::Approx(0.01));
  CHECK(x(5) == doctest::Approx(-0.03));
  CHECK(x(6) == doctest::Approx(0.5));
  CHECK((unvectorize(x, 3) - rho).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("exact unitary derivatives match central differences") {
  const double h = 1e-5;

  // su(2), all three parameters at a generic point
  const double f1 = 0.7, f2 = 2.3, f3 = 0.4;
  for (int j = 0; j < 3; ++j) {
    double q[3] = {f1, f2, f3};
    q[j] += h;
    cmat up = su2_matrix(q[0], q[1], q[2]);
    q[j] -= 2 * h;
    cmat um = su2_matrix(q[0], q[1], q[2]);
    cmat fd = (up - um) / (2 * h);
    CHECK((su2_matrix_d(f1, f2, f3, j) - fd).cwiseAbs().maxCoeff() < 1e-9);
  }

  // su(4) factor product, including a parameter held at zero
  rvec phi = rvec::Zero(12);
  phi(0) = 0.9;
  phi(1) = 0.6;
  phi(3) = 1.1;
  phi(5) = 0.3;
  phi(10) = 2.0;
  for (int p : {0, 1, 5, 7, 10}) {  // position 7 is inactive here
    rvec qp = phi, qm = phi;
    qp(p) += h;
    qm(p) -= h;
    cmat fd = (su4_matrix(qp) - su4_matrix(qm)) / (2 * h);
    CHECK((su4_matrix_d(phi, p) - fd).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("traceless unvectorization reconstructs a tangent matrix") {
  cmat a(3, 3);
  a << cplx(0.2), cplx(0.1, -0.4), cplx(0.0, 0.3),  //
      cplx(0.1, 0.4), cplx(-0.5), cplx(0.07, 0.02),  //
      cplx(0.0, -0.3), cplx(0.07, -0.02), cplx(0.3);
  CHECK(std::abs(a.trace()) < 1e-15);  // built traceless
  CHECK((unvectorize_traceless(xhat(a), 3) - a).cwiseAbs().maxCoeff() < 1e-15);
}
