#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <spincorr/chain.hpp>

#include <bit>

using namespace spincorr;

TEST_CASE("two-node chain couples exactly the mixed pair") {
  rmat h = xy_chain_hamiltonian(2, 1.0);
  rmat want = rmat::Zero(4, 4);
  want(1, 2) = want(2, 1) = -0.5;  // |01> <-> |10>
  CHECK((h - want).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("chain Hamiltonian is symmetric and conserves the excitation number") {
  for (int n : {3, 4}) {
    rmat h = xy_chain_hamiltonian(n, 1.0);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < h.rows(); ++i)
      for (int j = 0; j < h.cols(); ++j)
        if (h(i, j) != 0.0) CHECK(std::popcount(unsigned(i)) == std::popcount(unsigned(j)));
  }
}

TEST_CASE("propagator blocks never mix excitation sectors") {
  rmat h = xy_chain_hamiltonian(3, 1.0);
  cmat v = make_propagator(h).at(1.7);
  CHECK(unitarity_error(v) < 1e-13);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (std::popcount(unsigned(i)) != std::popcount(unsigned(j)))
        CHECK(std::abs(v(i, j)) < 1e-14);
}

TEST_CASE("two-node propagator matches its closed form") {
  const double d = 1.0;
  Propagator p = make_propagator(xy_chain_hamiltonian(2, d));
  for (double t : {0.5, 2.0, 7.3}) {
    cmat v = p.at(t);
    CHECK(std::abs(v(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(v(3, 3) - 1.0) < 1e-14);
    CHECK(std::abs(v(1, 1) - std::cos(d * t / 2)) < 1e-13);
    CHECK(std::abs(v(2, 2) - std::cos(d * t / 2)) < 1e-13);
    CHECK(std::abs(v(1, 2) - iu * std::sin(d * t / 2)) < 1e-13);
    CHECK(std::abs(v(2, 1) - iu * std::sin(d * t / 2)) < 1e-13);
  }
}

TEST_CASE("sector Hamiltonian is the tridiagonal restriction with a decoupled vacuum") {
  rmat h = single_excitation_hamiltonian(4, 1.0);
  CHECK(h.rows() == 5);
  CHECK(h.row(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(h.col(0).cwiseAbs().maxCoeff() == 0.0);
  for (int j = 1; j <= 3; ++j) {
    CHECK(h(j, j + 1) == doctest::Approx(-0.5));
    CHECK(h(j + 1, j) == doctest::Approx(-0.5));
  }
  CHECK(h.diagonal().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sector propagator agrees with the full-space one") {
  const int n = 3;
  Propagator full = make_propagator(xy_chain_hamiltonian(n, 1.0));
  Propagator sect = make_propagator(single_excitation_hamiltonian(n, 1.0));
  for (double t : {0.9, 4.2}) {
    cmat vf = full.at(t), vs = sect.at(t);
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        // node j excited <-> full basis index 2^(n-j)
        cplx el = vf(1 << (n - j), 1 << (n - k));
        CHECK(std::abs(el - vs(j, k)) < 1e-13);
      }
    CHECK(std::abs(vs(0, 0) - 1.0) < 1e-14);
  }
}
