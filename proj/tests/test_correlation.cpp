#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <spincorr/correlation.hpp>
#include <spincorr/scenario.hpp>

using namespace spincorr;

namespace {

const double pi = std::acos(-1.0);

Scenario one_node(double lamA = 0.75, double lamB = 0.75) {
  Scenario s;
  s.nodes_a = 1;
  s.nodes_c = 2;
  s.nodes_b = 1;
  rvec la(2), lb(2), lc(4);
  la << lamA, 1 - lamA;
  lb << lamB, 1 - lamB;
  lc << 0.5, 0.25, 0.125, 0.125;
  s.lambda_a = la;
  s.lambda_b = lb;
  s.lambda_c = lc;
  return s;
}

rvec vec4(double a, double b, double c, double d) {
  rvec v(4);
  v << a, b, c, d;
  return v;
}

}  // namespace

TEST_CASE("fd jacobian recovers a linear map") {
  rmat a(3, 2);
  a << 1.0, -2.0, 0.5, 3.0, -1.5, 0.25;
  rvec b(3);
  b << 7.0, -1.0, 2.0;
  auto f = [&](const rvec& x) { return rvec(a * x + b); };
  std::vector<std::pair<double, double>> box = {{-1, 1}, {-1, 1}};
  rvec x0(2);
  x0 << 0.2, -0.3;
  rmat jac = jacobian_fd(f, x0, box);
  CHECK((jac - a).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("fd jacobian refuses to step outside the box") {
  auto f = [](const rvec& x) { return x; };
  std::vector<std::pair<double, double>> box = {{0, 1}};
  rvec edge(1);
  edge << 1e-9;
  CHECK_THROWS_AS(jacobian_fd(f, edge, box), std::domain_error);
}

TEST_CASE("third su2 angle encodes nothing") {
  rvec lam(2);
  lam << 0.75, 0.25;
  cmat rho0 = diagonal_state(lam);
  std::vector<std::pair<double, double>> box = {{0, pi / 2}, {0, 2 * pi}, {0, pi / 2}};
  auto f = [&](const rvec& phi) {
    cmat u = su2_matrix(phi(0), phi(1), phi(2));
    return xhat(u * rho0 * u.adjoint());
  };
  rvec phi0(3);
  phi0 << 0.6, 2.0, 0.9;
  rmat jac = jacobian_fd(f, phi0, box);
  CHECK(jac.cols() == 3);
  CHECK(jac.col(2).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(numerical_rank(jac) == 2);
}

TEST_CASE("single-node sender encodes two parameters") {
  RankCheck rc = e_aa(su2_encoder(0.75));
  CHECK(rc.value == 2);
  CHECK(rc.consistent);
  CHECK(rc.formula == 2);
  CHECK_FALSE(rc.warning);

  RankCheck flat = e_aa(su2_encoder(0.5));
  CHECK(flat.value == 0);
  CHECK(flat.formula == 0);
}

TEST_CASE("two-node sender encoded-parameter counts by spectrum degeneracy") {
  CHECK(e_aa(su4_encoder(vec4(0.4, 0.3, 0.2, 0.1))).value == 12);
  CHECK(e_aa(su4_encoder(vec4(0.3, 0.3, 0.25, 0.15))).value == 10);
  CHECK(e_aa(su4_encoder(vec4(4.0 / 15, 4.0 / 15, 4.0 / 15, 0.2))).value == 6);
  CHECK(e_aa(su4_encoder(vec4(0.25, 0.25, 0.25, 0.25))).value == 0);

  RankCheck paired = e_aa(su4_encoder(vec4(0.375, 0.375, 0.125, 0.125)));
  CHECK(paired.value == 8);
  CHECK(paired.formula == 8);
  CHECK_FALSE(paired.warning);
}

TEST_CASE("numeric active-factor selection for the doubly paired spectrum") {
  std::vector<int> active = active_factor_positions_numeric(vec4(0.375, 0.375, 0.125, 0.125));
  CHECK(active.size() == 8);
  for (size_t k = 0; k + 1 < active.size(); ++k) CHECK(active[k] < active[k + 1]);
  CHECK(active.front() >= 0);
  CHECK(active.back() < 12);
  // the selected columns really span the full Jacobian range
  Encoder enc = su4_encoder(vec4(0.375, 0.375, 0.125, 0.125), active);
  CHECK(e_aa(enc).value == 8);
}

TEST_CASE("unsorted diagonal falls back to numeric selection and keeps the count") {
  // same multiset as the triple-degenerate spectrum, permuted on the diagonal
  CHECK(e_aa(su4_encoder(vec4(0.2, 4.0 / 15, 4.0 / 15, 4.0 / 15))).value == 6);
}

TEST_CASE("transfer rank of the single-node arrangement") {
  Scenario s = one_node();
  Propagator prop = scenario_propagator(s);

  CHECK(rank_transfer(scenario_map(s, prop, 1.0)) == 3);
  CHECK(rank_transfer(scenario_map(s, prop, 0.0)) == 0);

  Scenario flat_b = one_node(0.75, 0.5);
  CHECK(rank_transfer(scenario_map(flat_b, scenario_propagator(flat_b), 1.0)) == 1);

  Scenario tuned_c = one_node();
  tuned_c.lambda_c = vec4(0.375, 0.125, 0.375, 0.125);  // middle entries sum to 1/2
  CHECK(rank_transfer(scenario_map(tuned_c, scenario_propagator(tuned_c), 1.0)) == 1);
}

TEST_CASE("receiver rotation angle pi/4 collapses the transfer rank") {
  Scenario s = one_node();
  s.beta1 = pi / 4;
  CHECK(rank_transfer(scenario_map(s, scenario_propagator(s), 1.0)) == 1);
  s.beta1 = 0.3;
  CHECK(rank_transfer(scenario_map(s, scenario_propagator(s), 1.0)) == 3);
}

TEST_CASE("pass-through rotation revives the collapsed transfer rank") {
  Scenario s = one_node();
  s.lambda_c = vec4(0.375, 0.125, 0.375, 0.125);
  Propagator prop = scenario_propagator(s);
  CHECK(rank_transfer(scenario_map(s, prop, 1.0)) == 1);
  s.gamma_c = pi / 4;
  CHECK(rank_transfer(scenario_map(s, scenario_propagator(s), 1.0)) == 3);
}

TEST_CASE("receiver-visible parameter count for the single-node arrangement") {
  Scenario s = one_node();
  Propagator prop = scenario_propagator(s);
  Encoder enc = scenario_encoder(s);

  for (double t : {0.5, 1.0, 2.5}) {
    RankCheck rc = e_ab(scenario_map(s, prop, t), enc);
    CHECK(rc.value == 2);
    CHECK(rc.consistent);
  }
  CHECK(e_ab(scenario_map(s, prop, 0.0), enc).value == 0);

  Scenario flat_b = one_node(0.75, 0.5);
  RankCheck rc1 = e_ab(scenario_map(flat_b, scenario_propagator(flat_b), 1.0),
                       scenario_encoder(flat_b));
  CHECK(rc1.value == 1);

  RankCheck rc0 = e_ab(scenario_map(s, prop, 1.0), su2_encoder(0.5));
  CHECK(rc0.value == 0);
}

TEST_CASE("receiver count stays under both transfer rank and sender count") {
  Scenario s = one_node();
  Propagator prop = scenario_propagator(s);
  Encoder enc = scenario_encoder(s);
  for (double t : {0.7, 1.3, 2.9, 5.1}) {
    AffineMap map = scenario_map(s, prop, t);
    int ab = e_ab(map, enc).value;
    CHECK(ab <= rank_transfer(map));
    CHECK(ab <= e_aa(enc).value);
  }
}

TEST_CASE("chain rule: receiver jacobian equals transfer matrix times sender jacobian") {
  Scenario s = one_node();
  Propagator prop = scenario_propagator(s);
  Encoder enc = scenario_encoder(s);
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> tdist(0.2, 6.0);
  for (int trial = 0; trial < 10; ++trial) {
    double t = tdist(gen);
    AffineMap map = scenario_map(s, prop, t);
    rvec phi = interior_samples(enc.box, 1, 100 + trial).front();
    rmat ja = state_jacobian(enc, phi);
    rmat jb = jacobian_fd(
        [&](const rvec& q) { return xhat(receiver_state(map, enc.state(q), s.nb())); }, phi,
        enc.box);
    CHECK((jb - map.mat * ja).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("phi-independence of the receiver-visible count across many samples") {
  Scenario s = one_node();
  RankCheck rc = e_ab(scenario_map(s, scenario_propagator(s), 1.7), scenario_encoder(s), 10);
  CHECK(rc.consistent);
  CHECK_FALSE(rc.warning);
}

TEST_CASE("full-state count for product and entangled initial states") {
  Encoder enc = su2_encoder(0.75);
  rvec phi0(2);
  phi0 << 0.7, 1.9;

  // product state: nothing beyond the sender-local count
  cmat rest = diagonal_state(vec4(0.4, 0.3, 0.2, 0.1));
  CHECK(e_a_full(kron(enc.rho0, rest), enc, 4, phi0) == 2);

  // maximally mixed sender: local count 0
  CHECK(e_aa(su2_encoder(0.5)).value == 0);

  // but a fully entangled pair still carries both parameters
  cvec bell(4);
  bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  cmat rho_bell = bell * bell.adjoint();
  CHECK(e_a_full(rho_bell, su2_encoder(0.5), 2, phi0) == 2);
}

TEST_CASE("exact rational normalization") {
  Rational r = normalized_value(11, 12);
  CHECK(r.num == 11);
  CHECK(r.den == 12);
  CHECK(to_string(r) == "11/12");
  CHECK(to_string(normalized_value(2, 2)) == "1");
  Rational z = normalized_value(0, 12);
  CHECK(z.num == 0);
  CHECK(z.den == 1);
  CHECK(to_string(normalized_value(8, 12)) == "2/3");
  CHECK_THROWS_AS(normalized_value(1, 0), std::domain_error);
}
