#pragma once

#include <spincorr/chain.hpp>
#include <spincorr/correlation.hpp>
#include <spincorr/transfer.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spincorr {

// A chain arrangement: sender nodes, pass-through nodes, receiver nodes, all
// coupled in one line. Initial state is diagonal per block (entries listed in
// basis order, left node highest bit), optionally dressed by local rotations.
struct Scenario {
  int nodes_a = 1;
  int nodes_c = 2;
  int nodes_b = 1;
  double coupling = 1.0;
  rvec lambda_a;                  // sender spectrum, length 2^nodes_a
  rvec lambda_b;                  // receiver diagonal, length 2^nodes_b
  std::optional<rvec> lambda_c;   // pass-through diagonal, length 2^nodes_c
  double beta1 = 0, beta2 = 0, beta3 = 0;  // receiver-node rotation (single node only)
  std::optional<double> gamma_c;  // rotation in the two highest pass-through levels

  int nodes() const { return nodes_a + nodes_c + nodes_b; }
  int na() const { return 1 << nodes_a; }
  int nc() const { return 1 << nodes_c; }
  int nb() const { return 1 << nodes_b; }
};

struct ScenarioIssue {
  bool fatal = false;
  std::string message;
};

inline std::vector<ScenarioIssue> validate(const Scenario& s) {
  std::vector<ScenarioIssue> issues;
  auto fatal = [&](const std::string& m) { issues.push_back({true, m}); };
  auto warn = [&](const std::string& m) { issues.push_back({false, m}); };

  if (s.nodes_a < 1 || s.nodes_b < 1 || s.nodes_c < 0) fatal("nodes: need a>=1, b>=1, c>=0");
  if (s.coupling == 0) fatal("coupling: must be nonzero");
  auto check_block = [&](const rvec& lam, int dim, const std::string& name) {
    if (lam.size() != dim) {
      fatal(name + ": expected " + std::to_string(dim) + " entries");
      return;
    }
    double sum = 0;
    for (int i = 0; i < lam.size(); ++i) {
      if (lam(i) < -1e-12 || lam(i) > 1 + 1e-12) fatal(name + ": entry outside [0,1]");
      sum += lam(i);
    }
    if (std::abs(sum - 1.0) > 1e-9) fatal(name + ": entries must sum to 1");
  };
  check_block(s.lambda_a, s.na(), "lambda_a");
  check_block(s.lambda_b, s.nb(), "lambda_b");
  if (s.nodes_c > 0) {
    if (!s.lambda_c) fatal("lambda_c: required when pass-through nodes exist");
    else check_block(*s.lambda_c, s.nc(), "lambda_c");
  } else if (s.lambda_c) {
    fatal("lambda_c: no pass-through nodes in this arrangement");
  }
  if ((s.beta1 != 0 || s.beta2 != 0 || s.beta3 != 0) && s.nodes_b != 1)
    fatal("beta rotation: supported for a single receiver node only");
  if (s.gamma_c && s.nc() != 4) fatal("gamma_c rotation: needs a two-node pass-through block");
  for (int i = 0; i + 1 < s.lambda_b.size(); ++i)
    if (s.lambda_b(i) < s.lambda_b(i + 1) - 1e-12) {
      warn("lambda_b: entries not in descending order");
      break;
    }
  return issues;
}

inline void require_valid(const Scenario& s) {
  for (const auto& issue : validate(s))
    if (issue.fatal) throw std::invalid_argument("scenario: " + issue.message);
}

inline cmat scenario_rho_b(const Scenario& s) {
  cmat rho = diagonal_state(s.lambda_b);
  if (s.beta1 != 0 || s.beta2 != 0 || s.beta3 != 0) {
    cmat u = su2_matrix(s.beta1, s.beta2, s.beta3);
    rho = u * rho * u.adjoint();
  }
  return rho;
}

inline cmat scenario_rho_c(const Scenario& s) {
  cmat rho = diagonal_state(*s.lambda_c);
  if (s.gamma_c) {
    // plane rotation mixing the two left-node-excited levels
    cmat u = cmat::Identity(4, 4);
    const double g = *s.gamma_c;
    u(0, 0) = std::cos(g);
    u(0, 1) = std::sin(g);
    u(1, 0) = -std::sin(g);
    u(1, 1) = std::cos(g);
    rho = u * rho * u.adjoint();
  }
  return rho;
}

inline cmat scenario_rho_cb(const Scenario& s) {
  cmat rb = scenario_rho_b(s);
  if (s.nodes_c == 0) return rb;
  return kron(scenario_rho_c(s), rb);
}

inline Propagator scenario_propagator(const Scenario& s) {
  return make_propagator(xy_chain_hamiltonian(s.nodes(), s.coupling));
}

inline AffineMap scenario_map(const Scenario& s, const Propagator& prop, double t) {
  cmat v = prop.at(t);
  return transfer_map(v, scenario_rho_cb(s), s.na(), s.nc(), s.nb());
}

inline Encoder scenario_encoder(const Scenario& s, unsigned seed = 1) {
  if (s.na() == 2) return su2_encoder(s.lambda_a(0));
  if (s.na() == 4) return su4_encoder(s.lambda_a, seed);
  throw std::invalid_argument("scenario: encoders exist for one- and two-node senders");
}

}  // namespace spincorr
