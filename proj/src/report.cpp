#include <spincorr/io.hpp>
#include <spincorr/report.hpp>

#include <sstream>

namespace spincorr {

CorrelationReport correlation_report(const Scenario& s, const Propagator& prop, double t,
                                     int nsamples, unsigned seed, ToleranceSettings tol) {
  require_valid(s);
  CorrelationReport r;
  r.t = t;
  r.nsamples = nsamples;
  r.seed = seed;
  r.tol = tol;
  r.d_tilde_a = s.na() * s.na() - s.na();

  Encoder enc = scenario_encoder(s, seed);
  AffineMap map = scenario_map(s, prop, t);

  RankCheck aa = e_aa(enc, nsamples, seed, tol);
  RankCheck ab = e_ab(map, enc, nsamples, seed, tol);
  r.e_aa = aa.value;
  r.e_ab = ab.value;
  r.rank_transfer = spincorr::rank_transfer(map, tol);

  const int nb_dim = s.nb();
  auto rho_of = [&](const rvec& phi) { return receiver_state(map, enc.state(phi), nb_dim); };
  auto drho_of = [&](const rvec& phi, int j) {
    return unvectorize_traceless(rvec(map.mat * xhat(enc.state_d(phi, j))), nb_dim);
  };
  MinCheck mc = e_ab_min(rho_of, drho_of, enc.box, nsamples, seed, tol);
  r.e_ab_min = mc.value;
  r.min_degenerate = mc.any_degenerate;
  r.min_path = mc.any_degenerate ? "reduced" : "standard";

  Removability rem = removable_count(r.e_ab, r.e_ab_min);
  r.removable = rem.removable;
  r.consistent = aa.consistent && ab.consistent && mc.consistent;

  r.e_aa_norm = normalized_value(r.e_aa, r.d_tilde_a);
  r.e_ab_norm = normalized_value(r.e_ab, r.d_tilde_a);
  r.e_ab_min_norm = normalized_value(r.e_ab_min, r.d_tilde_a);
  r.removable_norm = normalized_value(r.removable, r.d_tilde_a);

  for (const rvec& phi : interior_samples(enc.box, nsamples, seed))
    r.phi_samples.emplace_back(phi.data(), phi.data() + phi.size());
  rvec sv = singular_values(map.mat);
  r.sv_transfer.assign(sv.data(), sv.data() + sv.size());
  if (!enc.box.empty()) {
    rvec phi0 = interior_samples(enc.box, 1, seed).front();
    rvec svj = singular_values(rmat(map.mat * state_jacobian(enc, phi0, tol.fd_step)));
    r.sv_jacobian.assign(svj.data(), svj.data() + svj.size());
    HMatrix hm = h_matrix(rho_of, drho_of, phi0, enc.box);
    if (hm.h.rows() > 0 && hm.h.cols() > 0) {
      rvec svh = singular_values(hm.h);
      r.sv_h.assign(svh.data(), svh.data() + svh.size());
    }
  }
  return r;
}

namespace {

void emit_reals(std::ostringstream& os, const std::vector<double>& v) {
  os << '[';
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << format_real(v[i]);
  }
  os << ']';
}

}  // namespace

std::string report_json(const CorrelationReport& r) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"t\": " << format_real(r.t) << ",\n";
  os << "  \"d_tilde_a\": " << r.d_tilde_a << ",\n";
  os << "  \"e_aa\": " << r.e_aa << ",\n";
  os << "  \"rank_transfer\": " << r.rank_transfer << ",\n";
  os << "  \"e_ab\": " << r.e_ab << ",\n";
  os << "  \"e_ab_min\": " << r.e_ab_min << ",\n";
  os << "  \"removable\": " << r.removable << ",\n";
  os << "  \"e_aa_norm\": \"" << to_string(r.e_aa_norm) << "\",\n";
  os << "  \"e_ab_norm\": \"" << to_string(r.e_ab_norm) << "\",\n";
  os << "  \"e_ab_min_norm\": \"" << to_string(r.e_ab_min_norm) << "\",\n";
  os << "  \"removable_norm\": \"" << to_string(r.removable_norm) << "\",\n";
  os << "  \"min_path\": \"" << r.min_path << "\",\n";
  os << "  \"min_degenerate\": " << (r.min_degenerate ? "true" : "false") << ",\n";
  os << "  \"consistent\": " << (r.consistent ? "true" : "false") << ",\n";
  os << "  \"nsamples\": " << r.nsamples << ",\n";
  os << "  \"seed\": " << r.seed << ",\n";
  os << "  \"tolerances\": {\"tol_abs\": " << format_real(r.tol.tol_abs)
     << ", \"tol_rel\": " << format_real(r.tol.tol_rel)
     << ", \"fd_step\": " << format_real(r.tol.fd_step)
     << ", \"fd_rank_abs\": " << format_real(r.tol.fd_rank_abs) << "},\n";
  os << "  \"phi_samples\": [";
  for (size_t i = 0; i < r.phi_samples.size(); ++i) {
    if (i) os << ", ";
    emit_reals(os, r.phi_samples[i]);
  }
  os << "],\n";
  os << "  \"singular_values\": {\"transfer\": ";
  emit_reals(os, r.sv_transfer);
  os << ", \"jacobian\": ";
  emit_reals(os, r.sv_jacobian);
  os << ", \"h_matrix\": ";
  emit_reals(os, r.sv_h);
  os << "}\n}\n";
  return os.str();
}

}  // namespace spincorr
