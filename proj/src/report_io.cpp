#include "gfclt/report_io.hpp"

#include <iomanip>

namespace gfclt {

nlohmann::json limit_params_json(const LimitParams& lp) {
  return {{"mu", lp.mu},
          {"sigma", lp.sigma},
          {"imag_residue", lp.imag_residue},
          {"psd_slack", lp.psd_slack}};
}

nlohmann::json dist_table_json(const DistTable& t) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [v, c] : t.counts) counts[std::to_string(v)] = c;
  nlohmann::json j{{"n", t.n},
                   {"mode", t.mode == TableMode::exact ? "exact" : "monte_carlo"},
                   {"counts", counts}};
  if (t.seed) j["seed"] = *t.seed;
  return j;
}

nlohmann::json singularity_report_json(const Singularity& s, const DecayFitReport* decay) {
  nlohmann::json j{{"x", s.x},
                   {"b", {s.b.real(), s.b.imag()}},
                   {"a", {s.a.real(), s.a.imag()}},
                   {"residual", s.residual}};
  if (decay) {
    j["slope"] = decay->slope;
    j["r_fit"] = decay->r_fit;
    j["pure_pole"] = decay->pure_pole;
    j["fit_lo"] = decay->fit_lo;
    j["fit_hi"] = decay->fit_hi;
  }
  return j;
}

nlohmann::json identity_report_json(const IdentityReport& r) {
  nlohmann::json per_n = nlohmann::json::array();
  for (size_t i = 0; i < r.max_abs_diff.size(); ++i)
    per_n.push_back({{"n", i + 1},
                     {"max_abs_diff", r.max_abs_diff[i]},
                     {"bound", r.bound[i]}});
  return {{"n_max", r.n_max},
          {"per_n", per_n},
          {"worst_ratio", r.worst_ratio},
          {"pass", r.pass}};
}

void write_phi_csv(std::ostream& os, const std::vector<PhiSequence>& seqs) {
  os << "n,re,im,method\n";
  os << std::setprecision(17);
  for (const auto& seq : seqs) {
    const char* method = seq.method == PhiMethod::series ? "series" : "quadrature";
    for (size_t n = 0; n < seq.values.size(); ++n)
      os << n << ',' << seq.values[n].real() << ',' << seq.values[n].imag() << ','
         << method << '\n';
  }
}

void write_dist_table_csv(std::ostream& os, const DistTable& t) {
  os << "value,count\n";
  for (const auto& [v, c] : t.counts) os << v << ',' << c << '\n';
}

void write_series_csv(std::ostream& os, const TruncatedSeries2& s) {
  os << "m,n,re,im\n";
  os << std::setprecision(17);
  for (int m = 0; m <= s.y_order(); ++m)
    for (int n = 0; n <= s.trunc_order(); ++n)
      if (s.at(m, n) != cplx{})
        os << m << ',' << n << ',' << s.at(m, n).real() << ',' << s.at(m, n).imag()
           << '\n';
}

}  // namespace gfclt
