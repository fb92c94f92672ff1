#ifndef GFCLT_REPORT_IO_HPP
#define GFCLT_REPORT_IO_HPP

#include <ostream>
#include <vector>

#include <nlohmann/json.hpp>

#include "gfclt/coeffs.hpp"
#include "gfclt/limits.hpp"
#include "gfclt/permlab.hpp"
#include "gfclt/series.hpp"
#include "gfclt/singularity.hpp"

namespace gfclt {

// {"mu": [...], "sigma": [[...]], "imag_residue": r, "psd_slack": s}
nlohmann::json limit_params_json(const LimitParams& lp);

// {"n": n, "mode": "...", "seed": s, "counts": {"1": c1, ...}}
nlohmann::json dist_table_json(const DistTable& t);

// {"x": [...], "b": [re, im], "a": [re, im], "residual": r,
//  "slope": s, "r_fit": v}
nlohmann::json singularity_report_json(const Singularity& s,
                                       const DecayFitReport* decay = nullptr);

nlohmann::json identity_report_json(const IdentityReport& r);

// CSV columns: n, re, im, method (one row per coefficient per sequence).
void write_phi_csv(std::ostream& os, const std::vector<PhiSequence>& seqs);

// CSV columns: value, count.
void write_dist_table_csv(std::ostream& os, const DistTable& t);

// CSV columns: m, n, re, im (zero entries skipped).
void write_series_csv(std::ostream& os, const TruncatedSeries2& s);

}  // namespace gfclt

#endif  // GFCLT_REPORT_IO_HPP
