#ifndef GFCLT_RUN_CONFIG_HPP
#define GFCLT_RUN_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gfclt {

inline constexpr const char* kVersion = "0.1.0";

// Fully resolved CLI configuration; embedded in every report for
// provenance.  Serialization round-trips losslessly.
struct RunConfig {
  std::string command;
  std::string kernel_spec;
  int n_max = 48;
  std::vector<double> x_probe = {0.0};
  long long samples = 100000;
  std::uint64_t seed = 1;
  int trunc = 64;
  double quad_r = 0.0;  // 0 = automatic
  bool exact = false;
  std::string out_format = "json";
  std::string out_path;
  std::string dump_series_path;
  std::vector<int> n_grid = {50, 200, 1000, 2000};
  int identity_n_max = 9;
};

inline void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{{"command", c.command},
                     {"kernel_spec", c.kernel_spec},
                     {"n_max", c.n_max},
                     {"x_probe", c.x_probe},
                     {"samples", c.samples},
                     {"seed", c.seed},
                     {"trunc", c.trunc},
                     {"quad_r", c.quad_r},
                     {"exact", c.exact},
                     {"out_format", c.out_format},
                     {"out_path", c.out_path},
                     {"dump_series_path", c.dump_series_path},
                     {"n_grid", c.n_grid},
                     {"identity_n_max", c.identity_n_max}};
}

inline void from_json(const nlohmann::json& j, RunConfig& c) {
  j.at("command").get_to(c.command);
  j.at("kernel_spec").get_to(c.kernel_spec);
  j.at("n_max").get_to(c.n_max);
  j.at("x_probe").get_to(c.x_probe);
  j.at("samples").get_to(c.samples);
  j.at("seed").get_to(c.seed);
  j.at("trunc").get_to(c.trunc);
  j.at("quad_r").get_to(c.quad_r);
  j.at("exact").get_to(c.exact);
  j.at("out_format").get_to(c.out_format);
  j.at("out_path").get_to(c.out_path);
  j.at("dump_series_path").get_to(c.dump_series_path);
  j.at("n_grid").get_to(c.n_grid);
  j.at("identity_n_max").get_to(c.identity_n_max);
}

}  // namespace gfclt

#endif  // GFCLT_RUN_CONFIG_HPP
