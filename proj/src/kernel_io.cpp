#include "gfclt/kernel_io.hpp"

#include <fstream>

#include "gfclt/errors.hpp"

namespace gfclt {

namespace {

DiscreteDist dist_from_json(const nlohmann::json& spec) {
  if (!spec.contains("support") || !spec.contains("probs"))
    throw ConfigError("iid kernel spec needs 'support' and 'probs'");
  DiscreteDist d;
  for (const auto& a : spec.at("support")) {
    if (a.is_array())
      d.atoms.push_back(a.get<std::vector<double>>());
    else
      d.atoms.push_back({a.get<double>()});
  }
  d.probs = spec.at("probs").get<std::vector<double>>();
  d.validate();
  return d;
}

std::unique_ptr<Kernel> series_kernel_from_json(const nlohmann::json& spec) {
  std::string which = spec.value("which", "g");
  if (which != "g" && which != "f")
    throw ConfigError("series kernel spec: 'which' must be \"g\" or \"f\"");
  if (!spec.contains("coeffs")) throw ConfigError("series kernel spec needs 'coeffs'");
  int m_max = 0, n_max = 0;
  for (const auto& row : spec.at("coeffs")) {
    if (!row.is_array() || row.size() != 4)
      throw ConfigError("series kernel spec: coeffs rows must be [m, n, re, im]");
    m_max = std::max(m_max, row[0].get<int>());
    n_max = std::max(n_max, row[1].get<int>());
  }
  TruncatedSeries2 s(m_max, n_max);
  for (const auto& row : spec.at("coeffs")) {
    int m = row[0].get<int>(), n = row[1].get<int>();
    if (m < 0 || n < 0) throw ConfigError("series kernel spec: negative exponent");
    s.ref(m, n) += cplx{row[2].get<double>(), row[3].get<double>()};
  }
  return make_series_kernel(std::move(s), which == "f",
                            spec.value("z_radius", 1.2), spec.value("x_box", 0.5));
}

}  // namespace

std::unique_ptr<Kernel> kernel_from_json(const nlohmann::json& spec, int default_trunc) {
  if (!spec.is_object() || !spec.contains("type"))
    throw ConfigError("kernel spec must be a JSON object with a 'type' field");
  std::string type = spec.at("type").get<std::string>();
  if (type == "iid") return make_iid_kernel(dist_from_json(spec));
  if (type == "defant") return make_defant_kernel(spec.value("trunc", default_trunc));
  if (type == "series") return series_kernel_from_json(spec);
  throw ConfigError("unknown kernel type: " + type);
}

std::unique_ptr<Kernel> kernel_from_spec(const std::string& path_or_inline,
                                         int default_trunc) {
  std::string text;
  size_t first = path_or_inline.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && path_or_inline[first] == '{') {
    text = path_or_inline;
  } else {
    std::ifstream in(path_or_inline);
    if (!in) throw ConfigError("cannot open kernel spec file: " + path_or_inline);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  nlohmann::json spec;
  try {
    spec = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("kernel spec is not valid JSON: ") + e.what());
  }
  try {
    return kernel_from_json(spec, default_trunc);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed kernel spec: ") + e.what());
  }
}

}  // namespace gfclt
