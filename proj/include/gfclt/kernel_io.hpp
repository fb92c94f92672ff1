#ifndef GFCLT_KERNEL_IO_HPP
#define GFCLT_KERNEL_IO_HPP

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "gfclt/kernel.hpp"

namespace gfclt {

// Kernel spec formats:
//   {"type": "iid", "support": [0, 1], "probs": [0.5, 0.5]}
//     (atoms may also be arrays for d > 1)
//   {"type": "defant", "trunc": 64}
//   {"type": "series", "which": "g"|"f", "coeffs": [[m, n, re, im], ...],
//    "z_radius": 1.2, "x_box": 0.5}
// Throws ConfigError on malformed input.
std::unique_ptr<Kernel> kernel_from_json(const nlohmann::json& spec,
                                         int default_trunc = 64);

// Accepts either a path to a JSON file or an inline JSON object (detected by
// a leading '{').
std::unique_ptr<Kernel> kernel_from_spec(const std::string& path_or_inline,
                                         int default_trunc = 64);

}  // namespace gfclt

#endif  // GFCLT_KERNEL_IO_HPP
