#pragma once

// Plain-text `key=value` serialization of GaParams.
//
// Recognized keys: population, crossover, px, mutation, pm, iterations,
// init, seed, and the optional upmx_p. Blank lines and `#` comments are
// ignored.

#include <filesystem>
#include <string>
#include <string_view>

#include "tspga/engine.hpp"

namespace tspga {

/// Applies one key/value pair to `params`. Throws std::invalid_argument on
/// an unknown key or a value outside the key's domain.
void apply_param(GaParams& params, std::string_view key, std::string_view value);

/// Parses config text on top of `base`; later lines win.
GaParams parse_params(std::string_view text, GaParams base = {});
GaParams load_params(const std::filesystem::path& path, GaParams base = {});

std::string format_params(const GaParams& params);

}  // namespace tspga
