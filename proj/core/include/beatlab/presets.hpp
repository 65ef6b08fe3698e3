#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beatlab/config.hpp"

namespace beatlab {

// Seed every preset uses unless overridden.
inline constexpr std::uint64_t kCanonicalSeed = 1;

// fig1..fig9, case1..case13, twowave, ircascade, in run order.
const std::vector<std::string>& preset_names();
bool is_preset(const std::string& name);

// Fully specified configuration for a named preset. Throws
// std::invalid_argument for an unknown name.
RunConfig make_preset(const std::string& name, std::uint64_t seed = kCanonicalSeed);

// Fiducial frequencies of the multi-fiducial preset: `count` uniform draws on
// (0, hi] from a stream derived from (but distinct from) the bank seed.
std::vector<double> draw_fiducials(std::uint64_t seed, std::size_t count, double hi);

}  // namespace beatlab
