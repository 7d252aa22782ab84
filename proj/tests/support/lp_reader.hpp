#pragma once
#include <istream>

#include "sarmip/mip_model.hpp"

namespace sarmip::testing {

// Minimal independent reader for the LP subset the toolkit writes
// (Maximize / Subject To / Bounds / Generals / Binaries / End). Used to
// verify that exported files reconstruct an equivalent model.
MipModel read_lp(std::istream& in);

} // namespace sarmip::testing
