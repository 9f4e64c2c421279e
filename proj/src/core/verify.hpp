#pragma once

// Self-check suites: closed forms vs the brute-force protocol engine,
// trace-distance identities, critical-point equations, and ED vs
// free-fermion cross-checks. Used by the library verify entry point and
// the CLI `verify` subcommand.

#include "core/teleport.hpp"

#include <functional>
#include <random>
#include <string>

namespace qcpd::verify {

enum class Level { Quick, Full };

using LogFn = std::function<void(const std::string &)>;

// Runs the suite, logging one line per check; returns the failure count.
int run(Level level, const LogFn &log);

// Uniform sample from the physical correlator region (valid X-state).
teleport::PairCorrelators random_correlators(std::mt19937_64 &rng);

} // namespace qcpd::verify
