#pragma once

// Scripted demonstration scenarios with fixed caps and deterministic output.
// Each returns the process exit status: 0 when the scenario's expected
// outcome holds, 1 when a property check fails.

#include <cstdint>
#include <string>

int run_demo(const std::string& name, std::uint64_t cap, bool trace);
