#pragma once

#include <iosfwd>

#include "fano/config.hpp"

namespace fano {

// Executes a validated RunConfig and writes its output files.
//   simulate -> trajectory.csv, trajectory.svg
//   steady   -> steady.csv
//   sweep    -> sweep.csv, sweep.svg
// Returns 0 on success, 1 on configuration errors, 2 on numerical failures
// (for sweeps: any invalid cell, reported per cell on `err`).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace fano
