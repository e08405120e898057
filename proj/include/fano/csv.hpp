#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fano/analysis.hpp"
#include "fano/dynamics.hpp"

namespace fano {

// Shortest representation that round-trips a double exactly (17 significant
// digits, C locale).
std::string format_double(double v);

// Header: time,rho_aa,rho_bb,rho_cc,re_rho_ab,im_rho_ab,coh_mag
// `time_scale` multiplies the stored times on output (used to convert the
// internal rate unit back to seconds for SI runs).
void write_trajectory_csv(std::ostream& out, const TimeSeries& series, double time_scale = 1.0);

// Single row describing a steady-state solve.
void write_steady_csv(std::ostream& out, const SteadyResult& result, double n_bar,
                      double delta_over_gamma);

// Header: n_bar,delta_over_gamma,coh_mag,coh_ratio,rho_aa,rho_bb,valid
void write_sweep_csv(std::ostream& out, const SweepResult& result);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;  // throws if absent
};

// Parses numeric CSV of the form emitted above.
CsvTable parse_csv(std::istream& in);

}  // namespace fano
