#include "fano/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fano {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const TimeSeries& series, double time_scale) {
  out << "time,rho_aa,rho_bb,rho_cc,re_rho_ab,im_rho_ab,coh_mag\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const PopulationState& s = series.states[i];
    out << format_double(series.times[i] * time_scale);
    for (double v : s.x) out << ',' << format_double(v);
    out << ',' << format_double(coherence_magnitude(s)) << '\n';
  }
}

void write_steady_csv(std::ostream& out, const SteadyResult& result, double n_bar,
                      double delta_over_gamma) {
  out << "n_bar,delta_over_gamma,rho_aa,rho_bb,rho_cc,re_rho_ab,im_rho_ab,"
         "coh_mag,coh_ratio,residual,method_agreement\n";
  out << format_double(n_bar) << ',' << format_double(delta_over_gamma);
  for (double v : result.x_ss.x) out << ',' << format_double(v);
  out << ',' << format_double(result.coherence_magnitude) << ','
      << format_double(result.coherence_ratio) << ',' << format_double(result.residual) << ','
      << format_double(result.method_agreement) << '\n';
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "n_bar,delta_over_gamma,coh_mag,coh_ratio,rho_aa,rho_bb,valid\n";
  for (std::size_t i = 0; i < result.n_bar_axis.size(); ++i) {
    for (std::size_t j = 0; j < result.delta_over_gamma_axis.size(); ++j) {
      const std::size_t cell = result.index(i, j);
      out << format_double(result.n_bar_axis[i]) << ','
          << format_double(result.delta_over_gamma_axis[j]) << ','
          << format_double(result.coherence_magnitude[cell]) << ','
          << format_double(result.coherence_ratio[cell]) << ','
          << format_double(result.population_a[cell]) << ','
          << format_double(result.population_b[cell]) << ','
          << static_cast<int>(result.valid[cell]) << '\n';
    }
  }
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::runtime_error("csv: no column named '" + name + "'");
}

CsvTable parse_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
  {
    std::istringstream header(line);
    std::string field;
    while (std::getline(header, field, ',')) table.header.push_back(field);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    row.reserve(table.header.size());
    std::istringstream cells(line);
    std::string field;
    while (std::getline(cells, field, ',')) {
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (end == field.c_str()) throw std::runtime_error("csv: non-numeric field '" + field + "'");
      row.push_back(v);
    }
    if (row.size() != table.header.size()) {
      throw std::runtime_error("csv: ragged row");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace fano
