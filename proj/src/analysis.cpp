#include "fano/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <thread>

#include "fano/linalg.hpp"

namespace fano {

namespace {

// In-place iterative radix-2 FFT; size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

double uniform_dt_or_throw(const TimeSeries& series) {
  if (series.size() < 2) throw std::invalid_argument("oscillation_frequency: series too short");
  const double dt =
      (series.times.back() - series.times.front()) / static_cast<double>(series.size() - 1);
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    if (std::abs(series.times[i + 1] - series.times[i] - dt) > 1e-9 * dt) {
      throw std::invalid_argument("oscillation_frequency: non-uniform grid");
    }
  }
  return dt;
}

}  // namespace

double coherence_magnitude(const PopulationState& x) { return std::hypot(x.x[3], x.x[4]); }

double coherence_ratio(const PopulationState& x) {
  const double excited = x.x[0] + x.x[1];
  if (excited <= 1e-15) {
    throw NoExcitedPopulation("coherence_ratio: no excited population");
  }
  return coherence_magnitude(x) / excited;
}

RegimeLabel classify_regime(const SystemParams& params) {
  params.validate();
  const double ratio = std::abs(params.delta) / params.gamma_bar();
  RegimeLabel label{};
  if (ratio >= 5.0) {
    label.damping = DampingRegime::Underdamped;
  } else if (ratio <= 0.2) {
    label.damping = DampingRegime::Overdamped;
  } else {
    label.damping = DampingRegime::Crossover;
  }
  if (params.n_bar >= 5.0) {
    label.pumping = PumpingRegime::Strong;
  } else if (params.n_bar <= 0.2) {
    label.pumping = PumpingRegime::Weak;
  } else {
    label.pumping = PumpingRegime::Intermediate;
  }
  return label;
}

const char* to_string(DampingRegime r) {
  switch (r) {
    case DampingRegime::Underdamped: return "underdamped";
    case DampingRegime::Overdamped: return "overdamped";
    default: return "crossover";
  }
}

const char* to_string(PumpingRegime r) {
  switch (r) {
    case PumpingRegime::Weak: return "weak";
    case PumpingRegime::Strong: return "strong";
    default: return "intermediate";
  }
}

std::optional<double> oscillation_frequency(const TimeSeries& series) {
  if (series.size() < 256) {
    throw std::invalid_argument("oscillation_frequency: need at least 256 samples");
  }
  const double dt = uniform_dt_or_throw(series);
  const std::size_t n = series.size();

  // Steady value from the tail; the mean is robust against residual ripple.
  const std::size_t tail = std::max<std::size_t>(8, n / 20);
  double steady = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) steady += series.states[i].x[3];
  steady /= static_cast<double>(tail);

  std::vector<double> signal(n);
  double rms = 0.0, peak_abs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    signal[i] = series.states[i].x[3] - steady;
    rms += signal[i] * signal[i];
    peak_abs = std::max(peak_abs, std::abs(series.states[i].x[3]));
  }
  rms = std::sqrt(rms / static_cast<double>(n));
  if (rms < 1e-12 * std::max(1.0, peak_abs)) return std::nullopt;

  const std::size_t nfft = 2 * next_pow2(n);
  std::vector<std::complex<double>> buf(nfft, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double w =
        0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                              static_cast<double>(n - 1)));
    buf[i] = signal[i] * w;
  }
  fft_radix2(buf);

  std::vector<double> power(nfft / 2);
  for (std::size_t k = 1; k < nfft / 2; ++k) power[k] = std::norm(buf[k]);

  // Anything below two cycles over the span is trend, not oscillation.
  std::size_t k_peak = 2;
  for (std::size_t k = 2; k < nfft / 2; ++k) {
    if (power[k] > power[k_peak]) k_peak = k;
  }
  std::vector<double> sorted(power.begin() + 1, power.end());
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  if (power[k_peak] < 10.0 * median) return std::nullopt;

  double shift = 0.0;
  if (k_peak + 1 < nfft / 2) {
    const double pm = power[k_peak - 1], p0 = power[k_peak], pp = power[k_peak + 1];
    const double denom = pm - 2.0 * p0 + pp;
    if (denom != 0.0) shift = std::clamp(0.5 * (pm - pp) / denom, -0.5, 0.5);
  }
  return 2.0 * std::numbers::pi * (static_cast<double>(k_peak) + shift) /
         (static_cast<double>(nfft) * dt);
}

double coherence_lifetime(const TimeSeries& series, double epsilon) {
  if (series.size() < 2) throw std::invalid_argument("coherence_lifetime: series too short");
  if (!(epsilon > 0.0)) throw std::invalid_argument("coherence_lifetime: epsilon must be > 0");

  const std::size_t n = series.size();
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = coherence_magnitude(series.states[i]);

  const std::size_t tail = std::max<std::size_t>(2, n / 10);
  double lo = mag[n - tail], hi = mag[n - tail];
  for (std::size_t i = n - tail; i < n; ++i) {
    lo = std::min(lo, mag[i]);
    hi = std::max(hi, mag[i]);
  }
  if (hi - lo >= epsilon / 10.0) {
    throw NotConverged("coherence_lifetime: tail of the series still varies");
  }

  const double final_value = mag.back();
  std::size_t last_violation = n;  // sentinel: none
  for (std::size_t i = n; i-- > 0;) {
    if (std::abs(mag[i] - final_value) > epsilon) {
      last_violation = i;
      break;
    }
  }
  if (last_violation == n) return series.times.front();
  // The last sample equals the final value, so last_violation <= n - 2 here.
  return series.times[last_violation + 1];
}

SweepResult sweep_steady(const SystemParams& params_template, std::span<const double> n_bar_axis,
                         std::span<const double> delta_over_gamma_axis, unsigned jobs) {
  if (n_bar_axis.empty() || delta_over_gamma_axis.empty()) {
    throw std::invalid_argument("sweep_steady: axes must be non-empty");
  }
  SweepResult result;
  result.n_bar_axis.assign(n_bar_axis.begin(), n_bar_axis.end());
  result.delta_over_gamma_axis.assign(delta_over_gamma_axis.begin(), delta_over_gamma_axis.end());
  const std::size_t cells = result.cell_count();
  result.coherence_magnitude.assign(cells, 0.0);
  result.coherence_ratio.assign(cells, 0.0);
  result.population_a.assign(cells, 0.0);
  result.population_b.assign(cells, 0.0);
  result.valid.assign(cells, 0);
  result.cell_errors.assign(cells, {});

  const double gamma_bar = params_template.gamma_bar();
  auto run_cell = [&](std::size_t cell) {
    const std::size_t i = cell / delta_over_gamma_axis.size();
    const std::size_t j = cell % delta_over_gamma_axis.size();
    SystemParams p = params_template;
    p.n_bar = n_bar_axis[i];
    p.delta = delta_over_gamma_axis[j] * gamma_bar;
    try {
      const SteadyResult ss = steady_state(p);
      result.coherence_magnitude[cell] = ss.coherence_magnitude;
      result.coherence_ratio[cell] = ss.coherence_ratio;
      result.population_a[cell] = ss.x_ss.x[0];
      result.population_b[cell] = ss.x_ss.x[1];
      result.valid[cell] = 1;
    } catch (const std::exception& e) {
      result.cell_errors[cell] = e.what();
    }
  };

  unsigned n_threads = jobs != 0 ? jobs : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, cells));
  if (n_threads <= 1) {
    for (std::size_t cell = 0; cell < cells; ++cell) run_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t cell = next.fetch_add(1); cell < cells; cell = next.fetch_add(1)) {
          run_cell(cell);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  return result;
}

PositivityReport positivity_report(const TimeSeries& series, double tol) {
  if (series.size() == 0) throw std::invalid_argument("positivity_report: empty series");
  PositivityReport report;
  report.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < series.size(); ++i) {
    const OpticalCoherenceState z =
        series.optical.empty() ? OpticalCoherenceState{} : series.optical[i];
    const auto ev = hermitian3_eigenvalues(density_from_state(series.states[i], z));
    if (ev[0] < report.min_eigenvalue) {
      report.min_eigenvalue = ev[0];
      report.min_index = i;
    }
  }
  report.flagged = report.min_eigenvalue < -tol;
  return report;
}

}  // namespace fano
