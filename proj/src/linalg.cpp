#include "fano/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace fano {

namespace {

// [13/13] Pade numerator coefficients (Higham 2005).
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Matrix matrix_exponential(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_exponential: square input required");
  if (!m.is_finite()) throw std::invalid_argument("matrix_exponential: non-finite input");
  const std::size_t n = m.rows();

  const double norm = m.one_norm();
  int s = 0;
  if (norm > kTheta13) {
    s = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  }
  Matrix a = m * std::ldexp(1.0, -s);

  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a2 * a4;
  const Matrix eye = Matrix::identity(n);

  Matrix u = a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2);
  u += kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2 + kPade13[1] * eye;
  u = a * u;

  Matrix v = a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2);
  v += kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2 + kPade13[0] * eye;

  // exp(a) ~= (v - u)^{-1} (v + u)
  const Matrix lhs = v - u;
  const Matrix rhs = v + u;
  LuSolver lu(lhs);
  Matrix result(n, n);
  std::vector<double> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = rhs(i, j);
    const std::vector<double> x = lu.solve(col);
    for (std::size_t i = 0; i < n; ++i) result(i, j) = x[i];
  }
  for (int k = 0; k < s; ++k) result = result * result;
  return result;
}

PopulationState steady_nullspace(const GeneratorA& a) {
  const Matrix& gen = a.m;
  if (gen.rows() != 5 || gen.cols() != 5) {
    throw std::invalid_argument("steady_nullspace: generator must be 5x5");
  }
  if (!gen.is_finite()) throw std::invalid_argument("steady_nullspace: non-finite generator");

  struct Candidate {
    std::size_t row;
    double cond;
  };
  std::vector<Candidate> candidates;
  std::vector<LuSolver> factors;
  factors.reserve(5);
  for (std::size_t k = 0; k < 5; ++k) {
    Matrix mod = gen;
    for (std::size_t j = 0; j < 5; ++j) mod(k, j) = (j < 3) ? 1.0 : 0.0;
    LuSolver lu(mod);
    double cond = std::numeric_limits<double>::infinity();
    if (!lu.nearly_singular()) {
      cond = mod.one_norm() * inverse_one_norm_estimate(lu);
    }
    candidates.push_back({k, cond});
    factors.push_back(std::move(lu));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& l, const Candidate& r) { return l.cond < r.cond; });

  const double gen_norm = gen.one_norm();
  for (const Candidate& c : candidates) {
    if (!std::isfinite(c.cond) || c.cond > 1e10) break;
    std::array<double, 5> b{};
    b[c.row] = 1.0;
    const std::vector<double> x = factors[c.row].solve(b);

    PopulationState state;
    std::copy(x.begin(), x.end(), state.x.begin());
    std::array<double, 5> residual;
    gen.apply(state.x, residual);
    double res = 0.0;
    for (double v : residual) res = std::max(res, std::abs(v));
    if (res <= 1e-11 * gen_norm) return state;
  }
  throw DegenerateKernel("steady_nullspace: trace-constrained system is singular");
}

std::array<double, 3> hermitian3_eigenvalues(const DensityMatrix3& rho) {
  const double scale = [&] {
    double s = 0.0;
    for (const auto& v : rho.m) s = std::max(s, std::abs(v));
    return s;
  }();
  if (!std::isfinite(scale)) throw std::invalid_argument("hermitian3_eigenvalues: non-finite input");
  if (rho.hermiticity_defect() > 1e-10 * std::max(1.0, scale)) {
    throw std::invalid_argument("hermitian3_eigenvalues: input is not Hermitian");
  }

  // Work on the Hermitian part; cyclic Jacobi with complex Givens rotations.
  std::array<std::complex<double>, 9> h;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      h[3 * i + j] = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
    }
  }
  auto at = [&h](std::size_t i, std::size_t j) -> std::complex<double>& { return h[3 * i + j]; };

  for (int sweep = 0; sweep < 30; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) off = std::max(off, std::abs(at(i, j)));
    }
    if (off <= 1e-300 || off <= 1e-16 * std::max(1.0, scale)) break;

    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 3; ++q) {
        const std::complex<double> hpq = at(p, q);
        const double apq = std::abs(hpq);
        if (apq == 0.0) continue;
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        const std::complex<double> phase = hpq / apq;

        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;

        // Rotation in the (p, q) plane: columns then rows.
        for (std::size_t i = 0; i < 3; ++i) {
          const std::complex<double> vip = at(i, p);
          const std::complex<double> viq = at(i, q);
          at(i, p) = cs * vip - sn * std::conj(phase) * viq;
          at(i, q) = sn * phase * vip + cs * viq;
        }
        for (std::size_t j = 0; j < 3; ++j) {
          const std::complex<double> vpj = at(p, j);
          const std::complex<double> vqj = at(q, j);
          at(p, j) = cs * vpj - sn * phase * vqj;
          at(q, j) = sn * std::conj(phase) * vpj + cs * vqj;
        }
      }
    }
  }

  std::array<double, 3> ev = {at(0, 0).real(), at(1, 1).real(), at(2, 2).real()};
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace fano
