#include "cpsys/igf.hpp"

#include <cmath>
#include <stdexcept>

#include "cpsys/systole.hpp"

namespace cpsys {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Eigen::MatrixXd realify_pair(const Eigen::VectorXcd& v) {
  Eigen::MatrixXd b(2 * v.size(), 2);
  for (int j = 0; j < v.size(); ++j) {
    b(2 * j, 0) = v(j).real();
    b(2 * j + 1, 0) = v(j).imag();
    b(2 * j, 1) = -v(j).imag();
    b(2 * j + 1, 1) = v(j).real();
  }
  return b;
}

// g_t-area density of the line {[a + s b]} against the Fubini-Study
// probability measure in the parameter s; zero off the chart (negligible
// truncation, far below Monte Carlo resolution)
double line_density(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, double t, Complex s) {
  const Eigen::VectorXcd h = a + s * b;
  const int m = static_cast<int>(h.size()) - 1;
  if (std::abs(h(0)) < 1e-12) return 0.0;
  Eigen::VectorXcd z = h.tail(m) / h(0);
  if (!z.allFinite() || z.norm() > ChartPoint::chart_radius) return 0.0;
  const ChartPoint q(std::move(z));
  const Eigen::VectorXcd push = (b.tail(m) * h(0) - h.tail(m) * b(0)) / (h(0) * h(0));
  const Eigen::MatrixXd tangent = realify_pair(push);
  const double density =
      std::sqrt((tangent.transpose() * gt_gram_at(q, t) * tangent).determinant());
  return density * M_PI * std::pow(1.0 + std::norm(s), 2);
}

Complex sample_cp1_param(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  while (true) {
    const Complex alpha(gauss(rng), gauss(rng)), beta(gauss(rng), gauss(rng));
    if (std::abs(alpha) < 1e-12) continue;
    return beta / alpha;
  }
}

}  // namespace

double equatorial_theta(double t, int n) { return 1.0 / calibrated_areas(t, n).hyperplane; }

McEstimate line_area_gt(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, double t,
                        std::int64_t samples, std::uint64_t seed, int workers) {
  return mc_mean(
      [&a, &b, t](std::mt19937_64& rng) { return line_density(a, b, t, sample_cp1_param(rng)); },
      samples, seed, workers);
}

void fiber_span_at(const ChartPoint& p, Eigen::VectorXcd& a, Eigen::VectorXcd& b) {
  const int nq = (p.m + 1) / 2;
  if (p.m % 2 != 1) throw std::invalid_argument("fiber_span_at: odd complex dimension required");
  a.resize(p.m + 1);
  a(0) = 1.0;
  a.tail(p.m) = p.z;
  b.resize(p.m + 1);
  for (int q = 0; q < nq; ++q) {
    b(2 * q) = -std::conj(a(2 * q + 1));
    b(2 * q + 1) = std::conj(a(2 * q));
  }
}

double fiber_membership_residual(const ChartPoint& p) {
  Eigen::VectorXcd a, b;
  fiber_span_at(p, a, b);
  const Eigen::VectorXcd z = a.tail(p.m) / a(0);
  return (z - p.z).norm();
}

McEstimate fiber_area_gt(const ChartPoint& p, double t, std::int64_t samples, std::uint64_t seed,
                         int workers) {
  Eigen::VectorXcd a, b;
  fiber_span_at(p, a, b);
  return line_area_gt(a, b, t, samples, seed, workers);
}

McEstimate hyperplane_area_gt(const Eigen::VectorXcd& sigma, double t, std::int64_t samples,
                              std::uint64_t seed, int workers) {
  return mc_integrate_hyperplane(
      [t](const ChartPoint& p, const Eigen::MatrixXd& basis) {
        const double num = (basis.transpose() * gt_gram_at(p, t) * basis).determinant();
        const double den = (basis.transpose() * fs_gram_at(p) * basis).determinant();
        return std::sqrt(num / den);
      },
      sigma, samples, seed, workers);
}

namespace {

// joint estimator of the family side of the integral geometric formula with
// the test function phi^power: one fiber (resp. hyperplane) per sample
McEstimate family_side(Family family, const MonomialSum& phi, int power, int n, double t,
                       std::int64_t samples, std::uint64_t seed, int workers) {
  const int m = 2 * n + 1;
  auto phi_pow = [&phi, power](const ChartPoint& q) {
    return std::pow(phi.eval(q).real(), power);
  };
  McEstimate e;
  if (family == Family::penrose) {
    // outer measure: quaternionic volume, sampled by projecting FS-uniform
    // points; inner: FS-uniform parameter on the fiber with density weight
    e = mc_mean(
        [&](std::mt19937_64& rng) {
          const ChartPoint p = sample_fs_point(m, rng);
          Eigen::VectorXcd a, b;
          fiber_span_at(p, a, b);
          const Complex s = sample_cp1_param(rng);
          const double density = line_density(a, b, t, s);
          if (density == 0.0) return 0.0;
          const Eigen::VectorXcd h = a + s * b;
          const ChartPoint q(h.tail(m) / h(0));
          return phi_pow(q) * density;
        },
        samples, seed, workers);
    const double scale = 1.0 / factorial(m);
    e.value *= scale;
    e.std_error *= scale;
  } else {
    // outer measure: theta(t) dV_{g_t} over the parameter CP^{2n+1}
    e = mc_mean(
        [&](std::mt19937_64& rng) {
          const Eigen::VectorXcd sigma = sample_unit_vector(m + 1, rng);
          if (sigma.tail(m).norm() < 1e-9) return 0.0;
          const Eigen::MatrixXd basis = hyperplane_tangent_basis(sigma, m);
          const ChartPoint q = sample_hyperplane_point(sigma, rng);
          const double num = (basis.transpose() * gt_gram_at(q, t) * basis).determinant();
          const double den = (basis.transpose() * fs_gram_at(q) * basis).determinant();
          return phi_pow(q) * std::sqrt(num / den);
        },
        samples, seed, workers);
    const double scale =
        equatorial_theta(t, n) * (t / factorial(m)) * (1.0 / factorial(m - 1));
    e.value *= scale;
    e.std_error *= scale;
  }
  return e;
}

McEstimate gt_volume_integral(const MonomialSum& phi, int power, int n, double t,
                              std::int64_t samples, std::uint64_t seed, int workers) {
  const int m = 2 * n + 1;
  McEstimate e = mc_integrate_cpn(
      [&phi, power](const ChartPoint& q) { return std::pow(phi.eval(q).real(), power); }, m,
      samples, seed, workers);
  e.value *= t;  // dV_{g_t} = t dV_{g_FS}
  e.std_error *= t;
  return e;
}

}  // namespace

IgfReport igf_verify(Family family, const MonomialSum& phi, int n, double t, std::int64_t samples,
                     std::uint64_t seed, int workers) {
  IgfReport rep;
  rep.lhs = family_side(family, phi, 1, n, t, samples, seed, workers);
  rep.rhs = gt_volume_integral(phi, 1, n, t, samples, seed + 1, workers);
  return rep;
}

HolderReport holder_chain_check(Family family, const MonomialSum& phi, int n, double t,
                                std::int64_t samples, std::uint64_t seed, int workers,
                                int members) {
  const int m = 2 * n + 1;
  const int k = family == Family::penrose ? 1 : 2 * n;
  HolderReport rep;
  rep.k = k;
  rep.vol_g = t / factorial(m);
  rep.family_integral = family_side(family, phi, k, n, t, samples, seed, workers);
  rep.vol_gbar = gt_volume_integral(phi, m, n, t, samples, seed + 1, workers);
  rep.holder_bound = std::pow(rep.vol_g, double(m - k) / m) * std::pow(rep.vol_gbar.value, double(k) / m);

  // member areas under gbar = phi g_t: dA_gbar = phi^k dA_{g_t}
  const std::int64_t member_samples = std::max<std::int64_t>(2, samples / members);
  double min_area = 0.0;
  double min_sigma_err = 0.0;
  std::mt19937_64 rng = sample_rng(seed, -1);
  for (int i = 0; i < members; ++i) {
    McEstimate area;
    if (family == Family::penrose) {
      const ChartPoint p = sample_fs_point(m, rng);
      Eigen::VectorXcd a, b;
      fiber_span_at(p, a, b);
      area = mc_mean(
          [&](std::mt19937_64& r) {
            const Complex s = sample_cp1_param(r);
            const double density = line_density(a, b, t, s);
            if (density == 0.0) return 0.0;
            const Eigen::VectorXcd h = a + s * b;
            const ChartPoint q(h.tail(m) / h(0));
            return std::pow(phi.eval(q).real(), k) * density;
          },
          member_samples, seed + 2 + i, workers);
    } else {
      const Eigen::VectorXcd sigma = sample_unit_vector(m + 1, rng);
      area = mc_integrate_hyperplane(
          [&](const ChartPoint& q, const Eigen::MatrixXd& basis) {
            const double num = (basis.transpose() * gt_gram_at(q, t) * basis).determinant();
            const double den = (basis.transpose() * fs_gram_at(q) * basis).determinant();
            return std::pow(phi.eval(q).real(), k) * std::sqrt(num / den);
          },
          sigma, member_samples, seed + 2 + i, workers);
    }
    if (i == 0 || area.value < min_area) {
      min_area = area.value;
      min_sigma_err = area.std_error;
    }
  }
  const double norm = std::pow(rep.vol_gbar.value, double(k) / m);
  rep.min_member_norm = min_area / norm;
  rep.min_member_sigma = min_sigma_err / norm;
  rep.sys_nor = k == 1 ? sys2_nor(t, n) : sys4n_nor(t, n);
  return rep;
}

}  // namespace cpsys
