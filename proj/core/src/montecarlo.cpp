#include "cpsys/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace cpsys {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::int64_t kBlock = 8192;

}  // namespace

std::mt19937_64 sample_rng(std::uint64_t seed, std::int64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(index)));
}

McEstimate mc_mean(const std::function<double(std::mt19937_64&)>& draw, std::int64_t samples,
                   std::uint64_t seed, int workers) {
  if (samples < 2) throw std::invalid_argument("mc_mean: need at least 2 samples");
  if (workers < 1) workers = 1;
  const std::int64_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<double> block_sum(blocks, 0.0), block_sq(blocks, 0.0);
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&]() {
    try {
      for (std::int64_t b = next.fetch_add(1); b < blocks && !failed.load();
           b = next.fetch_add(1)) {
        const std::int64_t lo = b * kBlock, hi = std::min(samples, lo + kBlock);
        double s = 0.0, q = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) {
          std::mt19937_64 rng = sample_rng(seed, i);
          const double v = draw(rng);
          s += v;
          q += v * v;
        }
        block_sum[b] = s;
        block_sq[b] = q;
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      failed.store(true);
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (std::thread& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  // reduce in block order so the result is independent of scheduling
  double sum = 0.0, sq = 0.0;
  for (std::int64_t b = 0; b < blocks; ++b) {
    sum += block_sum[b];
    sq += block_sq[b];
  }
  const double mean = sum / double(samples);
  const double var = std::max(0.0, sq / double(samples) - mean * mean);
  McEstimate e;
  e.value = mean;
  e.std_error = std::sqrt(var / double(samples - 1));
  e.samples = samples;
  e.seed = seed;
  return e;
}

Eigen::VectorXcd sample_unit_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(d);
  do {
    for (int j = 0; j < d; ++j) v(j) = Complex(gauss(rng), gauss(rng));
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

ChartPoint sample_fs_point(int m, std::mt19937_64& rng) {
  while (true) {
    const Eigen::VectorXcd z0 = sample_unit_vector(m + 1, rng);
    Eigen::VectorXcd z = z0.tail(m) / z0(0);
    if (z.allFinite() && z.norm() <= ChartPoint::chart_radius) return ChartPoint(std::move(z));
  }
}

McEstimate mc_integrate_cpn(const std::function<double(const ChartPoint&)>& f, int m,
                            std::int64_t samples, std::uint64_t seed, int workers) {
  double factorial = 1.0;
  for (int k = 2; k <= m; ++k) factorial *= k;
  McEstimate e = mc_mean(
      [&f, m](std::mt19937_64& rng) { return f(sample_fs_point(m, rng)); }, samples, seed, workers);
  e.value /= factorial;
  e.std_error /= factorial;
  return e;
}

McEstimate mc_integrate_form(const FormField& f, std::int64_t samples, std::uint64_t seed,
                             int workers) {
  const int m = f.m;
  if (f.degree != 2 * m) throw std::invalid_argument("mc_integrate_form: not a top-degree field");
  IndexTuple top(2 * m);
  for (int i = 0; i < 2 * m; ++i) top[i] = i + 1;
  return mc_integrate_cpn(
      [&f, top](const ChartPoint& p) {
        const Complex c = f(p).coeff(top);
        return c.real() / std::sqrt(fs_gram_at(p).determinant());
      },
      m, samples, seed, workers);
}

Eigen::MatrixXd hyperplane_tangent_basis(const Eigen::VectorXcd& sigma, int m) {
  if (sigma.size() != m + 1) throw std::invalid_argument("hyperplane_tangent_basis: bad normal");
  const Eigen::VectorXcd s = sigma.tail(m);
  if (s.norm() < 1e-12)
    throw std::invalid_argument("hyperplane_tangent_basis: hyperplane misses the chart");
  // complex orthogonal complement of s via a Householder QR
  Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(s).householderQ();
  Eigen::MatrixXd basis(2 * m, 2 * (m - 1));
  for (int c = 1; c < m; ++c) {
    const Eigen::VectorXcd u = q.col(c);
    for (int j = 0; j < m; ++j) {
      basis(2 * j, 2 * (c - 1)) = u(j).real();
      basis(2 * j + 1, 2 * (c - 1)) = u(j).imag();
      basis(2 * j, 2 * c - 1) = -u(j).imag();
      basis(2 * j + 1, 2 * c - 1) = u(j).real();
    }
  }
  return basis;
}

ChartPoint sample_hyperplane_point(const Eigen::VectorXcd& sigma, std::mt19937_64& rng) {
  const int m = static_cast<int>(sigma.size()) - 1;
  const Eigen::VectorXcd normal = sigma / sigma.norm();
  std::normal_distribution<double> gauss;
  while (true) {
    Eigen::VectorXcd v(m + 1);
    for (int j = 0; j <= m; ++j) v(j) = Complex(gauss(rng), gauss(rng));
    v -= normal.dot(v) * normal;  // Eigen's dot conjugates the first factor
    if (v.norm() < 1e-8) continue;
    Eigen::VectorXcd z = v.tail(m) / v(0);
    if (z.allFinite() && z.norm() <= ChartPoint::chart_radius) return ChartPoint(std::move(z));
  }
}

McEstimate mc_integrate_hyperplane(
    const std::function<double(const ChartPoint&, const Eigen::MatrixXd&)>& f,
    const Eigen::VectorXcd& sigma, std::int64_t samples, std::uint64_t seed, int workers) {
  const int m = static_cast<int>(sigma.size()) - 1;
  const Eigen::MatrixXd basis = hyperplane_tangent_basis(sigma, m);
  double factorial = 1.0;
  for (int k = 2; k <= m - 1; ++k) factorial *= k;
  McEstimate e = mc_mean(
      [&](std::mt19937_64& rng) { return f(sample_hyperplane_point(sigma, rng), basis); },
      samples, seed, workers);
  e.value /= factorial;
  e.std_error /= factorial;
  return e;
}

McEstimate mc_integrate_form_hyperplane(const FormField& f, const Eigen::VectorXcd& sigma,
                                        std::int64_t samples, std::uint64_t seed, int workers) {
  const int m = f.m;
  if (f.degree != 2 * (m - 1))
    throw std::invalid_argument("mc_integrate_form_hyperplane: degree mismatch");
  IndexTuple top(2 * (m - 1));
  for (int i = 0; i < 2 * (m - 1); ++i) top[i] = i + 1;
  return mc_integrate_hyperplane(
      [&f, top](const ChartPoint& p, const Eigen::MatrixXd& basis) {
        const Complex c = pullback(f(p), basis).coeff(top);
        const double density =
            std::sqrt((basis.transpose() * fs_gram_at(p) * basis).determinant());
        return c.real() / density;
      },
      sigma, samples, seed, workers);
}

}  // namespace cpsys
