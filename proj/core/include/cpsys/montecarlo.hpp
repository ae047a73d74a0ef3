#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>

#include "cpsys/fields.hpp"

namespace cpsys {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;

  // |value - other| within k combined standard errors
  bool agrees(double other, double k = 3.0) const {
    return std::abs(value - other) <= k * std_error;
  }
  double combined_sigma(const McEstimate& other) const {
    return std::sqrt(std_error * std_error + other.std_error * other.std_error);
  }
};

// Engine for sample `index` of a run with master seed `seed`.  Stateless in
// the sample index, so partitioning the index range over workers cannot
// change the stream any sample sees.
std::mt19937_64 sample_rng(std::uint64_t seed, std::int64_t index);

// Mean of draw(rng) over `samples` independent engines; deterministic for a
// fixed seed independently of `workers`.
McEstimate mc_mean(const std::function<double(std::mt19937_64&)>& draw, std::int64_t samples,
                   std::uint64_t seed, int workers = 1);

// Fubini-Study-uniform point of CP^m (unit-mass probability measure)
ChartPoint sample_fs_point(int m, std::mt19937_64& rng);

// uniform point on the unit sphere of C^d
Eigen::VectorXcd sample_unit_vector(int d, std::mt19937_64& rng);

// integral of f against the Fubini-Study volume measure, total mass 1/m!
McEstimate mc_integrate_cpn(const std::function<double(const ChartPoint&)>& f, int m,
                            std::int64_t samples, std::uint64_t seed, int workers = 1);

// integral of a top-degree form field over CP^m
McEstimate mc_integrate_form(const FormField& f, std::int64_t samples, std::uint64_t seed,
                             int workers = 1);

// Integral over the hyperplane {Z . conj(sigma) = 0} in CP^m against its own
// Fubini-Study area measure (mass 1/(m-1)!).  The callback receives the
// sampled chart point together with a real tangent basis of the hyperplane.
McEstimate mc_integrate_hyperplane(
    const std::function<double(const ChartPoint&, const Eigen::MatrixXd&)>& f,
    const Eigen::VectorXcd& sigma, std::int64_t samples, std::uint64_t seed, int workers = 1);

// integral of an ambient form field of degree 2(m-1) over the hyperplane
McEstimate mc_integrate_form_hyperplane(const FormField& f, const Eigen::VectorXcd& sigma,
                                        std::int64_t samples, std::uint64_t seed, int workers = 1);

// FS-uniform point of the hyperplane {Z . conj(sigma) = 0}
ChartPoint sample_hyperplane_point(const Eigen::VectorXcd& sigma, std::mt19937_64& rng);

/// real tangent basis (2m x 2(m-1)) of the hyperplane {z : sigma0 + sigma.z = 0}
// at a chart point, from the homogeneous normal sigma
Eigen::MatrixXd hyperplane_tangent_basis(const Eigen::VectorXcd& sigma, int m);

}  // namespace cpsys
