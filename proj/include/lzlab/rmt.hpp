#pragma once

#include "lzlab/common.hpp"
#include "lzlab/testfn.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace lzlab {

struct EnsembleSpec {
  int M = 1;
  Parity parity = Parity::odd;

  /// Throws ValidationError unless M >= 1 and parity matches M.
  void validate() const;
  static EnsembleSpec of(int M) { return {M, parity_of(M)}; }
};

/// Eigenvalue angles in (-pi, pi] of an element of SO(M).
struct Eigenangles {
  std::vector<double> angles;
  Parity parity = Parity::odd;
  int M() const { return static_cast<int>(angles.size()); }
};

enum class Centering { analytic, empirical };

std::string_view to_string(Centering c);
Centering parse_centering(std::string_view text);

struct MomentEstimate {
  int n = 0;
  double value = 0.0;
  double std_err = 0.0;
  long long samples = 0;
  Centering centering = Centering::analytic;
};

using Rng = std::mt19937_64;

/// Independent generator for sample `index`; depends only on (seed, index).
Rng derive_stream(std::uint64_t seed, std::uint64_t index);

/// Worker count from LZLAB_WORKERS, else the hardware concurrency (at least 1).
int default_workers();

/// Haar-distributed element of SO(M).
Eigen::MatrixXd sample_haar_so_matrix(int M, Rng& rng);
Eigenangles sample_haar_so(int M, Rng& rng);

/// Angles from the real Schur form; throws ValidationError if the input is not orthogonal.
Eigenangles extract_eigenangles(const Eigen::MatrixXd& q);

/// Z = hat(0) + (2/M) sum_{k=1}^{ceil(sigma M)} hat(k/M) sum_n cos(k theta_n).
double z_statistic(const Eigenangles& e, const TestFunction& f);

/// Precomputed hat(k/M) for the Chebyshev route.
class ZEvaluator {
 public:
  ZEvaluator(int M, const TestFunction& f);
  /// Z from the eigenvalues cos(theta_n) of the symmetric part (U + U^T)/2.
  double from_cosines(std::span<const double> cosines) const;
  /// Z from a sampled matrix via the symmetric eigenvalue route.
  double from_matrix(const Eigen::MatrixXd& u) const;

 private:
  int M_;
  double hat0_;
  std::vector<double> weights_;
};

/// Z for `samples` Haar draws; sample i uses derive_stream(seed, i). Result is independent of `workers`.
std::vector<double> sample_z(const EnsembleSpec& spec, const TestFunction& f, long long samples, std::uint64_t seed,
                             int workers = 0);

/// Centered moments 1..n_max of the given Z sample about `center`.
std::vector<MomentEstimate> moments_about(std::span<const double> z, int n_max, double center, Centering centering);

/// Sample mean computed so that a constant sample returns that constant exactly.
double stable_mean(std::span<const double> z);

/// Monte Carlo estimates of E[(Z - c)^n], n = 1..n_max.
std::vector<MomentEstimate> mc_moments(const EnsembleSpec& spec, const TestFunction& f, int n_max, long long samples,
                                       std::uint64_t seed, Centering centering = Centering::analytic,
                                       int workers = 0);

}  // namespace lzlab
