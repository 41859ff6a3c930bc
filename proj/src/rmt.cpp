#include "lzlab/rmt.hpp"

#include "lzlab/errors.hpp"
#include "lzlab/predictions.hpp"
#include "lzlab/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

namespace lzlab {

void EnsembleSpec::validate() const {
  if (M < 1) throw ValidationError("ensemble: M must be >= 1");
  if (parity_of(M) != parity)
    throw ValidationError("ensemble: parity " + std::string(to_string(parity)) + " does not match M = " +
                          std::to_string(M));
}

std::string_view to_string(Centering c) { return c == Centering::analytic ? "analytic" : "empirical"; }

Centering parse_centering(std::string_view text) {
  if (text == "analytic") return Centering::analytic;
  if (text == "empirical") return Centering::empirical;
  throw ValidationError("centering must be 'analytic' or 'empirical'");
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

Rng derive_stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

int default_workers() {
  if (const char* env = std::getenv("LZLAB_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

namespace {

// One attempt; returns false on a rank-deficient draw.
bool try_sample(int M, Rng& rng, Eigen::MatrixXd& out) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(M, M);
  for (int j = 0; j < M; ++j)
    for (int i = 0; i < M; ++i) g(i, j) = normal(rng);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  const Eigen::MatrixXd& r = qr.matrixQR();
  double rmax = 0.0;
  for (int i = 0; i < M; ++i) rmax = std::max(rmax, std::abs(r(i, i)));
  int det_sign = 1;
  for (int i = 0; i < M; ++i) {
    if (!(std::abs(r(i, i)) > 1e-12 * rmax)) return false;
    if (qr.hCoeffs()(i) != 0.0) det_sign = -det_sign;
  }
  out = qr.householderQ();
  for (int j = 0; j < M; ++j) {
    if (r(j, j) < 0.0) {
      out.col(j) = -out.col(j);
      det_sign = -det_sign;
    }
  }
  if (det_sign < 0) out.row(0) = -out.row(0);
  return true;
}

}  // namespace

Eigen::MatrixXd sample_haar_so_matrix(int M, Rng& rng) {
  if (M < 1) throw DomainError("sample_haar_so: M must be >= 1");
  Eigen::MatrixXd q;
  if (try_sample(M, rng, q) || try_sample(M, rng, q)) return q;
  throw ConvergenceError("sample_haar_so: orthonormalization broke down twice");
}

Eigenangles sample_haar_so(int M, Rng& rng) { return extract_eigenangles(sample_haar_so_matrix(M, rng)); }

Eigenangles extract_eigenangles(const Eigen::MatrixXd& q) {
  const auto M = q.rows();
  if (M < 1 || q.cols() != M) throw ValidationError("extract_eigenangles: matrix must be square and non-empty");
  const double defect = (q.transpose() * q - Eigen::MatrixXd::Identity(M, M)).cwiseAbs().maxCoeff();
  if (!(defect <= 1e-8)) throw ValidationError("extract_eigenangles: matrix is not orthogonal");
  Eigenangles e;
  e.parity = parity_of(M);
  if (M == 1) {
    e.angles.push_back(q(0, 0) > 0.0 ? 0.0 : std::numbers::pi);
    return e;
  }
  const Eigen::RealSchur<Eigen::MatrixXd> schur(q, false);
  const Eigen::MatrixXd& t = schur.matrixT();
  for (Eigen::Index i = 0; i < M;) {
    if (i + 1 < M && t(i + 1, i) != 0.0) {
      const double half_tr = 0.5 * (t(i, i) + t(i + 1, i + 1));
      const double det = t(i, i) * t(i + 1, i + 1) - t(i, i + 1) * t(i + 1, i);
      const double theta = std::atan2(std::sqrt(std::max(0.0, det - half_tr * half_tr)), half_tr);
      e.angles.push_back(theta);
      e.angles.push_back(-theta);
      i += 2;
    } else {
      e.angles.push_back(t(i, i) > 0.0 ? 0.0 : std::numbers::pi);
      i += 1;
    }
  }
  return e;
}

double z_statistic(const Eigenangles& e, const TestFunction& f) {
  const int M = e.M();
  if (M == 0) return 0.0;
  const auto K = static_cast<int>(std::ceil(f.sigma() * M));
  double acc = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double w = f.hat_at(static_cast<double>(k) / M);
    if (w == 0.0) continue;
    double s = 0.0;
    for (const double theta : e.angles) s += std::cos(k * theta);
    acc += w * s;
  }
  return f.hat_at(0.0) + 2.0 * acc / M;
}

ZEvaluator::ZEvaluator(int M, const TestFunction& f) : M_(M), hat0_(f.hat_at(0.0)) {
  if (M < 1) throw DomainError("ZEvaluator: M must be >= 1");
  const auto K = static_cast<int>(std::ceil(f.sigma() * M));
  for (int k = 1; k <= K; ++k) weights_.push_back(f.hat_at(static_cast<double>(k) / M));
  while (!weights_.empty() && weights_.back() == 0.0) weights_.pop_back();
}

double ZEvaluator::from_cosines(std::span<const double> cosines) const {
  std::vector<double> prev(cosines.size(), 1.0), cur(cosines.begin(), cosines.end());
  double acc = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    double s = 0.0;
    for (const double v : cur) s += v;
    acc += weights_[k] * s;
    // T_{k+1}(c) = 2c T_k(c) - T_{k-1}(c)
    for (std::size_t n = 0; n < cur.size(); ++n) {
      const double next = 2.0 * cosines[n] * cur[n] - prev[n];
      prev[n] = cur[n];
      cur[n] = next;
    }
  }
  return hat0_ + 2.0 * acc / M_;
}

double ZEvaluator::from_matrix(const Eigen::MatrixXd& u) const {
  if (u.rows() == 1) {
    const double c = u(0, 0);
    return from_cosines(std::span<const double>(&c, 1));
  }
  const Eigen::MatrixXd sym = 0.5 * (u + u.transpose());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  std::vector<double> c(ev.data(), ev.data() + ev.size());
  for (double& v : c) v = std::clamp(v, -1.0, 1.0);
  return from_cosines(c);
}

std::vector<double> sample_z(const EnsembleSpec& spec, const TestFunction& f, long long samples, std::uint64_t seed,
                             int workers) {
  spec.validate();
  if (samples < 0) throw DomainError("sample_z: negative sample count");
  if (workers <= 0) workers = default_workers();
  const ZEvaluator zeval(spec.M, f);
  std::vector<double> z(static_cast<std::size_t>(samples));
  auto run_block = [&](long long lo, long long hi) {
    for (long long i = lo; i < hi; ++i) {
      Rng rng = derive_stream(seed, static_cast<std::uint64_t>(i));
      z[static_cast<std::size_t>(i)] = zeval.from_matrix(sample_haar_so_matrix(spec.M, rng));
    }
  };
  const long long w = std::clamp<long long>(workers, 1, std::max<long long>(1, samples));
  if (w == 1) {
    run_block(0, samples);
    return z;
  }
  std::vector<std::thread> pool;
  for (long long b = 0; b < w; ++b) pool.emplace_back(run_block, samples * b / w, samples * (b + 1) / w);
  for (auto& t : pool) t.join();
  return z;
}

double stable_mean(std::span<const double> z) {
  if (z.empty()) return 0.0;
  std::vector<double> d(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) d[i] = z[i] - z[0];
  return z[0] + quad::pairwise_sum(d) / static_cast<double>(z.size());
}

std::vector<MomentEstimate> moments_about(std::span<const double> z, int n_max, double center, Centering centering) {
  if (z.size() < 2) throw DomainError("moments: need at least two samples");
  if (n_max < 1 || n_max > 8) throw DomainError("moments: n_max must lie in [1, 8]");
  const auto count = static_cast<double>(z.size());
  std::vector<MomentEstimate> out;
  std::vector<double> pw(z.size(), 1.0);
  for (int n = 1; n <= n_max; ++n) {
    for (std::size_t i = 0; i < z.size(); ++i) pw[i] *= z[i] - center;
    const double mean = stable_mean(pw);
    std::vector<double> sq(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) sq[i] = (pw[i] - mean) * (pw[i] - mean);
    const double var = quad::pairwise_sum(sq) / (count - 1.0);
    out.push_back({n, mean, std::sqrt(var / count), static_cast<long long>(z.size()), centering});
  }
  return out;
}

std::vector<MomentEstimate> mc_moments(const EnsembleSpec& spec, const TestFunction& f, int n_max, long long samples,
                                       std::uint64_t seed, Centering centering, int workers) {
  if (samples < 2) throw DomainError("mc_moments: need at least two samples");
  const std::vector<double> z = sample_z(spec, f, samples, seed, workers);
  const double c = centering == Centering::analytic ? mean_limit(spec.parity, f) : stable_mean(z);
  return moments_about(z, n_max, c, centering);
}

}  // namespace lzlab
