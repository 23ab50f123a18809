// Copyright 2026 The wexpand Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wexpand/density_matrix.hpp"
#include "wexpand/tolerances.hpp"

namespace wexpand {

/// Single-qubit projector labels. D = (H+V)/sqrt2, R = (H-iV)/sqrt2,
/// L = (H+iV)/sqrt2.
enum class Projector : char { H = 'H', V = 'V', D = 'D', R = 'R', L = 'L' };

inline Eigen::Vector2cd projector_vector(Projector p) {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  switch (p) {
    case Projector::H: return {1.0, 0.0};
    case Projector::V: return {0.0, 1.0};
    case Projector::D: return {s, s};
    case Projector::R: return {s, -i * s};
    case Projector::L: return {s, i * s};
  }
  throw std::invalid_argument("projector_vector: unknown label");
}

struct MeasurementSetting {
  std::vector<Projector> labels;  // one per qubit

  std::string to_string() const {
    std::string s;
    for (auto p : labels) s += static_cast<char>(p);
    return s;
  }

  static MeasurementSetting from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("measurement setting: empty label string");
    MeasurementSetting m;
    for (char c : s) {
      if (std::string("HVDRL").find(c) == std::string::npos) {
        throw std::invalid_argument(std::string("measurement setting: unknown projector '") + c + "'");
      }
      m.labels.push_back(static_cast<Projector>(c));
    }
    return m;
  }

  std::size_t num_qubits() const { return labels.size(); }
  bool operator==(const MeasurementSetting&) const = default;
};

/// Tensor product of the per-qubit projector vectors, qubit 0 most significant.
inline Eigen::VectorXcd setting_vector(const MeasurementSetting& s) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
  for (auto p : s.labels) {
    const Eigen::Vector2cd q = projector_vector(p);
    Eigen::VectorXcd next(v.size() * 2);
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      next(2 * k) = v(k) * q(0);
      next(2 * k + 1) = v(k) * q(1);
    }
    v = std::move(next);
  }
  return v;
}

/// {H, V, D, R}^n with the first qubit's label varying slowest.
inline std::vector<MeasurementSetting> default_settings(int n) {
  if (n < 1) throw std::invalid_argument("default_settings: need at least one qubit");
  const Projector family[4] = {Projector::H, Projector::V, Projector::D, Projector::R};
  std::vector<MeasurementSetting> out;
  const std::size_t total = std::size_t{1} << (2 * n);
  out.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    MeasurementSetting s;
    for (int q = n - 1; q >= 0; --q) s.labels.push_back(family[(idx >> (2 * q)) & 3]);
    out.push_back(std::move(s));
  }
  return out;
}

inline double expected_probability(const DensityMatrix& rho, const MeasurementSetting& s) {
  if (rho.dim() != (std::size_t{1} << s.num_qubits())) {
    throw std::invalid_argument("expected_probability: setting has " + std::to_string(s.num_qubits()) +
                                " qubits, state has " + std::to_string(rho.num_qubits()));
  }
  const Eigen::VectorXcd v = setting_vector(s);
  return std::max(0.0, v.dot(rho.matrix() * v).real());
}

/// <psi|rho|psi> for a (possibly unnormalized) target vector.
inline double fidelity(const DensityMatrix& rho, const Eigen::VectorXcd& target) {
  if (static_cast<std::size_t>(target.size()) != rho.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  return target.dot(rho.matrix() * target).real() / target.squaredNorm();
}

/// Projectors span the full operator space.
inline bool informationally_complete(const std::vector<MeasurementSetting>& settings) {
  if (settings.empty()) return false;
  const auto n = settings.front().num_qubits();
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::MatrixXcd a(d * d, static_cast<Eigen::Index>(settings.size()));
  for (std::size_t j = 0; j < settings.size(); ++j) {
    if (settings[j].num_qubits() != n) return false;
    const Eigen::VectorXcd v = setting_vector(settings[j]);
    const Eigen::MatrixXcd p = v * v.adjoint();
    a.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXcd>(p.data(), d * d);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
  qr.setThreshold(1e-10);
  return qr.rank() == d * d;
}

struct CountRecord {
  MeasurementSetting setting;
  std::int64_t count = 0;
  double seconds = 0.0;
  double rate = 0.0;  // counts per second, informational
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::int64_t draw_poisson(std::mt19937_64& rng, double mean) {
  if (!(mean > 0.0)) return 0;
  std::poisson_distribution<std::int64_t> dist(mean);
  return dist(rng);
}
}  // namespace detail

/// Seed for the k-th independent stream derived from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k) {
  return detail::splitmix64(master ^ detail::splitmix64(k + 1));
}

/// count ~ Poisson(flux * Tr(rho Pi)); deterministic in the seed.
inline std::vector<CountRecord> sample_counts(const DensityMatrix& rho, const std::vector<MeasurementSetting>& settings,
                                              double flux_per_setting, std::uint64_t seed, double seconds = 0.0) {
  if (!(flux_per_setting > 0.0)) throw std::invalid_argument("sample_counts: flux must be > 0");
  std::mt19937_64 rng(seed);
  std::vector<CountRecord> out;
  out.reserve(settings.size());
  for (const auto& s : settings) {
    const std::int64_t c = detail::draw_poisson(rng, flux_per_setting * expected_probability(rho, s));
    out.push_back({s, c, seconds, seconds > 0.0 ? static_cast<double>(c) / seconds : 0.0});
  }
  return out;
}

struct ImlmOptions {
  double tolerance = tol::imlm_gain;
  int max_iterations = tol::imlm_max_iterations;
  std::vector<int> qubit_order{};  // defaults to 0..n-1
  bool keep_trace = true;
  bool extrapolate = true;  // also try R^b sigma R^b, b = 2, 4, ..., max_power
  double max_power = 1048576.0;
};

struct ReconstructionResult {
  DensityMatrix rho;
  int iterations = 0;
  double log_likelihood = 0.0;
  bool converged = false;
  std::vector<double> log_likelihood_trace;  // one entry per accepted iterate, starting state first
};

/// Iterative maximum-likelihood reconstruction from relative frequencies.
///
/// The projector family {Pi_j} need not sum to the identity, so the problem is
/// mapped onto the POVM E_j = G^-1/2 Pi_j G^-1/2 with G = sum_j Pi_j, where the
/// per-setting likelihood sum_j f_j log(p_j / sum_k p_k) becomes the usual
/// multinomial one in sigma = G^1/2 rho G^1/2 / Tr(G rho). Each iteration
/// applies sigma <- R sigma R / Tr, R = sum_j (f_j / q_j) E_j; if that lowers
/// the likelihood the step is diluted, (1 + eps R) sigma (1 + eps R), with eps
/// halved until the likelihood does not decrease. An accepted step is then
/// stretched to R^b sigma R^b for the largest b in 2, 4, ... that still gains.
/// Starts from the maximally mixed rho.
inline ReconstructionResult imlm_reconstruct(const std::vector<MeasurementSetting>& settings,
                                             const std::vector<double>& observations, const ImlmOptions& opt = {}) {
  if (settings.empty() || settings.size() != observations.size()) {
    throw std::invalid_argument("imlm: settings and observations must be non-empty and the same length");
  }
  if (!informationally_complete(settings)) {
    throw std::invalid_argument("imlm: measurement settings are not informationally complete");
  }
  double total = 0.0;
  for (double o : observations) {
    if (!(o >= 0.0)) throw std::invalid_argument("imlm: negative or non-finite observation");
    total += o;
  }
  if (!(total > 0.0)) throw std::invalid_argument("imlm: total counts must be > 0");

  const int n = static_cast<int>(settings.front().num_qubits());
  const Eigen::Index d = Eigen::Index{1} << n;
  const auto J = static_cast<Eigen::Index>(settings.size());
  Eigen::VectorXd f(J);
  Eigen::MatrixXcd psi(d, J);
  for (Eigen::Index j = 0; j < J; ++j) {
    f(j) = observations[static_cast<std::size_t>(j)] / total;
    psi.col(j) = setting_vector(settings[static_cast<std::size_t>(j)]);
  }

  const Eigen::MatrixXcd g = psi * psi.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ges(g);
  const Eigen::VectorXd gev = ges.eigenvalues();
  const Eigen::MatrixXcd g_sqrt = ges.eigenvectors() * gev.cwiseSqrt().asDiagonal() * ges.eigenvectors().adjoint();
  const Eigen::MatrixXcd g_isqrt =
      ges.eigenvectors() * gev.cwiseSqrt().cwiseInverse().asDiagonal() * ges.eigenvectors().adjoint();
  const Eigen::MatrixXcd phi = g_isqrt * psi;

  auto probabilities = [&](const Eigen::MatrixXcd& sigma) {
    const Eigen::MatrixXcd sp = sigma * phi;
    Eigen::VectorXd q(J);
    for (Eigen::Index j = 0; j < J; ++j) q(j) = std::max(phi.col(j).dot(sp.col(j)).real(), tol::probability_floor);
    return q;
  };
  auto log_likelihood = [&](const Eigen::VectorXd& q) {
    double l = 0.0;
    for (Eigen::Index j = 0; j < J; ++j) {
      if (f(j) > 0.0) l += f(j) * std::log(q(j));
    }
    return l;
  };
  auto normalize = [](Eigen::MatrixXcd m) {
    m = (m + m.adjoint()).eval() * 0.5;
    return Eigen::MatrixXcd(m / m.trace().real());
  };

  Eigen::MatrixXcd sigma = g / g.trace().real();
  Eigen::VectorXd q = probabilities(sigma);
  double ll = log_likelihood(q);

  ReconstructionResult out{DensityMatrix::maximally_mixed(std::vector<int>(static_cast<std::size_t>(n), 0)), 0, 0.0, false, {}};
  if (opt.keep_trace) out.log_likelihood_trace.push_back(ll);
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(d, d);

  int it = 0;
  bool converged = false;
  while (it < opt.max_iterations) {
    const Eigen::MatrixXcd r = phi * (f.array() / q.array()).matrix().asDiagonal() * phi.adjoint();
    std::optional<Eigen::MatrixXcd> accepted;
    Eigen::VectorXd q_new;
    double ll_new = ll;
    Eigen::MatrixXcd candidate = normalize(r * sigma * r);
    for (double eps = 1.0;; eps *= 0.5) {
      q_new = probabilities(candidate);
      ll_new = log_likelihood(q_new);
      if (ll_new >= ll) {
        accepted = std::move(candidate);
        break;
      }
      if (eps < 1e-12) break;
      const Eigen::MatrixXcd step = identity + eps * r;
      candidate = normalize(step * sigma * step);
    }
    if (!accepted) {
      converged = true;  // no ascent direction left at working precision
      break;
    }
    if (opt.extrapolate && ll_new > ll) {
      // Near rank-deficient optima the plain step shrinks like 1/k. R is
      // positive, so R^b sigma R^b stays a state; take the largest power
      // b = 2, 4, ... that keeps raising the likelihood.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> res(r);
      const Eigen::VectorXd rev = res.eigenvalues().cwiseMax(0.0);
      for (double beta = 2.0; beta <= opt.max_power; beta *= 2.0) {
        const Eigen::MatrixXcd rb = res.eigenvectors() * rev.array().pow(beta).matrix().asDiagonal() *
                                    res.eigenvectors().adjoint();
        const Eigen::MatrixXcd trial = normalize(rb * sigma * rb);
        const Eigen::VectorXd q_trial = probabilities(trial);
        const double ll_trial = log_likelihood(q_trial);
        if (!(ll_trial > ll_new)) break;
        accepted = trial;
        q_new = q_trial;
        ll_new = ll_trial;
      }
    }
    ++it;
    const double gain = ll_new - ll;
    sigma = std::move(*accepted);
    q = std::move(q_new);
    ll = ll_new;
    if (opt.keep_trace) out.log_likelihood_trace.push_back(ll);
    if (gain < opt.tolerance) {
      converged = true;
      break;
    }
  }

  std::vector<int> order = opt.qubit_order;
  if (order.empty()) {
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
  }
  if (order.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("imlm: qubit_order length mismatch");
  out.rho = DensityMatrix(normalize(g_isqrt * sigma * g_isqrt), std::move(order));
  out.iterations = it;
  out.log_likelihood = ll;
  out.converged = converged;
  return out;
}

inline ReconstructionResult imlm_reconstruct(const std::vector<CountRecord>& counts, const ImlmOptions& opt = {}) {
  std::vector<MeasurementSetting> settings;
  std::vector<double> obs;
  for (const auto& c : counts) {
    if (c.count < 0) throw std::invalid_argument("imlm: negative count for setting " + c.setting.to_string());
    settings.push_back(c.setting);
    obs.push_back(static_cast<double>(c.count));
  }
  return imlm_reconstruct(settings, obs, opt);
}

using Statistics = std::map<std::string, double>;

/// Parametric bootstrap: every count is redrawn from Poisson(observed), the
/// state is reconstructed again and `statistic` evaluated; returns the sample
/// standard deviation of each named statistic. Resample k uses
/// derive_seed(seed, k), so results do not depend on the thread count.
template <class StatisticFn>
Statistics bootstrap_errors(const std::vector<CountRecord>& counts, int n_resamples, std::uint64_t seed,
                            StatisticFn statistic, ImlmOptions opt = {}, unsigned threads = 0) {
  if (n_resamples < 2) throw std::invalid_argument("bootstrap_errors: need at least 2 resamples");
  opt.keep_trace = false;
  std::vector<Statistics> samples(static_cast<std::size_t>(n_resamples));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < n_resamples; k = next++) {
      std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
      std::vector<CountRecord> resampled = counts;
      std::int64_t total = 0;
      for (auto& c : resampled) {
        c.count = detail::draw_poisson(rng, static_cast<double>(c.count));
        total += c.count;
      }
      if (total == 0) resampled = counts;
      samples[static_cast<std::size_t>(k)] = statistic(imlm_reconstruct(resampled, opt).rho);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n_resamples));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  Statistics out;
  for (const auto& [name, unused] : samples.front()) {
    double mean = 0.0;
    for (const auto& s : samples) mean += s.at(name);
    mean /= n_resamples;
    double var = 0.0;
    for (const auto& s : samples) var += (s.at(name) - mean) * (s.at(name) - mean);
    out[name] = std::sqrt(var / (n_resamples - 1));
  }
  return out;
}

// Count files: CSV with header "setting_labels,count,seconds".

inline void write_counts_csv(std::ostream& os, const std::vector<CountRecord>& counts) {
  os << "setting_labels,count,seconds\n";
  os.precision(17);
  for (const auto& c : counts) os << c.setting.to_string() << ',' << c.count << ',' << c.seconds << '\n';
}

inline std::vector<CountRecord> read_counts_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("counts CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "setting_labels,count,seconds") throw std::invalid_argument("counts CSV: unexpected header '" + line + "'");
  std::vector<CountRecord> out;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string labels, count, seconds;
    if (!std::getline(ss, labels, ',') || !std::getline(ss, count, ',') || !std::getline(ss, seconds)) {
      throw std::invalid_argument("counts CSV line " + std::to_string(lineno) + ": expected 3 fields");
    }
    CountRecord r;
    try {
      r.setting = MeasurementSetting::from_string(labels);
      std::size_t pos = 0;
      r.count = std::stoll(count, &pos);
      if (pos != count.size() || r.count < 0) throw std::invalid_argument("bad count");
      r.seconds = std::stod(seconds);
    } catch (const std::exception& e) {
      throw std::invalid_argument("counts CSV line " + std::to_string(lineno) + ": " + e.what());
    }
    if (r.seconds > 0.0) r.rate = static_cast<double>(r.count) / r.seconds;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace wexpand
