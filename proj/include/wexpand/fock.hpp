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
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wexpand/density_matrix.hpp"
#include "wexpand/tolerances.hpp"

namespace wexpand {

enum class Polarization : std::uint8_t { H = 0, V = 1 };

/// Two temporal bins are enough to model pairwise partial distinguishability.
enum class TemporalBin : std::uint8_t { principal = 0, orthogonal = 1 };

/// A single bosonic mode. Ordered by spatial id, then polarization, then bin.
struct ModeLabel {
  int spatial = 0;
  Polarization pol = Polarization::H;
  TemporalBin bin = TemporalBin::principal;

  auto operator<=>(const ModeLabel&) const = default;
};

inline std::string to_string(const ModeLabel& m) {
  std::string s = std::to_string(m.spatial);
  s += m.pol == Polarization::H ? 'H' : 'V';
  if (m.bin == TemporalBin::orthogonal) s += '\'';
  return s;
}

/// Occupation-number basis vector. Modes with zero photons are never stored.
class FockBasisVector {
 public:
  FockBasisVector() = default;

  int occupation(const ModeLabel& m) const {
    auto it = occ_.find(m);
    return it == occ_.end() ? 0 : it->second;
  }

  int total_photons() const {
    int n = 0;
    for (const auto& [m, k] : occ_) n += k;
    return n;
  }

  int photons_in(int spatial) const {
    int n = 0;
    for (const auto& [m, k] : occ_) {
      if (m.spatial == spatial) n += k;
    }
    return n;
  }

  const std::map<ModeLabel, int>& occupations() const { return occ_; }

  FockBasisVector with_change(const ModeLabel& m, int delta) const {
    FockBasisVector r = *this;
    const int n = occupation(m) + delta;
    if (n < 0) throw std::logic_error("FockBasisVector: negative occupation at " + to_string(m));
    if (n == 0) {
      r.occ_.erase(m);
    } else {
      r.occ_[m] = n;
    }
    return r;
  }

  auto operator<=>(const FockBasisVector&) const = default;
  bool operator==(const FockBasisVector&) const = default;

 private:
  std::map<ModeLabel, int> occ_;
};

/// Sparse superposition of Fock basis vectors. Default-constructed is the
/// zero vector; use vacuum() for |vac>.
class PhotonicState {
 public:
  using Terms = std::map<FockBasisVector, Complex>;

  PhotonicState() = default;

  static PhotonicState vacuum() { return basis(FockBasisVector{}); }

  static PhotonicState basis(const FockBasisVector& b, Complex amplitude = 1.0) {
    PhotonicState s;
    s.add(b, amplitude);
    return s;
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Complex amplitude(const FockBasisVector& b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Complex{} : it->second;
  }

  void add(const FockBasisVector& b, Complex amplitude) {
    auto [it, inserted] = terms_.try_emplace(b, amplitude);
    if (!inserted) it->second += amplitude;
  }

  PhotonicState& operator+=(const PhotonicState& o) {
    for (const auto& [b, a] : o.terms_) add(b, a);
    return *this;
  }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& [b, a] : terms_) s += std::norm(a);
    return s;
  }
  double norm() const { return std::sqrt(norm_squared()); }

  PhotonicState scaled(Complex c) const {
    PhotonicState r;
    for (const auto& [b, a] : terms_) r.terms_.emplace(b, a * c);
    return r.pruned();
  }

  PhotonicState normalized() const {
    const double n = norm();
    if (n <= 0.0) throw std::domain_error("PhotonicState::normalized: zero state");
    return scaled(1.0 / n);
  }

  PhotonicState pruned(double threshold = tol::amplitude_prune) const {
    PhotonicState r;
    for (const auto& [b, a] : terms_) {
      if (std::abs(a) >= threshold) r.terms_.emplace(b, a);
    }
    return r;
  }

  std::set<int> spatial_modes() const {
    std::set<int> out;
    for (const auto& [b, a] : terms_) {
      for (const auto& [m, k] : b.occupations()) out.insert(m.spatial);
    }
    return out;
  }

  /// True when the given spatial mode holds no photon in any term.
  bool is_vacuum_at(int spatial) const {
    for (const auto& [b, a] : terms_) {
      if (b.photons_in(spatial) > 0) return false;
    }
    return true;
  }

 private:
  Terms terms_;
};

inline PhotonicState apply_creation(const PhotonicState& state, const ModeLabel& mode) {
  if (mode.spatial < 0) throw std::invalid_argument("apply_creation: negative spatial id");
  PhotonicState r;
  for (const auto& [b, a] : state.terms()) {
    const int n = b.occupation(mode);
    r.add(b.with_change(mode, +1), a * std::sqrt(static_cast<double>(n + 1)));
  }
  return r.pruned();
}

inline PhotonicState apply_annihilation(const PhotonicState& state, const ModeLabel& mode) {
  PhotonicState r;
  for (const auto& [b, a] : state.terms()) {
    const int n = b.occupation(mode);
    if (n == 0) continue;
    r.add(b.with_change(mode, -1), a * std::sqrt(static_cast<double>(n)));
  }
  return r.pruned();
}

/// <a|b>, conjugate-linear in a.
inline Complex inner_product(const PhotonicState& a, const PhotonicState& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  Complex s{};
  for (const auto& [basis, amp] : small.terms()) {
    const Complex other = large.amplitude(basis);
    s += (&small == &a) ? std::conj(amp) * other : std::conj(other) * amp;
  }
  return s;
}

/// Product of states living on disjoint spatial modes.
inline PhotonicState tensor(const PhotonicState& a, const PhotonicState& b) {
  const auto ma = a.spatial_modes();
  for (int m : b.spatial_modes()) {
    if (ma.count(m)) {
      throw std::logic_error("tensor: both factors occupy spatial mode " + std::to_string(m));
    }
  }
  PhotonicState r;
  for (const auto& [ba, xa] : a.terms()) {
    for (const auto& [bb, xb] : b.terms()) {
      FockBasisVector merged = ba;
      for (const auto& [m, k] : bb.occupations()) merged = merged.with_change(m, k);
      r.add(merged, xa * xb);
    }
  }
  return r.pruned();
}

/// One term of a creation-operator image: a^dag_in -> sum coefficient * a^dag_out.
using ModeImage = std::vector<std::pair<ModeLabel, Complex>>;

/// Lifts a linear map on creation operators to the Fock space. `map` returns
/// the image of a mode, or std::nullopt to leave it untouched. Each basis term
/// is rewritten as prod (a^dag)^n / sqrt(n!) |vac> and re-expanded.
template <class ModeMap>
PhotonicState transform_modes(const PhotonicState& state, ModeMap&& map) {
  PhotonicState out;
  for (const auto& [basis, amp] : state.terms()) {
    double factorial = 1.0;
    for (const auto& [m, n] : basis.occupations()) factorial *= std::tgamma(n + 1.0);
    PhotonicState partial = PhotonicState::vacuum().scaled(amp / std::sqrt(factorial));
    for (const auto& [m, n] : basis.occupations()) {
      const std::optional<ModeImage> image = map(m);
      for (int k = 0; k < n; ++k) {
        if (!image) {
          partial = apply_creation(partial, m);
          continue;
        }
        PhotonicState next;
        for (const auto& [target, c] : *image) {
          if (c == Complex{}) continue;
          next += apply_creation(partial, target).scaled(c);
        }
        partial = next.pruned();
      }
    }
    out += partial;
  }
  return out.pruned();
}

/// Qubit branches retained by post-selection, keyed by everything that is
/// traced out: the temporal bins of the qubit photons and the full
/// occupation of any herald modes.
struct PostselectedBranches {
  struct Key {
    std::vector<TemporalBin> bins;
    FockBasisVector herald;
    auto operator<=>(const Key&) const = default;
  };
  std::vector<int> qubit_order;
  std::map<Key, Eigen::VectorXcd> branches;  // unnormalized amplitude vectors
  double probability = 0.0;
};

/// Keeps terms with exactly one photon in each qubit mode, at least one photon
/// in each herald mode, and no photon anywhere else.
inline PostselectedBranches postselect_branches(const PhotonicState& state,
                                                const std::vector<int>& qubit_modes,
                                                const std::vector<int>& herald_modes = {}) {
  if (qubit_modes.empty()) throw std::invalid_argument("postselect: empty mode list");
  std::set<int> seen;
  for (int m : qubit_modes) {
    if (!seen.insert(m).second) throw std::invalid_argument("postselect: repeated mode " + std::to_string(m));
  }
  for (int m : herald_modes) {
    if (!seen.insert(m).second) throw std::invalid_argument("postselect: herald mode " + std::to_string(m) + " repeated");
  }
  const int n = static_cast<int>(qubit_modes.size());
  const Eigen::Index d = Eigen::Index{1} << n;

  PostselectedBranches out;
  out.qubit_order = qubit_modes;
  for (const auto& [basis, amp] : state.terms()) {
    bool keep = true;
    for (int m : qubit_modes) keep = keep && basis.photons_in(m) == 1;
    for (int m : herald_modes) keep = keep && basis.photons_in(m) >= 1;
    if (!keep) continue;

    PostselectedBranches::Key key;
    key.bins.assign(static_cast<std::size_t>(n), TemporalBin::principal);
    Eigen::Index index = 0;
    for (const auto& [mode, count] : basis.occupations()) {
      auto q = std::find(qubit_modes.begin(), qubit_modes.end(), mode.spatial);
      if (q != qubit_modes.end()) {
        const auto k = static_cast<int>(q - qubit_modes.begin());
        key.bins[static_cast<std::size_t>(k)] = mode.bin;
        if (mode.pol == Polarization::V) index |= Eigen::Index{1} << (n - 1 - k);
      } else if (std::find(herald_modes.begin(), herald_modes.end(), mode.spatial) != herald_modes.end()) {
        key.herald = key.herald.with_change(mode, count);
      } else {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    auto [it, inserted] = out.branches.try_emplace(key, Eigen::VectorXcd::Zero(d));
    it->second(index) += amp;
    out.probability += std::norm(amp);
  }
  return out;
}

struct PostselectionResult {
  std::optional<DensityMatrix> rho;  // empty when nothing survives
  double probability = 0.0;

  bool accepted() const { return rho.has_value(); }
};

/// Projects onto one photon per listed spatial mode and traces out the
/// temporal bins (and herald-mode contents). The density matrix is
/// renormalized; `probability` is the retained squared norm.
inline PostselectionResult postselect_qubits(const PhotonicState& state,
                                             const std::vector<int>& qubit_modes,
                                             const std::vector<int>& herald_modes = {}) {
  const PostselectedBranches pb = postselect_branches(state, qubit_modes, herald_modes);
  PostselectionResult r;
  r.probability = pb.probability;
  if (pb.probability < tol::empty_postselection) return r;
  const Eigen::Index d = Eigen::Index{1} << qubit_modes.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& [key, psi] : pb.branches) m += psi * psi.adjoint();
  r.rho.emplace(m / pb.probability, qubit_modes);
  return r;
}

/// Probability that threshold (non-number-resolving) detectors on every listed
/// spatial mode fire together; other modes are ignored.
inline double coincidence_probability(const PhotonicState& state, const std::vector<int>& modes) {
  double p = 0.0;
  for (const auto& [basis, amp] : state.terms()) {
    bool all = true;
    for (int m : modes) all = all && basis.photons_in(m) > 0;
    if (all) p += std::norm(amp);
  }
  return p;
}

/// Photonic embedding of a polarization-qubit state: one photon per mode,
/// qubit k carried by spatial mode modes[k].
inline PhotonicState embed_qubits(const Eigen::VectorXcd& psi, const std::vector<int>& modes) {
  const int n = static_cast<int>(modes.size());
  if (psi.size() != (Eigen::Index{1} << n)) throw std::invalid_argument("embed_qubits: dimension mismatch");
  PhotonicState s;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (psi(i) == Complex{}) continue;
    FockBasisVector b;
    for (int k = 0; k < n; ++k) {
      const auto pol = ((i >> (n - 1 - k)) & 1) ? Polarization::V : Polarization::H;
      b = b.with_change(ModeLabel{modes[static_cast<std::size_t>(k)], pol, TemporalBin::principal}, +1);
    }
    s.add(b, psi(i));
  }
  return s.pruned();
}

}  // namespace wexpand
