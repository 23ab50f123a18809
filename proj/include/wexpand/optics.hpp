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

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "wexpand/fock.hpp"
#include "wexpand/tolerances.hpp"

namespace wexpand {

/// Which reflected path picks up the minus sign.
enum class SignConvention { reflection_minus_on_out_a, reflection_minus_on_out_b };

/// Lossless two-port beamsplitter acting on spatial modes; polarization and
/// temporal labels pass through. Creation operators map as
///   a_in_a -> sqrt(T) a_out_a + r1 sqrt(1-T) a_out_b
///   a_in_b -> r2 sqrt(1-T) a_out_a + sqrt(T) a_out_b
/// with (r1, r2) = (+1, -1) for reflection_minus_on_out_a and (-1, +1) for
/// reflection_minus_on_out_b.
struct BeamsplitterSpec {
  int in_a = 0;
  int in_b = 1;
  int out_a = 2;
  int out_b = 3;
  double transmissivity = 0.5;
  SignConvention sign = SignConvention::reflection_minus_on_out_b;

  /// Rows are outputs (a, b), columns inputs (a, b).
  Eigen::Matrix2cd mode_matrix() const {
    const double t = std::sqrt(transmissivity);
    const double r = std::sqrt(1.0 - transmissivity);
    const double r1 = sign == SignConvention::reflection_minus_on_out_a ? 1.0 : -1.0;
    const double r2 = -r1;
    Eigen::Matrix2cd m;
    m << t, r2 * r,
         r1 * r, t;
    return m;
  }

  void validate() const {
    if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
      throw std::invalid_argument("beamsplitter: transmissivity " + std::to_string(transmissivity) +
                                  " outside [0, 1]");
    }
    if (in_a == in_b || out_a == out_b) throw std::invalid_argument("beamsplitter: repeated port id");
    if (in_a < 0 || in_b < 0 || out_a < 0 || out_b < 0) {
      throw std::invalid_argument("beamsplitter: negative spatial id");
    }
    const Eigen::Matrix2cd m = mode_matrix();
    if ((m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > tol::unitary) {
      throw std::invalid_argument("beamsplitter: mode matrix not unitary");
    }
  }
};

/// The beamsplitter that undoes `bs`: ports reversed, sign convention swapped.
inline BeamsplitterSpec inverse(const BeamsplitterSpec& bs) {
  BeamsplitterSpec r = bs;
  r.in_a = bs.out_a;
  r.in_b = bs.out_b;
  r.out_a = bs.in_a;
  r.out_b = bs.in_b;
  r.sign = bs.sign == SignConvention::reflection_minus_on_out_a ? SignConvention::reflection_minus_on_out_b
                                                                 : SignConvention::reflection_minus_on_out_a;
  return r;
}

inline PhotonicState apply_beamsplitter(const PhotonicState& state, const BeamsplitterSpec& bs) {
  bs.validate();
  const Eigen::Matrix2cd m = bs.mode_matrix();
  return transform_modes(state, [&](const ModeLabel& mode) -> std::optional<ModeImage> {
    int col;
    if (mode.spatial == bs.in_a) {
      col = 0;
    } else if (mode.spatial == bs.in_b) {
      col = 1;
    } else {
      return std::nullopt;
    }
    return ModeImage{{ModeLabel{bs.out_a, mode.pol, mode.bin}, m(0, col)},
                     {ModeLabel{bs.out_b, mode.pol, mode.bin}, m(1, col)}};
  });
}

/// 2x2 unitary on (H, V) at one spatial mode: column j is the image of basis
/// polarization j.
class JonesUnitary {
 public:
  explicit JonesUnitary(const Eigen::Matrix2cd& u) : u_(u) {
    if (!u_.allFinite() || (u_.adjoint() * u_ - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > tol::unitary) {
      throw std::invalid_argument("JonesUnitary: matrix is not unitary");
    }
  }

  static JonesUnitary identity() { return JonesUnitary(Eigen::Matrix2cd::Identity()); }

  /// Rotates linear polarization by `angle`; angle = pi/2 sends H to V.
  static JonesUnitary rotation(double angle) {
    Eigen::Matrix2cd u;
    u << std::cos(angle), -std::sin(angle),
         std::sin(angle), std::cos(angle);
    return JonesUnitary(u);
  }

  /// Half-wave plate with fast axis at `theta` from H.
  static JonesUnitary half_wave(double theta) {
    Eigen::Matrix2cd u;
    u << std::cos(2 * theta), std::sin(2 * theta),
         std::sin(2 * theta), -std::cos(2 * theta);
    return JonesUnitary(u);
  }

  /// Quarter-wave plate with fast axis at `theta` from H.
  static JonesUnitary quarter_wave(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex i{0.0, 1.0};
    Eigen::Matrix2cd u;
    u << c * c + i * s * s, (1.0 - i) * s * c,
         (1.0 - i) * s * c, s * s + i * c * c;
    return JonesUnitary(u);
  }

  /// Phase exp(i phi) on V only.
  static JonesUnitary phase_on_v(double phi) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    u(1, 1) = std::polar(1.0, phi);
    return JonesUnitary(u);
  }

  /// diag(1, -1): the pi phase on V used to undo a reflection sign.
  static JonesUnitary sign_flip_v() { return half_wave(0.0); }

  const Eigen::Matrix2cd& matrix() const { return u_; }

 private:
  Eigen::Matrix2cd u_;
};

inline PhotonicState apply_jones(const PhotonicState& state, int spatial, const JonesUnitary& ju) {
  const Eigen::Matrix2cd& u = ju.matrix();
  return transform_modes(state, [&](const ModeLabel& mode) -> std::optional<ModeImage> {
    if (mode.spatial != spatial) return std::nullopt;
    const int col = mode.pol == Polarization::H ? 0 : 1;
    return ModeImage{{ModeLabel{spatial, Polarization::H, mode.bin}, u(0, col)},
                     {ModeLabel{spatial, Polarization::V, mode.bin}, u(1, col)}};
  });
}

/// Moves photons at `spatial` partly into the orthogonal temporal bin so that
/// their overlap with undelayed photons is `overlap`.
inline PhotonicState apply_delay(const PhotonicState& state, int spatial, double overlap) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) {
    throw std::invalid_argument("apply_delay: overlap " + std::to_string(overlap) + " outside [0, 1]");
  }
  const double c = overlap;
  const double s = std::sqrt(1.0 - overlap * overlap);
  return transform_modes(state, [&](const ModeLabel& mode) -> std::optional<ModeImage> {
    if (mode.spatial != spatial) return std::nullopt;
    const ModeLabel p{spatial, mode.pol, TemporalBin::principal};
    const ModeLabel o{spatial, mode.pol, TemporalBin::orthogonal};
    if (mode.bin == TemporalBin::principal) return ModeImage{{p, c}, {o, s}};
    return ModeImage{{p, -s}, {o, c}};
  });
}

/// Gaussian mode overlap for a relative delay: peak * exp(-scale * (delay / l_c)^2).
inline double gaussian_overlap(double delay_um, double coherence_length_um, double exponent_scale = 0.5,
                               double peak = 1.0) {
  if (!(coherence_length_um > 0.0)) throw std::invalid_argument("gaussian_overlap: coherence length must be > 0");
  const double x = delay_um / coherence_length_um;
  return peak * std::exp(-exponent_scale * x * x);
}

// Circuits ----------------------------------------------------------------

struct JonesElement {
  int mode = 0;
  JonesUnitary unitary = JonesUnitary::identity();
};

struct DelayElement {
  int mode = 0;
  double overlap = 1.0;
};

using CircuitElement = std::variant<BeamsplitterSpec, JonesElement, DelayElement>;
using Circuit = std::vector<CircuitElement>;

inline PhotonicState apply_circuit(PhotonicState state, const Circuit& circuit) {
  for (const auto& element : circuit) {
    state = std::visit(
        [&](const auto& e) -> PhotonicState {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, BeamsplitterSpec>) {
            return apply_beamsplitter(state, e);
          } else if constexpr (std::is_same_v<T, JonesElement>) {
            return apply_jones(state, e.mode, e.unitary);
          } else {
            return apply_delay(state, e.mode, e.overlap);
          }
        },
        element);
  }
  return state;
}

inline std::string to_string(SignConvention s) {
  return s == SignConvention::reflection_minus_on_out_a ? "reflection_minus_on_out_a" : "reflection_minus_on_out_b";
}

inline SignConvention sign_convention_from_string(const std::string& s) {
  if (s == "reflection_minus_on_out_a") return SignConvention::reflection_minus_on_out_a;
  if (s == "reflection_minus_on_out_b") return SignConvention::reflection_minus_on_out_b;
  throw std::invalid_argument("unknown sign_convention '" + s + "'");
}

/// Ordered list of {kind, params} records.
inline nlohmann::json circuit_to_json(const Circuit& circuit) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& element : circuit) {
    if (const auto* bs = std::get_if<BeamsplitterSpec>(&element)) {
      out.push_back({{"kind", "beamsplitter"},
                     {"params",
                      {{"in_a", bs->in_a},
                       {"in_b", bs->in_b},
                       {"out_a", bs->out_a},
                       {"out_b", bs->out_b},
                       {"transmissivity", bs->transmissivity},
                       {"sign_convention", to_string(bs->sign)}}}});
    } else if (const auto* j = std::get_if<JonesElement>(&element)) {
      const auto& u = j->unitary.matrix();
      out.push_back({{"kind", "jones"},
                     {"params",
                      {{"mode", j->mode},
                       {"re", {{u(0, 0).real(), u(0, 1).real()}, {u(1, 0).real(), u(1, 1).real()}}},
                       {"im", {{u(0, 0).imag(), u(0, 1).imag()}, {u(1, 0).imag(), u(1, 1).imag()}}}}}});
    } else {
      const auto& d = std::get<DelayElement>(element);
      out.push_back({{"kind", "delay"}, {"params", {{"mode", d.mode}, {"overlap", d.overlap}}}});
    }
  }
  return out;
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("circuit JSON: expected an array of elements");
  Circuit circuit;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& e = j[k];
    const std::string where = "circuit element " + std::to_string(k);
    if (!e.contains("kind") || !e.contains("params")) throw std::invalid_argument(where + ": needs 'kind' and 'params'");
    const auto kind = e.at("kind").get<std::string>();
    const auto& p = e.at("params");
    try {
      if (kind == "beamsplitter") {
        BeamsplitterSpec bs;
        bs.in_a = p.at("in_a").get<int>();
        bs.in_b = p.at("in_b").get<int>();
        bs.out_a = p.at("out_a").get<int>();
        bs.out_b = p.at("out_b").get<int>();
        bs.transmissivity = p.value("transmissivity", 0.5);
        bs.sign = sign_convention_from_string(p.value("sign_convention", std::string("reflection_minus_on_out_b")));
        bs.validate();
        circuit.emplace_back(bs);
      } else if (kind == "jones") {
        const auto re = p.at("re").get<std::vector<std::vector<double>>>();
        const auto im = p.at("im").get<std::vector<std::vector<double>>>();
        if (re.size() != 2 || im.size() != 2 || re[0].size() != 2 || re[1].size() != 2 || im[0].size() != 2 ||
            im[1].size() != 2) {
          throw std::invalid_argument("jones matrix must be 2x2");
        }
        Eigen::Matrix2cd u;
        for (int r = 0; r < 2; ++r) {
          for (int c = 0; c < 2; ++c) u(r, c) = Complex(re[r][c], im[r][c]);
        }
        circuit.emplace_back(JonesElement{p.at("mode").get<int>(), JonesUnitary(u)});
      } else if (kind == "delay") {
        const double overlap = p.at("overlap").get<double>();
        if (!(overlap >= 0.0 && overlap <= 1.0)) throw std::invalid_argument("overlap outside [0, 1]");
        circuit.emplace_back(DelayElement{p.at("mode").get<int>(), overlap});
      } else {
        throw std::invalid_argument("unknown kind '" + kind + "'");
      }
    } catch (const nlohmann::json::exception& ex) {
      throw std::invalid_argument(where + ": " + ex.what());
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument(where + ": " + ex.what());
    }
  }
  return circuit;
}

}  // namespace wexpand
