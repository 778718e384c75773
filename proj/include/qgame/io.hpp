// Copyright 2026 The qgame Authors
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

// File formats: game and state JSON documents, equilibrium reports, and the
// trajectory CSV consumed by plotting scripts.
//
// Complex matrices are stored as flat row-major arrays of [re, im] pairs.
// Doubles are written in the shortest form that parses back to the identical
// bit pattern, so a game survives write -> read -> write byte for byte.

#pragma once

#include "qgame/bloch.hpp"
#include "qgame/equilibria.hpp"
#include "qgame/games.hpp"
#include "qgame/learning.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace qgame {

class FormatError : public Error {
 public:
  using Error::Error;
};

using Json = nlohmann::json;

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return out;
}

inline ComplexMatrix matrix_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim * dim) {
    throw FormatError("expected " + std::to_string(dim * dim) + " [re, im] entries");
  }
  ComplexMatrix m(dim, dim);
  for (std::size_t k = 0; k < dim * dim; ++k) {
    const Json& e = j[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw FormatError("matrix entries must be [re, im] number pairs");
    }
    m(k / dim, k % dim) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

inline std::vector<std::size_t> dims_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("dims must be a non-empty array");
  std::vector<std::size_t> dims;
  for (const Json& d : j) {
    if (!d.is_number_unsigned()) throw FormatError("dims must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  return dims;
}

struct GameFile {
  std::string kind;  // general | zero_sum | polymatrix | classical | maxent
  QuantumGame game;
  std::optional<PolymatrixGame> polymatrix;
  std::optional<std::uint64_t> seed;
};

inline Json game_to_json(const GameFile& f) {
  Json j;
  j["kind"] = f.kind;
  j["dims"] = f.game.layout().dims();
  j["zero_sum"] = f.game.zero_sum();
  Json tensors = Json::array(), norms = Json::array();
  for (const auto& r : f.game.tensors()) {
    tensors.push_back(matrix_to_json(r.matrix()));
    norms.push_back(spectral_norm(r));
  }
  j["tensors"] = std::move(tensors);
  if (f.polymatrix) {
    Json edges = Json::array();
    for (const auto& e : f.polymatrix->edges()) {
      edges.push_back({{"i", e.i},
                       {"j", e.j},
                       {"r_ij", matrix_to_json(e.r_ij.matrix())},
                       {"r_ji", matrix_to_json(e.r_ji.matrix())}});
    }
    j["edges"] = std::move(edges);
  }
  if (f.seed) j["seed"] = *f.seed;
  j["spectral_norms"] = std::move(norms);
  return j;
}

inline GameFile game_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw FormatError("game document must be a JSON object");
    const std::string kind = j.at("kind").get<std::string>();
    const auto dims = dims_from_json(j.at("dims"));
    const RegisterLayout layout(dims);
    const Json& tj = j.at("tensors");
    if (!tj.is_array() || tj.size() != dims.size()) throw FormatError("one tensor per player required");
    std::vector<HermitianMatrix> tensors;
    for (const Json& t : tj) tensors.emplace_back(matrix_from_json(t, layout.joint_dim()));
    const bool zero_sum = j.value("zero_sum", kind == "zero_sum");

    std::optional<PolymatrixGame> polymatrix;
    if (j.contains("edges")) {
      std::vector<PolymatrixEdge> edges;
      for (const Json& e : j.at("edges")) {
        const auto i = e.at("i").get<std::size_t>(), jj = e.at("j").get<std::size_t>();
        if (i >= dims.size() || jj >= dims.size()) throw FormatError("edge endpoint out of range");
        const std::size_t dd = dims[i] * dims[jj];
        edges.push_back({i, jj, HermitianMatrix(matrix_from_json(e.at("r_ij"), dd)),
                         HermitianMatrix(matrix_from_json(e.at("r_ji"), dd))});
      }
      polymatrix.emplace(dims, std::move(edges));
      const QuantumGame lifted = polymatrix_to_qg(*polymatrix);
      for (std::size_t i = 0; i < dims.size(); ++i) {
        if (max_abs(lifted.tensor(i).matrix() - tensors[i].matrix()) > tol::kAlgebra) {
          throw FormatError("polymatrix edges do not match the stored utility tensors");
        }
      }
    }
    std::optional<std::uint64_t> seed;
    if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
    return GameFile{kind, QuantumGame(layout, std::move(tensors), zero_sum), std::move(polymatrix), seed};
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed game document: ") + e.what());
  }
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(what + ": " + e.what());
  }
}

inline GameFile load_game(const std::string& path) {
  return game_from_json(parse_json(read_file(path), path));
}

/// Joint state or product profile read from a state document:
///   {"dims": [...], "state": [[re, im], ...]}      joint density
///   {"dims": [...], "factors": [[...], [...]]}     one density per register
struct StateFile {
  std::vector<std::size_t> dims;
  std::optional<DensityMatrix> joint;
  std::vector<DensityMatrix> factors;

  DensityMatrix joint_state() const { return joint ? *joint : tensor_product(factors); }
};

inline StateFile state_from_json(const Json& j, double tolerance = tol::kLearned) {
  try {
    StateFile s;
    s.dims = dims_from_json(j.at("dims"));
    const RegisterLayout layout(s.dims);
    if (j.contains("state")) {
      s.joint.emplace(HermitianMatrix(matrix_from_json(j.at("state"), layout.joint_dim())), tolerance);
    } else {
      const Json& fj = j.at("factors");
      if (!fj.is_array() || fj.size() != s.dims.size()) throw FormatError("one factor per register required");
      for (std::size_t i = 0; i < s.dims.size(); ++i) {
        s.factors.emplace_back(HermitianMatrix(matrix_from_json(fj[i], s.dims[i])), tolerance);
      }
    }
    return s;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed state document: ") + e.what());
  } catch (const InvalidDensity& e) {
    throw FormatError(std::string("state document: ") + e.what());
  } catch (const NotHermitian& e) {
    throw FormatError(std::string("state document: ") + e.what());
  }
}

inline Json state_to_json(const std::vector<std::size_t>& dims, const DensityMatrix& joint) {
  return {{"dims", dims}, {"state", matrix_to_json(joint.matrix())}};
}

inline Json state_to_json(std::span<const DensityMatrix> factors) {
  Json dims = Json::array(), fj = Json::array();
  for (const auto& f : factors) {
    dims.push_back(f.dim());
    fj.push_back(matrix_to_json(f.matrix()));
  }
  return {{"dims", dims}, {"factors", fj}};
}

inline Json report_to_json(const EquilibriumReport& r) {
  Json gaps = Json::array();
  for (double g : r.gaps) {
    if (std::isfinite(g)) {
      gaps.push_back(g);
    } else {
      gaps.push_back(nullptr);
    }
  }
  Json j{{"certificate", std::string(to_string(r.kind))},
         {"gaps", gaps},
         {"tolerance", r.tolerance},
         {"verdict", r.verdict}};
  if (std::isfinite(r.max_gap)) {
    j["max_gap"] = r.max_gap;
  } else {
    j["max_gap"] = nullptr;
  }
  return j;
}

inline Json certificate_to_json(const ValueCertificate& c, double tolerance) {
  return {{"certificate", "zs_value"}, {"lower", c.lower},         {"value_at", c.value_at},
          {"upper", c.upper},          {"gap", c.gap()},           {"tolerance", tolerance},
          {"verdict", c.within(tolerance)}};
}

/// Real number with 17 significant digits.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

/// What the trajectory CSV reports as the headline exploitability and which
/// theoretical bound accompanies it.
struct CsvContext {
  SettingKind setting = SettingKind::general;
  std::vector<Schedule> schedules;  // per player
};

/// Multiplier turning the worst per-player regret bound into a bound on the
/// headline exploitability: the QCCE gap of the averaged joint state equals
/// the average regret; in two-player zero-sum games each player's QNE gap is
/// at most the sum of both regrets; in k-player polymatrix zero-sum games at
/// most k times the worst regret.
inline double exploitability_bound_factor(SettingKind setting, std::size_t players) {
  switch (setting) {
    case SettingKind::general: return 1.0;
    case SettingKind::zero_sum: return 2.0;
    case SettingKind::polymatrix: return static_cast<double>(players);
  }
  return 1.0;
}

inline std::vector<std::string> trajectory_csv_header(const RegisterLayout& layout) {
  std::vector<std::string> cols{"t"};
  const std::size_t k = layout.size();
  for (const char* prefix : {"u_", "regret_", "qcce_gap_", "qne_gap_"}) {
    for (std::size_t i = 0; i < k; ++i) cols.push_back(prefix + std::to_string(i));
  }
  cols.insert(cols.end(), {"exploitability", "regret_bound", "exploitability_bound"});
  for (std::size_t e = 0; e < layout.joint_dim(); ++e) cols.push_back("joint_eig_" + std::to_string(e));
  for (std::size_t i = 0; i < k; ++i) {
    if (layout.dim(i) != 2) continue;
    for (const char* prefix : {"bloch_", "avg_bloch_"}) {
      for (const char* axis : {"_x", "_y", "_z"}) cols.push_back(prefix + std::to_string(i) + axis);
    }
  }
  return cols;
}

/// One header row, then one row per checkpoint. LF line endings.
inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const CsvContext& ctx) {
  const auto& layout = traj.layout;
  const std::size_t k = layout.size();
  if (ctx.schedules.size() != k) throw InvalidArgument("write_trajectory_csv: one schedule per player");
  const auto header = trajectory_csv_header(layout);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  const double factor = exploitability_bound_factor(ctx.setting, k);
  for (const auto& cp : traj.checkpoints) {
    if (cp.qcce_gaps.size() != k || cp.qne_gaps.size() != k) {
      throw InvalidArgument("write_trajectory_csv: checkpoints lack equilibrium gaps");
    }
    std::vector<std::string> row{std::to_string(cp.t)};
    for (double v : cp.utilities) row.push_back(format_real(v));
    for (double v : cp.average_regret) row.push_back(format_real(v));
    for (double v : cp.qcce_gaps) row.push_back(format_real(v));
    for (double v : cp.qne_gaps) row.push_back(format_real(v));
    const auto& headline = ctx.setting == SettingKind::general ? cp.qcce_gaps : cp.qne_gaps;
    row.push_back(format_real(*std::max_element(headline.begin(), headline.end())));
    double bound = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      bound = std::max(bound, regret_bound(ctx.schedules[i], layout.dim(i), cp.t));
    }
    row.push_back(format_real(bound));
    row.push_back(format_real(factor * bound));
    for (Eigen::Index e = 0; e < cp.joint_eigenvalues.size(); ++e) {
      row.push_back(format_real(cp.joint_eigenvalues(e)));
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (layout.dim(i) != 2) continue;
      for (const auto& b : {bloch_coordinates(cp.strategies[i]), bloch_coordinates(cp.average_marginals[i])}) {
        row.push_back(format_real(b.x));
        row.push_back(format_real(b.y));
        row.push_back(format_real(b.z));
      }
    }
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }
}

inline std::string trajectory_csv(const Trajectory& traj, const CsvContext& ctx) {
  std::ostringstream ss;
  write_trajectory_csv(ss, traj, ctx);
  return ss.str();
}

}  // namespace qgame
