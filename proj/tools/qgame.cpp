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

// Command-line front end: generate games, run learning dynamics, certify
// equilibria and run the maximally-entangled game demonstration.
//
// Exit codes: 0 success (or verdict true), 1 domain error or verdict false,
// 2 I/O error or malformed input file.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "qgame/qgame.hpp"

namespace fs = std::filesystem;

namespace qgame::cli {
namespace {

constexpr const char* kToolVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;

class IoError : public Error {
 public:
  using Error::Error;
};

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << bytes;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("invalid " + what + ": '" + text + "'");
  }
  if (pos != text.size() || text.empty() || text[0] == '-') {
    throw InvalidArgument("invalid " + what + ": '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw InvalidArgument("invalid " + what + ": '" + text + "'");
  }
  if (pos != text.size()) throw InvalidArgument("invalid " + what + ": '" + text + "'");
  return v;
}

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  for (const auto& item : split(text, ',')) dims.push_back(parse_count(item, "dimension"));
  if (dims.empty()) throw InvalidArgument("empty --dims");
  return dims;
}

/// cycleN, pathN, completeN, or an explicit edge list "0-1,1-2".
Graph parse_graph(const std::string& text) {
  for (const auto& [prefix, make] :
       std::vector<std::pair<std::string, Graph (*)(std::size_t)>>{
           {"cycle", cycle_graph}, {"path", path_graph}, {"complete", complete_graph}}) {
    if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size()) {
      return make(parse_count(text.substr(prefix.size()), "graph size"));
    }
  }
  Graph g;
  for (const auto& edge : split(text, ',')) {
    const auto ends = split(edge, '-');
    if (ends.size() != 2) throw InvalidArgument("invalid graph edge '" + edge + "'");
    g.emplace_back(parse_count(ends[0], "graph node"), parse_count(ends[1], "graph node"));
  }
  if (g.empty()) throw InvalidArgument("empty --graph");
  return g;
}

std::size_t graph_nodes(const Graph& g) {
  std::size_t n = 0;
  for (const auto& [i, j] : g) n = std::max({n, i + 1, j + 1});
  return n;
}

Schedule parse_schedule(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw InvalidArgument("empty --schedule");
  if (parts[0] == "fixed" && parts.size() == 2) return Schedule::fixed(parse_real(parts[1], "step size"));
  if (parts[0] == "doubling" && parts.size() == 1) return Schedule::doubling();
  if (parts[0] == "doubling" && parts.size() == 2) {
    return Schedule::doubling(parse_count(parts[1], "epoch length"));
  }
  throw InvalidArgument("invalid --schedule '" + text + "' (use fixed:ETA or doubling[:T0])");
}

// ---------------------------------------------------------------------------
// Game generation

struct GenOptions {
  std::string kind = "general";
  std::string dims = "2,2";
  std::string graph;
  bool pairwise_zero_sum = false;
  std::uint64_t seed = 0;
};

CLI::Option* add_gen_options(CLI::App* cmd, GenOptions& o, const std::string& seed_flag = "--seed") {
  cmd->add_option("--kind", o.kind, "general | zero-sum | polymatrix")
      ->check(CLI::IsMember({"general", "zero-sum", "polymatrix"}));
  cmd->add_option("--dims", o.dims, "register dimensions, e.g. 2,2 (one value is broadcast)");
  cmd->add_option("--graph", o.graph, "polymatrix graph: cycleN, pathN, completeN or 0-1,1-2");
  cmd->add_flag("--pairwise-zero-sum", o.pairwise_zero_sum,
                "polymatrix edges satisfy R_ji = -swap(R_ij)");
  return cmd->add_option(seed_flag, o.seed, "generator seed");
}

GameFile generate(const GenOptions& o) {
  GameSpec spec;
  spec.dims = parse_dims(o.dims);
  std::string kind = o.kind;
  if (o.kind == "general") {
    spec.kind = GameKind::general;
  } else if (o.kind == "zero-sum") {
    spec.kind = GameKind::zero_sum;
    kind = "zero_sum";
  } else {
    spec.kind = GameKind::polymatrix;
    if (o.graph.empty()) throw InvalidArgument("--kind polymatrix requires --graph");
    spec.graph = parse_graph(o.graph);
    spec.pairwise_zero_sum = o.pairwise_zero_sum;
    const std::size_t nodes = graph_nodes(spec.graph);
    if (spec.dims.size() == 1) spec.dims.assign(nodes, spec.dims.front());
    if (spec.dims.size() != nodes) throw InvalidArgument("--dims does not match the graph size");
  }
  if (spec.kind != GameKind::polymatrix && !o.graph.empty()) {
    throw InvalidArgument("--graph applies to polymatrix games only");
  }
  if (spec.kind != GameKind::polymatrix && o.pairwise_zero_sum) {
    throw InvalidArgument("--pairwise-zero-sum applies to polymatrix games only");
  }
  GeneratedGame gen = random_game(spec, o.seed);
  return GameFile{kind, std::move(gen.game), std::move(gen.polymatrix), o.seed};
}

int cmd_gen(const GenOptions& o, const std::string& out_path) {
  const GameFile f = generate(o);
  const std::string text = dump_json(game_to_json(f));
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Learning runs

struct RunOptions {
  std::string game_path;
  GenOptions gen;
  std::string learners = "mmwu";
  std::string schedule;
  std::optional<std::size_t> rounds;
  std::optional<double> epsilon;
  std::uint64_t seed = 0;
  std::optional<std::size_t> stride;
  std::string out_dir;
  std::size_t runs = 1;
};

SettingKind setting_of(const GameFile& f) {
  if (f.polymatrix && f.game.zero_sum()) return SettingKind::polymatrix;
  if (f.game.players() == 2 && f.game.zero_sum()) return SettingKind::zero_sum;
  return SettingKind::general;
}

std::string setting_name(SettingKind s) {
  switch (s) {
    case SettingKind::general: return "general";
    case SettingKind::zero_sum: return "zero_sum";
    case SettingKind::polymatrix: return "polymatrix";
  }
  return "general";
}

struct RunPlan {
  std::vector<std::string> learner_kinds;
  Schedule schedule = Schedule::doubling();
  std::size_t rounds = 0;
  std::size_t stride = 1;
  std::optional<double> epsilon;
};

RunPlan plan_run(const RunOptions& o, const GameFile& f) {
  RunPlan plan;
  const std::size_t k = f.game.players();
  plan.learner_kinds = split(o.learners, ',');
  if (plan.learner_kinds.size() == 1) plan.learner_kinds.assign(k, plan.learner_kinds.front());
  if (plan.learner_kinds.size() != k) throw InvalidArgument("--learners must list one kind or one per player");
  for (const auto& kind : plan.learner_kinds) {
    if (kind != "mmwu" && kind != "ftrl") throw InvalidArgument("unknown learner kind '" + kind + "'");
  }
  if (o.rounds.has_value() == o.epsilon.has_value()) {
    throw InvalidArgument("specify exactly one of --T and --epsilon");
  }
  if (o.rounds) {
    if (*o.rounds == 0) throw InvalidArgument("--T must be at least 1");
    plan.rounds = *o.rounds;
    plan.schedule = o.schedule.empty() ? Schedule::doubling() : parse_schedule(o.schedule);
  } else {
    if (!o.schedule.empty()) throw InvalidArgument("--epsilon fixes the step size; drop --schedule");
    std::size_t dim = 0;
    for (std::size_t d : f.game.layout().dims()) dim = std::max(dim, d);
    const Horizon h = horizon_for_epsilon({setting_of(f), dim, k}, *o.epsilon);
    plan.rounds = h.steps;
    plan.schedule = Schedule::fixed(h.eta);
    plan.epsilon = o.epsilon;
  }
  plan.stride = o.stride ? *o.stride : std::max<std::size_t>(1, plan.rounds / 1000);
  if (plan.stride == 0) throw InvalidArgument("--stride must be at least 1");
  return plan;
}

std::vector<std::unique_ptr<Learner>> make_learners(const GameFile& f, const RunPlan& plan) {
  std::vector<std::unique_ptr<Learner>> out;
  for (std::size_t i = 0; i < f.game.players(); ++i) {
    const std::size_t d = f.game.layout().dim(i);
    out.push_back(plan.learner_kinds[i] == "mmwu" ? make_mmwu(i, d, plan.schedule)
                                                   : make_ftrl(i, d, plan.schedule));
  }
  return out;
}

struct RunJob {
  std::size_t index;
  GameFile game;
  std::string game_bytes;
  std::uint64_t run_seed;
  fs::path dir;
};

void execute_job(const RunJob& job, const RunPlan& plan) {
  const auto learners = make_learners(job.game, plan);
  const Trajectory traj = run_game(job.game.game, learners, plan.rounds, job.run_seed,
                                   {plan.stride, 0, true});
  const SettingKind setting = setting_of(job.game);
  const CsvContext ctx{setting, std::vector<Schedule>(job.game.game.players(), plan.schedule)};

  Json manifest;
  manifest["tool_version"] = kToolVersion;
  manifest["game_hash"] = sha256_hex(job.game_bytes);
  manifest["game_file"] = "game.json";
  Json seeds;
  seeds["run"] = job.run_seed;
  if (job.game.seed) seeds["game"] = *job.game.seed;
  manifest["seeds"] = seeds;
  manifest["learners"] = plan.learner_kinds;
  manifest["schedule"] = plan.schedule.describe();
  manifest["T"] = plan.rounds;
  manifest["stride"] = plan.stride;
  manifest["setting"] = setting_name(setting);
  if (plan.epsilon) manifest["epsilon"] = *plan.epsilon;
  const auto& last = traj.checkpoints.back();
  const auto& headline = setting == SettingKind::general ? last.qcce_gaps : last.qne_gaps;
  manifest["final_exploitability"] = *std::max_element(headline.begin(), headline.end());

  ensure_directory(job.dir);
  write_file(job.dir / "game.json", job.game_bytes);
  write_file(job.dir / "trajectory.csv", trajectory_csv(traj, ctx));
  write_file(job.dir / "manifest.json", dump_json(manifest));
}

std::size_t thread_cap() {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QG_THREADS")) {
    try {
      cap = std::max<std::size_t>(1, parse_count(env, "QG_THREADS"));
    } catch (const InvalidArgument&) {
      std::cerr << "warning: ignoring invalid QG_THREADS='" << env << "'\n";
    }
  }
  return cap;
}

int cmd_run(const RunOptions& o) {
  if (o.out_dir.empty()) throw InvalidArgument("--out is required");
  if (o.runs == 0) throw InvalidArgument("--runs must be at least 1");

  std::vector<RunJob> jobs;
  for (std::size_t r = 0; r < o.runs; ++r) {
    std::string bytes;
    std::optional<GameFile> game;
    if (!o.game_path.empty()) {
      bytes = read_file(o.game_path);
      game.emplace(game_from_json(parse_json(bytes, o.game_path)));
    } else {
      GenOptions gen = o.gen;
      gen.seed = o.gen.seed + r;
      game.emplace(generate(gen));
      bytes = dump_json(game_to_json(*game));
    }
    char name[32];
    std::snprintf(name, sizeof name, "run_%03zu", r);
    const fs::path dir = o.runs == 1 ? fs::path(o.out_dir) : fs::path(o.out_dir) / name;
    jobs.push_back(RunJob{r, std::move(*game), std::move(bytes), o.seed + r, dir});
  }
  const RunPlan plan = plan_run(o, jobs.front().game);
  for (const auto& job : jobs) {
    if (job.game.game.players() != jobs.front().game.game.players()) {
      throw InvalidArgument("all runs must have the same player count");
    }
  }

  // Each run owns its learners and writes only its own directory, so the
  // outputs do not depend on how runs are interleaved.
  const std::size_t workers = std::min(thread_cap(), jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        execute_job(jobs[j], plan);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  for (const auto& job : jobs) std::cout << (job.dir / "trajectory.csv").string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Certification

int cmd_verify(const std::string& game_path, const std::string& state_path, const std::string& kind,
               double tolerance) {
  const GameFile f = load_game(game_path);
  const StateFile s = state_from_json(parse_json(read_file(state_path), state_path));
  if (s.dims != f.game.layout().dims()) throw InvalidArgument("state dims do not match the game");

  Json out;
  bool verdict = false;
  if (kind == "qcce") {
    const EquilibriumReport r = is_qcce(f.game, s.joint_state(), tolerance);
    out = report_to_json(r);
    verdict = r.verdict;
  } else if (kind == "qne") {
    const EquilibriumReport r = s.joint ? is_qne(f.game, *s.joint, tolerance)
                                        : is_qne(f.game, std::span<const DensityMatrix>(s.factors), tolerance);
    out = report_to_json(r);
    verdict = r.verdict;
  } else {
    if (!f.game.zero_sum() || f.game.players() != 2) {
      throw InvalidArgument("zs-value needs a two-player zero-sum game");
    }
    if (s.joint) throw InvalidArgument("zs-value needs a product state given as factors");
    const ValueCertificate c = zs_certificate(to_zero_sum(f.game), s.factors[0], s.factors[1]);
    out = certificate_to_json(c, tolerance);
    verdict = c.within(tolerance);
  }
  std::cout << dump_json(out);
  return verdict ? kExitOk : kExitDomain;
}

// ---------------------------------------------------------------------------
// Maximally-entangled game demonstration

Eigen::MatrixXd parse_payoff(const std::string& text) {
  const auto items = split(text, ',');
  if (items.size() != 4) throw InvalidArgument("payoff matrices must be 2x2: give 4 comma-separated entries");
  Eigen::MatrixXd m(2, 2);
  for (std::size_t e = 0; e < 4; ++e) m(e / 2, e % 2) = parse_real(items[e], "payoff entry");
  if (!m.allFinite()) throw InvalidArgument("payoff entries must be finite");
  return m;
}

int cmd_maxent(const std::string& a_text, const std::string& b_text) {
  const Eigen::MatrixXd a = parse_payoff(a_text);
  const Eigen::MatrixXd b = b_text.empty() ? a : parse_payoff(b_text);
  const ClassicalBimatrix bm{a, b};
  const QuantumGame g = maxent_game(bm);

  // The pure Bell state e_pq is a QCCE iff a_pq and b_pq both reach the
  // payoff means; this picks the entry maximizing player 1's payoff.
  Eigen::Index p = 0, q = 0;
  a.maxCoeff(&p, &q);
  Eigen::Matrix2d point = Eigen::Matrix2d::Zero();
  point(p, q) = 1.0;
  const DensityMatrix bell = bell_state(static_cast<std::size_t>(p), static_cast<std::size_t>(q));
  const EquilibriumReport report = is_qcce(g, bell, 1e-8);
  const PptResult ppt = ppt_witness(bell, 2, 2);
  const bool scalar = maxent_qcce_condition(bm, point);

  const Eigen::Matrix2d uniform = Eigen::Matrix2d::Constant(0.25);
  const EquilibriumReport uniform_report = is_qcce(g, bell_mixture(uniform), 1e-8);
  const bool uniform_scalar = maxent_qcce_condition(bm, uniform);

  Eigen::Index pmin = 0, qmin = 0;
  a.minCoeff(&pmin, &qmin);
  Eigen::Matrix2d at_min = Eigen::Matrix2d::Zero();
  at_min(pmin, qmin) = 1.0;
  const bool min_scalar = maxent_qcce_condition(bm, at_min);
  const bool min_spectral =
      is_qcce(g, bell_state(static_cast<std::size_t>(pmin), static_cast<std::size_t>(qmin)), 1e-8).verdict;

  Json out;
  out["bell_state"] = {p, q};
  out["qcce"] = report_to_json(report);
  out["ppt"] = {{"verdict", ppt.verdict == PptVerdict::entangled ? "entangled" : "inconclusive"},
                {"min_eigenvalue", ppt.min_eigenvalue}};
  out["scalar_condition"] = scalar;
  out["scalar_agrees"] = scalar == report.verdict;
  out["uniform_mixture"] = {{"qcce", report_to_json(uniform_report)}, {"scalar_condition", uniform_scalar}};
  out["argmin_entry"] = {{"bell_state", {pmin, qmin}},
                         {"scalar_condition", min_scalar},
                         {"qcce_verdict", min_spectral},
                         {"note", "the pure Bell state at a below-mean entry is not a QCCE; "
                                  "the certified state sits at the maximum entry"}};
  std::cout << dump_json(out);
  const bool ok = report.verdict && ppt.verdict == PptVerdict::entangled && scalar == report.verdict &&
                  uniform_report.verdict && min_scalar == min_spectral;
  return ok ? kExitOk : kExitDomain;
}

// ---------------------------------------------------------------------------

int cmd_horizon(const std::string& setting, std::size_t dim, std::size_t players, double eps) {
  HorizonSetting s{SettingKind::general, dim, players};
  if (setting == "zero-sum") s.kind = SettingKind::zero_sum;
  if (setting == "polymatrix") s.kind = SettingKind::polymatrix;
  const Horizon h = horizon_for_epsilon(s, eps);
  std::cout << dump_json(Json{{"eta", h.eta}, {"T", h.steps}});
  return kExitOk;
}

int main_impl(int argc, char** argv) {
  CLI::App app{"qgame: learning and certifying equilibria in quantum games"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  GenOptions gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random normalized game");
  add_gen_options(gen_cmd, gen);
  gen_cmd->add_option("--out", gen_out, "output path (default: stdout)");

  RunOptions run;
  std::size_t rounds = 0;
  double run_eps = 0.0;
  auto* run_cmd = app.add_subcommand("run", "run learning dynamics and write trajectory.csv + manifest.json");
  run_cmd->add_option("--game", run.game_path, "game JSON file (otherwise generated from the flags below)");
  auto* game_seed_opt = add_gen_options(run_cmd, run.gen, "--game-seed");
  game_seed_opt->description("generator seed (default: --seed)");
  run_cmd->add_option("--learners", run.learners, "mmwu | ftrl, one value or one per player");
  run_cmd->add_option("--schedule", run.schedule, "fixed:ETA | doubling[:T0] (default doubling)");
  auto* t_opt = run_cmd->add_option("--T", rounds, "number of rounds");
  auto* eps_opt = run_cmd->add_option("--epsilon", run_eps, "target epsilon; sets step size and horizon");
  run_cmd->add_option("--seed", run.seed, "run seed (run i uses seed + i)");
  std::size_t stride = 0;
  auto* stride_opt = run_cmd->add_option("--stride", stride, "checkpoint stride (default max(1, T/1000))");
  run_cmd->add_option("--out", run.out_dir, "output directory")->required();
  run_cmd->add_option("--runs", run.runs, "independent runs; generated games use seed + i");

  std::string verify_game, verify_state, verify_kind = "qcce";
  double verify_tol = tol::kLearned;
  auto* verify_cmd = app.add_subcommand("verify", "certify a state; exit 0 iff the verdict is true");
  verify_cmd->add_option("--game", verify_game, "game JSON file")->required();
  verify_cmd->add_option("--state", verify_state, "state JSON file")->required();
  verify_cmd->add_option("--kind", verify_kind, "qne | qcce | zs-value")
      ->check(CLI::IsMember({"qne", "qcce", "zs-value"}));
  verify_cmd->add_option("--tol", verify_tol, "tolerance (zs-value: epsilon, gap <= 2 epsilon)");

  std::string maxent_a, maxent_b;
  auto* maxent_cmd = app.add_subcommand("maxent", "maximally-entangled game demonstration");
  maxent_cmd->add_option("--a", maxent_a, "player 1 payoffs a00,a01,a10,a11")->required();
  maxent_cmd->add_option("--b", maxent_b, "player 2 payoffs (default: common payoff)");

  std::string horizon_setting = "general";
  std::size_t horizon_dim = 2, horizon_players = 2;
  double horizon_eps = 0.0;
  auto* horizon_cmd = app.add_subcommand("horizon", "step size and horizon for a target epsilon");
  horizon_cmd->add_option("--setting", horizon_setting, "general | zero-sum | polymatrix")
      ->check(CLI::IsMember({"general", "zero-sum", "polymatrix"}));
  horizon_cmd->add_option("--dim", horizon_dim, "register dimension");
  horizon_cmd->add_option("--players", horizon_players, "player count (polymatrix)");
  horizon_cmd->add_option("--epsilon", horizon_eps, "target epsilon")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitDomain;
  }

  if (*gen_cmd) return cmd_gen(gen, gen_out);
  if (*run_cmd) {
    if (t_opt->count() > 0) run.rounds = rounds;
    if (eps_opt->count() > 0) run.epsilon = run_eps;
    if (stride_opt->count() > 0) run.stride = stride;
    if (game_seed_opt->count() == 0) run.gen.seed = run.seed;
    if (!run.game_path.empty()) {
      for (const char* flag : {"--kind", "--dims", "--graph", "--pairwise-zero-sum"}) {
        if (run_cmd->count(flag) > 0) {
          throw InvalidArgument(std::string(flag) + " cannot be combined with --game");
        }
      }
    }
    return cmd_run(run);
  }
  if (*verify_cmd) return cmd_verify(verify_game, verify_state, verify_kind, verify_tol);
  if (*maxent_cmd) return cmd_maxent(maxent_a, maxent_b);
  if (*horizon_cmd) return cmd_horizon(horizon_setting, horizon_dim, horizon_players, horizon_eps);
  return kExitDomain;
}

}  // namespace
}  // namespace qgame::cli

int main(int argc, char** argv) {
  using namespace qgame;
  try {
    return cli::main_impl(argc, argv);
  } catch (const cli::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitIo;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitDomain;
  }
}
