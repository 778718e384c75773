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

// Two MMWU players learn a random two-player zero-sum quantum game. The demo
// prints the value bracket [lambda_min(Theta^dagger(rho)), lambda_max(Theta(sigma))]
// of the time-averaged strategies as it closes around the game's value.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <vector>

#include "qgame/qgame.hpp"

int main(int argc, char** argv) {
  using namespace qgame;
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;
  const std::size_t rounds = 10000;

  const QuantumGame game = random_zero_sum_game(2, 2, seed);
  const TwoPlayerZeroSum zs = to_zero_sum(game);
  const Schedule schedule = Schedule::fixed(std::sqrt(std::log(2.0) / static_cast<double>(rounds)));

  std::vector<std::unique_ptr<Learner>> learners;
  learners.push_back(make_mmwu(0, 2, schedule));
  learners.push_back(make_mmwu(1, 2, schedule));
  const Trajectory traj = run_game(game, learners, rounds, seed, {1000, 0, false});

  std::printf("%8s %12s %12s %12s %12s\n", "t", "lower", "value_at", "upper", "gap");
  for (const auto& c : traj.checkpoints) {
    const ValueCertificate v = zs_certificate(zs, c.average_marginals[0], c.average_marginals[1]);
    std::printf("%8zu %12.6f %12.6f %12.6f %12.6f\n", c.t, v.lower, v.value_at, v.upper, v.gap());
  }

  const BlochCoords a = bloch_coordinates(traj.average_marginal(0));
  const BlochCoords b = bloch_coordinates(traj.average_marginal(1));
  std::printf("alice avg bloch (%.4f, %.4f, %.4f)\n", a.x, a.y, a.z);
  std::printf("bob   avg bloch (%.4f, %.4f, %.4f)\n", b.x, b.y, b.z);
  return 0;
}
