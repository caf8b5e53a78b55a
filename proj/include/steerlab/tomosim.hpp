// Copyright 2026 The steerlab Authors
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

#ifndef STEERLAB_TOMOSIM_HPP
#define STEERLAB_TOMOSIM_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "steerlab/assemblage.hpp"
#include "steerlab/io.hpp"
#include "steerlab/lhs.hpp"

namespace steerlab {

enum class Pauli { kX = 0, kY = 1, kZ = 2 };
inline constexpr std::array<Pauli, 3> kPauliSettings{Pauli::kX, Pauli::kY, Pauli::kZ};

CMatrix pauli_matrix(Pauli p);
const char* to_string(Pauli p);

/// Outcome counts of one (a, x, setting) cell: Bob's result +1 and -1.
struct CellCounts {
    std::uint64_t plus = 0;
    std::uint64_t minus = 0;
    std::uint64_t total() const { return plus + minus; }
};

/// Simulated tomography of a qubit assemblage. For every input x and Pauli
/// setting s, `shots_per_setting` rounds are run: Alice's outcome a is drawn
/// with probability P(a|x), then Bob's +-1 result for s on rho_{a,x}.
struct TomographyRun {
    Assemblage true_assemblage;
    std::uint64_t shots_per_setting = 0;
    std::uint64_t seed = 0;
    std::vector<CellCounts> counts;  // index (x * o + a) * 3 + setting
    Assemblage reconstructed;
    double reconstruction_residual = 0.0;

    const CellCounts& cell(int a, int x, Pauli s) const;
};

/// Estimated outcome probabilities and Pauli expectation values per component.
struct TomographyStatistics {
    int n_inputs = 0;
    int n_outputs = 0;
    std::vector<double> probabilities;                // index x * o + a
    std::vector<std::array<double, 3>> expectations;  // index x * o + a, (X, Y, Z)
};

/// Fills counts only; deterministic given `seed`. Requires a qubit Bob side
/// and shots >= 1.
TomographyRun simulate_counts(const Assemblage& asm_, std::uint64_t shots, std::uint64_t seed);

/// Frequencies of a run. Throws InsufficientCounts if a cell has no shots.
TomographyStatistics statistics_from_counts(const TomographyRun& run);

/// Infinite-statistics limit: exact probabilities and expectation values.
TomographyStatistics exact_statistics(const Assemblage& asm_);

struct Reconstruction {
    Assemblage assemblage;
    Assemblage linear_inversion;  // before any repair
    double residual = 0.0;        // max entrywise change made by the repairs
};

/// Linear inversion, PSD projection of each component with its trace kept,
/// then a congruence that maps every input's marginal onto the average
/// marginal, so no-signalling holds and positivity is preserved.
Reconstruction reconstruct_from_statistics(const TomographyStatistics& stats);

Reconstruction reconstruct(const TomographyRun& run);

/// simulate_counts followed by reconstruct; fills the reconstructed fields.
TomographyRun run_tomography(const Assemblage& asm_, std::uint64_t shots, std::uint64_t seed);

struct SweepConfig {
    std::vector<double> alpha2_grid;
    std::uint64_t shots = 100000;
    std::uint64_t seed = 1;
    int replicas = 10;
    RobustnessFlavor flavor = RobustnessFlavor::kLhsNoise;
};

/// alpha2 values whose imbalance alpha^2 - beta^2 runs over
/// 0.1, 0.2, ..., 0.8, 0.81, 0.9.
std::vector<double> default_alpha2_grid();

struct SweepRow {
    double alpha2 = 0.0;
    double delta = 0.0;
    std::string curve;   // original | postselected | averaged
    std::string metric;  // fraction | robustness
    double exact = 0.0;
    double mean_reconstructed = 0.0;
    double stddev_reconstructed = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

/// Singlet fraction and robustness of the original, post-selected and
/// two-copy averaged assemblages at every grid point, exactly and from
/// `replicas` independent tomography runs. With replicas == 0 only the exact
/// columns are computed (reconstructed columns are NaN).
std::vector<SweepRow> figure3_sweep(const SweepConfig& config);

/// Columns: delta,curve,metric,exact,mean_reconstructed,stddev_reconstructed,shots,seed
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
Json sweep_to_json(const std::vector<SweepRow>& rows, const SweepConfig& config);

}  // namespace steerlab

#endif  // STEERLAB_TOMOSIM_HPP
