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

#ifndef STEERLAB_LHS_HPP
#define STEERLAB_LHS_HPP

#include <optional>
#include <vector>

#include "steerlab/assemblage.hpp"

namespace steerlab {

/// Largest number of deterministic strategies (o^m) the LHS programs accept.
inline constexpr int kMaxStrategies = 64;

/// Deterministic response function lambda: x -> a, for all o^m functions.
/// Strategy l answers input x with digit x of l in base o, input 0 being the
/// most significant digit.
int strategy_output(int strategy, int x, int n_inputs, int n_outputs);

/// Local-hidden-state decomposition sigma_{a|x} = sum_l D_l(a|x) weights[l]
/// over deterministic strategies, with PSD weights.
struct LhsModel {
    int n_inputs = 0;
    int n_outputs = 0;
    std::vector<HermMat> weights;  // one per strategy

    Assemblage reconstruct(int dim) const;
};

enum class RobustnessFlavor {
    kLhsNoise,          // noise must itself admit an LHS model
    kGeneralizedNoise,  // any valid assemblage as noise
};

struct RobustnessResult {
    RobustnessFlavor flavor = RobustnessFlavor::kLhsNoise;
    double t_star = 0.0;
    double dual_bound = 0.0;  // lower bound on t_star from the dual solution
    LhsModel certificate;     // model of (sigma + t xi) / (1 + t)
    Assemblage noise;         // xi
    Assemblage mixed;         // (sigma + t xi) / (1 + t)
    int solver_iters = 0;
    double residual = 0.0;  // max entrywise |certificate - mixed|, recomputed
};

struct LhsOptions {
    double solver_tolerance = 1e-10;
    int max_iterations = 150;
    /// Largest acceptable primal residual of a returned decomposition.
    double residual_tolerance = 1e-7;
    /// Membership: feasible when t* does not exceed this.
    double feasibility_gap = 1e-7;
};

/// Smallest weight t of noise such that (sigma + t xi)/(1 + t) is LHS,
/// solved as an SDP by the interior-point method. Throws SolverFailure if
/// the solver does not reach an acceptable solution.
RobustnessResult lhs_robustness(const Assemblage& asm_, RobustnessFlavor flavor = RobustnessFlavor::kLhsNoise,
                                const LhsOptions& options = {});

struct MembershipResult {
    bool feasible = false;
    std::optional<LhsModel> model;  // present when feasible
    double infeasibility_gap = 0.0;  // optimal t of the LHS-noise program
    double dual_bound = 0.0;         // certified lower bound on that gap
    double residual = 0.0;
};

MembershipResult lhs_membership(const Assemblage& asm_, const LhsOptions& options = {});

struct AlternatingOptions {
    double t_tolerance = 1e-4;         // bisection width
    double distance_tolerance = 1e-6;  // affine-to-cone distance counted as feasible
    int max_iterations = 20000;        // per feasibility test
};

struct AlternatingResult {
    double t_star = 0.0;
    int feasibility_tests = 0;
    long total_iterations = 0;
};

/// LHS-noise robustness by bisection on t, deciding each level with von
/// Neumann alternating projections between the affine decomposition
/// constraints and the PSD cone. Shares no code with the interior-point path
/// beyond the problem definition.
AlternatingResult lhs_robustness_alternating(const Assemblage& asm_, const AlternatingOptions& options = {});

const char* to_string(RobustnessFlavor f);

}  // namespace steerlab

#endif  // STEERLAB_LHS_HPP
