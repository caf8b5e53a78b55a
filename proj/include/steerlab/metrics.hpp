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

#ifndef STEERLAB_METRICS_HPP
#define STEERLAB_METRICS_HPP

#include <span>

#include "steerlab/assemblage.hpp"

namespace steerlab {

/// Worst case over inputs of the summed Uhlmann fidelities:
/// min_x sum_a F(sigma_{a|x}, xi_{a|x}). Both assemblages must be valid and
/// share their shape.
double assemblage_fidelity(const Assemblage& lhs, const Assemblage& rhs);

/// sum_{a,x} p_x(x) F(sigma_{a|x}, xi_{a|x}) for a distribution over inputs.
double input_distribution_objective(const Assemblage& lhs, const Assemblage& rhs, std::span<const double> p_x);

/// Minimum of input_distribution_objective over the probability simplex.
/// The objective is linear in p_x, so the minimum sits at a vertex and only
/// the m deterministic distributions are evaluated.
double assemblage_fidelity_dist(const Assemblage& lhs, const Assemblage& rhs);

/// Fidelity against the singlet assemblage. Evaluated through the Uhlmann
/// route and through the pure-target form
/// (1/sqrt 2) min_x sum_a sqrt(<phi_{a,x}| sigma_{a|x} |phi_{a,x}>); throws
/// std::logic_error if the two disagree by more than 1e-10.
double singlet_fraction(const Assemblage& asm_);

/// Pure-target form only.
double singlet_fraction_pure_form(const Assemblage& asm_);

/// Closed forms of the fraction reached by the averaged N-copy output.
struct ClosedFormReport {
    double alpha2 = 0.0;
    int n_copies = 0;
    double delta = 0.0;   // alpha^2 - beta^2
    double p_fail = 0.0;  // delta^(N-1)
    double f0 = 0.0;      // x = 0 term
    double f1 = 0.0;      // x = 1 term
    double u = 0.0;       // sqrt(1 - delta^(2N)) = 2 F0^2 - 1
    double v = 0.0;       // 1 - delta^(N-1) (alpha - beta)^2 = 2 F1^2 - 1
    double u2_minus_v2 = 0.0;  // 2 delta^(N-1) (1 - 2 alpha beta)(1 - delta^(N-1))
    double fraction = 0.0;     // min(F0, F1)
};

/// N >= 1; N = 1 describes the unprocessed alpha-assemblage.
ClosedFormReport closed_forms(double alpha2, int n_copies);

/// Diagnostic: best singlet fraction over Bob-side unitaries U sigma U^dagger
/// on a regular Euler-angle grid of `samples` points (rounded to a cube).
struct UnitaryScanReport {
    double plain = 0.0;
    double best = 0.0;
    int evaluated = 0;
    CMatrix best_unitary;
};

UnitaryScanReport singlet_fraction_unitary_scan(const Assemblage& asm_, int samples = 1000);

}  // namespace steerlab

#endif  // STEERLAB_METRICS_HPP
