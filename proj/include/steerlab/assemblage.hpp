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

#ifndef STEERLAB_ASSEMBLAGE_HPP
#define STEERLAB_ASSEMBLAGE_HPP

#include <string>
#include <vector>

#include "steerlab/matcore.hpp"

namespace steerlab {

/// Tolerance used by assemblage and measurement-set validation.
inline constexpr double kValidationTolerance = 1e-9;

/// Components whose trace is below this are the zero operator for
/// normalization queries.
inline constexpr double kNegligibleTrace = 1e-12;

/// Family of subnormalized Bob-side operators sigma_{a|x}, a in [o], x in [m].
///
/// Only the subnormalized operators are stored. Outcome probabilities
/// P(a|x) = Tr sigma_{a|x} and the conditional states are computed on demand.
/// Construction does not validate; call validate() when the source is untrusted.
class Assemblage {
public:
    Assemblage() = default;
    /// `components` is indexed by x * n_outputs + a.
    Assemblage(int n_inputs, int n_outputs, int dim, std::vector<HermMat> components);

    int n_inputs() const { return m_; }
    int n_outputs() const { return o_; }
    int dim() const { return dim_; }

    const HermMat& component(int a, int x) const;
    const std::vector<HermMat>& components() const { return comps_; }

    double probability(int a, int x) const { return component(a, x).trace(); }
    /// sigma_{a|x} / P(a|x), or the zero matrix when P(a|x) < kNegligibleTrace.
    HermMat conditional_state(int a, int x) const;
    /// sum_a sigma_{a|x} for the given input.
    HermMat marginal(int x) const;
    /// Bob's reduced state, taken from input 0.
    HermMat reduced_state() const { return marginal(0); }

    bool same_shape(const Assemblage& other) const {
        return m_ == other.m_ && o_ == other.o_ && dim_ == other.dim_;
    }

private:
    int m_ = 0;
    int o_ = 0;
    int dim_ = 0;
    std::vector<HermMat> comps_;
};

/// Per-input list of POVM elements on Alice's side: elements[x][a].
struct MeasurementSet {
    std::vector<std::vector<HermMat>> elements;

    int n_inputs() const { return static_cast<int>(elements.size()); }
    int n_outputs() const { return elements.empty() ? 0 : static_cast<int>(elements.front().size()); }
    int dim() const;
};

struct Violation {
    enum class Kind { kPsd, kNoSignalling, kTrace, kShape };
    Kind kind;
    int a;  // -1 when the constraint is not tied to an outcome
    int x;  // -1 when the constraint is not tied to an input
    double magnitude;
    std::string message;
};

const char* to_string(Violation::Kind kind);

/// Checks positivity, no-signalling and normalization; empty result means valid.
std::vector<Violation> validate(const Assemblage& asm_, double tol = kValidationTolerance);
std::vector<Violation> validate(const MeasurementSet& meas, double tol = kValidationTolerance);

/// Throws ValidationError listing the violations, if any.
void require_valid(const Assemblage& asm_, const char* context);

/// Assemblage of the maximally entangled two-qubit state under Z and X
/// measurements: {|0><0|/2, |1><1|/2} for x = 0 and {|+><+|/2, |-><-|/2} for x = 1.
Assemblage singlet_assemblage();

/// Assemblage of alpha|00> + beta|11> under Z and X measurements,
/// 1/2 < alpha2 < 1. Throws DomainError otherwise.
Assemblage alpha_assemblage(double alpha2);

/// Projective Pauli Z (x = 0) and X (x = 1) measurements on a qubit.
MeasurementSet pauli_zx_measurements();

/// sigma_{a|x} = Tr_A[(M_{a|x} (x) 1) rho] for a state on dim_A * dim_B with
/// dim_A taken from the measurement set.
Assemblage from_state(const HermMat& state, const MeasurementSet& meas);

/// Tensor product with row-major flattening: x = x1 * m2 + x2, a = a1 * o2 + a2.
Assemblage tensor(const Assemblage& lhs, const Assemblage& rhs);

/// p * lhs + (1 - p) * rhs.
Assemblage mix(const Assemblage& lhs, const Assemblage& rhs, double p);

double max_abs_diff(const Assemblage& lhs, const Assemblage& rhs);

/// |alpha, +> = alpha|0> + beta|1> and |alpha, -> = alpha|0> - beta|1>.
CVector alpha_plus(double alpha2);
CVector alpha_minus(double alpha2);

}  // namespace steerlab

#endif  // STEERLAB_ASSEMBLAGE_HPP
