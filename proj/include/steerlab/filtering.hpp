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

#ifndef STEERLAB_FILTERING_HPP
#define STEERLAB_FILTERING_HPP

#include <cstdint>
#include <vector>

#include "steerlab/assemblage.hpp"
#include "steerlab/matcore.hpp"

namespace steerlab {

/// Largest copy number accepted by exact branch enumeration (2^(N-1) branches).
inline constexpr int kMaxExactCopies = 12;

/// Dichotomic (or general) filter on Bob's side, given by Kraus operators
/// K^(w). The POVM elements are M^(w) = K^(w)^dagger K^(w).
class KrausFilter {
public:
    /// Throws ValidationError unless sum_w K^dagger K = 1 within 1e-10.
    explicit KrausFilter(std::vector<CMatrix> kraus);

    int dim() const { return static_cast<int>(kraus_.front().rows()); }
    int n_outcomes() const { return static_cast<int>(kraus_.size()); }
    const CMatrix& kraus(int outcome) const;
    HermMat povm_element(int outcome) const;
    /// Operator actually applied for an outcome: K^(w) itself when it is
    /// Hermitian PSD, sqrt(M^(w)) otherwise.
    const CMatrix& applied_operator(int outcome) const;
    /// Largest deviation of sum_w M^(w) from the identity.
    double completeness_error() const;

private:
    std::vector<CMatrix> kraus_;
    std::vector<CMatrix> applied_;
};

/// K^(0) = diag(beta/alpha, 1), K^(1) = diag(sqrt(alpha^2 - beta^2)/alpha, 0).
KrausFilter paper_filter(double alpha2);

struct FilterOutcome {
    Assemblage output;
    double probability;
};

/// Post-measurement assemblage K sigma_{a|x} K^dagger / Tr[M rho_B] for outcome
/// `outcome`, and the outcome probability Tr[M rho_B]. Throws
/// ZeroProbabilityBranch when that probability is below 1e-12.
FilterOutcome apply_filter(const Assemblage& asm_, const KrausFilter& filter, int outcome);

/// One branch of the N-copy protocol.
///
/// `kept_copies` holds the single-copy assemblage of each kept system in
/// copy order; the joint output is their tensor product, available through
/// output() while its Bob dimension stays within kMaxDim.
struct ProtocolResult {
    int n_copies = 0;
    std::vector<int> outcomes;      // w_1 ... w_N
    std::vector<int> kept_indices;  // 0-based copies with w_i = 0
    std::vector<Assemblage> kept_copies;
    double probability = 0.0;

    Assemblage output() const;
    const Assemblage& first_kept() const { return kept_copies.front(); }
    bool succeeded() const { return outcomes.back() == 1; }
};

/// Enumerates all 2^(N-1) outcome strings of the first N-1 filter
/// measurements, 2 <= N <= 12. Branch k lists w_1 as the most significant bit
/// of k, so branch 0 is the all-success string.
std::vector<ProtocolResult> run_protocol_exact(double alpha2, int n_copies);

/// P_success * singlet + P_fail * alpha-assemblage, computed by summing the
/// first kept copy of every exact branch weighted by its probability.
Assemblage averaged_output(double alpha2, int n_copies);

struct SampledProtocolReport {
    int n_copies = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    /// Indexed like run_protocol_exact's branches.
    std::vector<std::uint64_t> branch_counts;
    std::uint64_t success_count = 0;  // trials with at least one filter success
    double success_frequency = 0.0;
    Assemblage averaged;  // empirical mixture of first kept copies
};

/// Monte-Carlo run of the protocol. Trial t draws from its own stream derived
/// from (seed, t), so the result is independent of evaluation order.
SampledProtocolReport run_protocol_sampled(double alpha2, int n_copies, std::uint64_t trials,
                                           std::uint64_t seed);

struct RateReport {
    int n_copies = 0;
    double p_success = 0.0;
    double p_fail = 0.0;
    double rate = 0.0;
    double asymptotic_rate = 0.0;
};

RateReport rate_report(double alpha2, int n_copies);

/// Throws DomainError unless 1/2 < alpha2 < 1.
void check_alpha2(double alpha2, const char* context);

}  // namespace steerlab

#endif  // STEERLAB_FILTERING_HPP
