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

#include "steerlab/filtering.hpp"

#include <cmath>
#include <string>

#include "steerlab/errors.hpp"
#include "steerlab/random.hpp"

namespace steerlab {

namespace {

constexpr double kCompletenessTolerance = 1e-10;
constexpr double kMinBranchProbability = 1e-12;

void check_copies(int n_copies, int max_copies, const char* context) {
    if (n_copies < 2 || n_copies > max_copies) {
        throw DomainError(std::string(context) + ": number of copies must lie in [2, " + std::to_string(max_copies) +
                          "], got " + std::to_string(n_copies));
    }
}

// Filter outputs of a single alpha-assemblage copy for w = 0 and w = 1.
struct CopyOutcomes {
    FilterOutcome success;
    FilterOutcome failure;
    Assemblage unfiltered;
};

CopyOutcomes single_copy_outcomes(double alpha2) {
    const Assemblage base = alpha_assemblage(alpha2);
    const KrausFilter filter = paper_filter(alpha2);
    return {apply_filter(base, filter, 0), apply_filter(base, filter, 1), base};
}

}  // namespace

void check_alpha2(double alpha2, const char* context) {
    if (!(alpha2 > 0.5 && alpha2 < 1.0)) {
        throw DomainError(std::string(context) + ": alpha2 must lie in (1/2, 1), got " + std::to_string(alpha2));
    }
}

KrausFilter::KrausFilter(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw ValidationError("KrausFilter: no Kraus operators");
    const Eigen::Index d = kraus_.front().rows();
    for (const auto& k : kraus_) {
        if (k.rows() != d || k.cols() != d || d == 0) {
            throw ValidationError("KrausFilter: Kraus operators must be square and of equal dimension");
        }
    }
    if (const double err = completeness_error(); err > kCompletenessTolerance) {
        throw ValidationError("KrausFilter: sum of K^dagger K deviates from identity by " + std::to_string(err));
    }
    for (const auto& k : kraus_) {
        const bool hermitian = max_abs_diff(k, CMatrix(k.adjoint())) <= 1e-12;
        if (hermitian && min_eigenvalue(HermMat(k)) >= -1e-12) {
            applied_.push_back(k);
        } else {
            applied_.push_back(sqrtm_psd(HermMat(k.adjoint() * k)).matrix());
        }
    }
}

const CMatrix& KrausFilter::kraus(int outcome) const {
    if (outcome < 0 || outcome >= n_outcomes()) throw DomainError("KrausFilter: outcome out of range");
    return kraus_[static_cast<std::size_t>(outcome)];
}

HermMat KrausFilter::povm_element(int outcome) const {
    const CMatrix& k = kraus(outcome);
    return HermMat(k.adjoint() * k);
}

const CMatrix& KrausFilter::applied_operator(int outcome) const {
    kraus(outcome);
    return applied_[static_cast<std::size_t>(outcome)];
}

double KrausFilter::completeness_error() const {
    const Eigen::Index d = kraus_.front().rows();
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& k : kraus_) sum += k.adjoint() * k;
    return max_abs_diff(sum, CMatrix(CMatrix::Identity(d, d)));
}

KrausFilter paper_filter(double alpha2) {
    check_alpha2(alpha2, "paper_filter");
    const double alpha = std::sqrt(alpha2);
    const double beta = std::sqrt(1.0 - alpha2);
    CMatrix k0 = CMatrix::Zero(2, 2);
    CMatrix k1 = CMatrix::Zero(2, 2);
    k0(0, 0) = beta / alpha;
    k0(1, 1) = 1.0;
    k1(0, 0) = std::sqrt(2.0 * alpha2 - 1.0) / alpha;
    return KrausFilter({k0, k1});
}

FilterOutcome apply_filter(const Assemblage& asm_, const KrausFilter& filter, int outcome) {
    if (filter.dim() != asm_.dim()) {
        throw DimensionMismatch("apply_filter: filter acts on dimension " + std::to_string(filter.dim()) +
                                ", assemblage has " + std::to_string(asm_.dim()));
    }
    const CMatrix& k = filter.applied_operator(outcome);
    const double p = (filter.povm_element(outcome).matrix() * asm_.reduced_state().matrix()).trace().real();
    if (!(p >= kMinBranchProbability)) {
        throw ZeroProbabilityBranch("apply_filter: outcome " + std::to_string(outcome) + " has probability " +
                                    std::to_string(p));
    }
    std::vector<HermMat> comps;
    comps.reserve(asm_.components().size());
    for (const auto& c : asm_.components()) comps.push_back(congruence(k, c) * (1.0 / p));
    return {Assemblage(asm_.n_inputs(), asm_.n_outputs(), asm_.dim(), std::move(comps)), p};
}

Assemblage ProtocolResult::output() const {
    Assemblage joint = kept_copies.front();
    for (std::size_t i = 1; i < kept_copies.size(); ++i) joint = tensor(joint, kept_copies[i]);
    return joint;
}

std::vector<ProtocolResult> run_protocol_exact(double alpha2, int n_copies) {
    check_alpha2(alpha2, "run_protocol_exact");
    check_copies(n_copies, kMaxExactCopies, "run_protocol_exact");
    const CopyOutcomes copy = single_copy_outcomes(alpha2);
    const int measured = n_copies - 1;
    const std::uint64_t n_branches = std::uint64_t{1} << measured;

    std::vector<ProtocolResult> branches;
    branches.reserve(n_branches);
    for (std::uint64_t k = 0; k < n_branches; ++k) {
        ProtocolResult r;
        r.n_copies = n_copies;
        r.probability = 1.0;
        bool any_success = false;
        for (int i = 0; i < measured; ++i) {
            const int w = static_cast<int>((k >> (measured - 1 - i)) & 1U);
            r.outcomes.push_back(w);
            const FilterOutcome& f = w == 0 ? copy.success : copy.failure;
            r.probability *= f.probability;
            if (w == 0) {
                any_success = true;
                r.kept_indices.push_back(i);
                r.kept_copies.push_back(f.output);
            }
        }
        // Last copy: kept unmeasured only when every filter attempt failed.
        r.outcomes.push_back(any_success ? 1 : 0);
        if (!any_success) {
            r.kept_indices.push_back(measured);
            r.kept_copies.push_back(copy.unfiltered);
        }
        branches.push_back(std::move(r));
    }
    return branches;
}

Assemblage averaged_output(double alpha2, int n_copies) {
    const auto branches = run_protocol_exact(alpha2, n_copies);
    const Assemblage& first = branches.front().first_kept();
    std::vector<HermMat> acc(first.components().size(), HermMat::zero(first.dim()));
    for (const auto& b : branches) {
        const auto& comps = b.first_kept().components();
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += comps[i] * b.probability;
    }
    return Assemblage(first.n_inputs(), first.n_outputs(), first.dim(), std::move(acc));
}

SampledProtocolReport run_protocol_sampled(double alpha2, int n_copies, std::uint64_t trials, std::uint64_t seed) {
    check_alpha2(alpha2, "run_protocol_sampled");
    if (n_copies < 2 || n_copies > 63) {
        throw DomainError("run_protocol_sampled: number of copies must lie in [2, 63]");
    }
    if (trials == 0) throw DomainError("run_protocol_sampled: trials must be at least 1");
    const CopyOutcomes copy = single_copy_outcomes(alpha2);
    const double p_success = copy.success.probability;
    const int measured = n_copies - 1;

    SampledProtocolReport rep;
    rep.n_copies = n_copies;
    rep.trials = trials;
    rep.seed = seed;
    if (n_copies <= kMaxExactCopies) rep.branch_counts.assign(std::size_t{1} << measured, 0);

    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng(derive_seed(seed, {t}));
        std::uint64_t branch = 0;
        bool any_success = false;
        for (int i = 0; i < measured; ++i) {
            const int w = rng.uniform() < p_success ? 0 : 1;
            any_success = any_success || w == 0;
            branch = (branch << 1) | static_cast<std::uint64_t>(w);
        }
        if (!rep.branch_counts.empty()) ++rep.branch_counts[branch];
        if (any_success) ++rep.success_count;
    }
    rep.success_frequency = static_cast<double>(rep.success_count) / static_cast<double>(trials);
    rep.averaged = mix(copy.success.output, copy.unfiltered, rep.success_frequency);
    return rep;
}

RateReport rate_report(double alpha2, int n_copies) {
    check_alpha2(alpha2, "rate_report");
    if (n_copies < 2) throw DomainError("rate_report: number of copies must be at least 2");
    const double beta2 = 1.0 - alpha2;
    RateReport r;
    r.n_copies = n_copies;
    r.p_fail = std::pow(1.0 - 2.0 * beta2, n_copies - 1);
    r.p_success = 1.0 - r.p_fail;
    r.asymptotic_rate = 2.0 * beta2;
    r.rate = r.asymptotic_rate * static_cast<double>(n_copies - 1) / static_cast<double>(n_copies);
    return r;
}

}  // namespace steerlab
