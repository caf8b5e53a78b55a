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
#include <random>

#include "gtest/gtest.h"

#include "steerlab/errors.hpp"
#include "test_util.hpp"

using namespace steerlab;

namespace {

const double kGrid[] = {0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95};

}  // namespace

TEST(filtering, paper_filter_elements) {
    const KrausFilter f = paper_filter(0.8);
    EXPECT_NEAR(f.kraus(0)(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(f.kraus(0)(1, 1).real(), 1.0, 1e-15);
    EXPECT_NEAR(f.kraus(1)(0, 0).real(), std::sqrt(0.75), 1e-15);
    EXPECT_NEAR(std::abs(f.kraus(1)(1, 1)), 0.0, 1e-15);
    EXPECT_LT(f.completeness_error(), 1e-15);

    const KrausFilter near_half = paper_filter(0.5 + 1e-12);
    EXPECT_LT(max_abs_diff(near_half.kraus(0), CMatrix(CMatrix::Identity(2, 2))), 1e-6);
    EXPECT_LT(near_half.kraus(1).norm(), 1e-5);

    EXPECT_THROW(paper_filter(0.5), DomainError);
    EXPECT_THROW(paper_filter(1.2), DomainError);
}

TEST(filtering, kraus_completeness_enforced) {
    EXPECT_THROW(KrausFilter({CMatrix::Identity(2, 2) * 0.9}), ValidationError);
    EXPECT_THROW(KrausFilter({}), ValidationError);
}

TEST(filtering, success_branch_gives_singlet) {
    for (double alpha2 : kGrid) {
        const FilterOutcome out = apply_filter(alpha_assemblage(alpha2), paper_filter(alpha2), 0);
        EXPECT_LT(max_abs_diff(out.output, singlet_assemblage()), 1e-12) << alpha2;
        EXPECT_NEAR(out.probability, 2.0 * (1.0 - alpha2), 1e-12) << alpha2;
    }
}

TEST(filtering, failure_branch_collapses_to_ground_state) {
    const FilterOutcome out = apply_filter(alpha_assemblage(0.8), paper_filter(0.8), 1);
    EXPECT_NEAR(out.probability, 0.6, 1e-12);
    EXPECT_TRUE(validate(out.output).empty());
    for (const auto& c : out.output.components()) {
        EXPECT_LT(std::abs(c(1, 1)), 1e-15);
        EXPECT_LT(std::abs(c(0, 1)), 1e-15);
    }
    // Z input keeps only the a = 0 outcome, X input splits evenly.
    EXPECT_NEAR(out.output.probability(0, 0), 1.0, 1e-12);
    EXPECT_NEAR(out.output.probability(0, 1), 0.5, 1e-12);
}

TEST(filtering, trivial_filter_is_identity) {
    std::mt19937_64 rng(41);
    const KrausFilter trivial({CMatrix::Identity(2, 2)});
    for (int rep = 0; rep < 10; ++rep) {
        const Assemblage a = testutil::random_qubit_assemblage(rng);
        const FilterOutcome out = apply_filter(a, trivial, 0);
        EXPECT_NEAR(out.probability, 1.0, 1e-12);
        EXPECT_LT(max_abs_diff(out.output, a), 1e-12);
    }
}

TEST(filtering, apply_filter_errors) {
    const KrausFilter f = paper_filter(0.8);
    EXPECT_THROW(apply_filter(tensor(singlet_assemblage(), singlet_assemblage()), f, 0), DimensionMismatch);
    const KrausFilter zero_branch({CMatrix::Identity(2, 2), CMatrix::Zero(2, 2)});
    EXPECT_THROW(apply_filter(singlet_assemblage(), zero_branch, 1), ZeroProbabilityBranch);
}

TEST(filtering, filter_output_stays_valid_on_random_inputs) {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 20; ++rep) {
        const Assemblage a = testutil::random_qubit_assemblage(rng);
        const KrausFilter f = paper_filter(0.6 + 0.01 * rep);
        double total = 0.0;
        for (int w = 0; w < 2; ++w) {
            const FilterOutcome out = apply_filter(a, f, w);
            EXPECT_TRUE(validate(out.output).empty());
            total += out.probability;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(filtering, two_copy_branches) {
    const auto branches = run_protocol_exact(0.8, 2);
    ASSERT_EQ(branches.size(), 2u);
    EXPECT_EQ(branches[0].outcomes, (std::vector<int>{0, 1}));
    EXPECT_NEAR(branches[0].probability, 0.4, 1e-12);
    EXPECT_LT(max_abs_diff(branches[0].output(), singlet_assemblage()), 1e-12);
    EXPECT_TRUE(branches[0].succeeded());
    EXPECT_EQ(branches[1].outcomes, (std::vector<int>{1, 0}));
    EXPECT_NEAR(branches[1].probability, 0.6, 1e-12);
    EXPECT_LT(max_abs_diff(branches[1].output(), alpha_assemblage(0.8)), 1e-15);
    EXPECT_EQ(branches[1].kept_indices, (std::vector<int>{1}));
    EXPECT_FALSE(branches[1].succeeded());
}

TEST(filtering, three_copy_branches) {
    const auto branches = run_protocol_exact(0.8, 3);
    ASSERT_EQ(branches.size(), 4u);
    EXPECT_NEAR(branches.back().probability, 0.36, 1e-12);
    double success = 0.0;
    for (const auto& b : branches)
        if (b.succeeded()) success += b.probability;
    EXPECT_NEAR(success, 0.64, 1e-12);
    // Both filters succeed: two singlet copies are kept.
    EXPECT_EQ(branches[0].kept_copies.size(), 2u);
    EXPECT_LT(max_abs_diff(branches[0].output(), tensor(singlet_assemblage(), singlet_assemblage())), 1e-12);
}

TEST(filtering, branch_probabilities_sum_to_one) {
    for (double alpha2 : kGrid) {
        for (int n = 2; n <= 8; ++n) {
            double total = 0.0;
            for (const auto& b : run_protocol_exact(alpha2, n)) total += b.probability;
            EXPECT_NEAR(total, 1.0, 1e-12);
        }
    }
    EXPECT_THROW(run_protocol_exact(0.8, 1), DomainError);
    EXPECT_THROW(run_protocol_exact(0.8, kMaxExactCopies + 1), DomainError);
}

TEST(filtering, averaged_output_matches_explicit_components) {
    const Assemblage avg = averaged_output(0.8, 2);
    EXPECT_LT(max_abs_diff(avg.component(0, 0), HermMat::diagonal({0.68, 0.0})), 1e-12);
    for (double alpha2 : kGrid) {
        for (int n = 2; n <= 6; ++n) {
            const double beta2 = 1.0 - alpha2;
            const double p_fail = std::pow(1.0 - 2.0 * beta2, n - 1);
            const double p_s = 1.0 - p_fail;
            const double ab = std::sqrt(alpha2 * beta2);
            const Assemblage out = averaged_output(alpha2, n);
            EXPECT_LT(max_abs_diff(out.component(0, 0), HermMat::diagonal({0.5 * p_s + alpha2 * p_fail, 0.0})), 1e-12);
            EXPECT_LT(max_abs_diff(out.component(1, 0), HermMat::diagonal({0.0, 0.5 * p_s + beta2 * p_fail})), 1e-12);
            for (int a = 0; a < 2; ++a) {
                const double sign = a == 0 ? 1.0 : -1.0;
                CMatrix expected(2, 2);
                expected << 0.25 * p_s + 0.5 * alpha2 * p_fail, sign * (0.25 * p_s + 0.5 * ab * p_fail),
                    sign * (0.25 * p_s + 0.5 * ab * p_fail), 0.25 * p_s + 0.5 * beta2 * p_fail;
                EXPECT_LT(max_abs_diff(out.component(a, 1).matrix(), expected), 1e-12);
            }
        }
    }
}

TEST(filtering, averaged_output_limits) {
    EXPECT_LT(max_abs_diff(averaged_output(0.5 + 1e-9, 3), singlet_assemblage()), 1e-7);
    const Assemblage many = averaged_output(0.8, 12);
    const Assemblage s = singlet_assemblage();
    for (std::size_t i = 0; i < s.components().size(); ++i)
        EXPECT_LE(trace_distance(many.components()[i], s.components()[i]), std::pow(0.6, 11));
}

TEST(filtering, sampled_matches_exact_within_five_standard_errors) {
    const std::uint64_t trials = 100000;
    const auto report = run_protocol_sampled(0.8, 3, trials, 7);
    const auto exact = run_protocol_exact(0.8, 3);
    ASSERT_EQ(report.branch_counts.size(), exact.size());
    for (std::size_t k = 0; k < exact.size(); ++k) {
        const double p = exact[k].probability;
        const double freq = static_cast<double>(report.branch_counts[k]) / static_cast<double>(trials);
        EXPECT_LE(std::abs(freq - p), 5.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials))) << k;
    }
    const auto two = run_protocol_sampled(0.8, 2, trials, 7);
    EXPECT_LE(std::abs(two.success_frequency - 0.4), 3.0 * std::sqrt(0.4 * 0.6 / 1e5));
    EXPECT_TRUE(validate(two.averaged).empty());
}

TEST(filtering, sampled_is_deterministic) {
    const auto a = run_protocol_sampled(0.7, 4, 5000, 123);
    const auto b = run_protocol_sampled(0.7, 4, 5000, 123);
    EXPECT_EQ(a.branch_counts, b.branch_counts);
    EXPECT_EQ(a.success_count, b.success_count);
    EXPECT_EQ(max_abs_diff(a.averaged, b.averaged), 0.0);
    const auto c = run_protocol_sampled(0.7, 4, 5000, 124);
    EXPECT_NE(a.branch_counts, c.branch_counts);
}

TEST(filtering, sampled_rejects_zero_trials) {
    EXPECT_THROW(run_protocol_sampled(0.8, 2, 0, 1), DomainError);
    EXPECT_THROW(run_protocol_sampled(0.8, 1, 10, 1), DomainError);
}

TEST(filtering, rate_report_values) {
    const RateReport r = rate_report(0.8, 2);
    EXPECT_NEAR(r.p_success, 0.4, 1e-12);
    EXPECT_NEAR(r.p_fail, 0.6, 1e-12);
    EXPECT_NEAR(r.rate, 0.2, 1e-12);
    EXPECT_NEAR(r.asymptotic_rate, 0.4, 1e-12);
    EXPECT_NEAR(rate_report(0.8, 3).p_success, 0.64, 1e-12);
    EXPECT_NEAR(rate_report(0.5 + 1e-9, 5).asymptotic_rate, 1.0, 1e-8);
    EXPECT_THROW(rate_report(0.8, 1), DomainError);
    EXPECT_THROW(rate_report(0.3, 2), DomainError);
}
