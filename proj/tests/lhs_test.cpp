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


#include "steerlab/lhs.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "steerlab/errors.hpp"
#include "steerlab/filtering.hpp"
#include "test_util.hpp"

using namespace steerlab;

namespace {

// Value established by the alternating-projection oracle and confirmed by
// the interior-point path.
const double kSingletRobustness = (std::sqrt(2.0) - 1.0) / 2.0;

}  // namespace

TEST(lhs, strategy_enumeration) {
    // Two inputs, two outputs: strategy l answers (l >> 1 & 1, l & 1).
    EXPECT_EQ(strategy_output(0, 0, 2, 2), 0);
    EXPECT_EQ(strategy_output(2, 0, 2, 2), 1);
    EXPECT_EQ(strategy_output(2, 1, 2, 2), 0);
    EXPECT_EQ(strategy_output(1, 1, 2, 2), 1);
    EXPECT_EQ(strategy_output(5, 0, 2, 3), 1);  // 5 = 1 * 3 + 2
    EXPECT_EQ(strategy_output(5, 1, 2, 3), 2);
}

TEST(lhs, failure_branch_is_unsteerable) {
    const FilterOutcome fail = apply_filter(alpha_assemblage(0.8), paper_filter(0.8), 1);
    const MembershipResult m = lhs_membership(fail.output);
    EXPECT_TRUE(m.feasible);
    ASSERT_TRUE(m.model.has_value());
    EXPECT_LT(max_abs_diff(m.model->reconstruct(2), fail.output), 1e-7);
    EXPECT_LE(lhs_robustness(fail.output).t_star, 1e-6);
}

TEST(lhs, product_assemblages_are_unsteerable) {
    std::mt19937_64 rng(71);
    for (int rep = 0; rep < 20; ++rep) {
        const Assemblage a = testutil::random_product_assemblage(rng, 2 + rep % 2, 2);
        const MembershipResult m = lhs_membership(a);
        EXPECT_TRUE(m.feasible);
        EXPECT_LE(lhs_robustness(a).t_star, 1e-6);
    }
}

TEST(lhs, singlet_is_steerable) {
    const MembershipResult m = lhs_membership(singlet_assemblage());
    EXPECT_FALSE(m.feasible);
    EXPECT_FALSE(m.model.has_value());
    EXPECT_GT(m.dual_bound, 1e-7);
    const RobustnessResult r = lhs_robustness(singlet_assemblage());
    EXPECT_GT(r.t_star, 0.01);
    EXPECT_NEAR(r.t_star, kSingletRobustness, 1e-8);
    EXPECT_NEAR(r.dual_bound, kSingletRobustness, 1e-8);
}

TEST(lhs, singlet_alternating_oracle_agrees) {
    const AlternatingResult ap = lhs_robustness_alternating(singlet_assemblage());
    EXPECT_NEAR(ap.t_star, kSingletRobustness, 1e-3);
}

TEST(lhs, generalized_flavor_is_not_larger) {
    const RobustnessResult g = lhs_robustness(singlet_assemblage(), RobustnessFlavor::kGeneralizedNoise);
    EXPECT_NEAR(g.t_star, 3.0 - 2.0 * std::sqrt(2.0), 1e-8);
    std::mt19937_64 rng(73);
    for (int rep = 0; rep < 10; ++rep) {
        const Assemblage a = testutil::random_qubit_assemblage(rng);
        EXPECT_LE(lhs_robustness(a, RobustnessFlavor::kGeneralizedNoise).t_star, lhs_robustness(a).t_star + 1e-7);
    }
}

TEST(lhs, certificate_reconstructs_mixture) {
    std::mt19937_64 rng(75);
    for (int rep = 0; rep < 20; ++rep) {
        const Assemblage a = testutil::random_qubit_assemblage(rng, 2 + rep % 2);
        for (RobustnessFlavor flavor : {RobustnessFlavor::kLhsNoise, RobustnessFlavor::kGeneralizedNoise}) {
            const RobustnessResult r = lhs_robustness(a, flavor);
            const Assemblage rebuilt = r.certificate.reconstruct(a.dim());
            EXPECT_LT(max_abs_diff(rebuilt, r.mixed), 1e-7);
            EXPECT_TRUE(validate(r.noise, 1e-7).empty());
            for (const auto& w : r.certificate.weights) EXPECT_GT(min_eigenvalue(w), -1e-9);
            for (std::size_t i = 0; i < a.components().size(); ++i) {
                const HermMat mixed = (a.components()[i] + r.noise.components()[i] * r.t_star) * (1.0 / (1.0 + r.t_star));
                EXPECT_LT(max_abs_diff(mixed, r.mixed.components()[i]), 1e-9);
            }
            EXPECT_LE(r.dual_bound, r.t_star + 1e-8);
        }
    }
}

TEST(lhs, noise_of_lhs_flavor_is_unsteerable) {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 5; ++rep) {
        const RobustnessResult r = lhs_robustness(testutil::random_qubit_assemblage(rng));
        if (r.t_star < 1e-6) continue;
        EXPECT_TRUE(lhs_membership(r.noise).feasible);
    }
}

TEST(lhs, robustness_decreases_with_imbalance) {
    double previous = lhs_robustness(singlet_assemblage()).t_star;
    for (double alpha2 = 0.55; alpha2 < 0.96; alpha2 += 0.05) {
        const double t = lhs_robustness(alpha_assemblage(alpha2)).t_star;
        EXPECT_LE(t, previous + 1e-6) << alpha2;
        previous = t;
    }
}

TEST(lhs, convex_in_the_assemblage) {
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const Assemblage a = testutil::random_qubit_assemblage(rng);
        const Assemblage b = testutil::random_qubit_assemblage(rng);
        const double p = u(rng);
        EXPECT_LE(lhs_robustness(mix(a, b, p)).t_star,
                  p * lhs_robustness(a).t_star + (1.0 - p) * lhs_robustness(b).t_star + 1e-6);
    }
}

TEST(lhs, averaged_output_beats_single_copy) {
    EXPECT_GT(lhs_robustness(averaged_output(0.8, 2)).t_star, lhs_robustness(alpha_assemblage(0.8)).t_star);
}

TEST(lhs, three_outcome_problem_is_solvable) {
    std::mt19937_64 rng(83);
    const MeasurementSet meas = testutil::random_projective_measurements(3, 2, rng);
    const Assemblage a = from_state(testutil::random_density(4, rng, 1), meas);
    const RobustnessResult r = lhs_robustness(a);
    EXPECT_GE(r.t_star, 0.0);
    EXPECT_LT(r.residual, 1e-7);
    EXPECT_EQ(r.certificate.weights.size(), 8u);
}

TEST(lhs, rejects_invalid_or_oversized_input) {
    const Assemblage s = singlet_assemblage();
    std::vector<HermMat> comps = s.components();
    comps[0] = comps[0] * 2.0;
    EXPECT_THROW(lhs_robustness(Assemblage(2, 2, 2, comps)), ValidationError);
    std::mt19937_64 rng(81);
    EXPECT_THROW(lhs_robustness(testutil::random_product_assemblage(rng, 3, 5)), DomainError);
    // Two-copy joint assemblage: 4^4 strategies.
    EXPECT_THROW(lhs_robustness(tensor(alpha_assemblage(0.8), alpha_assemblage(0.8))), DomainError);
}
