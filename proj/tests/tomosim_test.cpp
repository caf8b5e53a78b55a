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


#include "steerlab/tomosim.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "gtest/gtest.h"

#include "steerlab/errors.hpp"
#include "steerlab/metrics.hpp"
#include "test_util.hpp"

using namespace steerlab;

TEST(tomosim, eigenstate_gives_deterministic_counts) {
    const TomographyRun run = simulate_counts(singlet_assemblage(), 1000, 3);
    const CellCounts& z = run.cell(0, 0, Pauli::kZ);
    EXPECT_GT(z.total(), 0u);
    EXPECT_EQ(z.minus, 0u);
    EXPECT_EQ(run.cell(1, 0, Pauli::kZ).plus, 0u);
    EXPECT_EQ(run.cell(0, 1, Pauli::kX).minus, 0u);
}

TEST(tomosim, cell_totals_match_shot_budget) {
    const std::uint64_t shots = 5000;
    const TomographyRun run = simulate_counts(alpha_assemblage(0.7), shots, 11);
    for (int x = 0; x < 2; ++x)
        for (Pauli s : kPauliSettings) EXPECT_EQ(run.cell(0, x, s).total() + run.cell(1, x, s).total(), shots);
}

TEST(tomosim, outcome_frequency_within_binomial_bound) {
    const std::uint64_t shots = 100000;
    const TomographyStatistics st = statistics_from_counts(simulate_counts(alpha_assemblage(0.8), shots, 5));
    // Estimated from the pooled 3 * shots rounds of input 0.
    EXPECT_LE(std::abs(st.probabilities[0] - 0.8), 3.0 * std::sqrt(0.8 * 0.2 / shots));
}

TEST(tomosim, same_seed_same_counts) {
    const TomographyRun a = simulate_counts(alpha_assemblage(0.8), 1000, 42);
    const TomographyRun b = simulate_counts(alpha_assemblage(0.8), 1000, 42);
    const TomographyRun c = simulate_counts(alpha_assemblage(0.8), 1000, 43);
    bool differs = false;
    for (std::size_t i = 0; i < a.counts.size(); ++i) {
        EXPECT_EQ(a.counts[i].plus, b.counts[i].plus);
        EXPECT_EQ(a.counts[i].minus, b.counts[i].minus);
        differs = differs || a.counts[i].plus != c.counts[i].plus;
    }
    EXPECT_TRUE(differs);
}

TEST(tomosim, exact_statistics_reconstruct_exactly) {
    std::mt19937_64 rng(91);
    EXPECT_LT(max_abs_diff(reconstruct_from_statistics(exact_statistics(alpha_assemblage(0.8))).assemblage,
                           alpha_assemblage(0.8)),
              1e-12);
    EXPECT_LT(max_abs_diff(reconstruct_from_statistics(exact_statistics(singlet_assemblage())).assemblage,
                           singlet_assemblage()),
              1e-12);
    for (int rep = 0; rep < 20; ++rep) {
        const Assemblage a = testutil::random_qubit_assemblage(rng, 2 + rep % 2);
        EXPECT_LT(max_abs_diff(reconstruct_from_statistics(exact_statistics(a)).assemblage, a), 1e-12);
    }
}

TEST(tomosim, million_shots_recover_fraction) {
    const TomographyRun run = run_tomography(alpha_assemblage(0.8), 1000000, 17);
    EXPECT_NEAR(singlet_fraction(run.reconstructed), 0.948683, 0.005);
}

TEST(tomosim, small_samples_trigger_projection) {
    int active = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
        if (run_tomography(singlet_assemblage(), 100, seed).reconstruction_residual > 0.0) ++active;
    EXPECT_GE(active, 8);
}

TEST(tomosim, reconstruction_is_always_valid) {
    std::mt19937_64 rng(93);
    for (int rep = 0; rep < 40; ++rep) {
        const Assemblage a = rep % 2 ? testutil::random_qubit_assemblage(rng) : alpha_assemblage(0.55 + 0.01 * rep);
        const TomographyRun run = run_tomography(a, rep % 3 == 0 ? 100 : 1000, 100 + rep);
        EXPECT_TRUE(validate(run.reconstructed).empty()) << rep;
    }
}

TEST(tomosim, error_shrinks_as_inverse_sqrt_shots) {
    const Assemblage truth = alpha_assemblage(0.75);
    std::vector<double> log_n, log_err;
    for (std::uint64_t shots : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
        double err = 0.0;
        const int seeds = 10;
        for (int s = 0; s < seeds; ++s) err += max_abs_diff(run_tomography(truth, shots, 500 + s).reconstructed, truth);
        log_n.push_back(std::log(static_cast<double>(shots)));
        log_err.push_back(std::log(err / seeds));
    }
    const double mx = std::accumulate(log_n.begin(), log_n.end(), 0.0) / log_n.size();
    const double my = std::accumulate(log_err.begin(), log_err.end(), 0.0) / log_err.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        sxy += (log_n[i] - mx) * (log_err[i] - my);
        sxx += (log_n[i] - mx) * (log_n[i] - mx);
    }
    EXPECT_NEAR(sxy / sxx, -0.5, 0.15);
}

TEST(tomosim, errors) {
    EXPECT_THROW(simulate_counts(alpha_assemblage(0.8), 0, 1), DomainError);
    EXPECT_THROW(simulate_counts(tensor(singlet_assemblage(), singlet_assemblage()), 10, 1), DomainError);
    // A single shot leaves at least one (a, x, setting) cell empty.
    EXPECT_THROW(reconstruct(simulate_counts(alpha_assemblage(0.8), 1, 1)), InsufficientCounts);
}

TEST(tomosim, exact_sweep_ordering) {
    SweepConfig cfg;
    cfg.alpha2_grid = default_alpha2_grid();
    cfg.replicas = 0;
    const auto rows = figure3_sweep(cfg);
    ASSERT_EQ(rows.size(), cfg.alpha2_grid.size() * 6);
    auto find = [&](double alpha2, const std::string& curve, const std::string& metric) {
        for (const auto& r : rows)
            if (r.alpha2 == alpha2 && r.curve == curve && r.metric == metric) return r.exact;
        ADD_FAILURE() << "missing row";
        return 0.0;
    };
    for (double alpha2 : cfg.alpha2_grid) {
        EXPECT_GT(find(alpha2, "averaged", "fraction"), find(alpha2, "original", "fraction"));
        EXPECT_GE(find(alpha2, "averaged", "robustness"), find(alpha2, "original", "robustness") - 1e-6);
        EXPECT_NEAR(find(alpha2, "postselected", "fraction"), 1.0, 1e-10);
        EXPECT_NEAR(find(alpha2, "postselected", "robustness"), (std::sqrt(2.0) - 1.0) / 2.0, 1e-8);
    }
    EXPECT_TRUE(std::isnan(rows.front().mean_reconstructed));
}

TEST(tomosim, default_grid_imbalances) {
    const auto grid = default_alpha2_grid();
    ASSERT_EQ(grid.size(), 10u);
    EXPECT_NEAR(2.0 * grid.front() - 1.0, 0.1, 1e-12);
    EXPECT_NEAR(2.0 * grid[8] - 1.0, 0.81, 1e-12);
    EXPECT_NEAR(2.0 * grid.back() - 1.0, 0.9, 1e-12);
}

TEST(tomosim, sweep_with_replicas_and_writers) {
    SweepConfig cfg;
    cfg.alpha2_grid = {0.8};
    cfg.shots = 2000;
    cfg.replicas = 3;
    cfg.seed = 9;
    const auto rows = figure3_sweep(cfg);
    const auto again = figure3_sweep(cfg);
    ASSERT_EQ(rows.size(), 6u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_TRUE(std::isfinite(rows[i].mean_reconstructed));
        EXPECT_GE(rows[i].stddev_reconstructed, 0.0);
        EXPECT_EQ(rows[i].mean_reconstructed, again[i].mean_reconstructed);
    }
    const std::string csv = sweep_to_csv(rows);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "delta,curve,metric,exact,mean_reconstructed,stddev_reconstructed,shots,seed");
    int lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    EXPECT_EQ(lines, 6);
    const Json j = sweep_to_json(rows, cfg);
    EXPECT_EQ(j.at("schema"), "fig3-sweep/v1");
    EXPECT_EQ(j.at("rows").size(), 6u);
}
