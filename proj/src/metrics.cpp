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

#include "steerlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "steerlab/errors.hpp"
#include "steerlab/filtering.hpp"

namespace steerlab {

namespace {

void check_pair(const Assemblage& lhs, const Assemblage& rhs, const char* context) {
    if (!lhs.same_shape(rhs)) {
        throw ShapeMismatch(std::string(context) + ": assemblages differ in (inputs, outputs, dim)");
    }
    require_valid(lhs, context);
    require_valid(rhs, context);
}

// sum_a F(sigma_{a|x}, xi_{a|x}) for every x.
std::vector<double> per_input_sums(const Assemblage& lhs, const Assemblage& rhs) {
    std::vector<double> sums(static_cast<std::size_t>(lhs.n_inputs()), 0.0);
    for (int x = 0; x < lhs.n_inputs(); ++x)
        for (int a = 0; a < lhs.n_outputs(); ++a)
            sums[static_cast<std::size_t>(x)] += uhlmann_fidelity(lhs.component(a, x), rhs.component(a, x));
    return sums;
}

void check_qubit_pair_shape(const Assemblage& asm_, const char* context) {
    if (asm_.n_inputs() != 2 || asm_.n_outputs() != 2 || asm_.dim() != 2) {
        throw ShapeMismatch(std::string(context) + ": requires 2 inputs, 2 outputs and a qubit on Bob's side");
    }
}

}  // namespace

double assemblage_fidelity(const Assemblage& lhs, const Assemblage& rhs) {
    check_pair(lhs, rhs, "assemblage_fidelity");
    const auto sums = per_input_sums(lhs, rhs);
    return *std::min_element(sums.begin(), sums.end());
}

double input_distribution_objective(const Assemblage& lhs, const Assemblage& rhs, std::span<const double> p_x) {
    check_pair(lhs, rhs, "input_distribution_objective");
    if (p_x.size() != static_cast<std::size_t>(lhs.n_inputs())) {
        throw ShapeMismatch("input_distribution_objective: distribution has wrong length");
    }
    double total = 0.0;
    for (double p : p_x) {
        if (p < 0.0) throw DomainError("input_distribution_objective: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("input_distribution_objective: probabilities must sum to 1");
    const auto sums = per_input_sums(lhs, rhs);
    double g = 0.0;
    for (std::size_t x = 0; x < sums.size(); ++x) g += p_x[x] * sums[x];
    return g;
}

double assemblage_fidelity_dist(const Assemblage& lhs, const Assemblage& rhs) {
    check_pair(lhs, rhs, "assemblage_fidelity_dist");
    const auto m = static_cast<std::size_t>(lhs.n_inputs());
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> vertex(m, 0.0);
    for (std::size_t x = 0; x < m; ++x) {
        std::fill(vertex.begin(), vertex.end(), 0.0);
        vertex[x] = 1.0;
        best = std::min(best, input_distribution_objective(lhs, rhs, vertex));
    }
    return best;
}

double singlet_fraction_pure_form(const Assemblage& asm_) {
    check_qubit_pair_shape(asm_, "singlet_fraction");
    const Assemblage target = singlet_assemblage();
    double best = std::numeric_limits<double>::infinity();
    for (int x = 0; x < 2; ++x) {
        double s = 0.0;
        for (int a = 0; a < 2; ++a) {
            // |phi><phi| = 2 sigma^singlet_{a|x}
            const double overlap =
                2.0 * (target.component(a, x).matrix() * asm_.component(a, x).matrix()).trace().real();
            s += std::sqrt(std::max(overlap, 0.0));
        }
        best = std::min(best, s / std::numbers::sqrt2);
    }
    return best;
}

double singlet_fraction(const Assemblage& asm_) {
    check_qubit_pair_shape(asm_, "singlet_fraction");
    const double general = assemblage_fidelity(asm_, singlet_assemblage());
    const double pure = singlet_fraction_pure_form(asm_);
    if (std::abs(general - pure) > 1e-10) {
        throw std::logic_error("singlet_fraction: Uhlmann route " + std::to_string(general) +
                               " and pure-target route " + std::to_string(pure) + " disagree");
    }
    return general;
}

ClosedFormReport closed_forms(double alpha2, int n_copies) {
    check_alpha2(alpha2, "closed_forms");
    if (n_copies < 1) throw DomainError("closed_forms: number of copies must be at least 1");
    const double alpha = std::sqrt(alpha2);
    const double beta = std::sqrt(1.0 - alpha2);
    ClosedFormReport r;
    r.alpha2 = alpha2;
    r.n_copies = n_copies;
    r.delta = 2.0 * alpha2 - 1.0;
    r.p_fail = std::pow(r.delta, n_copies - 1);
    const double d_n = r.p_fail * r.delta;
    const double amb2 = (alpha - beta) * (alpha - beta);
    r.f0 = 0.5 * (std::sqrt(1.0 + d_n) + std::sqrt(1.0 - d_n));
    r.f1 = std::sqrt(1.0 - 0.5 * r.p_fail * amb2);
    r.u = std::sqrt(1.0 - d_n * d_n);
    r.v = 1.0 - r.p_fail * amb2;
    r.u2_minus_v2 = 2.0 * r.p_fail * (1.0 - 2.0 * alpha * beta) * (1.0 - r.p_fail);
    r.fraction = std::min(r.f0, r.f1);
    return r;
}

UnitaryScanReport singlet_fraction_unitary_scan(const Assemblage& asm_, int samples) {
    check_qubit_pair_shape(asm_, "singlet_fraction_unitary_scan");
    if (samples < 1) throw DomainError("singlet_fraction_unitary_scan: samples must be positive");
    const int steps = std::max(1, static_cast<int>(std::lround(std::cbrt(static_cast<double>(samples)))));
    UnitaryScanReport rep;
    rep.plain = singlet_fraction(asm_);
    rep.best = rep.plain;
    rep.best_unitary = CMatrix::Identity(2, 2);
    const Complex i(0.0, 1.0);
    const double pi = std::numbers::pi;
    // U = Rz(phi) Ry(theta) Rz(lambda); the grid includes the identity.
    for (int a = 0; a < steps; ++a) {
        const double phi = 2.0 * pi * a / steps;
        for (int b = 0; b < steps; ++b) {
            const double theta = pi * b / steps;
            for (int c = 0; c < steps; ++c) {
                const double lam = 2.0 * pi * c / steps;
                CMatrix u(2, 2);
                u(0, 0) = std::exp(-0.5 * i * (phi + lam)) * std::cos(theta / 2);
                u(0, 1) = -std::exp(-0.5 * i * (phi - lam)) * std::sin(theta / 2);
                u(1, 0) = std::exp(0.5 * i * (phi - lam)) * std::sin(theta / 2);
                u(1, 1) = std::exp(0.5 * i * (phi + lam)) * std::cos(theta / 2);
                std::vector<HermMat> comps;
                for (const auto& comp : asm_.components()) comps.push_back(congruence(u, comp));
                const double f = singlet_fraction_pure_form(Assemblage(2, 2, 2, std::move(comps)));
                ++rep.evaluated;
                if (f > rep.best) {
                    rep.best = f;
                    rep.best_unitary = u;
                }
            }
        }
    }
    return rep;
}

}  // namespace steerlab
