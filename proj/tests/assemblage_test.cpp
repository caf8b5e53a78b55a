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


#include "steerlab/assemblage.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "steerlab/errors.hpp"
#include "steerlab/io.hpp"
#include "test_util.hpp"

using namespace steerlab;

namespace {

bool has_kind(const std::vector<Violation>& vs, Violation::Kind kind) {
    for (const auto& v : vs)
        if (v.kind == kind) return true;
    return false;
}

Assemblage with_component(const Assemblage& asm_, int a, int x, const HermMat& value) {
    std::vector<HermMat> comps = asm_.components();
    comps[static_cast<std::size_t>(x * asm_.n_outputs() + a)] = value;
    return Assemblage(asm_.n_inputs(), asm_.n_outputs(), asm_.dim(), std::move(comps));
}

HermMat alpha_state(double alpha2) {
    CVector psi = CVector::Zero(4);
    psi(0) = std::sqrt(alpha2);
    psi(3) = std::sqrt(1.0 - alpha2);
    return HermMat::projector(psi);
}

}  // namespace

TEST(assemblage, singlet_components) {
    const Assemblage s = singlet_assemblage();
    EXPECT_TRUE(validate(s).empty());
    EXPECT_LT(max_abs_diff(s.component(0, 0), HermMat::diagonal({0.5, 0.0})), 1e-16);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) EXPECT_NEAR(s.component(0, 1)(i, j).real(), 0.25, 1e-16);
    EXPECT_LT(max_abs_diff(s.reduced_state(), HermMat::identity(2) * 0.5), 1e-16);
    EXPECT_LT(max_abs_diff(s.marginal(1), HermMat::identity(2) * 0.5), 1e-15);
}

TEST(assemblage, alpha_components) {
    const Assemblage a = alpha_assemblage(0.8);
    EXPECT_TRUE(validate(a).empty());
    EXPECT_LT(max_abs_diff(a.component(0, 0), HermMat::diagonal({0.8, 0.0})), 1e-15);
    EXPECT_NEAR(a.component(0, 1)(0, 1).real(), 0.2, 1e-15);
    EXPECT_NEAR(a.component(1, 1)(0, 1).real(), -0.2, 1e-15);
    EXPECT_NEAR(a.probability(0, 1), 0.5, 1e-15);
}

TEST(assemblage, alpha_domain) {
    EXPECT_THROW(alpha_assemblage(0.5), DomainError);
    EXPECT_THROW(alpha_assemblage(1.0), DomainError);
    EXPECT_THROW(alpha_assemblage(0.4), DomainError);
    EXPECT_LT(max_abs_diff(alpha_assemblage(0.5 + 1e-9), singlet_assemblage()), 1e-8);
}

TEST(assemblage, validate_reports_trace_and_no_signalling) {
    const Assemblage s = singlet_assemblage();
    const auto vs = validate(with_component(s, 0, 0, s.component(0, 0) * 2.0));
    EXPECT_TRUE(has_kind(vs, Violation::Kind::kTrace));
    EXPECT_TRUE(has_kind(vs, Violation::Kind::kNoSignalling));
    EXPECT_FALSE(has_kind(vs, Violation::Kind::kPsd));
}

TEST(assemblage, validate_reports_psd_location) {
    const Assemblage s = singlet_assemblage();
    const auto vs = validate(with_component(s, 0, 1, s.component(0, 1) * -1.0));
    ASSERT_TRUE(has_kind(vs, Violation::Kind::kPsd));
    for (const auto& v : vs) {
        if (v.kind != Violation::Kind::kPsd) continue;
        EXPECT_EQ(v.a, 0);
        EXPECT_EQ(v.x, 1);
        EXPECT_NEAR(v.magnitude, 0.5, 1e-12);
        EXPECT_FALSE(v.message.empty());
    }
    EXPECT_THROW(require_valid(with_component(s, 0, 1, s.component(0, 1) * -1.0), "test"), ValidationError);
}

TEST(assemblage, constructor_checks_shape) {
    EXPECT_THROW(Assemblage(2, 2, 2, {HermMat::identity(2)}), ShapeMismatch);
    EXPECT_THROW(Assemblage(1, 2, 2, {HermMat::identity(2), HermMat::identity(3)}), DimensionMismatch);
    EXPECT_THROW(singlet_assemblage().component(2, 0), DomainError);
}

TEST(assemblage, from_state_matches_constructors) {
    const double h = 1.0 / std::sqrt(2.0);
    CVector phi = CVector::Zero(4);
    phi(0) = h;
    phi(3) = h;
    EXPECT_LT(max_abs_diff(from_state(HermMat::projector(phi), pauli_zx_measurements()), singlet_assemblage()), 1e-15);
    for (double alpha2 = 0.55; alpha2 < 0.96; alpha2 += 0.05) {
        EXPECT_LT(max_abs_diff(from_state(alpha_state(alpha2), pauli_zx_measurements()), alpha_assemblage(alpha2)),
                  1e-12);
    }
}

TEST(assemblage, from_state_product_form) {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 10; ++rep) {
        const HermMat rho_b = testutil::random_density(2, rng);
        const MeasurementSet meas = testutil::random_projective_measurements(3, 2, rng);
        const Assemblage out = from_state(kron(HermMat::identity(2) * 0.5, rho_b), meas);
        EXPECT_TRUE(validate(out).empty());
        for (int x = 0; x < 3; ++x)
            for (int a = 0; a < 2; ++a)
                EXPECT_LT(max_abs_diff(out.component(a, x), rho_b * out.probability(a, x)), 1e-12);
    }
}

TEST(assemblage, from_state_errors) {
    EXPECT_THROW(from_state(HermMat::identity(3) * (1.0 / 3.0), pauli_zx_measurements()), DimensionMismatch);
    MeasurementSet bad = pauli_zx_measurements();
    bad.elements[0][0] = HermMat::diagonal({0.5, 0.0});
    EXPECT_FALSE(validate(bad).empty());
    EXPECT_THROW(from_state(alpha_state(0.8), bad), ValidationError);
}

TEST(assemblage, tensor_singlet_with_itself) {
    const Assemblage t = tensor(singlet_assemblage(), singlet_assemblage());
    EXPECT_EQ(t.n_inputs(), 4);
    EXPECT_EQ(t.n_outputs(), 4);
    EXPECT_EQ(t.dim(), 4);
    EXPECT_TRUE(validate(t).empty());
    EXPECT_LT(max_abs_diff(t.component(0, 0), HermMat::diagonal({0.25, 0.0, 0.0, 0.0})), 1e-16);
    // (a1, a2) = (1, 0), (x1, x2) = (0, 1)
    const Assemblage s = singlet_assemblage();
    EXPECT_LT(max_abs_diff(t.component(2, 1), kron(s.component(1, 0), s.component(0, 1))), 1e-16);
}

TEST(assemblage, tensor_with_deterministic_product) {
    std::mt19937_64 rng(23);
    const HermMat rho = testutil::random_density(2, rng);
    const Assemblage det(2, 2, 2, {rho, HermMat::zero(2), rho, HermMat::zero(2)});
    const Assemblage a = alpha_assemblage(0.7);
    const Assemblage t = tensor(a, det);
    for (int x1 = 0; x1 < 2; ++x1)
        for (int a1 = 0; a1 < 2; ++a1)
            for (int x2 = 0; x2 < 2; ++x2)
                EXPECT_LT(max_abs_diff(t.component(a1 * 2, x1 * 2 + x2), kron(a.component(a1, x1), rho)), 1e-15);
}

TEST(assemblage, tensor_is_associative) {
    std::mt19937_64 rng(29);
    const Assemblage a = testutil::random_qubit_assemblage(rng);
    const Assemblage b = testutil::random_qubit_assemblage(rng);
    const Assemblage c = testutil::random_qubit_assemblage(rng);
    EXPECT_LT(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 1e-15);
}

TEST(assemblage, mix_is_convex_combination) {
    const Assemblage m = mix(singlet_assemblage(), alpha_assemblage(0.8), 0.4);
    EXPECT_TRUE(validate(m).empty());
    EXPECT_NEAR(m.component(0, 0)(0, 0).real(), 0.4 * 0.5 + 0.6 * 0.8, 1e-15);
    EXPECT_THROW(mix(singlet_assemblage(), tensor(singlet_assemblage(), singlet_assemblage()), 0.5), ShapeMismatch);
}

TEST(assemblage, json_round_trip_is_bit_exact) {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        const Assemblage a = testutil::random_qubit_assemblage(rng, 1 + rep % 3);
        const Assemblage back = assemblage_from_json(Json::parse(to_json(a).dump()));
        ASSERT_TRUE(a.same_shape(back));
        for (std::size_t i = 0; i < a.components().size(); ++i)
            EXPECT_TRUE(a.components()[i].matrix() == back.components()[i].matrix());
    }
}

TEST(assemblage, json_schema_fields) {
    const Json j = to_json(alpha_assemblage(0.8));
    EXPECT_EQ(j.at("schema"), "assemblage/v1");
    EXPECT_EQ(j.at("m"), 2);
    EXPECT_EQ(j.at("o"), 2);
    EXPECT_EQ(j.at("dim"), 2);
    EXPECT_EQ(j.at("components").size(), 4u);
    EXPECT_DOUBLE_EQ(j.at("components")[0].at("matrix")[0][0][0].get<double>(), 0.8);
}

TEST(assemblage, json_rejects_malformed) {
    Json j = to_json(singlet_assemblage());
    j["components"].erase(j["components"].begin());
    EXPECT_THROW(assemblage_from_json(j), ParseError);
    EXPECT_THROW(assemblage_from_json(Json::parse(R"({"schema":"other"})")), ParseError);
    EXPECT_THROW(assemblage_from_json(Json::array()), ParseError);
}

TEST(assemblage, state_and_measurement_json_round_trip) {
    const HermMat s = alpha_state(0.8);
    int dim_a = 0;
    const HermMat back = state_from_json(state_to_json(s, 2, 2), &dim_a);
    EXPECT_EQ(dim_a, 2);
    EXPECT_TRUE(back.matrix() == s.matrix());
    const MeasurementSet m = measurements_from_json(to_json(pauli_zx_measurements()));
    EXPECT_EQ(m.n_inputs(), 2);
    EXPECT_EQ(m.n_outputs(), 2);
    EXPECT_LT(max_abs_diff(from_state(s, m), alpha_assemblage(0.8)), 1e-12);
}
