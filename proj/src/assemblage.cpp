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

#include <array>
#include <cmath>
#include <sstream>

#include "steerlab/errors.hpp"

namespace steerlab {

namespace {

std::string describe(const std::vector<Violation>& vs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) os << "; ";
        os << vs[i].message;
    }
    return os.str();
}

}  // namespace

Assemblage::Assemblage(int n_inputs, int n_outputs, int dim, std::vector<HermMat> components)
    : m_(n_inputs), o_(n_outputs), dim_(dim), comps_(std::move(components)) {
    if (m_ <= 0 || o_ <= 0 || dim_ <= 0) throw DomainError("Assemblage: inputs, outputs and dim must be positive");
    if (comps_.size() != static_cast<std::size_t>(m_) * static_cast<std::size_t>(o_)) {
        throw ShapeMismatch("Assemblage: expected " + std::to_string(m_ * o_) + " components, got " +
                            std::to_string(comps_.size()));
    }
    for (const auto& c : comps_) {
        if (c.dim() != dim_) throw DimensionMismatch("Assemblage: component dimension differs from dim");
    }
}

const HermMat& Assemblage::component(int a, int x) const {
    if (a < 0 || a >= o_ || x < 0 || x >= m_) {
        throw DomainError("Assemblage: index (a=" + std::to_string(a) + ", x=" + std::to_string(x) +
                          ") out of range");
    }
    return comps_[static_cast<std::size_t>(x * o_ + a)];
}

HermMat Assemblage::conditional_state(int a, int x) const {
    const HermMat& c = component(a, x);
    const double p = c.trace();
    if (p < kNegligibleTrace) return HermMat::zero(dim_);
    return c * (1.0 / p);
}

HermMat Assemblage::marginal(int x) const {
    HermMat sum = HermMat::zero(dim_);
    for (int a = 0; a < o_; ++a) sum += component(a, x);
    return sum;
}

int MeasurementSet::dim() const {
    if (elements.empty() || elements.front().empty()) return 0;
    return elements.front().front().dim();
}

const char* to_string(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::kPsd: return "psd";
        case Violation::Kind::kNoSignalling: return "no-signalling";
        case Violation::Kind::kTrace: return "trace";
        case Violation::Kind::kShape: return "shape";
    }
    return "unknown";
}

std::vector<Violation> validate(const Assemblage& asm_, double tol) {
    std::vector<Violation> out;
    if (asm_.n_inputs() <= 0 || asm_.n_outputs() <= 0) {
        out.push_back({Violation::Kind::kShape, -1, -1, 0.0, "shape: empty assemblage"});
        return out;
    }
    for (int x = 0; x < asm_.n_inputs(); ++x) {
        for (int a = 0; a < asm_.n_outputs(); ++a) {
            const double lo = min_eigenvalue(asm_.component(a, x));
            if (lo < -tol) {
                std::ostringstream os;
                os << "psd: sigma(" << a << "|" << x << ") has eigenvalue " << lo;
                out.push_back({Violation::Kind::kPsd, a, x, -lo, os.str()});
            }
        }
    }
    const HermMat rho0 = asm_.marginal(0);
    for (int x = 0; x < asm_.n_inputs(); ++x) {
        const HermMat rho = asm_.marginal(x);
        const double tr_err = std::abs(rho.trace() - 1.0);
        if (tr_err > tol) {
            std::ostringstream os;
            os << "trace: sum_a Tr sigma(a|" << x << ") = " << rho.trace();
            out.push_back({Violation::Kind::kTrace, -1, x, tr_err, os.str()});
        }
        if (x == 0) continue;
        const double ns_err = max_abs_diff(rho, rho0);
        if (ns_err > tol) {
            std::ostringstream os;
            os << "no-signalling: marginal of input " << x << " differs from input 0 by " << ns_err;
            out.push_back({Violation::Kind::kNoSignalling, -1, x, ns_err, os.str()});
        }
    }
    return out;
}

std::vector<Violation> validate(const MeasurementSet& meas, double tol) {
    std::vector<Violation> out;
    if (meas.elements.empty()) {
        out.push_back({Violation::Kind::kShape, -1, -1, 0.0, "shape: no inputs"});
        return out;
    }
    const int o = meas.n_outputs();
    const int d = meas.dim();
    for (int x = 0; x < meas.n_inputs(); ++x) {
        const auto& povm = meas.elements[static_cast<std::size_t>(x)];
        if (static_cast<int>(povm.size()) != o || o == 0) {
            out.push_back({Violation::Kind::kShape, -1, x, 0.0, "shape: inputs have different outcome counts"});
            continue;
        }
        HermMat sum = HermMat::zero(d);
        bool dims_ok = true;
        for (int a = 0; a < o; ++a) {
            const HermMat& e = povm[static_cast<std::size_t>(a)];
            if (e.dim() != d) {
                dims_ok = false;
                break;
            }
            const double lo = min_eigenvalue(e);
            if (lo < -tol) {
                std::ostringstream os;
                os << "psd: M(" << a << "|" << x << ") has eigenvalue " << lo;
                out.push_back({Violation::Kind::kPsd, a, x, -lo, os.str()});
            }
            sum += e;
        }
        if (!dims_ok) {
            out.push_back({Violation::Kind::kShape, -1, x, 0.0, "shape: POVM elements of different dimension"});
            continue;
        }
        const double err = max_abs_diff(sum, HermMat::identity(d));
        if (err > tol) {
            std::ostringstream os;
            os << "completeness: POVM of input " << x << " sums to identity only within " << err;
            out.push_back({Violation::Kind::kTrace, -1, x, err, os.str()});
        }
    }
    return out;
}

void require_valid(const Assemblage& asm_, const char* context) {
    const auto vs = validate(asm_);
    if (!vs.empty()) throw ValidationError(std::string(context) + ": invalid assemblage: " + describe(vs));
}

Assemblage singlet_assemblage() {
    const double h = 1.0 / std::sqrt(2.0);
    CVector plus(2), minus(2);
    plus << h, h;
    minus << h, -h;
    return Assemblage(2, 2, 2,
                      {HermMat::diagonal({0.5, 0.0}), HermMat::diagonal({0.0, 0.5}),
                       HermMat::projector(plus, 0.5), HermMat::projector(minus, 0.5)});
}

CVector alpha_plus(double alpha2) {
    CVector v(2);
    v << std::sqrt(alpha2), std::sqrt(1.0 - alpha2);
    return v;
}

CVector alpha_minus(double alpha2) {
    CVector v(2);
    v << std::sqrt(alpha2), -std::sqrt(1.0 - alpha2);
    return v;
}

Assemblage alpha_assemblage(double alpha2) {
    if (!(alpha2 > 0.5 && alpha2 < 1.0)) {
        throw DomainError("alpha_assemblage: alpha2 must lie in (1/2, 1), got " + std::to_string(alpha2));
    }
    const double beta2 = 1.0 - alpha2;
    return Assemblage(2, 2, 2,
                      {HermMat::diagonal({alpha2, 0.0}), HermMat::diagonal({0.0, beta2}),
                       HermMat::projector(alpha_plus(alpha2), 0.5), HermMat::projector(alpha_minus(alpha2), 0.5)});
}

MeasurementSet pauli_zx_measurements() {
    const double h = 1.0 / std::sqrt(2.0);
    CVector plus(2), minus(2);
    plus << h, h;
    minus << h, -h;
    return MeasurementSet{{{HermMat::diagonal({1.0, 0.0}), HermMat::diagonal({0.0, 1.0})},
                           {HermMat::projector(plus), HermMat::projector(minus)}}};
}

Assemblage from_state(const HermMat& state, const MeasurementSet& meas) {
    if (const auto vs = validate(meas); !vs.empty()) {
        throw ValidationError("from_state: invalid measurement set: " + describe(vs));
    }
    const int da = meas.dim();
    if (da <= 0 || state.dim() % da != 0) {
        throw DimensionMismatch("from_state: state dimension " + std::to_string(state.dim()) +
                                " is not a multiple of Alice's dimension " + std::to_string(da));
    }
    const int db = state.dim() / da;
    if (std::abs(state.trace() - 1.0) > kValidationTolerance) {
        throw ValidationError("from_state: state trace is " + std::to_string(state.trace()));
    }
    if (const double lo = min_eigenvalue(state); lo < -kValidationTolerance) {
        throw ValidationError("from_state: state has eigenvalue " + std::to_string(lo));
    }
    const std::array<int, 2> dims{da, db};
    const CMatrix id_b = CMatrix::Identity(db, db);
    std::vector<HermMat> comps;
    comps.reserve(static_cast<std::size_t>(meas.n_inputs() * meas.n_outputs()));
    for (int x = 0; x < meas.n_inputs(); ++x) {
        for (int a = 0; a < meas.n_outputs(); ++a) {
            const CMatrix lifted = kron(meas.elements[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)].matrix(), id_b);
            comps.emplace_back(partial_trace(CMatrix(lifted * state.matrix()), dims, 0));
        }
    }
    return Assemblage(meas.n_inputs(), meas.n_outputs(), db, std::move(comps));
}

Assemblage tensor(const Assemblage& lhs, const Assemblage& rhs) {
    const int m = lhs.n_inputs() * rhs.n_inputs();
    const int o = lhs.n_outputs() * rhs.n_outputs();
    if (static_cast<long>(lhs.dim()) * rhs.dim() > kMaxDim) {
        throw DimensionMismatch("tensor: Bob dimension would exceed " + std::to_string(kMaxDim));
    }
    std::vector<HermMat> comps;
    comps.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(o));
    for (int x1 = 0; x1 < lhs.n_inputs(); ++x1)
        for (int x2 = 0; x2 < rhs.n_inputs(); ++x2)
            for (int a1 = 0; a1 < lhs.n_outputs(); ++a1)
                for (int a2 = 0; a2 < rhs.n_outputs(); ++a2)
                    comps.push_back(kron(lhs.component(a1, x1), rhs.component(a2, x2)));
    return Assemblage(m, o, lhs.dim() * rhs.dim(), std::move(comps));
}

Assemblage mix(const Assemblage& lhs, const Assemblage& rhs, double p) {
    if (!lhs.same_shape(rhs)) throw ShapeMismatch("mix: assemblages have different shapes");
    std::vector<HermMat> comps;
    comps.reserve(lhs.components().size());
    for (std::size_t i = 0; i < lhs.components().size(); ++i) {
        comps.push_back(lhs.components()[i] * p + rhs.components()[i] * (1.0 - p));
    }
    return Assemblage(lhs.n_inputs(), lhs.n_outputs(), lhs.dim(), std::move(comps));
}

double max_abs_diff(const Assemblage& lhs, const Assemblage& rhs) {
    if (!lhs.same_shape(rhs)) throw ShapeMismatch("max_abs_diff: assemblages have different shapes");
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.components().size(); ++i) {
        worst = std::max(worst, max_abs_diff(lhs.components()[i], rhs.components()[i]));
    }
    return worst;
}

}  // namespace steerlab
