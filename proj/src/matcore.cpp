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

#include "steerlab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "steerlab/errors.hpp"

namespace steerlab {

namespace {

void require_square(const CMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
    }
}

void require_same_dim(const HermMat& a, const HermMat& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a.dim()) + " and " +
                                std::to_string(b.dim()));
    }
}

// Eigenvalues at or below this are zero for root-taking purposes.
double roundoff_floor(const std::vector<double>& values) {
    double scale = 0.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    return scale * static_cast<double>(values.size()) * std::numeric_limits<double>::epsilon() * 4.0;
}

void check_psd_spectrum(const std::vector<double>& values, const char* what) {
    if (!values.empty() && values.front() < -kPsdTolerance) {
        throw NotPSD(std::string(what) + ": smallest eigenvalue " + std::to_string(values.front()));
    }
}

}  // namespace

HermMat::HermMat(const CMatrix& m) {
    require_square(m, "HermMat");
    m_ = (m + m.adjoint()) * 0.5;
}

HermMat HermMat::zero(int dim) { return HermMat(CMatrix::Zero(dim, dim)); }

HermMat HermMat::identity(int dim) { return HermMat(CMatrix::Identity(dim, dim)); }

HermMat HermMat::diagonal(std::span<const double> values) {
    const auto n = static_cast<Eigen::Index>(values.size());
    CMatrix m = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
    return HermMat(m);
}

HermMat HermMat::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

HermMat HermMat::projector(const CVector& v, double weight) { return HermMat(weight * v * v.adjoint()); }

HermMat HermMat::operator+(const HermMat& o) const {
    require_same_dim(*this, o, "HermMat::operator+");
    HermMat r;
    r.m_ = m_ + o.m_;
    return r;
}

HermMat HermMat::operator-(const HermMat& o) const {
    require_same_dim(*this, o, "HermMat::operator-");
    HermMat r;
    r.m_ = m_ - o.m_;
    return r;
}

HermMat HermMat::operator*(double s) const {
    HermMat r;
    r.m_ = m_ * s;
    return r;
}

HermMat& HermMat::operator+=(const HermMat& o) {
    require_same_dim(*this, o, "HermMat::operator+=");
    m_ += o.m_;
    return *this;
}

EigenSystem eigh(const HermMat& a) {
    const int n = a.dim();
    if (n > kMaxDim) throw DimensionMismatch("eigh: dimension " + std::to_string(n) + " exceeds limit");
    CMatrix m = a.matrix();
    CMatrix v = CMatrix::Identity(n, n);

    const double total = m.norm();
    const double target = std::max(total, std::numeric_limits<double>::min()) * 1e-17;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(m(p, q));
        if (std::sqrt(2.0 * off) <= target) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex b = m(p, q);
                const double mag = std::abs(b);
                if (mag == 0.0) continue;
                const Complex phase = b / mag;
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                // Smaller root of t^2 + 2 tau t - 1 = 0 keeps |theta| <= pi/4.
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                            : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex jpq = s * phase;             // J(p,q)
                const Complex jqp = -s * std::conj(phase);  // J(q,p)

                for (int k = 0; k < n; ++k) {
                    const Complex mkp = m(k, p);
                    const Complex mkq = m(k, q);
                    m(k, p) = mkp * c + mkq * jqp;
                    m(k, q) = mkp * jpq + mkq * c;
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * c;
                }
                for (int k = 0; k < n; ++k) {
                    const Complex mpk = m(p, k);
                    const Complex mqk = m(q, k);
                    m(p, k) = c * mpk + std::conj(jqp) * mqk;
                    m(q, k) = std::conj(jpq) * mpk + c * mqk;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                m(p, p) = m(p, p).real();
                m(q, q) = m(q, q).real();
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return m(i, i).real() < m(j, j).real(); });
    EigenSystem es;
    es.values.reserve(static_cast<std::size_t>(n));
    es.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        es.values.push_back(m(src, src).real());
        es.vectors.col(k) = v.col(src);
    }
    return es;
}

double min_eigenvalue(const HermMat& a) {
    if (a.dim() == 0) return 0.0;
    return eigh(a).values.front();
}

HermMat sqrtm_psd(const HermMat& a) {
    const EigenSystem es = eigh(a);
    check_psd_spectrum(es.values, "sqrtm_psd");
    const double floor = roundoff_floor(es.values);
    return spectral_map(es, [floor](double x) { return x <= floor ? 0.0 : std::sqrt(x); });
}

double uhlmann_fidelity(const HermMat& a, const HermMat& b) {
    require_same_dim(a, b, "uhlmann_fidelity");
    const EigenSystem ea = eigh(a);
    const EigenSystem eb = eigh(b);
    check_psd_spectrum(ea.values, "uhlmann_fidelity");
    check_psd_spectrum(eb.values, "uhlmann_fidelity");
    const double floor_a = roundoff_floor(ea.values);
    const HermMat ra = spectral_map(ea, [floor_a](double x) { return x <= floor_a ? 0.0 : std::sqrt(x); });
    const HermMat inner(ra.matrix() * b.matrix() * ra.matrix());
    // Rounding in the product scales with |A| |B|, not with its own spectrum.
    const double scale = std::abs(ea.values.back()) * std::abs(eb.values.back());
    const double floor = scale * static_cast<double>(a.dim()) * std::numeric_limits<double>::epsilon() * 4.0;
    double f = 0.0;
    for (double x : eigh(inner).values)
        if (x > floor) f += std::sqrt(x);
    return f;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

HermMat kron(const HermMat& a, const HermMat& b) {
    if (static_cast<long>(a.dim()) * b.dim() > kMaxDim) {
        throw DimensionMismatch("kron: product dimension exceeds " + std::to_string(kMaxDim));
    }
    return HermMat(kron(a.matrix(), b.matrix()));
}

CMatrix partial_trace(const CMatrix& a, std::span<const int> dims, int traced) {
    require_square(a, "partial_trace");
    if (dims.empty() || traced < 0 || traced >= static_cast<int>(dims.size())) {
        throw DimensionMismatch("partial_trace: traced index out of range");
    }
    long total = 1;
    for (int d : dims) {
        if (d <= 0) throw DimensionMismatch("partial_trace: nonpositive subsystem dimension");
        total *= d;
    }
    if (total != a.rows()) {
        throw DimensionMismatch("partial_trace: subsystem dimensions multiply to " + std::to_string(total) +
                                ", matrix has " + std::to_string(a.rows()));
    }
    const int dt = dims[static_cast<std::size_t>(traced)];
    // Index = (outer * dt + t) * inner + in, with inner the product of trailing dims.
    long inner = 1;
    for (std::size_t k = static_cast<std::size_t>(traced) + 1; k < dims.size(); ++k) inner *= dims[k];
    const long outer = total / (dt * inner);
    const long kept = outer * inner;

    CMatrix r = CMatrix::Zero(kept, kept);
    for (long o1 = 0; o1 < outer; ++o1)
        for (long i1 = 0; i1 < inner; ++i1)
            for (long o2 = 0; o2 < outer; ++o2)
                for (long i2 = 0; i2 < inner; ++i2) {
                    Complex acc = 0.0;
                    for (long t = 0; t < dt; ++t) {
                        acc += a((o1 * dt + t) * inner + i1, (o2 * dt + t) * inner + i2);
                    }
                    r(o1 * inner + i1, o2 * inner + i2) = acc;
                }
    return r;
}

HermMat partial_trace(const HermMat& a, std::span<const int> dims, int traced) {
    return HermMat(partial_trace(a.matrix(), dims, traced));
}

HermMat project_psd(const HermMat& a) {
    return spectral_map(eigh(a), [](double x) { return std::max(x, 0.0); });
}

HermMat congruence(const CMatrix& k, const HermMat& a) {
    if (k.cols() != a.dim()) throw DimensionMismatch("congruence: operator does not act on the matrix space");
    return HermMat(k * a.matrix() * k.adjoint());
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("max_abs_diff: shapes differ");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const HermMat& a, const HermMat& b) { return max_abs_diff(a.matrix(), b.matrix()); }

double trace_distance(const HermMat& a, const HermMat& b) {
    double s = 0.0;
    for (double x : eigh(a - b).values) s += std::abs(x);
    return 0.5 * s;
}

bool is_psd(const HermMat& a, double tol) { return a.dim() == 0 || min_eigenvalue(a) >= -tol; }

}  // namespace steerlab
