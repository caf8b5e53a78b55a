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

#ifndef STEERLAB_MATCORE_HPP
#define STEERLAB_MATCORE_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace steerlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Eigenvalues below -kPsdTolerance make a matrix "not PSD"; eigenvalues in
/// [-kPsdTolerance, 0) are treated as round-off and clamped to zero.
inline constexpr double kPsdTolerance = 1e-10;

/// Largest dimension handled by the dense Hermitian routines.
inline constexpr int kMaxDim = 64;

/// Small dense Hermitian matrix.
///
/// The constructor symmetrizes its argument as (A + A^dagger)/2, so every
/// HermMat is exactly Hermitian. Symmetrizing an exactly Hermitian matrix is
/// the identity on IEEE doubles, which keeps serialization round trips
/// bit-exact.
class HermMat {
public:
    HermMat() = default;
    explicit HermMat(const CMatrix& m);

    static HermMat zero(int dim);
    static HermMat identity(int dim);
    static HermMat diagonal(std::span<const double> values);
    static HermMat diagonal(std::initializer_list<double> values);
    /// weight * |v><v| (v is used as given, not normalized).
    static HermMat projector(const CVector& v, double weight = 1.0);

    int dim() const { return static_cast<int>(m_.rows()); }
    const CMatrix& matrix() const { return m_; }
    Complex operator()(int i, int j) const { return m_(i, j); }

    double trace() const { return m_.trace().real(); }

    HermMat operator+(const HermMat& o) const;
    HermMat operator-(const HermMat& o) const;
    HermMat operator*(double s) const;
    HermMat& operator+=(const HermMat& o);

private:
    CMatrix m_;
};

inline HermMat operator*(double s, const HermMat& a) { return a * s; }

/// Spectral decomposition A = V diag(values) V^dagger, eigenvalues ascending.
struct EigenSystem {
    std::vector<double> values;
    CMatrix vectors;
};

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
EigenSystem eigh(const HermMat& a);

double min_eigenvalue(const HermMat& a);

/// Applies f to the spectrum: V diag(f(values)) V^dagger.
template <class F>
HermMat spectral_map(const EigenSystem& es, F&& f) {
    const Eigen::Index n = es.vectors.rows();
    Eigen::VectorXd mapped(n);
    for (Eigen::Index i = 0; i < n; ++i) mapped(i) = f(es.values[static_cast<std::size_t>(i)]);
    return HermMat(es.vectors * mapped.asDiagonal() * es.vectors.adjoint());
}

/// PSD square root. Throws NotPSD if the smallest eigenvalue is below
/// -kPsdTolerance. Eigenvalues indistinguishable from round-off relative to
/// the spectral radius are set to zero before taking roots.
HermMat sqrtm_psd(const HermMat& a);

/// Uhlmann fidelity Tr sqrt(sqrt(A) B sqrt(A)) for PSD, not necessarily
/// normalized, arguments.
double uhlmann_fidelity(const HermMat& a, const HermMat& b);

HermMat kron(const HermMat& a, const HermMat& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Traces out subsystem `traced` of a multipartite operator with local
/// dimensions `dims` (row-major ordering of the tensor factors).
HermMat partial_trace(const HermMat& a, std::span<const int> dims, int traced);
CMatrix partial_trace(const CMatrix& a, std::span<const int> dims, int traced);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues set to zero).
HermMat project_psd(const HermMat& a);

/// K A K^dagger for a general square K.
HermMat congruence(const CMatrix& k, const HermMat& a);

double max_abs_diff(const HermMat& a, const HermMat& b);
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Trace norm ||A - B||_1 / 2.
double trace_distance(const HermMat& a, const HermMat& b);

bool is_psd(const HermMat& a, double tol = kPsdTolerance);

}  // namespace steerlab

#endif  // STEERLAB_MATCORE_HPP
