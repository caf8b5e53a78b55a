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

#ifndef STEERLAB_SDP_HPP
#define STEERLAB_SDP_HPP

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "steerlab/matcore.hpp"

namespace steerlab::sdp {

/// Block-diagonal semidefinite program in standard form
///
///     minimize   <C, X>
///     subject to <A_i, X> = b_i,   i = 0..n_constraints-1
///                X = diag(X_0, ..., X_{k-1}) >= 0
///
/// with dual  maximize b.y  subject to  C - sum_i y_i A_i = S >= 0.
/// All blocks are dense real symmetric. Each constraint stores only the
/// blocks it touches.
struct Problem {
    struct Term {
        int block;
        Eigen::MatrixXd matrix;
    };

    std::vector<int> block_sizes;
    std::vector<Eigen::MatrixXd> objective;      // one entry per block; empty means zero
    std::vector<std::vector<Term>> constraints;  // A_i as a list of block terms
    Eigen::VectorXd rhs;

    int add_block(int size);
    int add_constraint(std::vector<Term> terms, double b);
};

enum class Status { kOptimal, kIterationLimit, kNumericalTrouble };

const char* to_string(Status s);

struct Options {
    double tolerance = 1e-10;  // relative gap and scaled infeasibilities
    int max_iterations = 100;
    double step_fraction = 0.98;
};

struct Solution {
    Status status = Status::kNumericalTrouble;
    std::vector<Eigen::MatrixXd> x;
    std::vector<Eigen::MatrixXd> s;
    Eigen::VectorXd y;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double primal_infeasibility = 0.0;  // ||b - A(X)||_2
    double dual_infeasibility = 0.0;    // ||C - A*(y) - S||_F
    int iterations = 0;
};

/// Mehrotra predictor-corrector with the HKM search direction and a dense
/// Schur complement. Intended for problems with at most a few hundred
/// constraints and small blocks.
Solution solve(const Problem& problem, const Options& options = {});

/// Real embedding of Hermitian matrices. H = Hr + i Hi maps to the real
/// symmetric block [[Hr, -Hi], [Hi, Hr]] / 2 when used as a constraint
/// matrix, so that <embed(G), X> = Re Tr(G hermitian_part(X)).
Eigen::MatrixXd embed_functional(const CMatrix& g);

/// Inverse direction: the Hermitian matrix represented by a 2d x 2d real
/// symmetric block, ((X11 + X22) + i (X21 - X12)) / 2. PSD blocks give PSD
/// results.
CMatrix hermitian_part(const Eigen::MatrixXd& x);

/// Hermitian basis G_k, k < d^2, with Re Tr(G_k H) running over the real
/// coordinates of H: diagonal entries, then Re and Im of each upper entry.
std::vector<CMatrix> coordinate_functionals(int dim);

}  // namespace steerlab::sdp

#endif  // STEERLAB_SDP_HPP
