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
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/QR>

#include "steerlab/errors.hpp"
#include "steerlab/sdp.hpp"

namespace steerlab {

namespace {

int count_strategies(const Assemblage& asm_) {
    long n = 1;
    for (int x = 0; x < asm_.n_inputs(); ++x) {
        n *= asm_.n_outputs();
        if (n > kMaxStrategies) {
            throw DomainError("LHS programs support at most " + std::to_string(kMaxStrategies) +
                              " deterministic strategies (o^m)");
        }
    }
    return static_cast<int>(n);
}

double coordinate(const CMatrix& functional, const HermMat& h) {
    return (functional * h.matrix()).trace().real();
}

// Product assemblage with uniform outcomes; admits an LHS model.
Assemblage uniform_product(const Assemblage& like) {
    const HermMat rho = like.reduced_state() * (1.0 / like.n_outputs());
    return Assemblage(like.n_inputs(), like.n_outputs(), like.dim(),
                      std::vector<HermMat>(like.components().size(), rho));
}

Assemblage combine(const Assemblage& sigma, const Assemblage& noise, double t) {
    std::vector<HermMat> comps;
    comps.reserve(sigma.components().size());
    for (std::size_t i = 0; i < sigma.components().size(); ++i) {
        comps.push_back((sigma.components()[i] + noise.components()[i] * t) * (1.0 / (1.0 + t)));
    }
    return Assemblage(sigma.n_inputs(), sigma.n_outputs(), sigma.dim(), std::move(comps));
}

// Sum_l D_l(a|x) blocks[l] for every (a, x).
Assemblage deterministic_sum(const std::vector<HermMat>& blocks, int m, int o, int dim) {
    std::vector<HermMat> comps(static_cast<std::size_t>(m * o), HermMat::zero(dim));
    for (std::size_t l = 0; l < blocks.size(); ++l)
        for (int x = 0; x < m; ++x) {
            const int a = strategy_output(static_cast<int>(l), x, m, o);
            comps[static_cast<std::size_t>(x * o + a)] += blocks[l];
        }
    return Assemblage(m, o, dim, std::move(comps));
}

struct Embedded {
    std::vector<CMatrix> functionals;
    std::vector<Eigen::MatrixXd> embedded;
};

Embedded make_functionals(int dim) {
    Embedded e;
    e.functionals = sdp::coordinate_functionals(dim);
    for (const auto& g : e.functionals) e.embedded.push_back(sdp::embed_functional(g));
    return e;
}

void check_solution(const sdp::Solution& sol, double residual, const LhsOptions& options, const char* context) {
    if (sol.status == sdp::Status::kOptimal && residual <= options.residual_tolerance) return;
    const double gap = std::abs(sol.primal_objective - sol.dual_objective);
    if (residual <= options.residual_tolerance && gap <= 1e-7) return;
    throw SolverFailure(std::string(context) + ": interior-point solver stopped (" + sdp::to_string(sol.status) +
                        ") after " + std::to_string(sol.iterations) + " iterations, residual " +
                        std::to_string(residual) + ", gap " + std::to_string(gap));
}

RobustnessResult solve_lhs_noise(const Assemblage& sigma, const LhsOptions& options) {
    const int m = sigma.n_inputs();
    const int o = sigma.n_outputs();
    const int d = sigma.dim();
    const int n_strat = count_strategies(sigma);
    const Embedded f = make_functionals(d);

    // sigma = sum_l D_l (A_l - B_l), minimize sum_l Tr B_l.
    sdp::Problem p;
    std::vector<int> a_blocks, b_blocks;
    for (int l = 0; l < n_strat; ++l) a_blocks.push_back(p.add_block(2 * d));
    for (int l = 0; l < n_strat; ++l) {
        b_blocks.push_back(p.add_block(2 * d));
        p.objective[static_cast<std::size_t>(b_blocks.back())] = 0.5 * Eigen::MatrixXd::Identity(2 * d, 2 * d);
    }
    // The last outcome of every input x >= 1 is implied by no-signalling.
    for (int x = 0; x < m; ++x) {
        for (int a = 0; a < o; ++a) {
            if (x > 0 && a == o - 1) continue;
            for (std::size_t k = 0; k < f.functionals.size(); ++k) {
                std::vector<sdp::Problem::Term> terms;
                for (int l = 0; l < n_strat; ++l) {
                    if (strategy_output(l, x, m, o) != a) continue;
                    terms.push_back({a_blocks[static_cast<std::size_t>(l)], f.embedded[k]});
                    terms.push_back({b_blocks[static_cast<std::size_t>(l)], -f.embedded[k]});
                }
                p.add_constraint(std::move(terms), coordinate(f.functionals[k], sigma.component(a, x)));
            }
        }
    }

    const sdp::Solution sol = sdp::solve(p, {options.solver_tolerance, options.max_iterations, 0.98});

    std::vector<HermMat> a_w, b_w;
    double t = 0.0;
    for (int l = 0; l < n_strat; ++l) {
        a_w.emplace_back(sdp::hermitian_part(sol.x[static_cast<std::size_t>(a_blocks[static_cast<std::size_t>(l)])]));
        b_w.emplace_back(sdp::hermitian_part(sol.x[static_cast<std::size_t>(b_blocks[static_cast<std::size_t>(l)])]));
        t += b_w.back().trace();
    }
    t = std::max(t, 0.0);

    RobustnessResult r;
    r.flavor = RobustnessFlavor::kLhsNoise;
    r.t_star = t;
    r.dual_bound = sol.dual_objective;
    r.solver_iters = sol.iterations;
    if (t > options.feasibility_gap) {
        const Assemblage raw = deterministic_sum(b_w, m, o, d);
        std::vector<HermMat> comps;
        for (const auto& c : raw.components()) comps.push_back(c * (1.0 / t));
        r.noise = Assemblage(m, o, d, std::move(comps));
    } else {
        r.noise = uniform_product(sigma);
    }
    r.mixed = combine(sigma, r.noise, t);
    r.certificate.n_inputs = m;
    r.certificate.n_outputs = o;
    for (const auto& w : a_w) r.certificate.weights.push_back(w * (1.0 / (1.0 + t)));
    r.residual = max_abs_diff(r.certificate.reconstruct(d), r.mixed);
    check_solution(sol, r.residual, options, "lhs_robustness");
    return r;
}

RobustnessResult solve_generalized(const Assemblage& sigma, const LhsOptions& options) {
    const int m = sigma.n_inputs();
    const int o = sigma.n_outputs();
    const int d = sigma.dim();
    const int n_strat = count_strategies(sigma);
    const Embedded f = make_functionals(d);

    // sum_l D_l(a|x) W_l - S_{a|x} = sigma_{a|x}, minimize sum_l Tr W_l.
    sdp::Problem p;
    std::vector<int> w_blocks, s_blocks;
    for (int l = 0; l < n_strat; ++l) {
        w_blocks.push_back(p.add_block(2 * d));
        p.objective[static_cast<std::size_t>(w_blocks.back())] = 0.5 * Eigen::MatrixXd::Identity(2 * d, 2 * d);
    }
    for (int i = 0; i < m * o; ++i) s_blocks.push_back(p.add_block(2 * d));
    for (int x = 0; x < m; ++x) {
        for (int a = 0; a < o; ++a) {
            for (std::size_t k = 0; k < f.functionals.size(); ++k) {
                std::vector<sdp::Problem::Term> terms;
                for (int l = 0; l < n_strat; ++l) {
                    if (strategy_output(l, x, m, o) == a) terms.push_back({w_blocks[static_cast<std::size_t>(l)], f.embedded[k]});
                }
                terms.push_back({s_blocks[static_cast<std::size_t>(x * o + a)], -f.embedded[k]});
                p.add_constraint(std::move(terms), coordinate(f.functionals[k], sigma.component(a, x)));
            }
        }
    }

    const sdp::Solution sol = sdp::solve(p, {options.solver_tolerance, options.max_iterations, 0.98});

    std::vector<HermMat> w;
    double total = 0.0;
    for (int l = 0; l < n_strat; ++l) {
        w.emplace_back(sdp::hermitian_part(sol.x[static_cast<std::size_t>(w_blocks[static_cast<std::size_t>(l)])]));
        total += w.back().trace();
    }
    const double t = std::max(total - 1.0, 0.0);

    RobustnessResult r;
    r.flavor = RobustnessFlavor::kGeneralizedNoise;
    r.t_star = t;
    r.dual_bound = sol.dual_objective - 1.0;
    r.solver_iters = sol.iterations;
    if (t > options.feasibility_gap) {
        // (sum_l D_l W_l - sigma) / t rather than the slack blocks: traces
        // and no-signalling then hold exactly.
        const Assemblage raw = deterministic_sum(w, m, o, d);
        std::vector<HermMat> comps;
        for (int i = 0; i < m * o; ++i) {
            const auto k = static_cast<std::size_t>(i);
            comps.push_back((raw.components()[k] - sigma.components()[k]) * (1.0 / t));
        }
        r.noise = Assemblage(m, o, d, std::move(comps));
    } else {
        r.noise = uniform_product(sigma);
    }
    r.mixed = combine(sigma, r.noise, t);
    r.certificate.n_inputs = m;
    r.certificate.n_outputs = o;
    for (const auto& wl : w) r.certificate.weights.push_back(wl * (1.0 / (1.0 + t)));
    r.residual = max_abs_diff(r.certificate.reconstruct(d), r.mixed);
    check_solution(sol, r.residual, options, "lhs_robustness");
    return r;
}

// Orthonormal real coordinates of a Hermitian matrix: diagonal, then
// sqrt(2) Re and sqrt(2) Im of each upper entry.
void to_coords(const HermMat& h, double* out) {
    const int d = h.dim();
    int k = 0;
    for (int j = 0; j < d; ++j) out[k++] = h(j, j).real();
    for (int j = 0; j < d; ++j)
        for (int l = j + 1; l < d; ++l) {
            out[k++] = std::numbers::sqrt2 * h(j, l).real();
            out[k++] = std::numbers::sqrt2 * h(j, l).imag();
        }
}

HermMat from_coords(const double* in, int d) {
    CMatrix m = CMatrix::Zero(d, d);
    int k = 0;
    for (int j = 0; j < d; ++j) m(j, j) = in[k++];
    for (int j = 0; j < d; ++j)
        for (int l = j + 1; l < d; ++l) {
            const double re = in[k++] / std::numbers::sqrt2;
            const double im = in[k++] / std::numbers::sqrt2;
            m(j, l) = Complex(re, im);
            m(l, j) = Complex(re, -im);
        }
    return HermMat(m);
}

}  // namespace

int strategy_output(int strategy, int x, int n_inputs, int n_outputs) {
    int shift = 1;
    for (int k = x + 1; k < n_inputs; ++k) shift *= n_outputs;
    return (strategy / shift) % n_outputs;
}

Assemblage LhsModel::reconstruct(int dim) const { return deterministic_sum(weights, n_inputs, n_outputs, dim); }

const char* to_string(RobustnessFlavor f) {
    return f == RobustnessFlavor::kLhsNoise ? "lhs" : "generalized";
}

RobustnessResult lhs_robustness(const Assemblage& asm_, RobustnessFlavor flavor, const LhsOptions& options) {
    require_valid(asm_, "lhs_robustness");
    return flavor == RobustnessFlavor::kLhsNoise ? solve_lhs_noise(asm_, options) : solve_generalized(asm_, options);
}

MembershipResult lhs_membership(const Assemblage& asm_, const LhsOptions& options) {
    require_valid(asm_, "lhs_membership");
    const RobustnessResult r = solve_lhs_noise(asm_, options);
    MembershipResult out;
    out.infeasibility_gap = r.t_star;
    out.dual_bound = r.dual_bound;
    out.feasible = r.t_star <= options.feasibility_gap;
    if (out.feasible) {
        LhsModel model = r.certificate;
        for (auto& w : model.weights) w = w * (1.0 + r.t_star);
        out.residual = max_abs_diff(model.reconstruct(asm_.dim()), asm_);
        out.model = std::move(model);
    } else {
        out.residual = r.residual;
    }
    return out;
}

AlternatingResult lhs_robustness_alternating(const Assemblage& asm_, const AlternatingOptions& options) {
    require_valid(asm_, "lhs_robustness_alternating");
    const int m = asm_.n_inputs();
    const int o = asm_.n_outputs();
    const int d = asm_.dim();
    const int n_strat = count_strategies(asm_);
    const int nc = d * d;
    const int n_blocks = 2 * n_strat;  // A_0..A_{L-1}, B_0..B_{L-1}
    const int nvar = n_blocks * nc;
    const int nrows = m * o * nc + 1;

    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(nrows, nvar);
    Eigen::VectorXd h(nrows);
    std::vector<double> coords(static_cast<std::size_t>(nc));
    for (int x = 0; x < m; ++x)
        for (int a = 0; a < o; ++a) {
            to_coords(asm_.component(a, x), coords.data());
            for (int k = 0; k < nc; ++k) {
                const int row = (x * o + a) * nc + k;
                h(row) = coords[static_cast<std::size_t>(k)];
                for (int l = 0; l < n_strat; ++l) {
                    if (strategy_output(l, x, m, o) != a) continue;
                    g(row, l * nc + k) = 1.0;
                    g(row, (n_strat + l) * nc + k) = -1.0;
                }
            }
        }
    const int trace_row = nrows - 1;
    for (int l = 0; l < n_strat; ++l)
        for (int j = 0; j < d; ++j) g(trace_row, (n_strat + l) * nc + j) = 1.0;

    const Eigen::MatrixXd g_pinv = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(g).pseudoInverse();
    Eigen::VectorXd z = Eigen::VectorXd::Zero(nvar);
    AlternatingResult res;

    auto feasible = [&](double t) {
        ++res.feasibility_tests;
        h(trace_row) = t;
        double checkpoint = std::numeric_limits<double>::infinity();
        for (int it = 1; it <= options.max_iterations; ++it) {
            ++res.total_iterations;
            const Eigen::VectorXd za = z - g_pinv * (g * z - h);
            for (int b = 0; b < n_blocks; ++b) {
                const HermMat proj = project_psd(from_coords(za.data() + b * nc, d));
                to_coords(proj, z.data() + b * nc);
            }
            const double dist = (z - za).norm();
            if (dist < options.distance_tolerance) return true;
            if (it % 200 == 0) {
                if (dist > 0.995 * checkpoint) return false;  // stalled at a positive distance
                checkpoint = dist;
            }
        }
        return false;
    };

    if (feasible(0.0)) return res;
    double lo = 0.0;
    double hi = 1.0;
    while (!feasible(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1024.0) throw SolverFailure("lhs_robustness_alternating: no feasible level found");
    }
    while (hi - lo > options.t_tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    res.t_star = 0.5 * (lo + hi);
    return res;
}

}  // namespace steerlab
