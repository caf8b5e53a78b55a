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

#include "steerlab/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "steerlab/errors.hpp"

namespace steerlab::sdp {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Blocks = std::vector<MatrixXd>;

struct BlockTerm {
    int constraint;
    const MatrixXd* matrix;
};

double inner(const MatrixXd& a, const MatrixXd& b) { return a.cwiseProduct(b).sum(); }

MatrixXd sym(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

double inner(const Blocks& a, const Blocks& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += inner(a[k], b[k]);
    return s;
}

double frobenius(const Blocks& a) {
    double s = 0.0;
    for (const auto& m : a) s += m.squaredNorm();
    return std::sqrt(s);
}

class Solver {
public:
    Solver(const Problem& p, const Options& o) : p_(p), opt_(o) {
        nb_ = p_.block_sizes.size();
        nc_ = static_cast<int>(p_.constraints.size());
        if (p_.rhs.size() != nc_) throw DimensionMismatch("sdp::solve: rhs length differs from constraint count");
        if (p_.objective.size() != nb_) throw DimensionMismatch("sdp::solve: objective needs one entry per block");
        c_.resize(nb_);
        n_total_ = 0;
        for (std::size_t b = 0; b < nb_; ++b) {
            const int sz = p_.block_sizes[b];
            n_total_ += sz;
            c_[b] = p_.objective[b].size() == 0 ? MatrixXd::Zero(sz, sz) : sym(p_.objective[b]);
            if (c_[b].rows() != sz) throw DimensionMismatch("sdp::solve: objective block has wrong size");
        }
        by_block_.resize(nb_);
        for (int i = 0; i < nc_; ++i) {
            for (const auto& t : p_.constraints[static_cast<std::size_t>(i)]) {
                if (t.block < 0 || static_cast<std::size_t>(t.block) >= nb_ ||
                    t.matrix.rows() != p_.block_sizes[static_cast<std::size_t>(t.block)] ||
                    t.matrix.cols() != t.matrix.rows()) {
                    throw DimensionMismatch("sdp::solve: constraint term does not match its block");
                }
                by_block_[static_cast<std::size_t>(t.block)].push_back({i, &t.matrix});
            }
        }
    }

    Solution run() {
        Solution sol;
        init(sol);
        const double b_norm = p_.rhs.norm();
        const double c_norm = frobenius(c_);

        for (int iter = 0;; ++iter) {
            sol.iterations = iter;
            const VectorXd rp = p_.rhs - apply_a(sol.x);
            const Blocks rd = dual_residual(sol);
            sol.primal_objective = inner(c_, sol.x);
            sol.dual_objective = p_.rhs.dot(sol.y);
            sol.primal_infeasibility = rp.norm();
            sol.dual_infeasibility = frobenius(rd);
            const double gap = std::abs(sol.primal_objective - sol.dual_objective) /
                               (1.0 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective));
            const double pinf = sol.primal_infeasibility / (1.0 + b_norm);
            const double dinf = sol.dual_infeasibility / (1.0 + c_norm);
            if (gap < opt_.tolerance && pinf < opt_.tolerance && dinf < opt_.tolerance) {
                sol.status = Status::kOptimal;
                return sol;
            }
            if (iter >= opt_.max_iterations) {
                sol.status = Status::kIterationLimit;
                return sol;
            }

            Blocks s_inv(nb_);
            for (std::size_t b = 0; b < nb_; ++b) {
                Eigen::LLT<MatrixXd> llt(sol.s[b]);
                if (llt.info() != Eigen::Success) return trouble(sol);
                s_inv[b] = llt.solve(MatrixXd::Identity(sol.s[b].rows(), sol.s[b].cols()));
                s_inv[b] = sym(s_inv[b]);
            }
            const MatrixXd schur = schur_complement(sol.x, s_inv);
            Eigen::LLT<MatrixXd> factor(schur);
            if (factor.info() != Eigen::Success) return trouble(sol);

            const double mu = inner(sol.x, sol.s) / n_total_;

            // Predictor (affine scaling).
            Blocks rc(nb_);
            for (std::size_t b = 0; b < nb_; ++b) rc[b] = -sol.x[b] * sol.s[b];
            Direction aff = direction(sol, s_inv, factor, rp, rd, rc);
            const double ap_aff = std::min(1.0, max_step(sol.x, aff.dx));
            const double ad_aff = std::min(1.0, max_step(sol.s, aff.ds));
            double mu_aff = 0.0;
            for (std::size_t b = 0; b < nb_; ++b) {
                mu_aff += inner(sol.x[b] + ap_aff * aff.dx[b], sol.s[b] + ad_aff * aff.ds[b]);
            }
            mu_aff /= n_total_;
            const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

            // Corrector.
            for (std::size_t b = 0; b < nb_; ++b) {
                rc[b] = sigma * mu * MatrixXd::Identity(sol.x[b].rows(), sol.x[b].cols()) - sol.x[b] * sol.s[b] -
                        aff.dx[b] * aff.ds[b];
            }
            Direction dir = direction(sol, s_inv, factor, rp, rd, rc);
            const double ap = std::min(1.0, opt_.step_fraction * max_step(sol.x, dir.dx));
            const double ad = std::min(1.0, opt_.step_fraction * max_step(sol.s, dir.ds));
            if (!(ap > 1e-14) || !(ad > 1e-14)) return trouble(sol);
            for (std::size_t b = 0; b < nb_; ++b) {
                sol.x[b] = sym(sol.x[b] + ap * dir.dx[b]);
                sol.s[b] = sym(sol.s[b] + ad * dir.ds[b]);
            }
            sol.y += ad * dir.dy;
        }
    }

private:
    struct Direction {
        Blocks dx;
        VectorXd dy;
        Blocks ds;
    };

    void init(Solution& sol) const {
        double zeta = std::max(10.0, std::sqrt(static_cast<double>(n_total_)));
        double eta = zeta;
        for (int i = 0; i < nc_; ++i) {
            double a_norm = 0.0;
            for (const auto& t : p_.constraints[static_cast<std::size_t>(i)]) a_norm += t.matrix.squaredNorm();
            a_norm = std::sqrt(a_norm);
            zeta = std::max(zeta, n_total_ * (1.0 + std::abs(p_.rhs(i))) / (1.0 + a_norm));
            eta = std::max(eta, a_norm);
        }
        eta = std::max(eta, frobenius(c_));
        sol.x.resize(nb_);
        sol.s.resize(nb_);
        for (std::size_t b = 0; b < nb_; ++b) {
            const int sz = p_.block_sizes[b];
            sol.x[b] = zeta * MatrixXd::Identity(sz, sz);
            sol.s[b] = eta * MatrixXd::Identity(sz, sz);
        }
        sol.y = VectorXd::Zero(nc_);
    }

    Solution trouble(Solution& sol) const {
        sol.status = Status::kNumericalTrouble;
        return sol;
    }

    VectorXd apply_a(const Blocks& x) const {
        VectorXd r(nc_);
        for (int i = 0; i < nc_; ++i) {
            double s = 0.0;
            for (const auto& t : p_.constraints[static_cast<std::size_t>(i)]) {
                s += inner(t.matrix, x[static_cast<std::size_t>(t.block)]);
            }
            r(i) = s;
        }
        return r;
    }

    Blocks apply_at(const VectorXd& y) const {
        Blocks out(nb_);
        for (std::size_t b = 0; b < nb_; ++b) out[b] = MatrixXd::Zero(p_.block_sizes[b], p_.block_sizes[b]);
        for (int i = 0; i < nc_; ++i) {
            for (const auto& t : p_.constraints[static_cast<std::size_t>(i)]) {
                out[static_cast<std::size_t>(t.block)] += y(i) * t.matrix;
            }
        }
        return out;
    }

    Blocks dual_residual(const Solution& sol) const {
        Blocks r = apply_at(sol.y);
        for (std::size_t b = 0; b < nb_; ++b) r[b] = c_[b] - r[b] - sol.s[b];
        return r;
    }

    // M_ij = Tr(A_i X A_j S^-1)
    MatrixXd schur_complement(const Blocks& x, const Blocks& s_inv) const {
        MatrixXd m = MatrixXd::Zero(nc_, nc_);
        std::vector<MatrixXd> g;
        for (std::size_t b = 0; b < nb_; ++b) {
            const auto& terms = by_block_[b];
            g.resize(terms.size());
            for (std::size_t k = 0; k < terms.size(); ++k) g[k] = x[b] * (*terms[k].matrix) * s_inv[b];
            for (std::size_t k = 0; k < terms.size(); ++k) {
                for (std::size_t l = 0; l < terms.size(); ++l) {
                    m(terms[l].constraint, terms[k].constraint) += inner(*terms[l].matrix, g[k]);
                }
            }
        }
        return 0.5 * (m + m.transpose());
    }

    Direction direction(const Solution& sol, const Blocks& s_inv, const Eigen::LLT<MatrixXd>& factor,
                        const VectorXd& rp, const Blocks& rd, const Blocks& rc) const {
        Blocks t(nb_);
        for (std::size_t b = 0; b < nb_; ++b) t[b] = (rc[b] - sol.x[b] * rd[b]) * s_inv[b];
        Direction d;
        d.dy = factor.solve(VectorXd(rp - apply_a(t)));
        d.ds = apply_at(d.dy);
        d.dx.resize(nb_);
        for (std::size_t b = 0; b < nb_; ++b) {
            d.ds[b] = rd[b] - d.ds[b];
            d.dx[b] = sym((rc[b] - sol.x[b] * d.ds[b]) * s_inv[b]);
        }
        return d;
    }

    // Largest alpha with M + alpha dM still PSD.
    static double max_step(const Blocks& m, const Blocks& dm) {
        double step = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < m.size(); ++b) {
            Eigen::LLT<MatrixXd> llt(m[b]);
            if (llt.info() != Eigen::Success) return 0.0;
            const MatrixXd l_inv = llt.matrixL().solve(MatrixXd::Identity(m[b].rows(), m[b].cols()));
            const MatrixXd w = sym(l_inv * dm[b] * l_inv.transpose());
            Eigen::SelfAdjointEigenSolver<MatrixXd> es(w, Eigen::EigenvaluesOnly);
            const double lo = es.eigenvalues().minCoeff();
            if (lo < 0.0) step = std::min(step, -1.0 / lo);
        }
        return step;
    }

    const Problem& p_;
    Options opt_;
    std::size_t nb_ = 0;
    int nc_ = 0;
    double n_total_ = 0.0;
    Blocks c_;
    std::vector<std::vector<BlockTerm>> by_block_;
};

}  // namespace

int Problem::add_block(int size) {
    if (size <= 0) throw DomainError("sdp::Problem: block size must be positive");
    block_sizes.push_back(size);
    objective.emplace_back();
    return static_cast<int>(block_sizes.size()) - 1;
}

int Problem::add_constraint(std::vector<Term> terms, double b) {
    constraints.push_back(std::move(terms));
    rhs.conservativeResize(rhs.size() + 1);
    rhs(rhs.size() - 1) = b;
    return static_cast<int>(constraints.size()) - 1;
}

const char* to_string(Status s) {
    switch (s) {
        case Status::kOptimal: return "optimal";
        case Status::kIterationLimit: return "iteration-limit";
        case Status::kNumericalTrouble: return "numerical-trouble";
    }
    return "unknown";
}

Solution solve(const Problem& problem, const Options& options) { return Solver(problem, options).run(); }

Eigen::MatrixXd embed_functional(const CMatrix& g) {
    const Eigen::Index d = g.rows();
    const Eigen::MatrixXd re = g.real();
    const Eigen::MatrixXd im = g.imag();
    Eigen::MatrixXd out(2 * d, 2 * d);
    out.topLeftCorner(d, d) = re;
    out.bottomRightCorner(d, d) = re;
    out.topRightCorner(d, d) = -im;
    out.bottomLeftCorner(d, d) = im;
    return 0.5 * out;
}

CMatrix hermitian_part(const Eigen::MatrixXd& x) {
    const Eigen::Index d = x.rows() / 2;
    const Eigen::MatrixXd re = 0.5 * (x.topLeftCorner(d, d) + x.bottomRightCorner(d, d));
    const Eigen::MatrixXd im = 0.5 * (x.bottomLeftCorner(d, d) - x.topRightCorner(d, d));
    CMatrix h(d, d);
    h.real() = re;
    h.imag() = im;
    return h;
}

std::vector<CMatrix> coordinate_functionals(int dim) {
    std::vector<CMatrix> out;
    out.reserve(static_cast<std::size_t>(dim * dim));
    for (int j = 0; j < dim; ++j) {
        CMatrix g = CMatrix::Zero(dim, dim);
        g(j, j) = 1.0;
        out.push_back(g);
    }
    for (int j = 0; j < dim; ++j) {
        for (int l = j + 1; l < dim; ++l) {
            CMatrix re = CMatrix::Zero(dim, dim);
            re(j, l) = 0.5;
            re(l, j) = 0.5;
            out.push_back(re);
            CMatrix im = CMatrix::Zero(dim, dim);
            im(j, l) = Complex(0.0, 0.5);
            im(l, j) = Complex(0.0, -0.5);
            out.push_back(im);
        }
    }
    return out;
}

}  // namespace steerlab::sdp
