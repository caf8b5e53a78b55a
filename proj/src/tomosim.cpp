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

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "steerlab/errors.hpp"
#include "steerlab/filtering.hpp"
#include "steerlab/metrics.hpp"
#include "steerlab/random.hpp"

namespace steerlab {

namespace {

std::size_t cell_index(int a, int x, int o, int s) { return static_cast<std::size_t>((x * o + a) * 3 + s); }

// PSD square root and pseudo-inverse square root restricted to the support.
std::pair<CMatrix, CMatrix> sqrt_and_inverse_sqrt(const HermMat& h) {
    const EigenSystem es = eigh(h);
    double scale = 0.0;
    for (double v : es.values) scale = std::max(scale, std::abs(v));
    const double floor = scale * 1e-13;
    const HermMat root = spectral_map(es, [floor](double v) { return v > floor ? std::sqrt(v) : 0.0; });
    const HermMat inv_root = spectral_map(es, [floor](double v) { return v > floor ? 1.0 / std::sqrt(v) : 0.0; });
    return {root.matrix(), inv_root.matrix()};
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double mu = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

CMatrix pauli_matrix(Pauli p) {
    CMatrix m = CMatrix::Zero(2, 2);
    switch (p) {
        case Pauli::kX:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case Pauli::kY:
            m(0, 1) = Complex(0.0, -1.0);
            m(1, 0) = Complex(0.0, 1.0);
            break;
        case Pauli::kZ:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
    }
    return m;
}

const char* to_string(Pauli p) {
    switch (p) {
        case Pauli::kX: return "X";
        case Pauli::kY: return "Y";
        case Pauli::kZ: return "Z";
    }
    return "?";
}

const CellCounts& TomographyRun::cell(int a, int x, Pauli s) const {
    return counts.at(cell_index(a, x, true_assemblage.n_outputs(), static_cast<int>(s)));
}

TomographyRun simulate_counts(const Assemblage& asm_, std::uint64_t shots, std::uint64_t seed) {
    if (asm_.dim() != 2) throw DomainError("simulate_counts: tomography is implemented for a qubit on Bob's side");
    if (shots < 1) throw DomainError("simulate_counts: shots must be at least 1");
    const int m = asm_.n_inputs();
    const int o = asm_.n_outputs();
    TomographyRun run;
    run.true_assemblage = asm_;
    run.shots_per_setting = shots;
    run.seed = seed;
    run.counts.assign(static_cast<std::size_t>(m * o * 3), CellCounts{});

    for (int x = 0; x < m; ++x) {
        for (Pauli s : kPauliSettings) {
            const int si = static_cast<int>(s);
            std::mt19937_64 rng = make_stream(seed, {static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(si)});
            const CMatrix op = pauli_matrix(s);
            // Multinomial split of the shots over Alice's outcomes.
            std::vector<double> p(static_cast<std::size_t>(o));
            double mass = 0.0;
            for (int a = 0; a < o; ++a) {
                p[static_cast<std::size_t>(a)] = std::max(asm_.probability(a, x), 0.0);
                mass += p[static_cast<std::size_t>(a)];
            }
            std::uint64_t remaining = shots;
            for (int a = 0; a < o; ++a) {
                std::uint64_t n_a = 0;
                if (a == o - 1) {
                    n_a = remaining;
                } else if (mass > 0.0 && remaining > 0) {
                    const double q = std::clamp(p[static_cast<std::size_t>(a)] / mass, 0.0, 1.0);
                    n_a = std::binomial_distribution<std::uint64_t>(remaining, q)(rng);
                }
                mass -= p[static_cast<std::size_t>(a)];
                remaining -= n_a;

                const HermMat& comp = asm_.component(a, x);
                const double tr = comp.trace();
                double p_plus = 0.5;
                if (tr >= kNegligibleTrace) {
                    p_plus = 0.5 * (1.0 + (op * comp.matrix()).trace().real() / tr);
                    p_plus = std::clamp(p_plus, 0.0, 1.0);
                }
                CellCounts& c = run.counts[cell_index(a, x, o, si)];
                c.plus = n_a > 0 ? std::binomial_distribution<std::uint64_t>(n_a, p_plus)(rng) : 0;
                c.minus = n_a - c.plus;
            }
        }
    }
    return run;
}

TomographyStatistics statistics_from_counts(const TomographyRun& run) {
    const int m = run.true_assemblage.n_inputs();
    const int o = run.true_assemblage.n_outputs();
    TomographyStatistics st;
    st.n_inputs = m;
    st.n_outputs = o;
    st.probabilities.assign(static_cast<std::size_t>(m * o), 0.0);
    st.expectations.assign(static_cast<std::size_t>(m * o), {0.0, 0.0, 0.0});
    for (int x = 0; x < m; ++x) {
        std::uint64_t total = 0;
        for (int a = 0; a < o; ++a)
            for (int s = 0; s < 3; ++s) total += run.counts[cell_index(a, x, o, s)].total();
        for (int a = 0; a < o; ++a) {
            std::uint64_t n_ax = 0;
            for (int s = 0; s < 3; ++s) {
                const CellCounts& c = run.counts[cell_index(a, x, o, s)];
                if (c.total() == 0) {
                    throw InsufficientCounts("reconstruct: no shots in cell (a=" + std::to_string(a) +
                                             ", x=" + std::to_string(x) + ", " + to_string(static_cast<Pauli>(s)) + ")");
                }
                n_ax += c.total();
                st.expectations[static_cast<std::size_t>(x * o + a)][static_cast<std::size_t>(s)] =
                    (static_cast<double>(c.plus) - static_cast<double>(c.minus)) / static_cast<double>(c.total());
            }
            st.probabilities[static_cast<std::size_t>(x * o + a)] =
                static_cast<double>(n_ax) / static_cast<double>(total);
        }
    }
    return st;
}

TomographyStatistics exact_statistics(const Assemblage& asm_) {
    if (asm_.dim() != 2) throw DomainError("exact_statistics: qubit assemblages only");
    const int m = asm_.n_inputs();
    const int o = asm_.n_outputs();
    TomographyStatistics st;
    st.n_inputs = m;
    st.n_outputs = o;
    for (int x = 0; x < m; ++x) {
        for (int a = 0; a < o; ++a) {
            const HermMat& comp = asm_.component(a, x);
            const double p = comp.trace();
            st.probabilities.push_back(p);
            std::array<double, 3> e{0.0, 0.0, 0.0};
            if (p >= kNegligibleTrace) {
                for (Pauli s : kPauliSettings) {
                    e[static_cast<std::size_t>(s)] = (pauli_matrix(s) * comp.matrix()).trace().real() / p;
                }
            }
            st.expectations.push_back(e);
        }
    }
    return st;
}

Reconstruction reconstruct_from_statistics(const TomographyStatistics& st) {
    const int m = st.n_inputs;
    const int o = st.n_outputs;
    std::vector<HermMat> linear;
    for (int i = 0; i < m * o; ++i) {
        CMatrix bloch = CMatrix::Identity(2, 2);
        for (Pauli s : kPauliSettings) {
            bloch += st.expectations[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] * pauli_matrix(s);
        }
        linear.emplace_back(0.5 * st.probabilities[static_cast<std::size_t>(i)] * bloch);
    }
    Reconstruction rec;
    rec.linear_inversion = Assemblage(m, o, 2, linear);

    // Clamp negative eigenvalues, then rescale the remaining spectrum so the
    // component keeps its trace.
    std::vector<HermMat> comps;
    for (const auto& c : linear) {
        const double tr = c.trace();
        const EigenSystem es = eigh(c);
        if (es.values.front() >= 0.0) {
            comps.push_back(c);
            continue;
        }
        double kept = 0.0;
        for (double v : es.values) kept += std::max(v, 0.0);
        const double scale = kept > 0.0 ? tr / kept : 0.0;
        comps.push_back(spectral_map(es, [scale](double v) { return std::max(v, 0.0) * scale; }));
    }

    // No-signalling repair: sigma_{a|x} -> T_x sigma_{a|x} T_x^dagger with
    // T_x = rho_avg^{1/2} rho_x^{-1/2}, so sum_a maps to rho_avg for every x.
    HermMat avg = HermMat::zero(2);
    std::vector<HermMat> marginals;
    for (int x = 0; x < m; ++x) {
        HermMat rho = HermMat::zero(2);
        for (int a = 0; a < o; ++a) rho += comps[static_cast<std::size_t>(x * o + a)];
        avg += rho * (1.0 / m);
        marginals.push_back(rho);
    }
    const CMatrix avg_root = sqrt_and_inverse_sqrt(avg).first;
    for (int x = 0; x < m; ++x) {
        const CMatrix t = avg_root * sqrt_and_inverse_sqrt(marginals[static_cast<std::size_t>(x)]).second;
        for (int a = 0; a < o; ++a) {
            auto& c = comps[static_cast<std::size_t>(x * o + a)];
            c = congruence(t, c);
        }
    }
    rec.assemblage = Assemblage(m, o, 2, std::move(comps));
    rec.residual = max_abs_diff(rec.assemblage, rec.linear_inversion);
    return rec;
}

Reconstruction reconstruct(const TomographyRun& run) { return reconstruct_from_statistics(statistics_from_counts(run)); }

TomographyRun run_tomography(const Assemblage& asm_, std::uint64_t shots, std::uint64_t seed) {
    TomographyRun run = simulate_counts(asm_, shots, seed);
    Reconstruction rec = reconstruct(run);
    run.reconstructed = std::move(rec.assemblage);
    run.reconstruction_residual = rec.residual;
    return run;
}

std::vector<double> default_alpha2_grid() {
    std::vector<double> grid;
    for (double delta : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.81, 0.9}) grid.push_back(0.5 * (1.0 + delta));
    return grid;
}

std::vector<SweepRow> figure3_sweep(const SweepConfig& config) {
    if (config.alpha2_grid.empty()) throw DomainError("figure3_sweep: empty grid");
    if (config.replicas < 0) throw DomainError("figure3_sweep: replicas must be nonnegative");
    if (config.replicas > 0 && config.shots < 1) throw DomainError("figure3_sweep: shots must be at least 1");
    for (double a2 : config.alpha2_grid) check_alpha2(a2, "figure3_sweep");

    const char* curves[] = {"original", "postselected", "averaged"};
    std::vector<SweepRow> rows;
    for (std::size_t g = 0; g < config.alpha2_grid.size(); ++g) {
        const double alpha2 = config.alpha2_grid[g];
        const double delta = 2.0 * alpha2 - 1.0;
        const Assemblage original = alpha_assemblage(alpha2);
        const Assemblage postselected = apply_filter(original, paper_filter(alpha2), 0).output;
        const Assemblage averaged = averaged_output(alpha2, 2);
        const Assemblage* exact[] = {&original, &postselected, &averaged};

        for (int c = 0; c < 3; ++c) {
            std::vector<double> fractions, robustness;
            for (int r = 0; r < config.replicas; ++r) {
                const std::uint64_t cell_seed =
                    derive_seed(config.seed, {static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(c),
                                              static_cast<std::uint64_t>(r)});
                Assemblage source = *exact[c];
                if (c == 2) {
                    // The averaged assemblage is itself estimated from sampled branch frequencies.
                    source = run_protocol_sampled(alpha2, 2, config.shots, derive_seed(cell_seed, {1})).averaged;
                }
                const TomographyRun run = run_tomography(source, config.shots, derive_seed(cell_seed, {2}));
                fractions.push_back(singlet_fraction(run.reconstructed));
                robustness.push_back(lhs_robustness(run.reconstructed, config.flavor).t_star);
            }
            const double nan = std::numeric_limits<double>::quiet_NaN();
            SweepRow base;
            base.alpha2 = alpha2;
            base.delta = delta;
            base.curve = curves[c];
            base.shots = config.shots;
            base.seed = config.seed;

            SweepRow fr = base;
            fr.metric = "fraction";
            fr.exact = singlet_fraction(*exact[c]);
            fr.mean_reconstructed = fractions.empty() ? nan : mean(fractions);
            fr.stddev_reconstructed = fractions.empty() ? nan : sample_stddev(fractions);
            rows.push_back(fr);

            SweepRow rb = base;
            rb.metric = "robustness";
            rb.exact = lhs_robustness(*exact[c], config.flavor).t_star;
            rb.mean_reconstructed = robustness.empty() ? nan : mean(robustness);
            rb.stddev_reconstructed = robustness.empty() ? nan : sample_stddev(robustness);
            rows.push_back(rb);
        }
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "delta,curve,metric,exact,mean_reconstructed,stddev_reconstructed,shots,seed\n";
    for (const auto& r : rows) {
        os << format_number(r.delta) << ',' << r.curve << ',' << r.metric << ',' << format_number(r.exact) << ','
           << format_number(r.mean_reconstructed) << ',' << format_number(r.stddev_reconstructed) << ',' << r.shots
           << ',' << r.seed << '\n';
    }
    return os.str();
}

Json sweep_to_json(const std::vector<SweepRow>& rows, const SweepConfig& config) {
    Json out_rows = Json::array();
    auto num = [](double v) { return std::isnan(v) ? Json(nullptr) : Json(v); };
    for (const auto& r : rows) {
        out_rows.push_back({{"alpha2", r.alpha2},
                            {"delta", r.delta},
                            {"curve", r.curve},
                            {"metric", r.metric},
                            {"exact", r.exact},
                            {"mean_reconstructed", num(r.mean_reconstructed)},
                            {"stddev_reconstructed", num(r.stddev_reconstructed)},
                            {"shots", r.shots},
                            {"seed", r.seed}});
    }
    return {{"schema", "fig3-sweep/v1"},
            {"alpha2_grid", config.alpha2_grid},
            {"shots", config.shots},
            {"seed", config.seed},
            {"replicas", config.replicas},
            {"flavor", to_string(config.flavor)},
            {"rows", std::move(out_rows)}};
}

}  // namespace steerlab
