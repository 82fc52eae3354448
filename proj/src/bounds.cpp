#include "switchstab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "switchstab/kernels.hpp"
#include "switchstab/parallel.hpp"
#include "switchstab/rng.hpp"
#include "small_lp.hpp"

namespace switchstab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct DirectionGrid {
    long grid_n;            // points on the full circle
    std::size_t m;          // evaluated half-circle points
    std::vector<double> xs; // cos(theta_k)
    std::vector<double> ys; // sin(theta_k)
    double spacing;         // 2*pi / grid_n

    explicit DirectionGrid(long n) : grid_n(n), m(0), spacing(0.0) {
        if (n < 8 || n % 2 != 0) throw input_error("grid size must be even and >= 8");
        m = static_cast<std::size_t>(n / 2);
        spacing = 2.0 * kPi / static_cast<double>(n);
        xs.resize(m);
        ys.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double th = spacing * static_cast<double>(k);
            xs[k] = std::cos(th);
            ys[k] = std::sin(th);
        }
    }

    double angle(std::size_t k) const { return spacing * static_cast<double>(k); }
};

double rate(double value, int t) { return std::pow(value, 1.0 / static_cast<double>(t)); }

} // namespace

double chord_pad(long grid_n) { return 2.0 * std::sin(kPi / (2.0 * static_cast<double>(grid_n))); }

LowerBoundReport singular_value_lower_bound(const MatrixSet& set, int t_max,
                                            const EnumerationLimits& limits) {
    if (t_max < 1) throw input_error("t_max must be >= 1");
    LowerBoundReport report;
    report.method = LowerBoundMethod::singular_value;
    for (int t = 1; t <= t_max; ++t) {
        const auto products = enumerate_products(set, t, 0.0, limits);
        double lo = std::numeric_limits<double>::infinity();
        for (const auto& p : products) lo = std::min(lo, smallest_singular_value(p.matrix));
        report.per_horizon.emplace_back(t, rate(lo, t));
    }
    report.best = 0.0;
    for (const auto& [t, v] : report.per_horizon) report.best = std::max(report.best, v);
    return report;
}

namespace {

// max_v min over rows of ((A - lambda I) v)_i on the probability simplex;
// feasible at rate lambda iff the optimum is >= 0.
bool cone_feasible(const std::vector<ProductEntry>& products, int dim, double lambda, Vec& witness) {
    lp::Problem prob;
    const std::size_t n = static_cast<std::size_t>(dim) + 2; // v, s+, s-
    prob.c.assign(n, 0.0);
    prob.c[n - 2] = 1.0;
    prob.c[n - 1] = -1.0;
    for (const auto& p : products) {
        for (int i = 0; i < dim; ++i) {
            std::vector<double> row(n, 0.0);
            double scale_row = 1.0;
            for (int j = 0; j < dim; ++j) {
                row[static_cast<std::size_t>(j)] = (i == j ? lambda : 0.0) - p.matrix(i, j);
                scale_row = std::max(scale_row, std::abs(row[static_cast<std::size_t>(j)]));
            }
            // Normalize rows so products with large norms do not skew pivots.
            for (int j = 0; j < dim; ++j) row[static_cast<std::size_t>(j)] /= scale_row;
            row[n - 2] = 1.0 / scale_row;
            row[n - 1] = -1.0 / scale_row;
            prob.a_ub.push_back(std::move(row));
            prob.b_ub.push_back(0.0);
        }
    }
    std::vector<double> simplex_row(n, 0.0);
    for (int j = 0; j < dim; ++j) simplex_row[static_cast<std::size_t>(j)] = 1.0;
    prob.a_eq.push_back(std::move(simplex_row));
    prob.b_eq.push_back(1.0);

    const lp::Result res = lp::solve_max(prob);
    if (res.status != lp::Status::optimal || res.objective < -1e-12) return false;
    witness.assign(res.x.begin(), res.x.begin() + dim);
    return true;
}

// Among the witnesses valid at this rate, pick the one maximizing the
// smallest component: degenerate optima (scaled identities) then return the
// balanced vector instead of an arbitrary simplex vertex.
bool cone_witness_shaped(const std::vector<ProductEntry>& products, int dim, double lambda,
                         Vec& witness) {
    lp::Problem prob;
    const std::size_t n = static_cast<std::size_t>(dim) + 1; // v, t
    prob.c.assign(n, 0.0);
    prob.c[n - 1] = 1.0;
    for (const auto& p : products) {
        for (int i = 0; i < dim; ++i) {
            std::vector<double> row(n, 0.0);
            double scale_row = 1.0;
            for (int j = 0; j < dim; ++j) {
                row[static_cast<std::size_t>(j)] = (i == j ? lambda : 0.0) - p.matrix(i, j);
                scale_row = std::max(scale_row, std::abs(row[static_cast<std::size_t>(j)]));
            }
            for (int j = 0; j < dim; ++j) row[static_cast<std::size_t>(j)] /= scale_row;
            prob.a_ub.push_back(std::move(row));
            prob.b_ub.push_back(1e-12);
        }
    }
    for (int i = 0; i < dim; ++i) {
        std::vector<double> row(n, 0.0);
        row[static_cast<std::size_t>(i)] = -1.0;
        row[n - 1] = 1.0;
        prob.a_ub.push_back(std::move(row));
        prob.b_ub.push_back(0.0);
    }
    std::vector<double> simplex_row(n, 0.0);
    for (int j = 0; j < dim; ++j) simplex_row[static_cast<std::size_t>(j)] = 1.0;
    prob.a_eq.push_back(std::move(simplex_row));
    prob.b_eq.push_back(1.0);

    const lp::Result res = lp::solve_max(prob);
    if (res.status != lp::Status::optimal) return false;
    witness.assign(res.x.begin(), res.x.begin() + dim);
    return true;
}

} // namespace

ConeLowerBound cone_lowerbound_impl(const MatrixSet& set, int horizon, double bisection_tol,
                                    const EnumerationLimits& limits) {
    ConeLowerBound out;
    out.report.method = LowerBoundMethod::cone;
    for (int t = 1; t <= horizon; ++t) {
        const auto products = enumerate_products(set, t, 1e-10, limits);
        for (const auto& p : products)
            for (double v : p.matrix.entries())
                if (v < 0.0)
                    throw method_inapplicable_error(
                        "cone bound inapplicable: a product has negative entries");

        double norm_cap = std::numeric_limits<double>::infinity();
        for (const auto& p : products) norm_cap = std::min(norm_cap, spectral_norm(p.matrix));

        Vec witness;
        if (!cone_feasible(products, set.dim, 0.0, witness))
            throw nonconvergence_error("cone feasibility failed at lambda = 0");
        double lo = 0.0;
        double hi = norm_cap + 1.0;
        Vec trial;
        while (hi - lo > bisection_tol) {
            const double mid = 0.5 * (lo + hi);
            if (cone_feasible(products, set.dim, mid, trial)) {
                lo = mid;
                witness = trial;
            } else {
                hi = mid;
            }
        }
        out.report.per_horizon.emplace_back(t, rate(lo, t));
        if (t == horizon) {
            Vec shaped;
            if (cone_witness_shaped(products, set.dim, lo, shaped)) witness = shaped;
            out.certificate = ConeCertificate{lo, witness, horizon};
        }
    }
    out.report.best = 0.0;
    for (const auto& [t, v] : out.report.per_horizon) out.report.best = std::max(out.report.best, v);
    return out;
}

ConeLowerBound cone_lower_bound(const MatrixSet& set, int horizon, double bisection_tol,
                                const EnumerationLimits& limits) {
    if (horizon < 1) throw input_error("horizon must be >= 1");
    return cone_lowerbound_impl(set, horizon, bisection_tol, limits);
}

std::vector<UpperBoundReport> certified_grid_upper_bounds(const MatrixSet& set, int t_max,
                                                          long grid_n,
                                                          const EnumerationLimits& limits) {
    if (t_max < 1) throw input_error("t_max must be >= 1");
    std::vector<UpperBoundReport> reports;
    const double inf = std::numeric_limits<double>::infinity();

    if (set.dim == 2) {
        const DirectionGrid grid(grid_n);
        const double h = chord_pad(grid_n);
        for (int t = 1; t <= t_max; ++t) {
            const auto products = enumerate_products(set, t, 0.0, limits);
            std::vector<double> minvals(grid.m, inf);
            parallel_for(grid.m, [&](std::size_t lo, std::size_t hi) {
                for (const auto& p : products)
                    kernels::mat2_min_norms(p.matrix.entries().data(), grid.xs.data() + lo,
                                            grid.ys.data() + lo, minvals.data() + lo, hi - lo);
            });
            const double gamma = kernels::max_value(minvals.data(), minvals.size());
            double lip = 0.0;
            for (const auto& p : products) lip = std::max(lip, spectral_norm(p.matrix));
            const double pad = lip * h;
            UpperBoundReport r;
            r.method = UpperBoundMethod::algorithm1;
            r.horizon = t;
            r.raw_gamma = gamma;
            r.empirical = rate(gamma, t);
            r.certified = rate(gamma + pad, t);
            r.grid_size = grid_n;
            r.lipschitz_pad = pad;
            r.certified_valid = true;
            reports.push_back(r);
        }
        return reports;
    }

    // d > 2: empirical value from seeded sphere sampling, no certificate.
    for (int t = 1; t <= t_max; ++t) {
        const auto products = enumerate_products(set, t, 0.0, limits);
        DetRng rng(0x51ab5u);
        double gamma = 0.0;
        for (long s = 0; s < grid_n; ++s) {
            Vec x(static_cast<std::size_t>(set.dim));
            double nrm = 0.0;
            while (nrm == 0.0) {
                for (auto& v : x) v = rng.normal();
                nrm = norm2(x);
            }
            for (auto& v : x) v /= nrm;
            double best = inf;
            for (const auto& p : products) best = std::min(best, norm2(mat_vec(p.matrix, x)));
            gamma = std::max(gamma, best);
        }
        UpperBoundReport r;
        r.method = UpperBoundMethod::algorithm1;
        r.horizon = t;
        r.raw_gamma = gamma;
        r.empirical = rate(gamma, t);
        r.certified = inf;
        r.grid_size = grid_n;
        r.lipschitz_pad = 0.0;
        r.certified_valid = false;
        reports.push_back(r);
    }
    return reports;
}

namespace {

struct Candidate {
    Word word;
    std::vector<double> mat; // row-major 2x2
    int length;
    double op_norm;
};

std::vector<Candidate> build_candidates(const MatrixSet& set, int t_bar,
                                        const std::vector<Word>* words,
                                        const EnumerationLimits& limits) {
    std::vector<Candidate> cands;
    if (words) {
        for (const auto& w : *words) {
            if (w.modes.empty()) throw input_error("candidate words must be nonempty");
            const Matrix m = word_matrix(set, w);
            cands.push_back({w, m.entries(), static_cast<int>(w.length()), spectral_norm(m)});
        }
    } else {
        for (int t = 1; t <= t_bar; ++t) {
            for (auto& e : enumerate_products(set, t, 1e-10, limits))
                cands.push_back({std::move(e.word), e.matrix.entries(), t, spectral_norm(e.matrix)});
        }
    }
    if (cands.empty()) throw input_error("no candidate words");
    return cands;
}

} // namespace

BestResponseResult best_response_upper(const MatrixSet& set, int t_bar, long grid_n,
                                       const std::vector<Word>* words,
                                       const EnumerationLimits& limits) {
    if (set.dim != 2)
        throw method_inapplicable_error("best-response certification requires dimension 2");
    if (t_bar < 1) throw input_error("t_bar must be >= 1");

    const DirectionGrid grid(grid_n);
    const double h = chord_pad(grid_n);
    const auto cands = build_candidates(set, t_bar, words, limits);

    // Group candidates by length; min |A_w z| per length is one kernel sweep
    // per word, the 1/t normalization then happens once per length.
    std::map<int, std::vector<std::size_t>> by_length;
    for (std::size_t i = 0; i < cands.size(); ++i) by_length[cands[i].length].push_back(i);

    const double inf = std::numeric_limits<double>::infinity();
    std::map<int, std::vector<double>> min_by_length;
    for (const auto& [len, idxs] : by_length) {
        std::vector<double>& mv = min_by_length[len];
        mv.assign(grid.m, inf);
        parallel_for(grid.m, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t ci : idxs)
                kernels::mat2_min_norms(cands[ci].mat.data(), grid.xs.data() + lo,
                                        grid.ys.data() + lo, mv.data() + lo, hi - lo);
        });
    }

    // Per cell: best rate, winning length (shortest on ties), then the
    // lexicographically first word of that length attaining the minimum.
    std::vector<double> best_rate(grid.m, inf);
    std::vector<int> best_len(grid.m, 0);
    for (const auto& [len, mv] : min_by_length) {
        for (std::size_t k = 0; k < grid.m; ++k) {
            const double r = rate(mv[k], len);
            if (r < best_rate[k]) {
                best_rate[k] = r;
                best_len[k] = len;
            }
        }
    }

    std::vector<std::size_t> cell_word(grid.m, 0);
    std::vector<double> cell_padded(grid.m, inf);
    for (std::size_t k = 0; k < grid.m; ++k) {
        const int len = best_len[k];
        const auto& idxs = by_length.at(len);
        const double target = min_by_length.at(len)[k];
        std::size_t chosen = idxs.front();
        bool found = false;
        for (std::size_t ci : idxs) {
            double val;
            kernels::mat2_norms(cands[ci].mat.data(), &grid.xs[k], &grid.ys[k], &val, 1);
            if (val == target) {
                chosen = ci;
                found = true;
                break;
            }
        }
        if (!found) {
            // Should not happen: the kernel min is one of the candidate values.
            double best = inf;
            for (std::size_t ci : idxs) {
                double val;
                kernels::mat2_norms(cands[ci].mat.data(), &grid.xs[k], &grid.ys[k], &val, 1);
                if (val < best) {
                    best = val;
                    chosen = ci;
                }
            }
        }
        cell_word[k] = chosen;
        cell_padded[k] = rate(min_by_length.at(len)[k] + cands[chosen].op_norm * h, len);
    }

    const double empirical = kernels::max_value(best_rate.data(), best_rate.size());
    const double certified = kernels::max_value(cell_padded.data(), cell_padded.size());

    // Cells around grid points; the first cell wraps across pi, so the map has
    // m + 1 arcs before merging (first and last carry cell 0's word). Boundary
    // values are shared between neighbors so endpoints compare equal.
    struct RawArc {
        double begin, end;
        std::size_t cand;
        double padded;
    };
    const double half = 0.5 * grid.spacing;
    std::vector<double> boundary(grid.m + 2);
    boundary[0] = 0.0;
    for (std::size_t k = 1; k <= grid.m; ++k) boundary[k] = grid.angle(k) - half;
    boundary[grid.m + 1] = kPi;
    std::vector<RawArc> raw;
    raw.reserve(grid.m + 1);
    for (std::size_t k = 0; k < grid.m; ++k)
        raw.push_back({boundary[k], boundary[k + 1], cell_word[k], cell_padded[k]});
    raw.push_back({boundary[grid.m], boundary[grid.m + 1], cell_word[0], cell_padded[0]});

    BestResponseMap map;
    for (const auto& a : raw) {
        if (!map.arcs.empty() && map.arcs.back().word == cands[a.cand].word &&
            map.arcs.back().end == a.begin) {
            map.arcs.back().end = a.end;
            map.arcs.back().rate = std::max(map.arcs.back().rate, a.padded);
        } else {
            map.arcs.push_back({a.begin, a.end, cands[a.cand].word,
                                cands[a.cand].length, a.padded});
        }
    }

    BestResponseResult out;
    out.report.method = UpperBoundMethod::best_response;
    out.report.horizon = t_bar;
    out.report.empirical = empirical;
    out.report.certified = certified;
    out.report.grid_size = grid_n;
    out.report.lipschitz_pad = h; // per-arc padding is ||A_w|| * h
    out.report.raw_gamma = empirical;
    out.report.certified_valid = true;
    out.map = std::move(map);
    out.contraction_achieved = certified < 1.0;
    return out;
}

SubradiusNormBound subradius_norm_upper(const MatrixSet& set, int t_max,
                                        const EnumerationLimits& limits) {
    if (t_max < 1) throw input_error("t_max must be >= 1");
    SubradiusNormBound out;
    out.value = std::numeric_limits<double>::infinity();
    for (int t = 1; t <= t_max; ++t) {
        const auto products = enumerate_products(set, t, 0.0, limits);
        double best = std::numeric_limits<double>::infinity();
        const ProductEntry* arg = nullptr;
        for (const auto& p : products) {
            const double nm = spectral_norm(p.matrix);
            if (nm < best) {
                best = nm;
                arg = &p;
            }
        }
        const double r = rate(best, t);
        out.per_horizon.emplace_back(t, r);
        if (r < out.value) {
            out.value = r;
            out.word = arg->word;
            out.horizon = t;
        }
    }
    return out;
}

} // namespace switchstab
