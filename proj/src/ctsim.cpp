#include "switchstab/ctsim.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace switchstab {

Segment Schedule::mode(std::size_t index, std::size_t n_generators, double duration) {
    Vec w(n_generators, 0.0);
    w[index] = 1.0;
    return Segment{std::move(w), duration};
}

double Schedule::total_duration() const {
    double s = 0.0;
    for (const auto& seg : segments) s += seg.duration;
    return s;
}

namespace {

double one_norm(const Matrix& a) {
    double best = 0.0;
    for (int j = 0; j < a.dim(); ++j) {
        double col = 0.0;
        for (int i = 0; i < a.dim(); ++i) col += std::abs(a(i, j));
        best = std::max(best, col);
    }
    return best;
}

void validate_segment(const Segment& seg, std::size_t n) {
    if (seg.weights.size() != n) throw input_error("segment weight count mismatch");
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration))
        throw input_error("segment duration must be positive and finite");
    double sum = 0.0;
    for (double w : seg.weights) {
        if (w < 0.0) throw input_error("segment weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw input_error("segment weights must sum to 1");
}

Matrix segment_generator(const CtSystem& sys, const Segment& seg) {
    Matrix g(sys.generators.dim);
    for (std::size_t m = 0; m < sys.generators.size(); ++m)
        if (seg.weights[m] != 0.0) g = add(g, scale(sys.generators.modes[m], seg.weights[m]));
    return g;
}

} // namespace

Matrix matrix_exponential(const Matrix& a, double t) {
    if (!std::isfinite(t)) throw input_error("exponential time must be finite");
    const int d = a.dim();
    Matrix x = scale(a, t);

    int squarings = 0;
    double nrm = one_norm(x);
    while (nrm > 0.5) {
        nrm *= 0.5;
        ++squarings;
    }
    if (squarings) x = scale(x, std::ldexp(1.0, -squarings));

    // Diagonal [6/6] Pade; with the scaled norm <= 1/2 the approximant is
    // accurate to well below 1e-15 relative.
    static const double c[7] = {1.0,           0.5,           5.0 / 44.0,  1.0 / 66.0,
                                1.0 / 792.0,   1.0 / 15840.0, 1.0 / 665280.0};
    const Matrix x2 = multiply(x, x);
    const Matrix x4 = multiply(x2, x2);
    const Matrix x6 = multiply(x4, x2);

    Matrix even = Matrix::identity(d);
    even = add(scale(even, c[0]), add(scale(x2, c[2]), add(scale(x4, c[4]), scale(x6, c[6]))));
    Matrix odd_core = add(scale(Matrix::identity(d), c[1]), add(scale(x2, c[3]), scale(x4, c[5])));
    const Matrix odd = multiply(x, odd_core);

    Matrix num = add(even, odd);
    Matrix den = add(even, scale(odd, -1.0));
    Matrix e = solve_linear(den, num);

    for (int s = 0; s < squarings; ++s) e = multiply(e, e);
    return e;
}

Matrix average_matrix(const CtSystem& sys, const Schedule& sched) {
    const double total = sched.total_duration();
    if (!(total > 0.0)) throw input_error("schedule must have positive total duration");
    Matrix avg(sys.generators.dim);
    for (const auto& seg : sched.segments) {
        validate_segment(seg, sys.generators.size());
        avg = add(avg, scale(segment_generator(sys, seg), seg.duration / total));
    }
    return avg;
}

CtTrajectory simulate_schedule(const CtSystem& sys, const Schedule& sched, const Vec& x0) {
    if (static_cast<int>(x0.size()) != sys.generators.dim)
        throw input_error("x0 dimension mismatch");
    CtTrajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);
    double t = 0.0;
    Vec x = x0;
    for (const auto& seg : sched.segments) {
        validate_segment(seg, sys.generators.size());
        const Matrix e = matrix_exponential(segment_generator(sys, seg), seg.duration);
        x = mat_vec(e, x);
        t += seg.duration;
        traj.times.push_back(t);
        traj.states.push_back(x);
    }
    return traj;
}

CtTrajectory sample_hold_simulate(const CtSystem& sys, const CtFeedback& feedback, double delta,
                                  const Vec& x0, double total_time) {
    if (!(delta > 0.0)) throw input_error("delta must be positive");
    if (total_time < delta) throw input_error("total time must be at least delta");
    if (static_cast<int>(x0.size()) != sys.generators.dim)
        throw input_error("x0 dimension mismatch");

    // exp(delta * A_i) reused across intervals; partial tail handled apart.
    std::vector<Matrix> hold;
    hold.reserve(sys.generators.size());
    for (const auto& g : sys.generators.modes) hold.push_back(matrix_exponential(g, delta));

    CtTrajectory traj;
    traj.delta = delta;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);

    const long steps = static_cast<long>(std::floor(total_time / delta + 1e-12));
    Vec x = x0;
    double t = 0.0;
    for (long k = 0; k < steps; ++k) {
        const double nrm = norm2(x);
        if (nrm > 1e100) {
            traj.diverged = true;
            return traj;
        }
        std::size_t choice = 0;
        if (nrm > 0.0) {
            Vec unit = x;
            for (auto& v : unit) v /= nrm;
            choice = feedback(unit);
            if (choice >= sys.generators.size())
                throw input_error("feedback returned an invalid generator index");
        }
        x = mat_vec(hold[choice], x);
        t += delta;
        traj.times.push_back(t);
        traj.states.push_back(x);
    }

    const double tail = total_time - static_cast<double>(steps) * delta;
    if (tail > 1e-12 * std::max(1.0, total_time)) {
        const double nrm = norm2(x);
        std::size_t choice = 0;
        if (nrm > 0.0) {
            Vec unit = x;
            for (auto& v : unit) v /= nrm;
            choice = feedback(unit);
        }
        x = mat_vec(matrix_exponential(sys.generators.modes[choice], tail), x);
        traj.times.push_back(total_time);
        traj.states.push_back(x);
    }
    return traj;
}

CtFeedback greedy_feedback(const CtSystem& sys, double delta) {
    if (!(delta > 0.0)) throw input_error("delta must be positive");
    auto holds = std::make_shared<std::vector<Matrix>>();
    holds->reserve(sys.generators.size());
    for (const auto& g : sys.generators.modes) holds->push_back(matrix_exponential(g, delta));
    return [holds](const Vec& unit) {
        std::size_t best = 0;
        double val = norm2(mat_vec((*holds)[0], unit));
        for (std::size_t i = 1; i < holds->size(); ++i) {
            const double v = norm2(mat_vec((*holds)[i], unit));
            if (v < val) {
                val = v;
                best = i;
            }
        }
        return best;
    };
}

ShiftScalingReport shift_scaling_check(const CtSystem& sys, double gamma, const Schedule& sched,
                                       const Vec& x0, double tol) {
    CtSystem shifted = sys;
    for (auto& g : shifted.generators.modes) g = add(g, scale(Matrix::identity(g.dim()), gamma));

    const CtTrajectory base = simulate_schedule(sys, sched, x0);
    const CtTrajectory moved = simulate_schedule(shifted, sched, x0);

    ShiftScalingReport rep;
    rep.samples = base.times.size();
    for (std::size_t k = 0; k < base.times.size(); ++k) {
        const double factor = std::exp(gamma * base.times[k]);
        double err = 0.0;
        double ref = 0.0;
        for (std::size_t i = 0; i < x0.size(); ++i) {
            const double expect = factor * base.states[k][i];
            err = std::max(err, std::abs(moved.states[k][i] - expect));
            ref = std::max(ref, std::abs(expect));
        }
        rep.max_rel_err = std::max(rep.max_rel_err, err / std::max(1.0, ref));
    }
    rep.pass = rep.max_rel_err <= tol;
    return rep;
}

} // namespace switchstab
