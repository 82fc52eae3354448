#pragma once

#include <functional>
#include <vector>

#include "switchstab/linalg.hpp"

namespace switchstab {

/// Continuous-time switched system; the generator list spans the admissible
/// matrices (schedules may take convex combinations).
struct CtSystem {
    MatrixSet generators;
};

/// One held segment: convex weights over the generators and a duration.
struct Segment {
    Vec weights;
    double duration;
};

struct Schedule {
    std::vector<Segment> segments;

    static Segment mode(std::size_t index, std::size_t n_generators, double duration);
    double total_duration() const;
};

struct CtTrajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    double delta = 0.0;
    bool diverged = false; // a state exceeded the 1e100 overflow guard
};

/// exp(t*a) by scaling and squaring with a diagonal Pade approximant;
/// the argument is scaled until its 1-norm is at most 1/2.
Matrix matrix_exponential(const Matrix& a, double t);

/// Duration-weighted convex combination of the scheduled generators.
Matrix average_matrix(const CtSystem& sys, const Schedule& sched);

/// Piecewise-constant propagation along a schedule; states at segment ends.
CtTrajectory simulate_schedule(const CtSystem& sys, const Schedule& sched, const Vec& x0);

using CtFeedback = std::function<std::size_t(const Vec& unit_state)>;

/// Sample-and-hold closed loop: the feedback is read at t = k*delta on the
/// normalized state and held on [k*delta, (k+1)*delta). A trailing partial
/// interval is propagated so the trajectory ends exactly at T.
CtTrajectory sample_hold_simulate(const CtSystem& sys, const CtFeedback& feedback, double delta,
                                  const Vec& x0, double total_time);

/// One-step norm-descent rule: pick the generator minimizing |exp(delta*A) x|
/// on the unit state; ties go to the smallest index.
CtFeedback greedy_feedback(const CtSystem& sys, double delta);

struct ShiftScalingReport {
    double max_rel_err = 0.0;
    bool pass = false;
    std::size_t samples = 0;
};

/// Propagates the same schedule under A and A + gamma*Id and compares the
/// trajectories against the exact e^(gamma t) rescaling.
ShiftScalingReport shift_scaling_check(const CtSystem& sys, double gamma, const Schedule& sched,
                                       const Vec& x0, double tol = 1e-9);

} // namespace switchstab
