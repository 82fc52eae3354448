#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "switchstab/bignat.hpp"
#include "switchstab/errors.hpp"

namespace switchstab::orbit {

/// Unsigned line through the origin with rational tangent p/q (q = 0 is the
/// vertical axis). Stored coprime; lines are identified up to sign.
struct RationalDirection {
    BigNat p;
    BigNat q;

    static RationalDirection make(BigNat p, BigNat q);

    bool operator==(const RationalDirection& o) const { return p == o.p && q == o.q; }
    bool operator<(const RationalDirection& o) const {
        if (p != o.p) return p < o.p;
        return q < o.q;
    }
    std::string to_string() const { return p.to_string() + "/" + q.to_string(); }
};

/// Rotation action on tangents: {p, q} -> {p + q, |p - q|}, halved when both
/// are odd, reduced to coprime form.
RationalDirection rotation_step(const RationalDirection& d);

/// The opposite rotation direction: the swapped couple of rotation_step.
RationalDirection inverse_rotation_step(const RationalDirection& d);

/// Scaling action: tangent multiplied by 4^k (negative k divides), reduced.
RationalDirection scaling_step(const RationalDirection& d, int k);

/// Necessary membership condition for directions reachable from the first
/// axis: neither component is congruent to 2 mod 4.
bool mod4_invariant(const RationalDirection& d);

enum class Generator { rotation, inverse_rotation, scale_up, scale_down };
const char* generator_name(Generator g);

struct OrbitEdge {
    std::size_t from;
    std::size_t to;
    Generator gen;
};

struct OrbitGraph {
    std::vector<RationalDirection> nodes; // BFS layer order, lexicographic in layer
    std::vector<std::size_t> layer_offsets; // layer L = [offsets[L], offsets[L+1])
    std::vector<OrbitEdge> edges;
    std::vector<RationalDirection> sorted_nodes; // for membership queries
    int depth = 0;

    bool contains(const RationalDirection& d) const;
};

/// Breadth-first closure from {0, 1} under the four generators up to the
/// given edge depth. Throws resource_limit_error past node_cap nodes.
OrbitGraph explore_orbit(int depth, std::size_t node_cap = 1000000);

/// One edge per line: "p/q --gen--> p'/q'".
std::string edge_list(const OrbitGraph& g);

struct RotationReport {
    double trace = 0.0;
    double theta = 0.0; // eigenvalue argument of the squeeze * rotation product
    double cos_2theta = 0.0;
    std::pair<double, double> eigen_moduli{0.0, 0.0};
    bool nonreal_pair = false;
    // Gap shrinkage between 1e3 and 1e4 multiples; no commensurability seen.
    bool commensurable_evidence = false;
};

/// Eigen-structure of the product A2*A1 of the built-in two-mode system.
RotationReport rotation_check();

/// Largest circular gap of {k*theta mod 2pi : k = 0..N-1} with theta from
/// rotation_check.
double density_gap(long n);

} // namespace switchstab::orbit
