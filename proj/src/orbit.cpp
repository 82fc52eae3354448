#include "switchstab/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "switchstab/instances.hpp"
#include "switchstab/linalg.hpp"

namespace switchstab::orbit {

RationalDirection RationalDirection::make(BigNat p, BigNat q) {
    if (p.is_zero() && q.is_zero())
        throw input_error("rational direction cannot be 0/0");
    const BigNat g = BigNat::gcd(p, q); // gcd(x, 0) = x, so axes normalize to 0/1 and 1/0
    if (!(g == BigNat(1))) {
        // Divide by the gcd via binary long division: both operands fit the
        // same limb count, and g here is always a power of two times an odd
        // factor; a general divide is avoided by repeated halving plus the
        // odd-factor case below.
        p = BigNat::divide_exact(p, g);
        q = BigNat::divide_exact(q, g);
    }
    return RationalDirection{std::move(p), std::move(q)};
}

RationalDirection rotation_step(const RationalDirection& d) {
    BigNat sum = d.p + d.q;
    BigNat diff = BigNat::abs_diff(d.p, d.q);
    if (!d.p.is_even() && !d.q.is_even()) {
        sum = sum.half();
        diff = diff.half();
    }
    return RationalDirection::make(std::move(sum), std::move(diff));
}

RationalDirection inverse_rotation_step(const RationalDirection& d) {
    RationalDirection r = rotation_step(d);
    std::swap(r.p, r.q);
    return r;
}

RationalDirection scaling_step(const RationalDirection& d, int k) {
    if (k == 0) return d;
    if (k > 0) return RationalDirection::make(d.p.shifted_left(2u * static_cast<unsigned>(k)), d.q);
    return RationalDirection::make(d.p, d.q.shifted_left(2u * static_cast<unsigned>(-k)));
}

bool mod4_invariant(const RationalDirection& d) {
    return d.p.mod4() != 2 && d.q.mod4() != 2;
}

const char* generator_name(Generator g) {
    switch (g) {
    case Generator::rotation: return "A1";
    case Generator::inverse_rotation: return "A1inv";
    case Generator::scale_up: return "A2";
    case Generator::scale_down: return "A2inv";
    }
    return "?";
}

bool OrbitGraph::contains(const RationalDirection& d) const {
    return std::binary_search(sorted_nodes.begin(), sorted_nodes.end(), d);
}

OrbitGraph explore_orbit(int depth, std::size_t node_cap) {
    if (depth < 0) throw input_error("orbit depth must be >= 0");

    OrbitGraph graph;
    graph.depth = depth;
    std::map<RationalDirection, std::size_t> index;

    const RationalDirection root = RationalDirection::make(BigNat(0), BigNat(1));
    graph.nodes.push_back(root);
    index.emplace(root, 0);
    graph.layer_offsets = {0, 1};

    std::vector<std::size_t> frontier{0};
    for (int layer = 0; layer < depth && !frontier.empty(); ++layer) {
        // Collect images first so the next layer can be added in sorted order.
        const std::size_t edges_before = graph.edges.size();
        const std::size_t nodes_before = graph.nodes.size();
        std::map<RationalDirection, std::size_t> fresh;
        for (std::size_t id : frontier) {
            const RationalDirection node = graph.nodes[id];
            const RationalDirection images[4] = {
                rotation_step(node), inverse_rotation_step(node),
                scaling_step(node, 1), scaling_step(node, -1)};
            const Generator gens[4] = {Generator::rotation, Generator::inverse_rotation,
                                       Generator::scale_up, Generator::scale_down};
            for (int g = 0; g < 4; ++g) {
                auto it = index.find(images[g]);
                std::size_t to;
                if (it != index.end()) {
                    to = it->second;
                } else {
                    auto fit = fresh.find(images[g]);
                    if (fit == fresh.end()) {
                        to = graph.nodes.size() + fresh.size();
                        fresh.emplace(images[g], to);
                    } else {
                        to = fit->second;
                    }
                }
                graph.edges.push_back({id, to, gens[g]});
            }
        }
        // fresh is sorted by direction; ids were assigned in discovery order,
        // remap them to sorted order so node ids follow (layer, lex).
        std::map<std::size_t, std::size_t> remap;
        std::size_t next_id = nodes_before;
        for (const auto& [dir, provisional] : fresh) {
            remap[provisional] = next_id;
            graph.nodes.push_back(dir);
            index.emplace(dir, next_id);
            ++next_id;
            if (graph.nodes.size() > node_cap)
                throw resource_limit_error("orbit node cap exceeded");
        }
        for (std::size_t ei = edges_before; ei < graph.edges.size(); ++ei) {
            auto& e = graph.edges[ei];
            if (e.to >= nodes_before) e.to = remap.at(e.to);
        }
        frontier.clear();
        for (std::size_t i = graph.layer_offsets.back(); i < graph.nodes.size(); ++i)
            frontier.push_back(i);
        graph.layer_offsets.push_back(graph.nodes.size());
    }

    graph.sorted_nodes = graph.nodes;
    std::sort(graph.sorted_nodes.begin(), graph.sorted_nodes.end());
    return graph;
}

std::string edge_list(const OrbitGraph& g) {
    std::string out;
    for (const auto& e : g.edges) {
        out += g.nodes[e.from].to_string();
        out += " --";
        out += generator_name(e.gen);
        out += "--> ";
        out += g.nodes[e.to].to_string();
        out += '\n';
    }
    return out;
}

RotationReport rotation_check() {
    const NamedInstance su = stanford_urbano();
    const Matrix prod = multiply(su.set.modes[1], su.set.modes[0]); // squeeze * rotation
    const double tr = prod(0, 0) + prod(1, 1);
    const double det = determinant(prod);
    RotationReport rep;
    rep.trace = tr;
    const double disc = tr * tr - 4.0 * det;
    rep.nonreal_pair = disc < 0.0;
    if (!rep.nonreal_pair) return rep;
    const double re = 0.5 * tr;
    const double im = 0.5 * std::sqrt(-disc);
    const double modulus = std::sqrt(re * re + im * im);
    rep.eigen_moduli = {modulus, modulus};
    rep.theta = std::atan2(im, re);
    rep.cos_2theta = tr * tr / (2.0 * det) - 1.0;
    rep.commensurable_evidence = !(density_gap(10000) < density_gap(1000));
    return rep;
}

double density_gap(long n) {
    if (n < 2) throw input_error("density gap needs at least two multiples");
    const NamedInstance su = stanford_urbano();
    const Matrix prod = multiply(su.set.modes[1], su.set.modes[0]);
    const double tr = prod(0, 0) + prod(1, 1);
    const double det = determinant(prod);
    const double theta = std::atan2(0.5 * std::sqrt(std::max(0.0, 4.0 * det - tr * tr)), 0.5 * tr);

    constexpr double twopi = 6.283185307179586476925286766559;
    std::vector<double> points(static_cast<std::size_t>(n));
    for (long k = 0; k < n; ++k)
        points[static_cast<std::size_t>(k)] = std::fmod(static_cast<double>(k) * theta, twopi);
    std::sort(points.begin(), points.end());
    double gap = points.front() + twopi - points.back();
    for (std::size_t i = 1; i < points.size(); ++i)
        gap = std::max(gap, points[i] - points[i - 1]);
    return gap;
}

} // namespace switchstab::orbit
