#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "switchstab/linalg.hpp"

namespace switchstab {

enum class LowerBoundMethod { singular_value, cone };

struct LowerBoundReport {
    LowerBoundMethod method;
    std::vector<std::pair<int, double>> per_horizon; // (t, bound value)
    double best = 0.0;                               // max over horizons
};

/// Certified lower bound on the stabilization radius from the smallest
/// singular value over all length-t products, reported as min(sigma_min)^(1/t)
/// for each t = 1..t_max.
LowerBoundReport singular_value_lower_bound(const MatrixSet& set, int t_max,
                                            const EnumerationLimits& limits = {});

/// Orthant-cone witness: v >= 0 with A v >= lambda v for every product at the
/// given horizon.
struct ConeCertificate {
    double lambda = 0.0;
    Vec v;
    int horizon = 0;
};

struct ConeLowerBound {
    LowerBoundReport report; // per-horizon values sigma_K(M^t)^(1/t), t = 1..horizon
    ConeCertificate certificate;
};

/// Lower bound for nonnegative systems by bisection on lambda over the LP
/// feasibility { v >= 0, sum v = 1, A v >= lambda v for all A in M^t }.
/// Throws method_inapplicable_error when some product has a negative entry.
ConeLowerBound cone_lower_bound(const MatrixSet& set, int horizon,
                                double bisection_tol = 1e-9,
                                const EnumerationLimits& limits = {});

enum class UpperBoundMethod { algorithm1, best_response };

struct UpperBoundReport {
    UpperBoundMethod method;
    int horizon = 0;
    double empirical = 0.0;     // grid maximum, rate-normalized (power 1/t)
    double certified = 0.0;     // chord-padded bound, rate-normalized; +inf if uncertified
    long grid_size = 0;
    double lipschitz_pad = 0.0; // raw padding added before normalization
    double raw_gamma = 0.0;     // unnormalized grid maximum
    bool certified_valid = true;
};

/// Chord distance from any unit direction to a uniform grid of grid_n points
/// on the full circle.
double chord_pad(long grid_n);

/// Iterated min-product upper bounds: for each t <= t_max, the grid maximum of
/// min_{A in M^t} |A theta| plus a Lipschitz chord pad, reported as a per-step
/// rate. Certified only in dimension 2; higher dimensions get a seeded
/// sphere-sampled empirical value with certified = +infinity.
std::vector<UpperBoundReport> certified_grid_upper_bounds(const MatrixSet& set, int t_max,
                                                          long grid_n,
                                                          const EnumerationLimits& limits = {});

struct BestResponseArc {
    double begin = 0.0; // angles in [0, pi], endpoints shared with neighbors
    double end = 0.0;
    Word word;
    int length = 0;
    double rate = 0.0; // certified per-step rate on this arc
};

struct BestResponseMap {
    std::vector<BestResponseArc> arcs;
};

struct BestResponseResult {
    UpperBoundReport report;
    BestResponseMap map;
    bool contraction_achieved = true; // false when the certified rate is >= 1
};

/// Variable-horizon best response: assigns to each direction the word
/// minimizing |A_w z|^(1/t_w) over candidate words (all deduplicated words of
/// length 1..t_bar when none are given), with per-cell chord-pad
/// certification. Dimension 2 only.
BestResponseResult best_response_upper(const MatrixSet& set, int t_bar, long grid_n,
                                       const std::vector<Word>* words = nullptr,
                                       const EnumerationLimits& limits = {});

struct SubradiusNormBound {
    double value = 0.0; // min over t <= t_max, A in M^t of ||A||^(1/t)
    Word word;
    int horizon = 0;
    std::vector<std::pair<int, double>> per_horizon;
};

/// Norm-based upper bound on the joint spectral subradius.
SubradiusNormBound subradius_norm_upper(const MatrixSet& set, int t_max,
                                        const EnumerationLimits& limits = {});

} // namespace switchstab
