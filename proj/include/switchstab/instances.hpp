#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "switchstab/linalg.hpp"

namespace switchstab {

/// A documented property of a built-in system, executable as a test.
struct Fact {
    std::string description;
    std::function<bool()> check;
};

struct NamedInstance {
    std::string name;
    MatrixSet set;
    std::vector<Fact> facts;
};

/// Two-mode planar system: eighth-turn rotation plus the diag(1/2, 2)
/// squeeze. The running example for every bound in this toolkit.
NamedInstance stanford_urbano();

/// Quarter-turn variant: modes {A1^2, A2}; all the algebra is exact.
NamedInstance stanford_urbano_bar();

/// The thirteen short feedback products used by the case-study sweep,
/// ordered A[1]..A[13], lengths 1 through 9.
std::vector<Word> stanford_urbano_case_words();

/// 3-D pair {diag(2,1,1), ones-col-shift} separating pointwise from
/// feedback-achievable decay.
NamedInstance prop_different_3d();

/// Doubled copy {2A} of a nonnegative-integer base set; zero products in the
/// base survive doubling, non-mortal bases force |A'e| >= 2^t growth.
NamedInstance mortality_reduction(const MatrixSet& base);

struct BlockDiagInstance {
    NamedInstance instance;
    Vec test_vector; // concatenated standard basis vectors e_1..e_n
};

/// n^2 x n^2 block-diagonal doubling diag(2A, ..., 2A) of an integer base.
BlockDiagInstance blockdiag_reduction(const MatrixSet& base);

/// Lookup by CLI name ("stanford-urbano", "stanford-urbano-bar",
/// "prop-different-3d"); nullopt when unknown.
std::optional<NamedInstance> find_instance(const std::string& name);

} // namespace switchstab
