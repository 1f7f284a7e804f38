#pragma once

#include "eccforge/cnf.hpp"
#include "eccforge/graph.hpp"
#include "eccforge/reduction.hpp"

#include <vector>

namespace eccforge::transfer {

/// phi together with the literal alpha(j) in {1,2,3} chosen per clause.
struct AssignmentWitness {
    cnf::Assignment phi;
    std::vector<int> alpha;
};

/// Balanced, phi(0) = 0, satisfying assignment of inst.formula and the
/// smallest satisfied literal index per clause. A first-half assignment
/// (n/2 values) is completed by negation and its dummy forced to 0.
/// Throws PreconditionError if unsatisfied or unbalanced.
[[nodiscard]] AssignmentWitness make_witness(const reduction::ReductionInstance& inst,
                                             const cnf::Assignment& phi);

/// Clique cover of the whole graph with exactly inst.k cliques:
/// simplicial closed neighbourhoods, the assignment twins, 2(ell-1) twin
/// pairs per copy carrying the u vertices, and two guard cliques.
[[nodiscard]] CliqueCover cover_from_assignment(const reduction::ReductionInstance& inst,
                                                const cnf::Assignment& phi);

/// Reads a satisfying assignment of inst.formula off a valid cover.
/// Throws ExtractionError when the cover is invalid or no candidate clique
/// encodes a satisfying assignment.
[[nodiscard]] cnf::Assignment assignment_from_cover(const reduction::ReductionInstance& inst,
                                                    const CliqueCover& cover);

}  // namespace eccforge::transfer
