#pragma once

#include "scheme_forge/geometry.hpp"
#include "scheme_forge/relation_scheme.hpp"

#include <vector>

namespace scheme_forge {

/// Maximal {0,1,2}-clique C u C': all pairs inside a half are 2-related and
/// all pairs across the halves are 1-related.
struct Clique {
    std::vector<Element> half_C;       // sorted
    std::vector<Element> half_Cprime;  // sorted

    /// Sorted union of the two halves.
    std::vector<Element> elements() const;
    bool contains(Element z) const;

    friend bool operator==(const Clique&, const Clique&) = default;
};

/// t with |X| = (t^3 + 1)(t + 1); throws Error(BadParameter) if none.
long family_parameter_from_size(std::size_t size);

/// C = {x, y} u P^(x,y)_{2,2},  C' = P^(x,y)_{1,1}. Requires rel(x, y) = 2.
/// Throws Error(StructureViolation) with the offending pair when the halves
/// are not cliques of the expected shape.
Clique clique_from_r2_pair(const RelationScheme& sch, Element x, Element y);

/// C = {x} u P^(x,u)_{2,1},  C' = {u} u P^(x,u)_{1,2}. Requires rel(x, u) = 1.
Clique clique_from_r1_pair(const RelationScheme& sch, Element x, Element u);

/// Every clique through an R_1 u R_2 pair, deduplicated by element set and
/// sorted. Throws Error(StructureViolation) if some R_1 u R_2 pair is not in
/// exactly one clique.
std::vector<Clique> all_cliques(const RelationScheme& sch);

/// Scheme elements as points and cliques as lines: a GQ of order (t, t^2)
/// whose dual is the GQ of order (t^2, t) carrying the hemisystem.
struct ReconstructedGQ {
    long t = 0;
    std::vector<Clique> cliques;
    GQ dual;  // points = elements, lines = cliques
    ValidationReport report;
};

/// Throws Error(AxiomFailure) with the first failing axiom as witness.
ReconstructedGQ reconstruct_gq(const RelationScheme& sch);

/// U = {x} u R_2(x) u R_4(x), checked to be the same set from every y in U;
/// throws Error(NotWellDefined) otherwise.
std::vector<Element> recover_hemisystem(const RelationScheme& sch, Element x);

/// Every clique has one half inside U and the other half outside it.
Check check_dual_hemisystem(const std::vector<Clique>& cliques, const std::vector<Element>& U);
bool verify_dual_hemisystem(const RelationScheme& sch, const std::vector<Clique>& cliques,
                            const std::vector<Element>& U);

} // namespace scheme_forge
