#pragma once

// Hot counting loops. Each kernel has an OpenMP implementation in
// `kernels` and a plain serial reference in `kernels::serial`; both must
// return identical results, which the tests check.

#include "scheme_forge/geometry.hpp"
#include "scheme_forge/relation_scheme.hpp"
#include "scheme_forge/triple.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace scheme_forge {

/// Applies SCHEME_FORGE_THREADS (if set) as the OpenMP thread cap.
void configure_threads_from_env();
int max_threads();

namespace kernels {

struct AxiomViolation {
    PointId point;
    LineId line;
    long count;  // number of (y, M) with x I M I y I L
    friend bool operator==(const AxiomViolation&, const AxiomViolation&) = default;
};

/// First non-incident (x, L) (lowest x, then lowest L) without exactly one
/// connecting pair.
std::optional<AxiomViolation> gq_axiom3_violation(const GQ& gq);

/// Profile counts for every pair; see verify_scheme.
CountedParameters count_scheme(const RelationScheme& sch);

/// Integer form of a TripleSystem: each row scaled by the lcm of its
/// denominators, zero coefficients dropped.
class CompiledSystem {
public:
    explicit CompiledSystem(const TripleSystem& sys);
    /// `counts` as returned by direct_triple_counts.
    std::optional<std::size_t> first_violation(const std::vector<long>& counts) const;
    std::size_t equations() const { return rows_.size(); }

private:
    struct Row {
        std::vector<std::pair<std::uint32_t, std::int64_t>> terms;  // (offset into counts, coefficient)
        std::int64_t rhs;
    };
    std::vector<Row> rows_;
};

using Triple = std::array<Element, 3>;

struct TripleSweep {
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::optional<Triple> witness;        // lowest-index violating triple
    std::size_t witness_equation = 0;
};

/// Widened system (zero-support rows included) for every non-vacuous
/// (A, B, C), in the layout sweep_triples expects.
std::vector<std::optional<CompiledSystem>> compile_systems(const SchemeParameters& params);

/// Every ordered triple of distinct elements.
std::vector<Triple> all_triples(const RelationScheme& sch);
/// `count` ordered triples of distinct elements drawn uniformly with a seeded
/// generator.
std::vector<Triple> sample_triples(const RelationScheme& sch, std::size_t count, std::uint64_t seed);

/// Direct counts for each triple checked against the system for its own
/// configuration (A, B, C) = (rel(x,y), rel(y,u), rel(u,x)); `systems` is
/// indexed ((A-1) * d + (B-1)) * d + (C-1).
TripleSweep sweep_triples(const RelationScheme& sch, const std::vector<std::optional<CompiledSystem>>& systems,
                          const std::vector<Triple>& triples);

namespace serial {
std::optional<AxiomViolation> gq_axiom3_violation(const GQ& gq);
CountedParameters count_scheme(const RelationScheme& sch);
TripleSweep sweep_triples(const RelationScheme& sch, const std::vector<std::optional<CompiledSystem>>& systems,
                          const std::vector<Triple>& triples);
} // namespace serial

} // namespace kernels
} // namespace scheme_forge
