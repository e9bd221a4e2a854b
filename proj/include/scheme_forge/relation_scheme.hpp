#pragma once

#include "scheme_forge/geometry.hpp"
#include "scheme_forge/scheme_params.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace scheme_forge {

using Element = std::uint32_t;

/// Symmetric partition of X x X into classes 0..d, stored as a dense table.
class RelationScheme {
public:
    RelationScheme() = default;
    /// Throws Error(StructureViolation) unless `rel` is symmetric with zero
    /// diagonal, class 0 only on the diagonal, and labels below `classes`.
    RelationScheme(std::size_t size, std::size_t classes, std::vector<std::uint8_t> rel);

    std::size_t size() const { return size_; }
    std::size_t classes() const { return classes_; }
    std::size_t d() const { return classes_ - 1; }
    int rel(Element x, Element y) const { return rel_[x * size_ + y]; }
    const std::vector<std::uint8_t>& table() const { return rel_; }

    /// Copy with (x, y) and (y, x) relabelled; x != y, label in 1..d.
    RelationScheme with_relation(Element x, Element y, int label) const;

private:
    std::size_t size_ = 0;
    std::size_t classes_ = 0;
    std::vector<std::uint8_t> rel_;
};

/// Lines of `gq` as elements; distinct lines are related by
///   1: intersecting, different halves    2: intersecting, same half
///   3: disjoint, different halves        4: disjoint, same half.
/// Throws Error(NotHemisystem) if `hemi` fails check_hemisystem.
RelationScheme scheme_from_hemisystem(const GQ& gq, const Hemisystem& hemi);

/// The 1-class scheme on n elements.
RelationScheme complete_scheme(std::size_t n);

struct CountedParameters {
    std::vector<long> valencies;
    std::size_t classes = 0;
    std::vector<long> p;  // p^k_ij at (k * classes + i) * classes + j
    bool consistency = false;
    std::string witness;  // first pair whose profile differs from its class representative

    long at(std::size_t k, std::size_t i, std::size_t j) const { return p[(k * classes + i) * classes + j]; }
    Tensor3 to_tensor() const;
};

/// Counts p^k_ij from one representative pair per class and checks that
/// every pair of the same class has the same profile.
CountedParameters verify_scheme(const RelationScheme& sch);

/// R_i(x) = { z : rel(x, z) = i }, sorted.
std::vector<Element> neighbors(const RelationScheme& sch, Element x, int i);

/// { z : rel(x, z) = i and rel(y, z) = j }, sorted.
std::vector<Element> pair_set(const RelationScheme& sch, Element x, Element y, int i, int j);

} // namespace scheme_forge
