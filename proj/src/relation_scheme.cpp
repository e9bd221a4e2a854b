#include "scheme_forge/relation_scheme.hpp"

#include "scheme_forge/error.hpp"
#include "scheme_forge/kernels.hpp"

namespace scheme_forge {

RelationScheme::RelationScheme(std::size_t size, std::size_t classes, std::vector<std::uint8_t> rel)
    : size_(size), classes_(classes), rel_(std::move(rel)) {
    if (rel_.size() != size_ * size_)
        throw Error(ErrorKind::StructureViolation, "relation table has the wrong size",
                    std::to_string(rel_.size()) + " entries for " + std::to_string(size_) + " elements");
    for (Element x = 0; x < size_; ++x)
        for (Element y = 0; y < size_; ++y) {
            const int r = rel_[x * size_ + y];
            const auto where = "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
            if (static_cast<std::size_t>(r) >= classes_)
                throw Error(ErrorKind::StructureViolation, "class label out of range", where);
            if (r != rel_[y * size_ + x])
                throw Error(ErrorKind::StructureViolation, "relation table is not symmetric", where);
            if ((x == y) != (r == 0))
                throw Error(ErrorKind::StructureViolation, "class 0 must be exactly the diagonal", where);
        }
}

RelationScheme RelationScheme::with_relation(Element x, Element y, int label) const {
    auto rel = rel_;
    rel[x * size_ + y] = static_cast<std::uint8_t>(label);
    rel[y * size_ + x] = static_cast<std::uint8_t>(label);
    return RelationScheme(size_, classes_, std::move(rel));
}

RelationScheme scheme_from_hemisystem(const GQ& gq, const Hemisystem& hemi) {
    if (const Check c = check_hemisystem(gq, hemi); !c.passed)
        throw Error(ErrorKind::NotHemisystem, "line set is not a hemisystem", c.witness);
    const std::size_t n = gq.line_count();
    std::vector<std::uint8_t> in_u(n, 0);
    for (LineId l : hemi.lines)
        in_u[l] = 1;
    std::vector<std::uint8_t> meets(n * n, 0);
    for (PointId p = 0; p < gq.point_count(); ++p)
        for (LineId a : gq.lines_through(p))
            for (LineId b : gq.lines_through(p))
                meets[a * n + b] = 1;

    std::vector<std::uint8_t> rel(n * n, 0);
    for (LineId a = 0; a < n; ++a)
        for (LineId b = 0; b < n; ++b) {
            if (a == b)
                continue;
            const bool same_half = in_u[a] == in_u[b];
            rel[a * n + b] = meets[a * n + b] ? (same_half ? 2 : 1) : (same_half ? 4 : 3);
        }
    return RelationScheme(n, 5, std::move(rel));
}

RelationScheme complete_scheme(std::size_t n) {
    std::vector<std::uint8_t> rel(n * n, 1);
    for (std::size_t i = 0; i < n; ++i)
        rel[i * n + i] = 0;
    return RelationScheme(n, 2, std::move(rel));
}

Tensor3 CountedParameters::to_tensor() const {
    Tensor3 t(classes);
    for (std::size_t k = 0; k < classes; ++k)
        for (std::size_t i = 0; i < classes; ++i)
            for (std::size_t j = 0; j < classes; ++j)
                t(k, i, j) = Rational(at(k, i, j));
    return t;
}

CountedParameters verify_scheme(const RelationScheme& sch) { return kernels::count_scheme(sch); }

std::vector<Element> neighbors(const RelationScheme& sch, Element x, int i) {
    std::vector<Element> out;
    for (Element z = 0; z < sch.size(); ++z)
        if (sch.rel(x, z) == i)
            out.push_back(z);
    return out;
}

std::vector<Element> pair_set(const RelationScheme& sch, Element x, Element y, int i, int j) {
    std::vector<Element> out;
    for (Element z = 0; z < sch.size(); ++z)
        if (sch.rel(x, z) == i && sch.rel(y, z) == j)
            out.push_back(z);
    return out;
}

} // namespace scheme_forge
