#pragma once

#include "scheme_forge/geometry.hpp"
#include "scheme_forge/relation_scheme.hpp"
#include "scheme_forge/scheme_params.hpp"

namespace scheme_forge::testing {

// Built once per test binary.
struct Instance {
    GQ gq;
    Hemisystem hemi;
    RelationScheme scheme;
    SchemeParameters params;
};

inline const Instance& t3() {
    static const Instance inst = [] {
        GQ gq = build_hermitian_gq();
        Hemisystem h = find_hemisystem(gq);
        RelationScheme sch = scheme_from_hemisystem(gq, h);
        return Instance{std::move(gq), std::move(h), std::move(sch), closed_form_parameters(3)};
    }();
    return inst;
}

} // namespace scheme_forge::testing
