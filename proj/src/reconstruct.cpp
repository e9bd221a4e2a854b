#include "scheme_forge/reconstruct.hpp"

#include "scheme_forge/error.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace scheme_forge {

std::vector<Element> Clique::elements() const {
    std::vector<Element> out;
    std::merge(half_C.begin(), half_C.end(), half_Cprime.begin(), half_Cprime.end(), std::back_inserter(out));
    return out;
}

bool Clique::contains(Element z) const {
    return std::binary_search(half_C.begin(), half_C.end(), z) ||
           std::binary_search(half_Cprime.begin(), half_Cprime.end(), z);
}

long family_parameter_from_size(std::size_t size) {
    for (long t = 3;; t += 2) {
        const long order = (t * t * t + 1) * (t + 1);
        if (order == static_cast<long>(size))
            return t;
        if (order > static_cast<long>(size))
            throw Error(ErrorKind::BadParameter, "element count is not (t^3+1)(t+1) for odd t",
                        std::to_string(size));
    }
}

namespace {

std::string pair_witness(const RelationScheme& sch, Element a, Element b) {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ") in R_" + std::to_string(sch.rel(a, b));
}

void validate_clique(const RelationScheme& sch, const Clique& c, std::size_t half_size) {
    for (const auto* half : {&c.half_C, &c.half_Cprime}) {
        if (half->size() != half_size)
            throw Error(ErrorKind::StructureViolation, "clique half has the wrong size",
                        std::to_string(half->size()) + " != " + std::to_string(half_size));
        for (std::size_t i = 0; i < half->size(); ++i)
            for (std::size_t j = i + 1; j < half->size(); ++j)
                if (sch.rel((*half)[i], (*half)[j]) != 2)
                    throw Error(ErrorKind::StructureViolation, "pair inside a clique half is not 2-related",
                                pair_witness(sch, (*half)[i], (*half)[j]));
    }
    for (Element a : c.half_C)
        for (Element b : c.half_Cprime)
            if (sch.rel(a, b) != 1)
                throw Error(ErrorKind::StructureViolation, "pair across clique halves is not 1-related",
                            pair_witness(sch, a, b));
}

std::vector<Element> sorted_with(std::vector<Element> v, std::initializer_list<Element> extra) {
    v.insert(v.end(), extra.begin(), extra.end());
    std::sort(v.begin(), v.end());
    return v;
}

// half containing the smallest element first
Clique canonical(Clique c) {
    if (c.half_Cprime.front() < c.half_C.front())
        std::swap(c.half_C, c.half_Cprime);
    return c;
}

} // namespace

Clique clique_from_r2_pair(const RelationScheme& sch, Element x, Element y) {
    if (sch.rel(x, y) != 2)
        throw Error(ErrorKind::BadParameter, "pair is not 2-related", pair_witness(sch, x, y));
    const long t = family_parameter_from_size(sch.size());
    Clique c{sorted_with(pair_set(sch, x, y, 2, 2), {x, y}), pair_set(sch, x, y, 1, 1)};
    validate_clique(sch, c, static_cast<std::size_t>((t + 1) / 2));
    return c;
}

Clique clique_from_r1_pair(const RelationScheme& sch, Element x, Element u) {
    if (sch.rel(x, u) != 1)
        throw Error(ErrorKind::BadParameter, "pair is not 1-related", pair_witness(sch, x, u));
    const long t = family_parameter_from_size(sch.size());
    Clique c{sorted_with(pair_set(sch, x, u, 2, 1), {x}), sorted_with(pair_set(sch, x, u, 1, 2), {u})};
    validate_clique(sch, c, static_cast<std::size_t>((t + 1) / 2));
    return c;
}

std::vector<Clique> all_cliques(const RelationScheme& sch) {
    const auto n = static_cast<long>(sch.size());
    std::vector<std::vector<Clique>> found(sch.size());
    std::vector<std::optional<Error>> failure(sch.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long xi = 0; xi < n; ++xi) {
        const auto x = static_cast<Element>(xi);
        try {
            for (Element y = x + 1; y < sch.size(); ++y) {
                const int r = sch.rel(x, y);
                if (r == 2)
                    found[x].push_back(canonical(clique_from_r2_pair(sch, x, y)));
                else if (r == 1)
                    found[x].push_back(canonical(clique_from_r1_pair(sch, x, y)));
            }
        } catch (const Error& e) {
            failure[x] = e;
        }
    }
    for (const auto& f : failure)
        if (f)
            throw *f;

    std::map<std::vector<Element>, Clique> unique;
    for (auto& per_x : found)
        for (auto& c : per_x) {
            auto key = c.elements();
            unique.emplace(std::move(key), std::move(c));
        }
    std::vector<Clique> out;
    out.reserve(unique.size());
    for (auto& [key, c] : unique)
        out.push_back(std::move(c));

    // every R_1 u R_2 pair on exactly one clique
    std::vector<int> cover(sch.size() * sch.size(), 0);
    for (const auto& c : out) {
        const auto el = c.elements();
        for (Element a : el)
            for (Element b : el)
                if (a != b)
                    ++cover[a * sch.size() + b];
    }
    for (Element a = 0; a < sch.size(); ++a)
        for (Element b = a + 1; b < sch.size(); ++b) {
            const int r = sch.rel(a, b);
            const int c = cover[a * sch.size() + b];
            if ((r == 1 || r == 2) ? c != 1 : c != 0)
                throw Error(ErrorKind::StructureViolation, "pair lies on " + std::to_string(c) + " cliques",
                            pair_witness(sch, a, b));
        }
    return out;
}

ReconstructedGQ reconstruct_gq(const RelationScheme& sch) {
    ReconstructedGQ out;
    out.t = family_parameter_from_size(sch.size());
    out.cliques = all_cliques(sch);
    std::vector<std::vector<PointId>> lines;
    lines.reserve(out.cliques.size());
    for (const auto& c : out.cliques) {
        const auto el = c.elements();
        lines.emplace_back(el.begin(), el.end());
    }
    out.dual = GQ(out.t, out.t * out.t, sch.size(), std::move(lines));
    out.report = verify_gq(out.dual);
    if (const Check* bad = out.report.first_failure())
        throw Error(ErrorKind::AxiomFailure, bad->name, bad->witness);
    return out;
}

std::vector<Element> recover_hemisystem(const RelationScheme& sch, Element x) {
    auto u_of = [&](Element base) {
        std::vector<Element> u;
        for (Element z = 0; z < sch.size(); ++z) {
            const int r = sch.rel(base, z);
            if (r == 0 || r == 2 || r == 4)
                u.push_back(z);
        }
        return u;
    };
    const std::vector<Element> u = u_of(x);
    for (Element y : u)
        if (u_of(y) != u)
            throw Error(ErrorKind::NotWellDefined, "U depends on the base element",
                        "base " + std::to_string(x) + " vs " + std::to_string(y));
    return u;
}

Check check_dual_hemisystem(const std::vector<Clique>& cliques, const std::vector<Element>& U) {
    auto in_u = [&](Element z) { return std::binary_search(U.begin(), U.end(), z); };
    for (std::size_t i = 0; i < cliques.size(); ++i) {
        const auto& c = cliques[i];
        const auto a = std::count_if(c.half_C.begin(), c.half_C.end(), in_u);
        const auto b = std::count_if(c.half_Cprime.begin(), c.half_Cprime.end(), in_u);
        const bool ok = (a == static_cast<long>(c.half_C.size()) && b == 0) ||
                        (b == static_cast<long>(c.half_Cprime.size()) && a == 0);
        if (!ok)
            return {"dual hemisystem", false,
                    "clique " + std::to_string(i) + " meets U in " + std::to_string(a) + " + " + std::to_string(b) +
                        " elements"};
    }
    return {"dual hemisystem", true, {}};
}

bool verify_dual_hemisystem(const RelationScheme& /*sch*/, const std::vector<Clique>& cliques,
                            const std::vector<Element>& U) {
    return check_dual_hemisystem(cliques, U).passed;
}

} // namespace scheme_forge
