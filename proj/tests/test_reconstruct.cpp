#include "doctest.h"

#include "fixtures.hpp"

#include "scheme_forge/error.hpp"
#include "scheme_forge/reconstruct.hpp"

#include <map>
#include <set>

using namespace scheme_forge;

namespace {

const ReconstructedGQ& rec() {
    static const ReconstructedGQ r = reconstruct_gq(testing::t3().scheme);
    return r;
}

} // namespace

TEST_CASE("family parameter from the element count") {
    CHECK(family_parameter_from_size(112) == 3);
    CHECK(family_parameter_from_size(126 * 6) == 5);
    CHECK_THROWS_AS(family_parameter_from_size(100), Error);
}

TEST_CASE("cliques from 2-related and 1-related pairs") {
    const RelationScheme& sch = testing::t3().scheme;
    const auto r2 = neighbors(sch, 0, 2);
    const auto r1 = neighbors(sch, 0, 1);
    REQUIRE_FALSE(r2.empty());
    REQUIRE_FALSE(r1.empty());

    const Clique c = clique_from_r2_pair(sch, 0, r2[0]);
    CHECK(c.half_C.size() == 2);
    CHECK(c.half_Cprime.size() == 2);
    CHECK(c.contains(0));
    CHECK(c.contains(r2[0]));
    // t = 3: P_{2,2} is empty so C = {x, y}
    CHECK(pair_set(sch, 0, r2[0], 2, 2).empty());

    const Clique d = clique_from_r1_pair(sch, 0, r1[0]);
    CHECK(d.half_C.size() == 2);
    CHECK(d.half_Cprime.size() == 2);
    CHECK(std::binary_search(d.half_C.begin(), d.half_C.end(), Element{0}));
    CHECK(std::binary_search(d.half_Cprime.begin(), d.half_Cprime.end(), r1[0]));

    CHECK_THROWS_AS(clique_from_r2_pair(sch, 0, r1[0]), Error);
    CHECK_THROWS_AS(clique_from_r1_pair(sch, 0, r2[0]), Error);
}

TEST_CASE("a clique does not depend on which 2-related pair inside it generates it") {
    const RelationScheme& sch = testing::t3().scheme;
    for (Element x = 0; x < sch.size(); x += 5)
        for (Element y : neighbors(sch, x, 2)) {
            const Clique c = clique_from_r2_pair(sch, x, y);
            for (const auto* half : {&c.half_C, &c.half_Cprime})
                for (Element a : *half)
                    for (Element b : *half) {
                        if (a == b)
                            continue;
                        const Clique other = clique_from_r2_pair(sch, a, b);
                        CHECK(other.elements() == c.elements());
                    }
        }
}

TEST_CASE("all cliques: count, shape and incidence") {
    const auto& cliques = rec().cliques;
    CHECK(cliques.size() == 280);
    std::vector<int> on(112, 0);
    for (const auto& c : cliques) {
        CHECK(c.half_C.size() == 2);
        CHECK(c.half_Cprime.size() == 2);
        for (Element z : c.elements())
            ++on[z];
    }
    for (int n : on)
        CHECK(n == 10);
}

TEST_CASE("cliques are exactly the point pencils of the Hermitian GQ") {
    const auto& inst = testing::t3();
    std::set<std::vector<Element>> pencils;
    for (PointId p = 0; p < inst.gq.point_count(); ++p) {
        const auto& lt = inst.gq.lines_through(p);
        pencils.emplace(lt.begin(), lt.end());
    }
    std::set<std::vector<Element>> found;
    for (const auto& c : rec().cliques)
        found.insert(c.elements());
    CHECK(found == pencils);
}

TEST_CASE("outside element with a 3- or 4-link sees exactly one clique element in R1 u R2") {
    const RelationScheme& sch = testing::t3().scheme;
    const auto& cliques = rec().cliques;
    for (std::size_t i = 0; i < cliques.size(); i += 7) {
        const auto el = cliques[i].elements();
        for (Element z = 0; z < sch.size(); ++z) {
            if (cliques[i].contains(z))
                continue;
            int near = 0;
            bool far_link = false;
            for (Element e : el) {
                const int r = sch.rel(z, e);
                near += (r == 1 || r == 2);
                far_link = far_link || r == 3 || r == 4;
            }
            if (far_link)
                CHECK(near == 1);
        }
    }
}

TEST_CASE("reconstructed GQ has order (3, 9) and its dual has order (9, 3)") {
    const ReconstructedGQ& r = rec();
    CHECK(r.t == 3);
    CHECK(r.dual.s() == 3);
    CHECK(r.dual.t() == 9);
    CHECK(r.dual.point_count() == 112);
    CHECK(r.dual.line_count() == 280);
    CHECK(r.report.overall());
    const GQ primal = r.dual.dual();
    CHECK(primal.s() == 9);
    CHECK(primal.t() == 3);
    CHECK(primal.point_count() == 280);
    CHECK(primal.line_count() == 112);
    CHECK(verify_gq(primal).overall());
}

TEST_CASE("recovered hemisystem") {
    const auto& inst = testing::t3();
    const Hemisystem comp = complement(inst.gq, inst.hemi);
    std::set<std::vector<Element>> partitions;
    for (Element x = 0; x < 112; ++x) {
        const auto U = recover_hemisystem(inst.scheme, x);
        CHECK(U.size() == 56);
        CHECK((U == inst.hemi.lines || U == comp.lines));
        CHECK(std::binary_search(U.begin(), U.end(), x));
        CHECK(verify_dual_hemisystem(inst.scheme, rec().cliques, U));
        partitions.insert(U);
    }
    CHECK(partitions.size() == 2);
}

TEST_CASE("a set that is not a union of halves fails the dual hemisystem check") {
    const auto& inst = testing::t3();
    auto U = recover_hemisystem(inst.scheme, 0);
    U.erase(U.begin() + 1);
    const Check c = check_dual_hemisystem(rec().cliques, U);
    CHECK_FALSE(c.passed);
    CHECK(c.witness.find("clique") != std::string::npos);
}

TEST_CASE("corrupted schemes are rejected") {
    const auto& sch = testing::t3().scheme;
    SUBCASE("relabelled pair breaks a clique") {
        const Element y = neighbors(sch, 0, 2).front();
        const RelationScheme bad = sch.with_relation(0, y, 4);
        try {
            reconstruct_gq(bad);
            FAIL("no throw");
        } catch (const Error& e) {
            CHECK((e.kind() == ErrorKind::StructureViolation || e.kind() == ErrorKind::AxiomFailure));
            CHECK_FALSE(e.witness().empty());
        }
    }
    SUBCASE("U not well defined") {
        const Element y = neighbors(sch, 0, 4).front();
        const RelationScheme bad = sch.with_relation(0, y, 3);
        try {
            recover_hemisystem(bad, 0);
            FAIL("no throw");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotWellDefined);
        }
    }
    SUBCASE("wrong size") {
        CHECK_THROWS_AS(all_cliques(complete_scheme(10)), Error);
    }
}
