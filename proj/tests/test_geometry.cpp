#include "doctest.h"

#include "fixtures.hpp"

#include "scheme_forge/error.hpp"
#include "scheme_forge/geometry.hpp"
#include "scheme_forge/kernels.hpp"

#include <set>

using namespace scheme_forge;

namespace {

// (a0 + a1 w)(b0 + b1 w) mod (3, w^2 + 1), written out from the definition.
std::pair<int, int> naive_mul(int a0, int a1, int b0, int b1) {
    int c0 = a0 * b0, c1 = a0 * b1 + a1 * b0, c2 = a1 * b1;
    c0 -= c2;  // w^2 = -1
    return {((c0 % 3) + 3) % 3, ((c1 % 3) + 3) % 3};
}

} // namespace

TEST_CASE("GF(9) multiplication table against polynomial arithmetic") {
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
            const GF9 a = GF9::from_index(i), b = GF9::from_index(j);
            const auto [c0, c1] = naive_mul(a.c0(), a.c1(), b.c0(), b.c1());
            CHECK(a * b == GF9(c0, c1));
            CHECK(a + b == GF9(a.c0() + b.c0(), a.c1() + b.c1()));
        }
}

TEST_CASE("GF(9) field axioms") {
    const auto all = GF9::all();
    REQUIRE(all.size() == 9);
    for (GF9 a : all) {
        CHECK(a + (-a) == GF9::zero());
        CHECK(a - a == GF9::zero());
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == GF9::one());
            CHECK(a / a == GF9::one());
        }
        CHECK(a.frobenius().frobenius() == a);
        CHECK(a.norm().c1() == 0);  // norm lands in GF(3)
        for (GF9 b : all) {
            CHECK(a * b == b * a);
            CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
            for (GF9 c : all)
                CHECK(a * (b + c) == a * b + a * c);
        }
    }
    // omega generates no proper subfield: omega^2 = -1
    CHECK(GF9::omega() * GF9::omega() == -GF9::one());
    int generators = 0;
    for (GF9 a : all) {
        std::set<int> powers;
        GF9 x = a;
        for (int k = 0; k < 8; ++k, x = x * a)
            powers.insert(x.index());
        generators += powers.size() == 8;
    }
    CHECK(generators == 4);  // phi(8)
}

TEST_CASE("PG(3,9) enumeration and ranks") {
    const auto pts = projective_points();
    REQUIRE(pts.size() == 820);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(pts[i].rank() == static_cast<int>(i));
    // scaling does not change the point
    const ProjPoint p({GF9(1, 1), GF9(0, 1), GF9::zero(), GF9(2, 0)});
    const GF9 w = GF9::omega();
    const auto& c = p.coords();
    CHECK(ProjPoint({w * c[0], w * c[1], w * c[2], w * c[3]}) == p);
    CHECK(p.coords()[0] == GF9::one());
    CHECK_THROWS_AS(ProjPoint({GF9::zero(), GF9::zero(), GF9::zero(), GF9::zero()}), Error);
}

TEST_CASE("Hermitian surface point count by brute force") {
    long vectors = 0;
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b)
            for (int c = 0; c < 9; ++c)
                for (int d = 0; d < 9; ++d) {
                    if (a == 0 && b == 0 && c == 0 && d == 0)
                        continue;
                    const GF9 x[4] = {GF9::from_index(a), GF9::from_index(b), GF9::from_index(c), GF9::from_index(d)};
                    GF9 sum;
                    for (GF9 v : x)
                        sum = sum + v.norm();
                    vectors += sum.is_zero();
                }
    CHECK(vectors % 8 == 0);
    CHECK(vectors / 8 == 280);
    CHECK(hermitian_points().size() == 280);
    for (const auto& p : hermitian_points())
        CHECK(hermitian_form(p).is_zero());
}

TEST_CASE("Hermitian GQ is a GQ of order (9, 3)") {
    const GQ& gq = testing::t3().gq;
    CHECK(gq.s() == 9);
    CHECK(gq.t() == 3);
    CHECK(gq.point_count() == 280);
    CHECK(gq.line_count() == 112);
    for (LineId l = 0; l < gq.line_count(); ++l)
        CHECK(gq.line(l).size() == 10);
    for (PointId p = 0; p < gq.point_count(); ++p)
        CHECK(gq.lines_through(p).size() == 4);
    const ValidationReport rep = verify_gq(gq);
    CHECK(rep.overall());

    // every line lies in the surface and is closed under the span of two points
    const auto pts = hermitian_points();
    const auto& l0 = gq.line(0);
    const auto& a = pts[l0[0]].coords();
    const auto& b = pts[l0[1]].coords();
    std::set<PointId> span;
    for (GF9 lambda : GF9::all()) {
        std::array<GF9, 4> v;
        for (int i = 0; i < 4; ++i)
            v[i] = a[i] + lambda * b[i];
        const ProjPoint q(v);
        CHECK(hermitian_form(q).is_zero());
        for (PointId id = 0; id < pts.size(); ++id)
            if (pts[id] == q)
                span.insert(id);
    }
    span.insert(l0[1]);
    CHECK(std::vector<PointId>(span.begin(), span.end()) == l0);
}

TEST_CASE("dual and grid") {
    const GQ grid = grid_gq(3, 3);
    CHECK(grid.s() == 2);
    CHECK(grid.t() == 1);
    CHECK(verify_gq(grid).overall());
    CHECK(verify_gq(grid.dual()).overall());
    const GQ dual = testing::t3().gq.dual();
    CHECK(dual.point_count() == 112);
    CHECK(dual.line_count() == 280);
    CHECK(dual.s() == 3);
    CHECK(dual.t() == 9);
    CHECK(verify_gq(dual).overall());
}

TEST_CASE("removing a line breaks the axioms with a witness") {
    const GQ broken = testing::t3().gq.without_line(5);
    const ValidationReport rep = verify_gq(broken);
    CHECK_FALSE(rep.overall());
    REQUIRE(rep.first_failure() != nullptr);
    CHECK_FALSE(rep.first_failure()->witness.empty());
}

TEST_CASE("axiom (iii) kernel: parallel equals serial") {
    const GQ& gq = testing::t3().gq;
    CHECK(kernels::gq_axiom3_violation(gq) == kernels::serial::gq_axiom3_violation(gq));
    CHECK_FALSE(kernels::gq_axiom3_violation(gq).has_value());
    const GQ broken = gq.without_line(17);
    const auto par = kernels::gq_axiom3_violation(broken);
    const auto ser = kernels::serial::gq_axiom3_violation(broken);
    REQUIRE(par.has_value());
    CHECK(par == ser);
    CHECK(par->count == 0);
}

TEST_CASE("hemisystem search and checks") {
    const auto& inst = testing::t3();
    CHECK(inst.hemi.lines.size() == 56);
    CHECK(verify_hemisystem(inst.gq, inst.hemi));
    for (PointId p = 0; p < inst.gq.point_count(); ++p) {
        int in = 0;
        for (LineId l : inst.gq.lines_through(p))
            in += std::binary_search(inst.hemi.lines.begin(), inst.hemi.lines.end(), l);
        CHECK(in == 2);
    }
    const Hemisystem comp = complement(inst.gq, inst.hemi);
    CHECK(comp.lines.size() == 56);
    CHECK(verify_hemisystem(inst.gq, comp));

    SUBCASE("seeded search also succeeds and is reproducible") {
        const Hemisystem a = find_hemisystem(inst.gq, {std::uint64_t{42}});
        const Hemisystem b = find_hemisystem(inst.gq, {std::uint64_t{42}});
        CHECK(verify_hemisystem(inst.gq, a));
        CHECK(a.lines == b.lines);
    }
    SUBCASE("deleting one line is caught") {
        Hemisystem h = inst.hemi;
        h.lines.erase(h.lines.begin() + 3);
        const Check c = check_hemisystem(inst.gq, h);
        CHECK_FALSE(c.passed);
        CHECK_FALSE(c.witness.empty());
    }
}

TEST_CASE("hemisystem search guards") {
    try {
        find_hemisystem(grid_gq(3, 3).dual());  // order (1, 2)
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadParameter);
    }
    // 2 x 2 grid, order (1, 1): one of the two parallel classes
    const GQ square = grid_gq(2, 2);
    CHECK(verify_hemisystem(square, find_hemisystem(square)));
    // a triangle has no line set with exactly one line on each vertex
    try {
        find_hemisystem(GQ(1, 1, 3, {{0, 1}, {1, 2}, {0, 2}}));
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotFound);
    }
}
