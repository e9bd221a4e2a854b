#include "doctest.h"

#include "fixtures.hpp"

#include "scheme_forge/error.hpp"
#include "scheme_forge/kernels.hpp"
#include "scheme_forge/triple.hpp"

using namespace scheme_forge;

namespace {

TripleSolution forced(long t, std::size_t A, std::size_t B, std::size_t C) {
    const TripleConfig cfg{closed_form_parameters(t), A, B, C};
    return nonneg_force(solve(build_widened_system(cfg)));
}

Rational at(const TripleSolution& sol, std::size_t l, std::size_t m, std::size_t n) {
    const auto v = sol.value({l, m, n});
    REQUIRE_MESSAGE(v.has_value(), TripleIndex{l, m, n}.str() << " is not forced");
    return *v;
}

} // namespace

TEST_CASE("base system shape") {
    const TripleConfig cfg{closed_form_parameters(7), 2, 1, 1};
    const TripleSystem sys = build_base_system(cfg);
    CHECK(sys.d == 4);
    CHECK(sys.unknown_count() == 64);
    CHECK(sys.count(EquationKind::Base) == 48);
    CHECK(sys.index({1, 1, 1}) == 0);
    CHECK(sys.index({4, 4, 4}) == 63);
    CHECK(sys.unknown(sys.index({2, 3, 4})).str() == "[2 3 4]");
}

TEST_CASE("vacuous configurations") {
    const TripleConfig cfg{closed_form_parameters(3), 2, 2, 2};
    CHECK(cfg.is_vacuous());
    try {
        build_base_system(cfg);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::VacuousConfig);
    }
    CHECK_FALSE(TripleConfig{closed_form_parameters(5), 2, 2, 2}.is_vacuous());
}

TEST_CASE("relation index out of range") {
    CHECK_THROWS_AS(build_base_system(TripleConfig{closed_form_parameters(5), 0, 1, 1}), Error);
    CHECK_THROWS_AS(build_base_system(TripleConfig{closed_form_parameters(5), 1, 5, 1}), Error);
}

TEST_CASE("symmetry rows follow the coinciding classes") {
    const SchemeParameters sp = closed_form_parameters(7);
    auto sym_rows = [&](std::size_t A, std::size_t B, std::size_t C) {
        TripleSystem sys = build_base_system({sp, A, B, C});
        add_symmetry(sys, {sp, A, B, C});
        return sys.count(EquationKind::Symmetry);
    };
    CHECK(sym_rows(1, 3, 4) == 0);      // nothing coincides
    CHECK(sym_rows(2, 1, 1) == 24);     // [l m n] = [m l n], l != m: 4 * 3 / 2 * 4
    CHECK(sym_rows(1, 1, 2) == 24);
    CHECK(sym_rows(1, 2, 1) == 24);
    CHECK(sym_rows(2, 2, 2) == 4 * 15 + 12 * 3);  // one row per pair inside each S3 orbit
}

TEST_CASE("add_krein_vanishing rejects a nonzero Krein parameter") {
    const TripleConfig cfg{closed_form_parameters(7), 2, 1, 1};
    TripleSystem sys = build_base_system(cfg);
    try {
        add_krein_vanishing(sys, cfg, {{1, 1, 1}});
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotVanishing);
        CHECK(e.witness().find("q^1_11") != std::string::npos);
    }
}

TEST_CASE("(2,2,2): [2 2 2] = (t-5)/2 and [2 2 i] = 0") {
    for (long t = 5; t <= 19; t += 2) {
        CAPTURE(t);
        const TripleSolution sol = forced(t, 2, 2, 2);
        CHECK(at(sol, 2, 2, 2) == Rational(t - 5, 2));
        for (std::size_t i : {1, 3, 4})
            CHECK(at(sol, 2, 2, i) == Rational(0));
    }
}

TEST_CASE("(2,1,1): forced values") {
    for (long t = 3; t <= 19; t += 2) {
        CAPTURE(t);
        const TripleSolution sol = forced(t, 2, 1, 1);
        CHECK(at(sol, 1, 1, 2) == Rational(t - 1, 2));
        CHECK(at(sol, 2, 2, 1) == Rational(t - 3, 2));
        CHECK(at(sol, 1, 3, 4) == Rational(t * t * (t + 1), 2));
        for (std::size_t i : {1, 3, 4}) {
            CHECK(at(sol, 1, 1, i) == Rational(0));
            CHECK(at(sol, 2, i, 1) == Rational(0));
        }
    }
}

TEST_CASE("forcing never assigns a negative value and never reports Infeasible on the family") {
    for (long t = 3; t <= 11; t += 2) {
        const SchemeParameters sp = closed_form_parameters(t);
        for (std::size_t A = 1; A <= 4; ++A)
            for (std::size_t B = 1; B <= 4; ++B)
                for (std::size_t C = 1; C <= 4; ++C) {
                    const TripleConfig cfg{sp, A, B, C};
                    if (cfg.is_vacuous())
                        continue;
                    CAPTURE(t);
                    CAPTURE(A * 100 + B * 10 + C);
                    TripleSolution sol;
                    CHECK_NOTHROW(sol = nonneg_force(solve(build_widened_system(cfg))));
                    for (const auto& [u, v] : sol.forced)
                        CHECK(v.sign() >= 0);
                }
    }
}

TEST_CASE("listed unknowns parametrize the solution space") {
    // Spanning sets for the affine solution space of the widened systems.
    const std::vector<TripleIndex> list222{{1, 1, 2}, {1, 1, 3}, {1, 1, 4}, {1, 2, 2}, {1, 2, 3}, {1, 3, 4}, {2, 3, 4}};
    const std::vector<TripleIndex> list211{{1, 2, 1}, {1, 2, 3}, {1, 2, 4}, {1, 3, 2}, {1, 3, 4}, {1, 4, 1},
                                           {1, 4, 2}, {1, 4, 3}, {2, 3, 1}, {2, 3, 2}, {2, 3, 4}, {2, 4, 4},
                                           {3, 4, 1}, {3, 4, 2}, {3, 4, 4}, {4, 4, 2}};
    for (long t : {5L, 7L, 9L, 13L}) {
        for (const auto& [abc, list] : {std::pair{std::array<std::size_t, 3>{2, 2, 2}, list222},
                                        std::pair{std::array<std::size_t, 3>{2, 1, 1}, list211}}) {
            const TripleSystem sys = build_widened_system({closed_form_parameters(t), abc[0], abc[1], abc[2]});
            const TripleSolution sol = solve(sys);
            RatMatrix m(sol.space.dimension(), list.size());
            for (std::size_t i = 0; i < sol.space.dimension(); ++i)
                for (std::size_t j = 0; j < list.size(); ++j)
                    m(i, j) = sol.space.basis[i][sys.index(list[j])];
            CAPTURE(t);
            CHECK(rank(m) == sol.space.dimension());
            CHECK(sol.space.dimension() <= list.size());
        }
    }
}

TEST_CASE("free dimension of the t = 7 systems") {
    // 64 minus the rank of the linear identities; zero-support rows excluded
    const auto dim = [](std::size_t A, std::size_t B, std::size_t C) {
        return solve(build_widened_system({closed_form_parameters(7), A, B, C})).space.dimension();
    };
    CHECK(dim(2, 2, 2) == 2);
    CHECK(dim(2, 1, 1) == 3);
}

TEST_CASE("nonneg_force on a hand-made space") {
    // x0 = 1 - x2, x1 = -x2, x2 free: the sign rule pins x2 = 0
    TripleSolution sol;
    sol.d = 1;
    sol.space.variable_names = {"a", "b", "c"};
    sol.space.particular = {1, 0, 0};
    sol.space.basis = {{-1, -1, 1}};
    sol.space.free_indices = {2};
    const TripleSolution f = nonneg_force(sol);
    CHECK(f.space.dimension() == 0);
    CHECK(f.space.particular == std::vector<Rational>{1, 0, 0});

    // x0 = -1 is infeasible
    TripleSolution bad;
    bad.d = 1;
    bad.space.variable_names = {"a"};
    bad.space.particular = {-1};
    try {
        nonneg_force(bad);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Infeasible);
        CHECK(e.witness() == "a = -1");
    }
}

TEST_CASE("direct counts satisfy every equation for sampled triples at t = 3") {
    const auto& inst = testing::t3();
    const auto triples = kernels::sample_triples(inst.scheme, 3000, 5);
    for (const auto& [x, y, u] : triples) {
        const TripleConfig cfg{inst.params, static_cast<std::size_t>(inst.scheme.rel(x, y)),
                               static_cast<std::size_t>(inst.scheme.rel(y, u)),
                               static_cast<std::size_t>(inst.scheme.rel(u, x))};
        REQUIRE_FALSE(cfg.is_vacuous());
        const TripleSystem sys = build_widened_system(cfg);
        const auto counts = direct_triple_counts(inst.scheme, x, y, u);
        const auto bad = first_violation(sys, counts);
        CHECK_FALSE(bad.has_value());
    }
}

TEST_CASE("first_violation reports a wrong count") {
    const auto& inst = testing::t3();
    const Element x = 0;
    Element y = 1;
    while (inst.scheme.rel(x, y) != 2)
        ++y;
    Element u = 1;
    while (u == y || inst.scheme.rel(y, u) != 1 || inst.scheme.rel(u, x) != 1)
        ++u;
    const TripleSystem sys = build_widened_system({inst.params, 2, 1, 1});
    auto counts = direct_triple_counts(inst.scheme, x, y, u);
    CHECK(counts[(1 * 5 + 1) * 5 + 2] == 1);  // [1 1 2] = (t-1)/2
    CHECK(counts[(2 * 5 + 2) * 5 + 1] == 0);  // [2 2 1] = (t-3)/2
    CHECK_FALSE(first_violation(sys, counts).has_value());
    counts[(1 * 5 + 1) * 5 + 2] += 1;
    CHECK(first_violation(sys, counts).has_value());
}
