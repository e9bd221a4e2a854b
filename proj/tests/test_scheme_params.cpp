#include "doctest.h"

#include "scheme_forge/error.hpp"
#include "scheme_forge/scheme_params.hpp"

#include <algorithm>
#include <numeric>

using namespace scheme_forge;

namespace {

// Laplace expansion; independent of the elimination code under test.
Rational det(const RatMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 1)
        return m(0, 0);
    Rational out(0);
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c).is_zero())
            continue;
        RatMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t k = 0, kk = 0; k < n; ++k)
                if (k != c)
                    minor(r - 1, kk++) = m(r, k);
        const Rational term = m(0, c) * det(minor);
        out += (c % 2 == 0) ? term : -term;
    }
    return out;
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::Parse;
}

std::vector<long> odd_range(long lo, long hi) {
    std::vector<long> out;
    for (long t = lo; t <= hi; t += 2)
        out.push_back(t);
    return out;
}

} // namespace

TEST_CASE("hemisystem Krein array at t = 3") {
    const KreinArray k = hemisystem_krein_array(3);
    CHECK(k == KreinArray::parse("20,49/3,14/3,1;1,14/3,49/3,20"));
    CHECK(k.str() == "20,49/3,14/3,1;1,14/3,49/3,20");
    CHECK(k.is_antipodal());
    CHECK(detect_family_parameter(k) == 3);
    CHECK_FALSE(detect_family_parameter(KreinArray::parse("3,2,1;1,2,3")).has_value());
}

TEST_CASE("parity and range guard") {
    for (long t : {4L, 1L, 2L, -3L, 0L}) {
        CAPTURE(t);
        CHECK(kind_of([&] { hemisystem_krein_array(t); }) == ErrorKind::BadParameter);
        CHECK(kind_of([&] { closed_form_parameters(t); }) == ErrorKind::BadParameter);
    }
}

TEST_CASE("Krein array parse errors") {
    for (const char* bad : {"", "1,2", "1,2;1", "1,2;1,x", "1;1;1", "2,1;1,0/0"}) {
        CAPTURE(bad);
        CHECK(kind_of([&] { KreinArray::parse(bad); }) == ErrorKind::Parse);
    }
}

TEST_CASE("L1* columns sum to b*_0 and Q rows are eigenvectors") {
    const KreinArray k = hemisystem_krein_array(5);
    const RatMatrix L = build_L1star(k);
    for (std::size_t c = 0; c < L.cols(); ++c) {
        Rational sum(0);
        for (std::size_t r = 0; r < L.rows(); ++r)
            sum += L(r, c);
        CHECK(sum == k.bstar[0]);
    }
    const DualEigenmatrix de = dual_eigenmatrix(k);
    for (std::size_t i = 0; i < de.Q.rows(); ++i)
        for (std::size_t r = 0; r < L.rows(); ++r) {
            Rational lhs(0);
            for (std::size_t c = 0; c < L.cols(); ++c)
                lhs += L(r, c) * de.Q(i, c);
            CHECK(lhs == de.Q(i, 1) * de.Q(i, r));
        }
}

TEST_CASE("t = 3 parameter values") {
    const SchemeParameters sp = derive_parameters(hemisystem_krein_array(3), 3);
    CHECK(sp.order == Rational(112));
    CHECK(sp.valencies == std::vector<Rational>{1, 20, 10, 36, 45});
    CHECK(sp.multiplicities == std::vector<Rational>{1, 20, 70, 20, 1});
    CHECK(sp.p(1, 1, 4) == Rational(18));
    CHECK(sp.p(2, 2, 2) == Rational(0));
    CHECK(sp.p(4, 4, 4) == Rational(36));
    CHECK(sp.s() == Rational(7));
    CHECK(sp.bcoef() == Rational(6));
}

TEST_CASE("closed-form tables pass validation for every odd t up to 19") {
    for (long t : odd_range(3, 19)) {
        CAPTURE(t);
        const ValidationReport rep = validate(closed_form_parameters(t));
        const Check* bad = rep.first_failure();
        CHECK_MESSAGE(bad == nullptr, (bad ? bad->name + ": " + bad->witness : std::string()));
    }
}

TEST_CASE("generic pipeline equals the closed form") {
    for (long t : odd_range(3, 19)) {
        CAPTURE(t);
        const SchemeParameters cf = closed_form_parameters(t);
        const SchemeParameters g = derive_parameters(hemisystem_krein_array(t), t);
        CHECK(g.valencies == cf.valencies);
        CHECK(g.multiplicities == cf.multiplicities);
        CHECK(g.P == cf.P);
        CHECK(g.Q == cf.Q);
        CHECK(g.p == cf.p);
        CHECK(g.q == cf.q);
        CHECK(g == cf);
    }
}

TEST_CASE("order from multiplicities and Krein round trip") {
    for (long t : odd_range(3, 19)) {
        CAPTURE(t);
        const SchemeParameters sp = derive_parameters(hemisystem_krein_array(t), t);
        const Rational sum = std::accumulate(sp.multiplicities.begin(), sp.multiplicities.end(), Rational(0));
        CHECK(sum == Rational((t * t * t + 1) * (t + 1)));
        CHECK(sp.order == sum);
        CHECK(krein_array_from(sp.q) == hemisystem_krein_array(t));
    }
}

TEST_CASE("vanishing Krein set contains (1,1,3), (1,1,4), (1,4,2), (1,4,4) and permutations") {
    for (long t : odd_range(3, 19)) {
        CAPTURE(t);
        const SchemeParameters sp = closed_form_parameters(t);
        for (std::array<std::size_t, 3> ijk : {std::array<std::size_t, 3>{1, 1, 3}, {1, 1, 4}, {1, 4, 2}, {1, 4, 4}}) {
            std::sort(ijk.begin(), ijk.end());
            do {
                CHECK(sp.q(ijk[2], ijk[0], ijk[1]).is_zero());
            } while (std::next_permutation(ijk.begin(), ijk.end()));
        }
    }
}

TEST_CASE("P columns are eigenvalues of the intersection matrices") {
    // L_j with (L_j)_{ik} = p^k_{ji}; its eigenvalues are the column P_{.j}
    for (long t : {3L, 7L}) {
        const SchemeParameters sp = closed_form_parameters(t);
        const std::size_t n = sp.d + 1;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r) {
                RatMatrix m(n, n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t k = 0; k < n; ++k)
                        m(i, k) = sp.p(k, j, i) - (i == k ? sp.P(r, j) : Rational(0));
                CAPTURE(t);
                CAPTURE(j);
                CAPTURE(r);
                CHECK(det(m) == Rational(0));
            }
    }
}

TEST_CASE("Q_44 and p^2_33 / p^2_44 are the values forced by the identities") {
    // m_4 P_44 / n_4 = 1 and the p^2 row sums both pin these entries.
    for (long t : odd_range(3, 11)) {
        const SchemeParameters sp = closed_form_parameters(t);
        const Rational T(t), s = T * T - T + 1;
        CHECK(sp.Q(4, 4) == Rational(1));
        CHECK(sp.p(2, 3, 3) == T * T * (s - 3) / 2);
        CHECK(sp.p(2, 4, 4) == T * T * (s + 1) / 2);
    }
}

TEST_CASE("corrupting one entry is caught with a witness") {
    SchemeParameters sp = closed_form_parameters(5);
    SUBCASE("p") { sp.p(1, 1, 4) += 1; }
    SUBCASE("P") { sp.P(2, 2) += 1; }
    SUBCASE("Q") { sp.Q(3, 1) = -sp.Q(3, 1); }
    SUBCASE("q") { sp.q(1, 1, 1) += Rational(1, 5); }
    SUBCASE("valency") { sp.valencies[3] += 2; }
    const ValidationReport rep = validate(sp);
    CHECK_FALSE(rep.overall());
    REQUIRE(rep.first_failure() != nullptr);
    CHECK_FALSE(rep.first_failure()->witness.empty());
}

TEST_CASE("abstract Krein arrays without a family parameter") {
    SUBCASE("3-cube") {
        std::size_t orderings = 0;
        const SchemeParameters sp = derive_parameters(KreinArray::parse("3,2,1;1,2,3"), std::nullopt, &orderings);
        CHECK(sp.order == Rational(8));
        // relation labels are arbitrary without t: every relabelling is a scheme
        auto val = sp.valencies;
        std::sort(val.begin(), val.end());
        CHECK(val == std::vector<Rational>{1, 1, 3, 3});
        CHECK(orderings == 6);
        CHECK(validate(sp).overall());
        CHECK_FALSE(sp.t.has_value());
    }
    SUBCASE("complete graph") {
        const SchemeParameters sp = derive_parameters(KreinArray::parse("4;1"));
        CHECK(sp.valencies == std::vector<Rational>{1, 4});
        CHECK(sp.P == RatMatrix{{1, 4}, {1, -1}});
    }
    SUBCASE("pentagon has irrational eigenvalues") {
        CHECK(kind_of([] { derive_parameters(KreinArray::parse("2,1;1,1")); }) ==
              ErrorKind::IrrationalEigenvalue);
    }
    SUBCASE("family t passed with a non-family array") {
        CHECK(kind_of([] { derive_parameters(KreinArray::parse("3,2,1;1,2,3"), 3); }) == ErrorKind::BadParameter);
    }
}

TEST_CASE("krein string matching the family detects t") {
    const KreinArray k = KreinArray::parse("20,49/3,14/3,1;1,14/3,49/3,20");
    const auto t = detect_family_parameter(k);
    REQUIRE(t.has_value());
    CHECK(derive_parameters(k, t) == derive_parameters(hemisystem_krein_array(3), 3));
}
