#include "scheme_forge/scheme_params.hpp"

#include "scheme_forge/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace scheme_forge {

namespace {

std::string idx3(const char* sym, std::size_t k, std::size_t i, std::size_t j) {
    std::ostringstream os;
    os << sym << '^' << k << '_' << i << j;
    return os.str();
}

Rational delta(std::size_t a, std::size_t b) { return a == b ? Rational(1) : Rational(0); }

void require_odd_t(long t) {
    if (t < 3 || t % 2 == 0)
        throw Error(ErrorKind::BadParameter, "t must be an odd integer >= 3", std::to_string(t));
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// KreinArray

bool KreinArray::is_antipodal() const {
    for (std::size_t i = 0; i < d; ++i) {
        if (i == d / 2)
            continue;
        // b*_i = c*_{d-i}; cstar is 1-based
        if (bstar[i] != cstar[d - i - 1])
            return false;
    }
    return true;
}

KreinArray KreinArray::parse(std::string_view text) {
    const auto halves = split(text, ';');
    if (halves.size() != 2)
        throw Error(ErrorKind::Parse, "Krein array needs exactly one ';'", std::string(text));
    KreinArray k;
    for (auto tok : split(halves[0], ','))
        k.bstar.push_back(Rational::parse(tok));
    for (auto tok : split(halves[1], ','))
        k.cstar.push_back(Rational::parse(tok));
    if (k.bstar.size() != k.cstar.size() || k.bstar.empty())
        throw Error(ErrorKind::Parse, "b* and c* must have the same positive length", std::string(text));
    k.d = k.bstar.size();
    for (const auto& v : k.bstar)
        if (v.sign() <= 0)
            throw Error(ErrorKind::BadParameter, "Krein array entries must be positive", v.str());
    for (const auto& v : k.cstar)
        if (v.sign() <= 0)
            throw Error(ErrorKind::BadParameter, "Krein array entries must be positive", v.str());
    return k;
}

std::string KreinArray::str() const {
    std::string out;
    for (std::size_t i = 0; i < d; ++i)
        out += (i ? "," : "") + bstar[i].str();
    out += ";";
    for (std::size_t i = 0; i < d; ++i)
        out += (i ? "," : "") + cstar[i].str();
    return out;
}

KreinArray hemisystem_krein_array(long t) {
    require_odd_t(t);
    const Rational tt(t);
    const Rational s = tt * tt - tt + 1;
    KreinArray k;
    k.d = 4;
    k.bstar = {(s + tt) * (tt - 1), s * s / tt, s * (tt - 1) / tt, Rational(1)};
    k.cstar = {Rational(1), s * (tt - 1) / tt, s * s / tt, (s + tt) * (tt - 1)};
    return k;
}

std::optional<long> detect_family_parameter(const KreinArray& k) {
    if (k.d != 4 || !k.bstar[0].is_integer())
        return std::nullopt;
    // b*_0 = (t^2 + 1)(t - 1) is increasing in t
    for (long t = 3;; t += 2) {
        const Rational b0 = Rational(t * t + 1) * Rational(t - 1);
        if (b0 > k.bstar[0])
            return std::nullopt;
        if (b0 == k.bstar[0])
            return hemisystem_krein_array(t) == k ? std::optional<long>(t) : std::nullopt;
    }
}

Rational SchemeParameters::s() const {
    if (!t)
        throw Error(ErrorKind::BadParameter, "s is only defined for family members");
    return Rational(*t * *t - *t + 1);
}

Rational SchemeParameters::bcoef() const {
    if (!t)
        throw Error(ErrorKind::BadParameter, "b is only defined for family members");
    return Rational((*t + 1) * *t / 2);
}

// ---------------------------------------------------------------------------
// Krein array -> eigenmatrices

RatMatrix build_L1star(const KreinArray& k) {
    const std::size_t d = k.d;
    auto b = [&](std::size_t j) { return j < d ? k.bstar[j] : Rational(0); };
    auto c = [&](std::size_t j) { return j >= 1 ? k.cstar[j - 1] : Rational(0); };
    RatMatrix l(d + 1, d + 1);
    for (std::size_t j = 0; j <= d; ++j) {
        l(j, j) = k.bstar[0] - b(j) - c(j);
        if (j + 1 <= d)
            l(j + 1, j) = b(j);
        if (j >= 1)
            l(j - 1, j) = c(j);
    }
    return l;
}

DualEigenmatrix dual_eigenmatrix(const KreinArray& k) {
    const std::size_t d = k.d;
    const RatMatrix l = build_L1star(k);
    const RatPolynomial cp = char_poly(l);
    std::vector<Rational> roots = rational_roots(cp);
    if (roots.size() < d + 1)
        throw Error(ErrorKind::IrrationalEigenvalue,
                    "characteristic polynomial of L1* has non-rational roots",
                    std::to_string(roots.size()) + " rational roots of " + std::to_string(d + 1));
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    if (roots.size() < d + 1)
        throw Error(ErrorKind::DegenerateSpectrum, "L1* has a repeated eigenvalue");

    std::vector<std::vector<Rational>> rows;
    for (const Rational& theta : roots) {
        std::vector<Rational> v(d + 1);
        v[0] = 1;
        // theta v_j = b*_{j-1} v_{j-1} + a*_j v_j + c*_{j+1} v_{j+1}
        for (std::size_t j = 0; j < d; ++j) {
            Rational rhs = theta * v[j] - l(j, j) * v[j];
            if (j >= 1)
                rhs -= l(j, j - 1) * v[j - 1];
            v[j + 1] = rhs / l(j, j + 1);
        }
        rows.push_back(std::move(v));
    }

    const auto positive = [](const std::vector<Rational>& v) {
        return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.sign() > 0; });
    };
    const auto n_positive = std::count_if(rows.begin(), rows.end(), positive);
    if (n_positive != 1)
        throw Error(ErrorKind::DegenerateSpectrum, "expected exactly one all-positive row in Q",
                    std::to_string(n_positive) + " candidates");
    const auto it = std::find_if(rows.begin(), rows.end(), positive);
    std::rotate(rows.begin(), it, it + 1);

    DualEigenmatrix out;
    out.Q = RatMatrix(d + 1, d + 1);
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t j = 0; j <= d; ++j)
            out.Q(i, j) = rows[i][j];
    out.multiplicities = rows[0];
    out.order = std::accumulate(rows[0].begin(), rows[0].end(), Rational(0));
    return out;
}

RatMatrix first_eigenmatrix(const RatMatrix& Q, const Rational& order) {
    return order * invert(Q);
}

Tensor3 intersection_numbers(const RatMatrix& P, std::span<const Rational> multiplicities,
                             std::span<const Rational> valencies, const Rational& order) {
    const std::size_t n = P.rows();
    Tensor3 p(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational acc;
                for (std::size_t r = 0; r < n; ++r)
                    acc += multiplicities[r] * P(r, i) * P(r, j) * P(r, k);
                acc /= order * valencies[k];
                if (!acc.is_integer() || acc.sign() < 0)
                    throw Error(ErrorKind::NonIntegral,
                                "intersection number is not a nonnegative integer",
                                idx3("p", k, i, j) + " = " + acc.str());
                p(k, i, j) = std::move(acc);
            }
    return p;
}

Tensor3 krein_numbers(const RatMatrix& Q, std::span<const Rational> valencies,
                      std::span<const Rational> multiplicities, const Rational& order) {
    const std::size_t n = Q.rows();
    Tensor3 q(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational acc;
                for (std::size_t r = 0; r < n; ++r)
                    acc += valencies[r] * Q(r, i) * Q(r, j) * Q(r, k);
                acc /= order * multiplicities[k];
                if (acc.sign() < 0)
                    throw Error(ErrorKind::NegativeKrein, "Krein condition violated",
                                idx3("q", k, i, j) + " = " + acc.str());
                q(k, i, j) = std::move(acc);
            }
    return q;
}

KreinArray krein_array_from(const Tensor3& q) {
    KreinArray k;
    k.d = q.size() - 1;
    for (std::size_t i = 0; i < k.d; ++i)
        k.bstar.push_back(q(i, 1, i + 1));
    for (std::size_t i = 1; i <= k.d; ++i)
        k.cstar.push_back(q(i, 1, i - 1));
    return k;
}

namespace {

RatMatrix permute_rows(const RatMatrix& m, const std::vector<std::size_t>& perm) {
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out(r, c) = m(perm[r], c);
    return out;
}

SchemeParameters assemble(const DualEigenmatrix& de, const RatMatrix& Q, std::optional<long> t) {
    SchemeParameters sp;
    sp.d = Q.rows() - 1;
    sp.t = t;
    sp.order = de.order;
    sp.multiplicities = de.multiplicities;
    sp.Q = Q;
    sp.P = first_eigenmatrix(Q, de.order);
    for (std::size_t j = 0; j <= sp.d; ++j)
        sp.valencies.push_back(sp.P(0, j));
    for (const auto& n : sp.valencies)
        if (n.sign() <= 0)
            throw Error(ErrorKind::NonIntegral, "valency is not positive", n.str());
    sp.p = intersection_numbers(sp.P, sp.multiplicities, sp.valencies, sp.order);
    sp.q = krein_numbers(sp.Q, sp.valencies, sp.multiplicities, sp.order);
    return sp;
}

} // namespace

SchemeParameters derive_parameters(const KreinArray& k, std::optional<long> t,
                                   std::size_t* valid_orderings) {
    const DualEigenmatrix de = dual_eigenmatrix(k);
    const std::size_t n = k.d + 1;

    if (t) {
        const SchemeParameters ref = closed_form_parameters(*t);
        if (ref.d != k.d)
            throw Error(ErrorKind::BadParameter, "class count differs from the family");
        std::vector<std::size_t> perm(n, n);
        perm[0] = 0;
        for (std::size_t target = 1; target < n; ++target)
            for (std::size_t r = 1; r < n; ++r)
                if (std::equal(ref.Q.row(target).begin(), ref.Q.row(target).end(), de.Q.row(r).begin()))
                    perm[target] = r;
        for (std::size_t target = 1; target < n; ++target)
            if (perm[target] == n)
                throw Error(ErrorKind::BadParameter, "Krein array does not match the family member",
                            "t = " + std::to_string(*t) + ", relation " + std::to_string(target));
        if (valid_orderings)
            *valid_orderings = 1;
        return assemble(de, permute_rows(de.Q, perm), t);
    }

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<SchemeParameters> first;
    std::size_t count = 0;
    do {
        try {
            SchemeParameters sp = assemble(de, permute_rows(de.Q, perm), std::nullopt);
            ++count;
            if (!first)
                first = std::move(sp);
        } catch (const Error&) {
            // ordering rejected
        }
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    if (valid_orderings)
        *valid_orderings = count;
    if (!first)
        throw Error(ErrorKind::NonIntegral, "no relation ordering gives a feasible parameter set");
    return *first;
}

// ---------------------------------------------------------------------------
// Closed-form tables

SchemeParameters closed_form_parameters(long t) {
    require_odd_t(t);
    const Rational T(t);
    const Rational s = T * T - T + 1;
    const Rational b = T * (T + 1) / 2;
    const Rational half(1, 2);
    const Rational n1 = (T + 1) * (T * T + 1) * half;
    const Rational n2 = (T - 1) * (T * T + 1) * half;
    const Rational n3 = T * T * (T * T - 1) * half;
    const Rational n4 = T * T * (T * T + 1) * half;

    SchemeParameters sp;
    sp.d = 4;
    sp.t = t;
    sp.valencies = {Rational(1), n1, n2, n3, n4};

    sp.P = RatMatrix{
        {1, n1, n2, n3, n4},
        {1, b, -(s + 1) * half, -b, (s - 1) * half},
        {1, 0, T - 1, 0, -T},
        {1, -b, -(s + 1) * half, b, (s - 1) * half},
        {1, -n1, n2, -n3, n4},
    };
    sp.Q = RatMatrix{
        {1, 2 * n2, s * (s + T), 2 * n2, 1},
        {1, s - 1, 0, 1 - s, -1},
        {1, -s - 1, 2 * s, -s - 1, 1},
        {1, -(s + T) / T, 0, (s + T) / T, -1},
        {1, (s - T) / T, -2 * s / T, (s - T) / T, 1},  // Q_44 = m_4 P_44 / n_4 = 1
    };
    for (std::size_t j = 0; j <= 4; ++j)
        sp.multiplicities.push_back(sp.Q(0, j));
    sp.order = std::accumulate(sp.valencies.begin(), sp.valencies.end(), Rational(0));

    // p^k_ij for i, j in 1..4, one 4x4 block per k
    const Rational z(0);
    const RatMatrix p_tables[4] = {
        {
            {z, (T - 1) * half, z, T * b},
            {(T - 1) * half, z, T * (s - 1) * half, z},
            {z, T * (s - 1) * half, z, T * T * (s - 1) * half},
            {T * b, z, T * T * (s - 1) * half, z},
        },
        {
            {(T + 1) * half, z, T * b, z},
            {z, (T - 3) * half, z, T * (s - 1) * half},
            {T * b, z, T * T * (s - 3) * half, z},  // row sums force p^2_33 = t^2(s-3)/2
            {z, T * (s - 1) * half, z, T * T * (s + 1) * half},
        },
        {
            {z, (T * T + 1) * half, z, T * (T * T + 1) * half},
            {(T * T + 1) * half, z, (T - 2) * (T * T + 1) * half, z},
            {z, (T - 2) * (T * T + 1) * half, z, (s - 1) * (T * T + 1) * half},
            {T * (T * T + 1) * half, z, (s - 1) * (T * T + 1) * half, z},
        },
        {
            {(T + 1) * (T + 1) * half, z, b * (T - 1), z},
            {z, (T - 1) * (T - 1) * half, z, (T - 1) * (s + 1) * half},
            {b * (T - 1), z, b * (T - 1) * (T - 1), z},
            {z, (T - 1) * (s + 1) * half, z, (s - 1) * (T * T + 3) * half},
        },
    };

    // q^1..q^3 are tabulated as t*q^k_ij, q^4 without the factor t
    const RatMatrix tq_tables[3] = {
        {
            {(T - 1) * s - 2 * T, s * s, z, z},
            {s * s, (T - 1) * (s + 1) * s, s * s, z},
            {z, s * s, (T - 1) * s - 2 * T, T},
            {z, z, T, z},
        },
        {
            {(T - 1) * s, (T - 1) * (T - 1) * (s + 1), (T - 1) * s, z},
            {(T - 1) * (T - 1) * (s + 1), (T - 1) * (s + 3) * s, (T - 1) * (T - 1) * (s + 1), T},
            {(T - 1) * s, (T - 1) * (T - 1) * (s + 1), (T - 1) * s, z},
            {z, T, z, z},
        },
        {
            {z, s * s, (T - 1) * s - 2 * T, T},
            {s * s, (T - 1) * (s + 1) * s, s * s, z},
            {(T - 1) * s - 2 * T, s * s, z, z},
            {T, z, z, z},
        },
    };
    const RatMatrix q4_table{
        {z, z, T * s - 1, z},
        {z, (s + T) * s, z, z},
        {T * s - 1, z, z, z},
        {z, z, z, z},
    };

    sp.p = Tensor3(5);
    sp.q = Tensor3(5);
    for (std::size_t k = 0; k <= 4; ++k)
        for (std::size_t i = 0; i <= 4; ++i)
            for (std::size_t j = 0; j <= 4; ++j) {
                if (k == 0) {
                    sp.p(k, i, j) = delta(i, j) * sp.valencies[i];
                    sp.q(k, i, j) = delta(i, j) * sp.multiplicities[i];
                } else if (i == 0 || j == 0) {
                    sp.p(k, i, j) = delta(k, i + j);
                    sp.q(k, i, j) = delta(k, i + j);
                } else {
                    sp.p(k, i, j) = p_tables[k - 1](i - 1, j - 1);
                    sp.q(k, i, j) = k < 4 ? tq_tables[k - 1](i - 1, j - 1) / T : q4_table(i - 1, j - 1);
                }
            }
    return sp;
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::overall() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* ValidationReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.passed)
            return &c;
    return nullptr;
}

void ValidationReport::add(std::string name, bool passed, std::string witness) {
    checks.push_back({std::move(name), passed, std::move(witness)});
}

ValidationReport validate(const SchemeParameters& sp) {
    ValidationReport rep;
    const std::size_t n = sp.d + 1;

    {
        const RatMatrix pq = sp.P * sp.Q;
        std::string w;
        for (std::size_t i = 0; i < n && w.empty(); ++i)
            for (std::size_t j = 0; j < n && w.empty(); ++j)
                if (pq(i, j) != (i == j ? sp.order : Rational(0)))
                    w = "(PQ)_" + std::to_string(i) + std::to_string(j) + " = " + pq(i, j).str();
        rep.add("PQ = |X| I", w.empty(), w);
    }
    {
        std::string w;
        if (sp.valencies[0] != 1)
            w = "n_0 = " + sp.valencies[0].str();
        else if (sp.multiplicities[0] != 1)
            w = "m_0 = " + sp.multiplicities[0].str();
        rep.add("n_0 = m_0 = 1", w.empty(), w);
    }
    {
        const Rational sn = std::accumulate(sp.valencies.begin(), sp.valencies.end(), Rational(0));
        const Rational sm = std::accumulate(sp.multiplicities.begin(), sp.multiplicities.end(), Rational(0));
        std::string w;
        if (sn != sp.order)
            w = "sum n = " + sn.str();
        else if (sm != sp.order)
            w = "sum m = " + sm.str();
        rep.add("sum n_i = sum m_j = |X|", w.empty(), w);
    }
    {
        std::string w;
        for (std::size_t j = 0; j < n && w.empty(); ++j) {
            if (sp.P(0, j) != sp.valencies[j])
                w = "P_0" + std::to_string(j) + " != n_" + std::to_string(j);
            else if (sp.Q(0, j) != sp.multiplicities[j])
                w = "Q_0" + std::to_string(j) + " != m_" + std::to_string(j);
        }
        rep.add("first rows of P and Q are n and m", w.empty(), w);
    }
    {
        std::string w;
        for (std::size_t k = 0; k < n && w.empty(); ++k)
            for (std::size_t i = 0; i < n && w.empty(); ++i) {
                Rational sum;
                for (std::size_t j = 0; j < n; ++j)
                    sum += sp.p(k, i, j);
                if (sum != sp.valencies[i])
                    w = "sum_j p^" + std::to_string(k) + "_" + std::to_string(i) + "j = " + sum.str() +
                        " != n_" + std::to_string(i);
            }
        rep.add("sum_j p^k_ij = n_i", w.empty(), w);
    }
    {
        std::string w;
        for (std::size_t k = 0; k < n && w.empty(); ++k)
            for (std::size_t i = 0; i < n && w.empty(); ++i)
                for (std::size_t j = 0; j < n && w.empty(); ++j) {
                    if (sp.valencies[k] * sp.p(k, i, j) != sp.valencies[i] * sp.p(i, k, j))
                        w = idx3("p", k, i, j) + " vs " + idx3("p", i, k, j);
                    else if (sp.p(k, i, j) != sp.p(k, j, i))
                        w = idx3("p", k, i, j) + " != " + idx3("p", k, j, i);
                }
        rep.add("n_k p^k_ij = n_i p^i_kj and p^k_ij = p^k_ji", w.empty(), w);
    }
    {
        std::string w;
        for (std::size_t k = 0; k < n && w.empty(); ++k)
            for (std::size_t i = 0; i < n && w.empty(); ++i)
                if (sp.p(k, i, 0) != delta(i, k))
                    w = idx3("p", k, i, 0) + " = " + sp.p(k, i, 0).str();
        rep.add("p^k_i0 = delta_ik", w.empty(), w);
    }
    {
        std::string w;
        for (std::size_t k = 0; k < n && w.empty(); ++k)
            for (std::size_t i = 0; i < n && w.empty(); ++i)
                for (std::size_t j = 0; j < n && w.empty(); ++j)
                    if (!sp.p(k, i, j).is_integer() || sp.p(k, i, j).sign() < 0)
                        w = idx3("p", k, i, j) + " = " + sp.p(k, i, j).str();
        rep.add("p^k_ij nonnegative integers", w.empty(), w);
    }
    {
        std::string w;
        for (std::size_t k = 0; k < n && w.empty(); ++k)
            for (std::size_t i = 0; i < n && w.empty(); ++i)
                for (std::size_t j = 0; j < n && w.empty(); ++j) {
                    if (sp.q(k, i, j).sign() < 0)
                        w = idx3("q", k, i, j) + " = " + sp.q(k, i, j).str();
                    else if (sp.q(k, i, j) != sp.q(k, j, i))
                        w = idx3("q", k, i, j) + " != " + idx3("q", k, j, i);
                }
        rep.add("q^k_ij nonnegative and symmetric", w.empty(), w);
    }
    {
        std::string w;
        try {
            const Tensor3 p = intersection_numbers(sp.P, sp.multiplicities, sp.valencies, sp.order);
            for (std::size_t k = 0; k < n && w.empty(); ++k)
                for (std::size_t i = 0; i < n && w.empty(); ++i)
                    for (std::size_t j = 0; j < n && w.empty(); ++j)
                        if (p(k, i, j) != sp.p(k, i, j))
                            w = idx3("p", k, i, j) + " = " + sp.p(k, i, j).str() + ", eigenmatrix gives " +
                                p(k, i, j).str();
        } catch (const Error& e) {
            w = e.witness();
        }
        rep.add("p agrees with P", w.empty(), w);
    }
    {
        std::string w;
        try {
            const Tensor3 q = krein_numbers(sp.Q, sp.valencies, sp.multiplicities, sp.order);
            for (std::size_t k = 0; k < n && w.empty(); ++k)
                for (std::size_t i = 0; i < n && w.empty(); ++i)
                    for (std::size_t j = 0; j < n && w.empty(); ++j)
                        if (q(k, i, j) != sp.q(k, i, j))
                            w = idx3("q", k, i, j) + " = " + sp.q(k, i, j).str() + ", eigenmatrix gives " +
                                q(k, i, j).str();
        } catch (const Error& e) {
            w = e.witness();
        }
        rep.add("q agrees with Q", w.empty(), w);
    }
    {
        std::string w;
        for (std::size_t k = 0; k < n && w.empty(); ++k)
            for (std::size_t j = 0; j < n && w.empty(); ++j)
                if ((k > j + 1 || j > k + 1) && !sp.q(k, 1, j).is_zero())
                    w = idx3("q", k, 1, j) + " = " + sp.q(k, 1, j).str();
        const KreinArray ka = krein_array_from(sp.q);
        if (w.empty()) {
            const RatMatrix l = build_L1star(ka);
            for (std::size_t k = 0; k < n && w.empty(); ++k)
                for (std::size_t j = 0; j < n && w.empty(); ++j)
                    if (l(j, k) != sp.q(k, 1, j))
                        w = idx3("q", k, 1, j) + " inconsistent with " + ka.str();
        }
        if (w.empty() && sp.t && ka != hemisystem_krein_array(*sp.t))
            w = ka.str() + " != family array for t = " + std::to_string(*sp.t);
        rep.add("Krein array round trip (L1* tridiagonal)", w.empty(), w);
        rep.add("Krein array antipodal", ka.is_antipodal(), ka.is_antipodal() ? "" : ka.str());
    }
    return rep;
}

} // namespace scheme_forge
