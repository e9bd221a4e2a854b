#include "scheme_forge/kernels.hpp"

#include "scheme_forge/error.hpp"

#include <omp.h>

#include <cstdlib>
#include <random>
#include <string>

namespace scheme_forge {

void configure_threads_from_env() {
    if (const char* env = std::getenv("SCHEME_FORGE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0)
            omp_set_num_threads(n);
    }
}

int max_threads() { return omp_get_max_threads(); }

namespace kernels {

namespace {

long connecting_pairs(const GQ& gq, PointId x, LineId l) {
    long c = 0;
    for (PointId y : gq.line(l))
        c += gq.collinear(x, y);
    return c;
}

std::optional<AxiomViolation> axiom3_for_point(const GQ& gq, PointId x) {
    for (LineId l = 0; l < gq.line_count(); ++l) {
        if (gq.incident(x, l))
            continue;
        if (const long c = connecting_pairs(gq, x, l); c != 1)
            return AxiomViolation{x, l, c};
    }
    return std::nullopt;
}

// profile of (x, y): counts[i * k + j] = |{z : rel(x,z) = i, rel(y,z) = j}|
void pair_profile(const RelationScheme& sch, Element x, Element y, std::vector<long>& counts) {
    const std::size_t k = sch.classes();
    std::fill(counts.begin(), counts.end(), 0);
    for (Element z = 0; z < sch.size(); ++z)
        ++counts[static_cast<std::size_t>(sch.rel(x, z)) * k + sch.rel(y, z)];
}

// representative pair per class: the first (x, y) in row-major order
struct Representatives {
    std::vector<long> p;
    std::vector<bool> present;
};

Representatives representatives(const RelationScheme& sch) {
    const std::size_t k = sch.classes();
    Representatives rep{std::vector<long>(k * k * k, 0), std::vector<bool>(k, false)};
    std::vector<long> prof(k * k);
    for (Element x = 0; x < sch.size(); ++x)
        for (Element y = 0; y < sch.size(); ++y) {
            const auto c = static_cast<std::size_t>(sch.rel(x, y));
            if (rep.present[c])
                continue;
            pair_profile(sch, x, y, prof);
            std::copy(prof.begin(), prof.end(), rep.p.begin() + static_cast<long>(c * k * k));
            rep.present[c] = true;
        }
    return rep;
}

CountedParameters finish(const RelationScheme& sch, Representatives rep, std::optional<std::pair<Element, Element>> bad) {
    const std::size_t k = sch.classes();
    CountedParameters out;
    out.classes = k;
    out.p = std::move(rep.p);
    for (std::size_t i = 0; i < k; ++i)
        out.valencies.push_back(out.at(0, i, i));
    out.consistency = !bad.has_value();
    for (std::size_t c = 0; c < k; ++c)
        if (!rep.present[c]) {
            out.consistency = false;
            out.witness = "class " + std::to_string(c) + " is empty";
        }
    if (bad)
        out.witness = "pair (" + std::to_string(bad->first) + ", " + std::to_string(bad->second) +
                      ") in class " + std::to_string(sch.rel(bad->first, bad->second)) +
                      " has a different profile than its class representative";
    return out;
}

std::optional<std::size_t> row_mismatch(const RelationScheme& sch, const Representatives& rep, Element x,
                                        std::vector<long>& prof) {
    const std::size_t k = sch.classes();
    for (Element y = 0; y < sch.size(); ++y) {
        pair_profile(sch, x, y, prof);
        const auto c = static_cast<std::size_t>(sch.rel(x, y));
        if (!std::equal(prof.begin(), prof.end(), rep.p.begin() + static_cast<long>(c * k * k)))
            return y;
    }
    return std::nullopt;
}

std::optional<std::size_t> check_triple(const RelationScheme& sch,
                                        const std::vector<std::optional<CompiledSystem>>& systems,
                                        const Triple& tr) {
    const auto [x, y, u] = tr;
    const std::size_t d = sch.d();
    const int A = sch.rel(x, y), B = sch.rel(y, u), C = sch.rel(u, x);
    if (A == 0 || B == 0 || C == 0)
        throw Error(ErrorKind::BadParameter, "triple elements must be distinct");
    const auto& sys = systems[((A - 1) * d + (B - 1)) * d + (C - 1)];
    if (!sys)
        return 0;  // realized configuration with no system means p^A_CB was 0
    return sys->first_violation(direct_triple_counts(sch, x, y, u));
}

} // namespace

CompiledSystem::CompiledSystem(const TripleSystem& sys) {
    const std::size_t k = sys.d + 1;
    for (std::size_t e = 0; e < sys.rows.size(); ++e) {
        mpz_class lcm = sys.rhs[e].denominator();
        for (const auto& c : sys.rows[e])
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.denominator().get_mpz_t());
        const Rational scale{lcm};
        Row row;
        for (std::size_t idx = 0; idx < sys.unknown_count(); ++idx) {
            if (sys.rows[e][idx].is_zero())
                continue;
            const TripleIndex u = sys.unknown(idx);
            const auto offset = static_cast<std::uint32_t>((u.l * k + u.m) * k + u.n);
            row.terms.emplace_back(offset, (sys.rows[e][idx] * scale).to_long());
        }
        row.rhs = (sys.rhs[e] * scale).to_long();
        rows_.push_back(std::move(row));
    }
}

std::optional<std::size_t> CompiledSystem::first_violation(const std::vector<long>& counts) const {
    for (std::size_t e = 0; e < rows_.size(); ++e) {
        __int128 acc = 0;
        for (const auto& [off, coef] : rows_[e].terms)
            acc += static_cast<__int128>(coef) * counts[off];
        if (acc != rows_[e].rhs)
            return e;
    }
    return std::nullopt;
}

std::vector<std::optional<CompiledSystem>> compile_systems(const SchemeParameters& params) {
    const std::size_t d = params.d;
    std::vector<std::optional<CompiledSystem>> out(d * d * d);
    for (std::size_t A = 1; A <= d; ++A)
        for (std::size_t B = 1; B <= d; ++B)
            for (std::size_t C = 1; C <= d; ++C) {
                const TripleConfig cfg{params, A, B, C};
                if (!cfg.is_vacuous())
                    out[((A - 1) * d + (B - 1)) * d + (C - 1)].emplace(build_widened_system(cfg));
            }
    return out;
}

std::vector<Triple> all_triples(const RelationScheme& sch) {
    const auto n = static_cast<Element>(sch.size());
    std::vector<Triple> out;
    out.reserve(static_cast<std::size_t>(n) * (n - 1) * (n - 2));
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            for (Element u = 0; u < n; ++u)
                if (x != y && y != u && u != x)
                    out.push_back({x, y, u});
    return out;
}

std::vector<Triple> sample_triples(const RelationScheme& sch, std::size_t count, std::uint64_t seed) {
    if (sch.size() < 3)
        throw Error(ErrorKind::BadParameter, "need at least three elements", std::to_string(sch.size()));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(sch.size() - 1));
    std::vector<Triple> out;
    out.reserve(count);
    while (out.size() < count) {
        const Triple tr{pick(rng), pick(rng), pick(rng)};
        if (tr[0] != tr[1] && tr[1] != tr[2] && tr[2] != tr[0])
            out.push_back(tr);
    }
    return out;
}

std::optional<AxiomViolation> gq_axiom3_violation(const GQ& gq) {
    const auto n = static_cast<long>(gq.point_count());
    std::vector<std::optional<AxiomViolation>> per_point(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 8)
    for (long x = 0; x < n; ++x)
        per_point[static_cast<std::size_t>(x)] = axiom3_for_point(gq, static_cast<PointId>(x));
    for (const auto& v : per_point)
        if (v)
            return v;
    return std::nullopt;
}

CountedParameters count_scheme(const RelationScheme& sch) {
    Representatives rep = representatives(sch);
    const auto n = static_cast<long>(sch.size());
    const std::size_t k = sch.classes();
    std::vector<std::optional<std::size_t>> bad_y(static_cast<std::size_t>(n));
#pragma omp parallel
    {
        std::vector<long> prof(k * k);
#pragma omp for schedule(dynamic, 4)
        for (long x = 0; x < n; ++x)
            bad_y[static_cast<std::size_t>(x)] = row_mismatch(sch, rep, static_cast<Element>(x), prof);
    }
    std::optional<std::pair<Element, Element>> bad;
    for (long x = 0; x < n && !bad; ++x)
        if (const auto& y = bad_y[static_cast<std::size_t>(x)])
            bad = std::pair<Element, Element>(static_cast<Element>(x), static_cast<Element>(*y));
    return finish(sch, std::move(rep), bad);
}

TripleSweep sweep_triples(const RelationScheme& sch, const std::vector<std::optional<CompiledSystem>>& systems,
                          const std::vector<Triple>& triples) {
    const auto n = static_cast<long>(triples.size());
    std::vector<std::optional<std::size_t>> result(triples.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < n; ++i)
        result[static_cast<std::size_t>(i)] = check_triple(sch, systems, triples[static_cast<std::size_t>(i)]);
    TripleSweep out;
    out.checked = triples.size();
    for (std::size_t i = 0; i < triples.size(); ++i)
        if (result[i]) {
            if (!out.witness) {
                out.witness = triples[i];
                out.witness_equation = *result[i];
            }
            ++out.violations;
        }
    return out;
}

namespace serial {

std::optional<AxiomViolation> gq_axiom3_violation(const GQ& gq) {
    for (PointId x = 0; x < gq.point_count(); ++x)
        for (LineId l = 0; l < gq.line_count(); ++l) {
            if (gq.incident(x, l))
                continue;
            long c = 0;
            for (PointId y : gq.line(l))
                for (LineId m : gq.lines_through(y))
                    c += gq.incident(x, m);
            if (c != 1)
                return AxiomViolation{x, l, c};
        }
    return std::nullopt;
}

CountedParameters count_scheme(const RelationScheme& sch) {
    Representatives rep = representatives(sch);
    std::vector<long> prof(sch.classes() * sch.classes());
    for (Element x = 0; x < sch.size(); ++x)
        if (const auto y = row_mismatch(sch, rep, x, prof))
            return finish(sch, std::move(rep), std::pair<Element, Element>(x, static_cast<Element>(*y)));
    return finish(sch, std::move(rep), std::nullopt);
}

TripleSweep sweep_triples(const RelationScheme& sch, const std::vector<std::optional<CompiledSystem>>& systems,
                          const std::vector<Triple>& triples) {
    TripleSweep out;
    for (const auto& tr : triples) {
        ++out.checked;
        if (const auto e = check_triple(sch, systems, tr)) {
            if (!out.witness) {
                out.witness = tr;
                out.witness_equation = *e;
            }
            ++out.violations;
        }
    }
    return out;
}

} // namespace serial

} // namespace kernels
} // namespace scheme_forge
