#include "scheme_forge/triple.hpp"

#include "scheme_forge/error.hpp"

#include <algorithm>
#include <set>

namespace scheme_forge {

std::string TripleIndex::str() const {
    return "[" + std::to_string(l) + " " + std::to_string(m) + " " + std::to_string(n) + "]";
}

TripleIndex TripleSystem::unknown(std::size_t idx) const {
    return {idx / (d * d) + 1, (idx / d) % d + 1, idx % d + 1};
}

std::vector<std::string> TripleSystem::names() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < unknown_count(); ++i)
        out.push_back(unknown(i).str());
    return out;
}

std::size_t TripleSystem::count(EquationKind kind) const {
    return static_cast<std::size_t>(std::count(kinds.begin(), kinds.end(), kind));
}

RatMatrix TripleSystem::matrix(bool include_zero_support) const {
    std::size_t n_rows = 0;
    for (auto k : kinds)
        n_rows += include_zero_support || k != EquationKind::ZeroSupport;
    RatMatrix m(n_rows, unknown_count());
    std::size_t r = 0;
    for (std::size_t e = 0; e < rows.size(); ++e) {
        if (!include_zero_support && kinds[e] == EquationKind::ZeroSupport)
            continue;
        for (std::size_t c = 0; c < unknown_count(); ++c)
            m(r, c) = rows[e][c];
        ++r;
    }
    return m;
}

std::vector<Rational> TripleSystem::constants(bool include_zero_support) const {
    std::vector<Rational> out;
    for (std::size_t e = 0; e < rows.size(); ++e)
        if (include_zero_support || kinds[e] != EquationKind::ZeroSupport)
            out.push_back(rhs[e]);
    return out;
}

void TripleSystem::add(std::vector<Rational> row, Rational value, EquationKind kind) {
    rows.push_back(std::move(row));
    rhs.push_back(std::move(value));
    kinds.push_back(kind);
}

namespace {

Rational delta(std::size_t a, std::size_t b) { return a == b ? Rational(1) : Rational(0); }

void require_in_range(const TripleConfig& cfg) {
    const std::size_t d = cfg.params.d;
    for (std::size_t v : {cfg.A, cfg.B, cfg.C})
        if (v < 1 || v > d)
            throw Error(ErrorKind::BadParameter, "relation index outside 1..d", std::to_string(v));
}

} // namespace

TripleSystem build_base_system(const TripleConfig& cfg) {
    require_in_range(cfg);
    if (cfg.is_vacuous())
        throw Error(ErrorKind::VacuousConfig, "no triple realizes this configuration",
                    "p^" + std::to_string(cfg.A) + "_" + std::to_string(cfg.C) + std::to_string(cfg.B) + " = 0");
    const std::size_t d = cfg.params.d;
    const auto& p = cfg.params.p;
    const std::size_t A = cfg.A, B = cfg.B, C = cfg.C;

    TripleSystem sys;
    sys.d = d;
    std::vector<std::pair<std::vector<std::size_t>, Rational>> sums;
    for (std::size_t a = 1; a <= d; ++a)
        for (std::size_t b = 1; b <= d; ++b) {
            std::vector<std::size_t> first, second, third;
            for (std::size_t r = 1; r <= d; ++r) {
                first.push_back(sys.index({r, a, b}));   // sum_r [r m n], (m, n) = (a, b)
                second.push_back(sys.index({a, r, b}));  // sum_r [l r n], (l, n) = (a, b)
                third.push_back(sys.index({a, b, r}));   // sum_r [l m r], (l, m) = (a, b)
            }
            sums.emplace_back(std::move(first), p(B, a, b) - delta(a, A) * delta(b, C));
            sums.emplace_back(std::move(second), p(C, a, b) - delta(a, A) * delta(b, B));
            sums.emplace_back(std::move(third), p(A, a, b) - delta(a, C) * delta(b, B));
        }
    for (const auto& [vars, value] : sums) {
        std::vector<Rational> row(sys.unknown_count());
        for (auto v : vars)
            row[v] = 1;
        sys.add(std::move(row), value, EquationKind::Base);
    }
    for (const auto& [vars, value] : sums) {
        if (!value.is_zero())
            continue;
        for (auto v : vars) {
            std::vector<Rational> row(sys.unknown_count());
            row[v] = 1;
            sys.add(std::move(row), Rational(0), EquationKind::ZeroSupport);
        }
    }
    return sys;
}

void add_symmetry(TripleSystem& sys, const TripleConfig& cfg) {
    using Perm = std::array<int, 3>;
    std::vector<Perm> perms;
    const bool ab = cfg.A == cfg.B, bc = cfg.B == cfg.C, ac = cfg.A == cfg.C;
    if (ab && bc) {
        perms = {Perm{1, 0, 2}, Perm{0, 2, 1}, Perm{2, 1, 0}, Perm{1, 2, 0}, Perm{2, 0, 1}};
    } else if (bc) {
        perms = {Perm{1, 0, 2}};  // swap x, y: [l m n] = [m l n]
    } else if (ac) {
        perms = {Perm{0, 2, 1}};  // swap y, u: [l m n] = [l n m]
    } else if (ab) {
        perms = {Perm{2, 1, 0}};  // swap x, u: [l m n] = [n m l]
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    const std::size_t d = sys.d;
    for (std::size_t idx = 0; idx < sys.unknown_count(); ++idx) {
        const TripleIndex u = sys.unknown(idx);
        const std::array<std::size_t, 3> v{u.l, u.m, u.n};
        for (const Perm& pm : perms) {
            const std::size_t other = sys.index({v[pm[0]], v[pm[1]], v[pm[2]]});
            if (other == idx || !seen.emplace(std::min(idx, other), std::max(idx, other)).second)
                continue;
            std::vector<Rational> row(d * d * d);
            row[idx] = 1;
            row[other] = -1;
            sys.add(std::move(row), Rational(0), EquationKind::Symmetry);
        }
    }
}

std::vector<std::array<std::size_t, 3>> vanishing_krein_tuples(const SchemeParameters& params) {
    std::vector<std::array<std::size_t, 3>> out;
    for (std::size_t r = 1; r <= params.d; ++r)
        for (std::size_t s = 1; s <= params.d; ++s)
            for (std::size_t t = 1; t <= params.d; ++t)
                if (params.q(t, r, s).is_zero())
                    out.push_back({r, s, t});
    return out;
}

void add_krein_vanishing(TripleSystem& sys, const TripleConfig& cfg,
                         const std::vector<std::array<std::size_t, 3>>& tuples) {
    const auto& Q = cfg.params.Q;
    const std::size_t A = cfg.A, B = cfg.B, C = cfg.C;
    for (const auto& [r, s, t] : tuples) {
        if (!cfg.params.q(t, r, s).is_zero())
            throw Error(ErrorKind::NotVanishing, "Krein parameter is nonzero",
                        "q^" + std::to_string(t) + "_" + std::to_string(r) + std::to_string(s) + " = " +
                            cfg.params.q(t, r, s).str());
        std::vector<Rational> row(sys.unknown_count());
        for (std::size_t idx = 0; idx < sys.unknown_count(); ++idx) {
            const TripleIndex u = sys.unknown(idx);
            row[idx] = Q(u.l, r) * Q(u.m, s) * Q(u.n, t);
        }
        Rational value = -(Q(0, r) * Q(A, s) * Q(C, t)) - Q(A, r) * Q(0, s) * Q(B, t) - Q(C, r) * Q(B, s) * Q(0, t);
        sys.add(std::move(row), std::move(value), EquationKind::KreinVanishing);
    }
}

void add_krein_vanishing(TripleSystem& sys, const TripleConfig& cfg) {
    add_krein_vanishing(sys, cfg, vanishing_krein_tuples(cfg.params));
}

TripleSystem build_widened_system(const TripleConfig& cfg) {
    TripleSystem sys = build_base_system(cfg);
    add_symmetry(sys, cfg);
    add_krein_vanishing(sys, cfg);
    return sys;
}

// ---------------------------------------------------------------------------

std::optional<Rational> TripleSolution::value(const TripleIndex& u) const {
    if (auto it = forced.find(u); it != forced.end())
        return it->second;
    return std::nullopt;
}

namespace {

void refresh_summary(TripleSolution& sol, std::size_t d) {
    const std::size_t n = sol.space.particular.size();
    sol.forced.clear();
    sol.residual_free.clear();
    TripleSystem shape;
    shape.d = d;
    for (std::size_t j = 0; j < n; ++j) {
        const bool constant = std::all_of(sol.space.basis.begin(), sol.space.basis.end(),
                                          [&](const auto& b) { return b[j].is_zero(); });
        if (constant)
            sol.forced.emplace(shape.unknown(j), sol.space.particular[j]);
    }
    for (auto f : sol.space.free_indices)
        sol.residual_free.push_back(shape.unknown(f));
}

} // namespace

TripleSolution solve(const TripleSystem& sys) {
    TripleSolution sol;
    sol.d = sys.d;
    const RatMatrix a = sys.matrix(false);
    const std::vector<Rational> b = sys.constants(false);
    sol.space = solve_linear(a, b, sys.names());
    for (std::size_t e = 0; e < sys.rows.size(); ++e)
        if (sys.kinds[e] == EquationKind::ZeroSupport)
            for (std::size_t c = 0; c < sys.unknown_count(); ++c)
                if (!sys.rows[e][c].is_zero())
                    sol.zero_support.push_back({c});
    // plain marginal sums with zero constant are zero-support groups as well
    for (std::size_t e = 0; e < sys.rows.size(); ++e) {
        if (sys.kinds[e] != EquationKind::Base || !sys.rhs[e].is_zero())
            continue;
        std::vector<std::size_t> group;
        for (std::size_t c = 0; c < sys.unknown_count(); ++c)
            if (!sys.rows[e][c].is_zero())
                group.push_back(c);
        sol.zero_support.push_back(std::move(group));
    }
    refresh_summary(sol, sys.d);
    return sol;
}

namespace {

class Forcing {
public:
    explicit Forcing(AffineSolutionSpace& s) : s_(s) {}

    std::size_t n() const { return s_.particular.size(); }

    bool is_constant(std::size_t j) const {
        return std::all_of(s_.basis.begin(), s_.basis.end(), [&](const auto& b) { return b[j].is_zero(); });
    }

    void fix_free(std::size_t i, const Rational& value) {
        if (!value.is_zero())
            for (std::size_t j = 0; j < n(); ++j)
                s_.particular[j] += value * s_.basis[i][j];
        s_.basis.erase(s_.basis.begin() + static_cast<long>(i));
        s_.free_indices.erase(s_.free_indices.begin() + static_cast<long>(i));
    }

    // x_j = 0; eliminates one free parameter
    void impose_zero(std::size_t j) {
        std::size_t pivot = s_.basis.size();
        for (std::size_t i = 0; i < s_.basis.size(); ++i)
            if (!s_.basis[i][j].is_zero()) {
                pivot = i;
                break;
            }
        if (pivot == s_.basis.size()) {
            if (!s_.particular[j].is_zero())
                throw Error(ErrorKind::Infeasible, "unknown forced to zero is a nonzero constant",
                            s_.variable_names[j] + " = " + s_.particular[j].str());
            return;
        }
        const Rational c = s_.basis[pivot][j];
        const Rational shift = -s_.particular[j] / c;
        for (std::size_t k = 0; k < n(); ++k)
            s_.particular[k] += shift * s_.basis[pivot][k];
        for (std::size_t i = 0; i < s_.basis.size(); ++i) {
            if (i == pivot || s_.basis[i][j].is_zero())
                continue;
            const Rational f = -s_.basis[i][j] / c;
            for (std::size_t k = 0; k < n(); ++k)
                s_.basis[i][k] += f * s_.basis[pivot][k];
        }
        s_.basis.erase(s_.basis.begin() + static_cast<long>(pivot));
        s_.free_indices.erase(s_.free_indices.begin() + static_cast<long>(pivot));
    }

    void check_nonnegative_constants() const {
        for (std::size_t j = 0; j < n(); ++j)
            if (is_constant(j) && s_.particular[j].sign() < 0)
                throw Error(ErrorKind::Infeasible, "unknown forced negative",
                            s_.variable_names[j] + " = " + s_.particular[j].str());
    }

    // Sign rule: x_j = c + (nonpositive combination) with c = 0 pins the
    // combination to zero. Returns true on progress.
    bool sign_rule() {
        for (std::size_t j = 0; j < n(); ++j) {
            if (is_constant(j))
                continue;
            bool nonpositive = true;
            for (const auto& b : s_.basis)
                nonpositive &= b[j].sign() <= 0;
            if (!nonpositive)
                continue;
            if (s_.particular[j].sign() < 0)
                throw Error(ErrorKind::Infeasible, "unknown bounded above by a negative constant",
                            s_.variable_names[j] + " <= " + s_.particular[j].str());
            if (s_.particular[j].is_zero()) {
                for (std::size_t i = s_.basis.size(); i-- > 0;)
                    if (s_.basis[i][j].sign() < 0)
                        fix_free(i, Rational(0));
                return true;
            }
        }
        return false;
    }

    // Interval propagation of x >= 0 over the free parameters; an empty
    // upper bound means unbounded.
    bool bound_rule() {
        const std::size_t k = s_.basis.size();
        std::vector<Rational> lo(k, Rational(0));
        std::vector<std::optional<Rational>> hi(k);
        for (int round = 0; round < 64; ++round) {
            bool tightened = false;
            for (std::size_t j = 0; j < n(); ++j) {
                if (is_constant(j))
                    continue;
                // max of x_j over the current box, or nullopt if unbounded
                for (std::size_t target = 0; target < k; ++target) {
                    const Rational& ct = s_.basis[target][j];
                    if (ct.is_zero())
                        continue;
                    std::optional<Rational> rest = s_.particular[j];
                    for (std::size_t i = 0; i < k && rest; ++i) {
                        if (i == target)
                            continue;
                        const Rational& c = s_.basis[i][j];
                        if (c.sign() > 0) {
                            if (!hi[i])
                                rest.reset();
                            else
                                *rest += c * *hi[i];
                        } else if (c.sign() < 0) {
                            *rest += c * lo[i];
                        }
                    }
                    if (!rest)
                        continue;
                    // ct * f_target + rest >= 0
                    const Rational bound = -*rest / ct;
                    if (ct.sign() < 0) {
                        if (!hi[target] || bound < *hi[target]) {
                            hi[target] = bound;
                            tightened = true;
                        }
                    } else if (bound > lo[target]) {
                        lo[target] = bound;
                        tightened = true;
                    }
                }
            }
            for (std::size_t i = 0; i < k; ++i)
                if (hi[i] && *hi[i] < lo[i])
                    throw Error(ErrorKind::Infeasible, "empty range for a free unknown",
                                s_.variable_names[s_.free_indices[i]]);
            if (!tightened)
                break;
        }
        for (std::size_t i = k; i-- > 0;)
            if (hi[i] && *hi[i] == lo[i]) {
                fix_free(i, lo[i]);
                return true;
            }
        return false;
    }

private:
    AffineSolutionSpace& s_;
};

} // namespace

TripleSolution nonneg_force(TripleSolution sol) {
    Forcing f(sol.space);
    for (const auto& group : sol.zero_support)
        for (auto j : group)
            f.impose_zero(j);
    while (true) {
        f.check_nonnegative_constants();
        if (f.sign_rule())
            continue;
        if (f.bound_rule())
            continue;
        break;
    }
    f.check_nonnegative_constants();
    refresh_summary(sol, sol.d);
    return sol;
}

// ---------------------------------------------------------------------------

std::vector<long> direct_triple_counts(const RelationScheme& sch, Element x, Element y, Element u) {
    const std::size_t k = sch.classes();
    std::vector<long> counts(k * k * k, 0);
    for (Element z = 0; z < sch.size(); ++z)
        ++counts[(static_cast<std::size_t>(sch.rel(x, z)) * k + sch.rel(y, z)) * k + sch.rel(u, z)];
    return counts;
}

std::optional<std::size_t> first_violation(const TripleSystem& sys, const std::vector<long>& counts) {
    const std::size_t k = sys.d + 1;
    for (std::size_t e = 0; e < sys.rows.size(); ++e) {
        Rational acc;
        for (std::size_t idx = 0; idx < sys.unknown_count(); ++idx) {
            if (sys.rows[e][idx].is_zero())
                continue;
            const TripleIndex u = sys.unknown(idx);
            acc += sys.rows[e][idx] * Rational(counts[(u.l * k + u.m) * k + u.n]);
        }
        if (acc != sys.rhs[e])
            return e;
    }
    return std::nullopt;
}

} // namespace scheme_forge
