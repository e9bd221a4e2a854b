#pragma once

#include "scheme_forge/linalg.hpp"
#include "scheme_forge/relation_scheme.hpp"
#include "scheme_forge/scheme_params.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scheme_forge {

/// Classes of (x, y), (y, u) and (u, x) for an ordered triple x y u.
struct TripleConfig {
    SchemeParameters params;
    std::size_t A = 0;
    std::size_t B = 0;
    std::size_t C = 0;

    /// No triple exists when p^A_{CB} = 0.
    bool is_vacuous() const { return params.p(A, C, B).is_zero(); }
};

/// [l m n] with l, m, n in 1..d.
struct TripleIndex {
    std::size_t l = 1;
    std::size_t m = 1;
    std::size_t n = 1;

    std::string str() const;  // "[l m n]"
    friend auto operator<=>(const TripleIndex&, const TripleIndex&) = default;
};

enum class EquationKind {
    Base,            // the three marginal-sum families
    ZeroSupport,     // x = 0 for an unknown under a marginal sum with zero right-hand side
    Symmetry,        // [l m n] = [sigma(l) sigma(m) sigma(n)]
    KreinVanishing,  // sum Q_lr Q_ms Q_nt [l m n] = ... for q^t_rs = 0
};

/// Linear system over the d^3 unknowns [l m n].
struct TripleSystem {
    std::size_t d = 0;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<EquationKind> kinds;

    std::size_t unknown_count() const { return d * d * d; }
    std::size_t index(const TripleIndex& u) const { return ((u.l - 1) * d + (u.m - 1)) * d + (u.n - 1); }
    TripleIndex unknown(std::size_t idx) const;
    std::vector<std::string> names() const;
    std::size_t count(EquationKind kind) const;

    /// Coefficient matrix and constant column of the selected equation kinds.
    RatMatrix matrix(bool include_zero_support = true) const;
    std::vector<Rational> constants(bool include_zero_support = true) const;

    void add(std::vector<Rational> row, Rational value, EquationKind kind);
};

/// The 3 d^2 marginal equations with constants p^B_mn - d_mA d_nC,
/// p^C_ln - d_lA d_nB and p^A_lm - d_lC d_mB. Each zero constant also emits
/// one ZeroSupport equation per unknown in its sum.
/// Throws Error(VacuousConfig) when cfg.is_vacuous().
TripleSystem build_base_system(const TripleConfig& cfg);

/// Column-permutation identities: all of S_3 when A = B = C, the matching
/// transposition when exactly two of A, B, C coincide, nothing otherwise.
void add_symmetry(TripleSystem& sys, const TripleConfig& cfg);

/// All (r, s, t) in 1..d with q^t_rs = 0, in lexicographic order.
std::vector<std::array<std::size_t, 3>> vanishing_krein_tuples(const SchemeParameters& params);

/// Appends sum Q_lr Q_ms Q_nt [l m n] = -Q_0r Q_As Q_Ct - Q_Ar Q_0s Q_Bt - Q_Cr Q_Bs Q_0t
/// for each tuple. Throws Error(NotVanishing) if some q^t_rs != 0.
void add_krein_vanishing(TripleSystem& sys, const TripleConfig& cfg,
                         const std::vector<std::array<std::size_t, 3>>& tuples);
/// Same, over every vanishing tuple of cfg.params.
void add_krein_vanishing(TripleSystem& sys, const TripleConfig& cfg);

/// Base system plus symmetry plus Krein vanishing.
TripleSystem build_widened_system(const TripleConfig& cfg);

struct TripleSolution {
    std::size_t d = 0;
    AffineSolutionSpace space;
    std::map<TripleIndex, Rational> forced;
    std::vector<TripleIndex> residual_free;
    /// Groups of unknowns whose nonnegative sum is pinned to zero by the system.
    std::vector<std::vector<std::size_t>> zero_support;

    std::optional<Rational> value(const TripleIndex& u) const;
};

/// Exact affine solution space of the linear identities (Base, Symmetry and
/// KreinVanishing rows). ZeroSupport rows are consequences of nonnegativity
/// rather than linear identities, so they go into `zero_support` and are
/// only applied by nonneg_force. Throws Error(Inconsistent).
TripleSolution solve(const TripleSystem& sys);

/// Fixpoint of nonnegativity consequences on the solution space:
///   - every group in zero_support is zero;
///   - an unknown equal to c + (nonpositive combination of free unknowns)
///     with c = 0 pins those free unknowns to 0;
///   - bounds implied by x >= 0 on every unknown are propagated until a free
///     unknown's range collapses to a point.
/// Throws Error(Infeasible) if some unknown is forced negative.
TripleSolution nonneg_force(TripleSolution sol);

/// Counts [l m n] for l, m, n in 0..d by brute force over X; entry
/// (l * (d+1) + m) * (d+1) + n.
std::vector<long> direct_triple_counts(const RelationScheme& sch, Element x, Element y, Element u);

/// Index of the first equation the 1..d counts violate, if any.
std::optional<std::size_t> first_violation(const TripleSystem& sys, const std::vector<long>& counts);

} // namespace scheme_forge
