#pragma once

#include "scheme_forge/linalg.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scheme_forge {

/// Cube of rationals indexed (k, i, j) for a superscript k and subscripts i, j,
/// i.e. p(k, i, j) is p^k_ij and q(k, i, j) is q^k_ij.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(std::size_t n) : n_(n), data_(n * n * n) {}

    std::size_t size() const { return n_; }
    Rational& operator()(std::size_t k, std::size_t i, std::size_t j) { return data_[(k * n_ + i) * n_ + j]; }
    const Rational& operator()(std::size_t k, std::size_t i, std::size_t j) const {
        return data_[(k * n_ + i) * n_ + j];
    }

    friend bool operator==(const Tensor3&, const Tensor3&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Rational> data_;
};

/// {b*_0, ..., b*_{d-1}; c*_1, ..., c*_d}.
struct KreinArray {
    std::size_t d = 0;
    std::vector<Rational> bstar;  // b*_0 .. b*_{d-1}
    std::vector<Rational> cstar;  // c*_1 .. c*_d

    /// b*_i = c*_{d-i} for every i != floor(d/2).
    bool is_antipodal() const;

    /// "b0,b1,...;c1,c2,..." with rational entries.
    static KreinArray parse(std::string_view text);
    /// Same syntax as parse.
    std::string str() const;

    friend bool operator==(const KreinArray&, const KreinArray&) = default;
};

struct SchemeParameters {
    std::size_t d = 0;
    std::optional<long> t;  // family parameter, metadata only
    Rational order;
    std::vector<Rational> valencies;
    std::vector<Rational> multiplicities;
    RatMatrix P;  // rows: eigenspaces, columns: relations
    RatMatrix Q;  // rows: relations, columns: eigenspaces
    Tensor3 p;
    Tensor3 q;

    /// s = t^2 - t + 1; requires t.
    Rational s() const;
    /// b = binom(t + 1, 2); requires t.
    Rational bcoef() const;

    friend bool operator==(const SchemeParameters&, const SchemeParameters&) = default;
};

struct Check {
    std::string name;
    bool passed = true;
    std::string witness;
};

struct ValidationReport {
    std::vector<Check> checks;
    bool overall() const;
    const Check* first_failure() const;
    void add(std::string name, bool passed, std::string witness = {});
};

/// The Krein array of the hemisystem scheme for odd t >= 3.
KreinArray hemisystem_krein_array(long t);

/// Recovers t when the array is a member of the hemisystem family.
std::optional<long> detect_family_parameter(const KreinArray& k);

/// Tridiagonal (d+1)x(d+1) matrix acting on rows of Q: entry (j+1, j) is
/// b*_j, entry (j-1, j) is c*_j and (j, j) is a*_j = b*_0 - b*_j - c*_j.
/// Every column sums to b*_0, and each row (Q_i0, ..., Q_id) of the second
/// eigenmatrix is an eigenvector with eigenvalue Q_i1.
RatMatrix build_L1star(const KreinArray& k);

struct DualEigenmatrix {
    RatMatrix Q;  // row 0 is relation 0; remaining rows by ascending eigenvalue
    std::vector<Rational> multiplicities;
    Rational order;
};

DualEigenmatrix dual_eigenmatrix(const KreinArray& k);

/// P = order * Q^{-1}.
RatMatrix first_eigenmatrix(const RatMatrix& Q, const Rational& order);

/// p^k_ij = sum_r m_r P_ri P_rj P_rk / (|X| n_k); throws NonIntegral.
Tensor3 intersection_numbers(const RatMatrix& P, std::span<const Rational> multiplicities,
                             std::span<const Rational> valencies, const Rational& order);

/// q^k_ij = sum_r n_r Q_ri Q_rj Q_rk / (|X| m_k); throws NegativeKrein.
Tensor3 krein_numbers(const RatMatrix& Q, std::span<const Rational> valencies,
                      std::span<const Rational> multiplicities, const Rational& order);

/// {q^i_{1,i+1}; q^i_{1,i-1}} read back out of a Krein tensor.
KreinArray krein_array_from(const Tensor3& q);

/// Full pipeline: Krein array -> L1* -> Q -> P -> p, q.
///
/// Relation rows other than relation 0 are ordered to match the closed-form
/// tables when `t` is given. Otherwise every permutation of them is tried and
/// the first one producing a nonnegative integral p tensor is kept; the
/// number of such orderings is written to `valid_orderings` when non-null.
SchemeParameters derive_parameters(const KreinArray& k, std::optional<long> t = std::nullopt,
                                   std::size_t* valid_orderings = nullptr);

/// Parameters of the hemisystem scheme read straight off the closed-form
/// tables in t, s = t^2 - t + 1 and b = binom(t + 1, 2).
SchemeParameters closed_form_parameters(long t);

/// Standard association-scheme identities; failures are report entries.
ValidationReport validate(const SchemeParameters& params);

} // namespace scheme_forge
