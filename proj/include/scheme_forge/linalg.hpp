#pragma once

#include "scheme_forge/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace scheme_forge {

/// Dense row-major matrix of exact rationals.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    RatMatrix transpose() const;
    void swap_rows(std::size_t a, std::size_t b);

    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const Rational& k, RatMatrix m);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

std::ostream& operator<<(std::ostream& os, const RatMatrix& m);

struct RrefResult {
    RatMatrix reduced;
    std::vector<std::size_t> pivot_cols;  // one per nonzero row, increasing
};

/// Reduced row echelon form. Pivot in each column is the first row with a
/// nonzero entry, so free-variable selection is reproducible.
RatMatrix rref(const RatMatrix& m);
RrefResult rref_with_pivots(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);

/// Complete solution set x = particular + sum_i lambda_i * basis[i] of A x = b.
struct AffineSolutionSpace {
    std::vector<std::string> variable_names;
    std::vector<Rational> particular;
    std::vector<std::vector<Rational>> basis;
    std::vector<std::size_t> free_indices;  // basis[i] has a 1 at free_indices[i]

    std::size_t dimension() const { return basis.size(); }
};

/// Throws Error(Inconsistent) with the offending reduced row as witness.
AffineSolutionSpace solve_linear(const RatMatrix& a, std::span<const Rational> b,
                                 std::vector<std::string> names = {});

/// Throws Error(NotSquare) or Error(Singular).
RatMatrix invert(const RatMatrix& m);

/// Polynomial with rational coefficients, lowest degree first.
class RatPolynomial {
public:
    RatPolynomial() = default;
    explicit RatPolynomial(std::vector<Rational> coeffs);

    const std::vector<Rational>& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& leading() const { return coeffs_.back(); }

    Rational operator()(const Rational& x) const;

    friend bool operator==(const RatPolynomial&, const RatPolynomial&) = default;
    friend RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b);

    /// Divides by (x - root); the remainder must be zero.
    RatPolynomial deflate(const Rational& root) const;

private:
    void normalize();
    std::vector<Rational> coeffs_;
};

/// det(xI - m) via Faddeev-LeVerrier. Throws Error(NotSquare).
RatPolynomial char_poly(const RatMatrix& m);

/// All rational roots with multiplicity, sorted ascending.
std::vector<Rational> rational_roots(const RatPolynomial& p);

} // namespace scheme_forge
