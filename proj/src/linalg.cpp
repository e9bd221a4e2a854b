#include "scheme_forge/linalg.hpp"

#include "scheme_forge/error.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace scheme_forge {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw Error(ErrorKind::Parse, "ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

void RatMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        std::swap((*this)(a, c), (*this)(b, c));
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_)
        throw Error(ErrorKind::NotSquare, "dimension mismatch in product");
    RatMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

RatMatrix operator*(const Rational& k, RatMatrix m) {
    for (auto& v : m.data_)
        v *= k;
    return m;
}

std::ostream& operator<<(std::ostream& os, const RatMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << '[';
        for (std::size_t c = 0; c < m.cols(); ++c)
            os << (c ? ", " : "") << m(r, c);
        os << "]\n";
    }
    return os;
}

RrefResult rref_with_pivots(const RatMatrix& m) {
    RrefResult res{m, {}};
    RatMatrix& a = res.reduced;
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < a.cols() && lead_row < a.rows(); ++col) {
        std::size_t piv = lead_row;
        while (piv < a.rows() && a(piv, col).is_zero())
            ++piv;
        if (piv == a.rows())
            continue;
        a.swap_rows(piv, lead_row);
        const Rational inv = Rational(1) / a(lead_row, col);
        for (std::size_t c = col; c < a.cols(); ++c)
            a(lead_row, c) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == lead_row || a(r, col).is_zero())
                continue;
            const Rational f = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c)
                if (!a(lead_row, c).is_zero())
                    a(r, c) -= f * a(lead_row, c);
        }
        res.pivot_cols.push_back(col);
        ++lead_row;
    }
    return res;
}

RatMatrix rref(const RatMatrix& m) { return rref_with_pivots(m).reduced; }

std::size_t rank(const RatMatrix& m) { return rref_with_pivots(m).pivot_cols.size(); }

AffineSolutionSpace solve_linear(const RatMatrix& a, std::span<const Rational> b,
                                 std::vector<std::string> names) {
    if (a.rows() != b.size())
        throw Error(ErrorKind::Parse, "right-hand side length does not match row count");
    const std::size_t n = a.cols();
    RatMatrix aug(a.rows(), n + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c)
            aug(r, c) = a(r, c);
        aug(r, n) = b[r];
    }
    const RrefResult red = rref_with_pivots(aug);
    if (!red.pivot_cols.empty() && red.pivot_cols.back() == n) {
        std::ostringstream w;
        w << "row " << red.pivot_cols.size() - 1 << " reduces to 0 = 1";
        throw Error(ErrorKind::Inconsistent, "linear system has no solution", w.str());
    }

    AffineSolutionSpace sol;
    if (names.empty())
        for (std::size_t i = 0; i < n; ++i)
            names.push_back("x" + std::to_string(i));
    sol.variable_names = std::move(names);
    sol.particular.assign(n, Rational(0));

    std::vector<bool> is_pivot(n, false);
    for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) {
        is_pivot[red.pivot_cols[r]] = true;
        sol.particular[red.pivot_cols[r]] = red.reduced(r, n);
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rational> v(n, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < red.pivot_cols.size(); ++r)
            v[red.pivot_cols[r]] = -red.reduced(r, f);
        sol.free_indices.push_back(f);
        sol.basis.push_back(std::move(v));
    }
    return sol;
}

RatMatrix invert(const RatMatrix& m) {
    if (!m.is_square())
        throw Error(ErrorKind::NotSquare, "cannot invert a non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    const RrefResult red = rref_with_pivots(aug);
    if (red.pivot_cols.size() < n || red.pivot_cols[n - 1] != n - 1)
        throw Error(ErrorKind::Singular, "matrix is singular");
    RatMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            inv(r, c) = red.reduced(r, n + c);
    return inv;
}

// ---------------------------------------------------------------------------

RatPolynomial::RatPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

void RatPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero())
        coeffs_.pop_back();
}

Rational RatPolynomial::operator()(const Rational& x) const {
    Rational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b) {
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return RatPolynomial(std::move(c));
}

RatPolynomial RatPolynomial::deflate(const Rational& root) const {
    if (degree() < 1)
        throw Error(ErrorKind::DegenerateSpectrum, "cannot deflate a constant");
    // synthetic division, highest degree first
    const int n = degree();
    std::vector<Rational> q(static_cast<std::size_t>(n));
    Rational carry;
    for (int i = n; i >= 1; --i) {
        carry = carry * root + coeffs_[static_cast<std::size_t>(i)];
        q[static_cast<std::size_t>(i - 1)] = carry;
    }
    if (!(carry * root + coeffs_[0]).is_zero())
        throw Error(ErrorKind::DegenerateSpectrum, "deflation by a non-root", root.str());
    return RatPolynomial(std::move(q));
}

RatPolynomial char_poly(const RatMatrix& m) {
    if (!m.is_square())
        throw Error(ErrorKind::NotSquare, "characteristic polynomial of a non-square matrix");
    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
    const std::size_t n = m.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    RatMatrix mk(n, n);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        RatMatrix next = m * mk;
        for (std::size_t i = 0; i < n; ++i)
            next(i, i) += c[n - k + 1];
        mk = std::move(next);
        const RatMatrix am = m * mk;
        Rational tr;
        for (std::size_t i = 0; i < n; ++i)
            tr += am(i, i);
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return RatPolynomial(std::move(c));
}

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
    if (n < 0)
        n = -n;
    std::vector<std::pair<mpz_class, unsigned>> factors;
    auto take = [&](const mpz_class& p) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e)
            factors.emplace_back(p, e);
    };
    take(2);
    for (mpz_class p = 3; p * p <= n; p += 2)
        take(p);
    if (n > 1)
        factors.emplace_back(n, 1);

    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : factors) {
        const std::size_t base = divs.size();
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i)
                divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

// q^deg * p(num/q), evaluated in integers.
mpz_class scaled_eval(const std::vector<mpz_class>& a, const mpz_class& num, const mpz_class& den) {
    mpz_class acc = 0;
    mpz_class den_pow = 1;
    // Horner on homogenized form: sum a_i num^i den^(n-i)
    for (std::size_t i = a.size(); i-- > 0;) {
        acc = acc * num + a[i] * den_pow;
        den_pow *= den;
    }
    return acc;
}

} // namespace

std::vector<Rational> rational_roots(const RatPolynomial& p) {
    if (p.is_zero())
        throw Error(ErrorKind::BadParameter, "rational_roots of the zero polynomial");

    std::vector<Rational> roots;
    RatPolynomial work = p;
    while (work.degree() >= 1 && work.coefficients().front().is_zero()) {
        roots.emplace_back(0);
        work = work.deflate(Rational(0));
    }

    while (work.degree() >= 1) {
        // integer coefficients with the same roots
        mpz_class lcm = 1;
        for (const auto& c : work.coefficients())
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.denominator().get_mpz_t());
        std::vector<mpz_class> a;
        for (const auto& c : work.coefficients())
            a.push_back(c.numerator() * (lcm / c.denominator()));
        mpz_class content = 0;
        for (const auto& c : a)
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
        for (auto& c : a)
            c /= content;

        // Cauchy bound: |root| <= 1 + max |a_i / a_n|
        Rational bound(0);
        const Rational lead_abs = abs(Rational(a.back()));
        for (std::size_t i = 0; i + 1 < a.size(); ++i)
            bound = std::max(bound, abs(Rational(a[i])) / lead_abs);
        bound += 1;

        const auto nums = positive_divisors(a.front());
        const auto dens = positive_divisors(a.back());
        bool found = false;
        for (const auto& q : dens) {
            for (const auto& pp : nums) {
                if (Rational(pp, q) > bound)
                    continue;
                for (int sgn : {1, -1}) {
                    const mpz_class num = sgn * pp;
                    if (mpz_class g = gcd(num, q); g != 1)
                        continue;
                    if (scaled_eval(a, num, q) == 0) {
                        const Rational r(num, q);
                        roots.push_back(r);
                        work = work.deflate(r);
                        found = true;
                        break;
                    }
                }
                if (found)
                    break;
            }
            if (found)
                break;
        }
        if (!found)
            break;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace scheme_forge
