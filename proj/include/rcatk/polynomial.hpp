#pragma once

// Sparse multivariate polynomials, degree-capped polynomial algebras and
// linear operators on them that remember which source degrees they act on
// without truncation.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cyclo.hpp"
#include "error.hpp"
#include "matrix.hpp"

namespace rcatk {

using Exponent = std::vector<unsigned>;

inline unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

template <class T>
class Polynomial {
public:
    using Terms = std::map<Exponent, T>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial monomial(const Exponent& e, const T& coeff)
    {
        Polynomial p(e.size());
        if (!is_zero(coeff))
            p.terms_.emplace(e, coeff);
        return p;
    }

    static Polynomial variable(std::size_t nvars, std::size_t i, const T& one)
    {
        Exponent e(nvars, 0);
        e[i] = 1;
        return monomial(e, one);
    }

    /// The linear form sum_j coeffs[j] x_j.
    static Polynomial linear(const std::vector<T>& coeffs)
    {
        Polynomial p(coeffs.size());
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            if (!is_zero(coeffs[j])) {
                Exponent e(coeffs.size(), 0);
                e[j] = 1;
                p.terms_.emplace(e, coeffs[j]);
            }
        return p;
    }

    std::size_t nvars() const noexcept { return nvars_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero_poly() const noexcept { return terms_.empty(); }

    long degree() const
    {
        long d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max<long>(d, total_degree(e));
        return d;
    }

    void add_term(const Exponent& e, const T& c)
    {
        if (is_zero(c))
            return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (is_zero(it->second))
            terms_.erase(it);
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }

    Polynomial operator+(const Polynomial& o) const { return Polynomial(*this) += o; }
    Polynomial operator-(const Polynomial& o) const { return Polynomial(*this) -= o; }

    Polynomial operator*(const T& s) const
    {
        Polynomial out(nvars_);
        if (is_zero(s))
            return out;
        for (const auto& [e, c] : terms_)
            out.terms_.emplace(e, c * s);
        return out;
    }

    Polynomial operator*(const Polynomial& o) const
    {
        Polynomial out(nvars_);
        for (const auto& [a, x] : terms_)
            for (const auto& [b, y] : o.terms_) {
                Exponent e(a);
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] += b[i];
                out.add_term(e, x * y);
            }
        return out;
    }

    Polynomial pow(unsigned k, const T& one) const
    {
        Polynomial out = monomial(Exponent(nvars_, 0), one);
        for (unsigned i = 0; i < k; ++i)
            out = out * *this;
        return out;
    }

    Polynomial partial(std::size_t i) const
    {
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_)
            if (e[i] > 0) {
                Exponent f(e);
                --f[i];
                out.add_term(f, c * Rational(static_cast<long>(e[i])));
            }
        return out;
    }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

private:
    std::size_t nvars_ = 0;
    Terms terms_;
};

/// Divides f by the nonzero linear form `form`; throws DivisionFailure when
/// the remainder is nonzero.
template <class T>
Polynomial<T> divide_by_linear(const Polynomial<T>& f, const std::vector<T>& form)
{
    const std::size_t n = form.size();
    std::size_t p = 0;
    while (p < n && is_zero(form[p]))
        ++p;
    if (p == n)
        throw DomainError(ErrorKind::DivisionFailure, "division by the zero form");
    const T inv = inverse(form[p]);
    const Polynomial<T> lin = Polynomial<T>::linear(form);
    Polynomial<T> rest = f;
    Polynomial<T> q(n);
    for (;;) {
        // the term with the largest power of x_p
        const Exponent* best = nullptr;
        for (const auto& [e, c] : rest.terms())
            if (e[p] > 0 && (!best || e[p] > (*best)[p]))
                best = &e;
        if (!best)
            break;
        Exponent e = *best;
        const T coeff = rest.terms().at(e) * inv;
        --e[p];
        auto term = Polynomial<T>::monomial(e, coeff);
        q += term;
        rest -= term * lin;
    }
    if (!rest.is_zero_poly())
        throw DomainError(ErrorKind::DivisionFailure, "polynomial is not divisible by the linear form");
    return q;
}

/// Polynomials in n variables of total degree <= cap, with the monomial
/// basis ordered by degree and then lexicographically descending
/// (x^2, xy, y^2, ...).
class TruncatedPolynomialAlgebra {
public:
    TruncatedPolynomialAlgebra(std::size_t nvars, unsigned cap, unsigned conductor)
        : nvars_(nvars), cap_(cap), conductor_(conductor)
    {
        for (unsigned d = 0; d <= cap; ++d) {
            std::vector<Exponent> layer;
            Exponent e(nvars, 0);
            collect(layer, e, 0, d);
            std::sort(layer.begin(), layer.end(), std::greater<>());
            for (auto& m : layer) {
                index_.emplace(m, basis_.size());
                basis_.push_back(std::move(m));
            }
        }
        if (nvars == 0) {
            basis_ = {Exponent{}};
            index_ = {{Exponent{}, 0}};
        }
    }

    std::size_t nvars() const noexcept { return nvars_; }
    unsigned cap() const noexcept { return cap_; }
    unsigned conductor() const noexcept { return conductor_; }
    std::size_t dimension() const noexcept { return basis_.size(); }
    const std::vector<Exponent>& basis() const noexcept { return basis_; }
    unsigned degree_of(std::size_t i) const { return total_degree(basis_.at(i)); }

    /// Number of basis monomials of degree <= d.
    std::size_t count_up_to(unsigned d) const
    {
        std::size_t k = 0;
        while (k < basis_.size() && degree_of(k) <= d)
            ++k;
        return k;
    }

    CyclotomicNumber zero() const { return CyclotomicNumber::zero(conductor_); }
    CyclotomicNumber one() const { return CyclotomicNumber::one(conductor_); }

    Polynomial<CyclotomicNumber> basis_element(std::size_t i) const
    {
        return Polynomial<CyclotomicNumber>::monomial(basis_.at(i), one());
    }

    /// Coordinates of p; throws Overflow when p has terms above the cap.
    std::vector<CyclotomicNumber> coordinates(const Polynomial<CyclotomicNumber>& p) const
    {
        std::vector<CyclotomicNumber> v(dimension(), zero());
        for (const auto& [e, c] : p.terms()) {
            auto it = index_.find(e);
            if (it == index_.end())
                throw DomainError(ErrorKind::Overflow, "polynomial degree exceeds the cap " + std::to_string(cap_));
            v[it->second] = c;
        }
        return v;
    }

    Polynomial<CyclotomicNumber> from_coordinates(const std::vector<CyclotomicNumber>& v) const
    {
        Polynomial<CyclotomicNumber> p(nvars_);
        for (std::size_t i = 0; i < v.size(); ++i)
            p.add_term(basis_[i], v[i]);
        return p;
    }

    struct Product {
        Polynomial<CyclotomicNumber> value;
        bool overflow = false;
    };

    /// Product truncated above the cap; `overflow` records whether any term
    /// was dropped.
    Product multiply(const Polynomial<CyclotomicNumber>& a, const Polynomial<CyclotomicNumber>& b) const
    {
        Product out{Polynomial<CyclotomicNumber>(nvars_), false};
        const auto full = a * b;
        for (const auto& [e, c] : full.terms()) {
            if (total_degree(e) > cap_)
                out.overflow = true;
            else
                out.value.add_term(e, c);
        }
        return out;
    }

private:
    void collect(std::vector<Exponent>& out, Exponent& e, std::size_t i, unsigned left) const
    {
        if (nvars_ == 0)
            return;
        if (i + 1 == nvars_) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[i] = k;
            collect(out, e, i + 1, left - k);
        }
        e[i] = 0;
    }

    std::size_t nvars_;
    unsigned cap_;
    unsigned conductor_;
    std::vector<Exponent> basis_;
    std::map<Exponent, std::size_t> index_;
};

/// A linear map on a truncated algebra. The image of every source monomial
/// of degree <= `valid` is exact; `shift` bounds the degree change.
struct LinearOperator {
    CycloMatrix matrix;
    long shift = 0;
    long valid = 0;

    LinearOperator operator*(const LinearOperator& o) const
    {
        return {matrix * o.matrix, shift + o.shift, std::min(o.valid, valid - o.shift)};
    }
    LinearOperator operator+(const LinearOperator& o) const
    {
        return {matrix + o.matrix, std::max(shift, o.shift), std::min(valid, o.valid)};
    }
    LinearOperator operator-(const LinearOperator& o) const
    {
        return {matrix - o.matrix, std::max(shift, o.shift), std::min(valid, o.valid)};
    }
    LinearOperator operator*(const CyclotomicNumber& s) const { return {matrix * s, shift, valid}; }
};

inline LinearOperator commutator(const LinearOperator& a, const LinearOperator& b) { return a * b - b * a; }

/// Operator sending each basis monomial to f(monomial).
template <class F>
LinearOperator operator_from(const TruncatedPolynomialAlgebra& alg, long shift, long valid, F&& f)
{
    const std::size_t d = alg.dimension();
    CycloMatrix m(d, d, alg.zero());
    for (std::size_t j = 0; j < d; ++j) {
        if (static_cast<long>(alg.degree_of(j)) > valid)
            continue;
        const auto col = alg.coordinates(f(alg.basis_element(j)));
        for (std::size_t i = 0; i < d; ++i)
            m(i, j) = col[i];
    }
    return {std::move(m), shift, valid};
}

/// Equality on the source monomials where both operators are exact.
inline bool agree_on_valid(const TruncatedPolynomialAlgebra& alg, const LinearOperator& a, const LinearOperator& b)
{
    const long valid = std::min(a.valid, b.valid);
    for (std::size_t j = 0; j < alg.dimension(); ++j) {
        if (static_cast<long>(alg.degree_of(j)) > valid)
            continue;
        for (std::size_t i = 0; i < alg.dimension(); ++i)
            if (!(a.matrix(i, j) == b.matrix(i, j)))
                return false;
    }
    return true;
}

inline std::string exponent_string(const Exponent& e, const std::vector<std::string>& names)
{
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i])
            continue;
        if (!out.empty())
            out += "*";
        out += names.at(i);
        if (e[i] > 1)
            out += "^" + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
}

} // namespace rcatk
