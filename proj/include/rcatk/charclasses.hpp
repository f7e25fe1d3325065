#pragma once

// Truncated graded series in named degree-2 symbols with Laurent
// coefficients in hbar: A-hat, Chern character, twisted Chern character
// through trace moments, and the index density built from them.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclo.hpp"
#include "error.hpp"
#include "group_io.hpp"

namespace rcatk {

/// A monomial sym_1^p_1 ... sym_k^p_k hbar^h. Its weight is sum p_i (each
/// symbol is a 2-form); hbar has weight 0.
struct SeriesMonomial {
    std::map<std::string, unsigned> powers;
    int hbar = 0;

    unsigned weight() const
    {
        unsigned w = 0;
        for (const auto& [s, p] : powers)
            w += p;
        return w;
    }

    SeriesMonomial operator*(const SeriesMonomial& o) const
    {
        SeriesMonomial out = *this;
        for (const auto& [s, p] : o.powers)
            out.powers[s] += p;
        out.hbar += o.hbar;
        return out;
    }

    auto operator<=>(const SeriesMonomial&) const = default;
};

/// Symbols joined by '*' in lexicographic order, "1" when empty.
inline std::string symbol_string(const SeriesMonomial& m)
{
    std::string out;
    for (const auto& [s, p] : m.powers) {
        if (!out.empty())
            out += "*";
        out += s;
        if (p > 1)
            out += "^" + std::to_string(p);
    }
    return out.empty() ? "1" : out;
}

class GradedSeries {
public:
    using Terms = std::map<SeriesMonomial, Rational>;

    GradedSeries() = default;
    explicit GradedSeries(unsigned order) : order_(order) {}

    static GradedSeries constant(const Rational& c, unsigned order, int hbar = 0)
    {
        GradedSeries s(order);
        SeriesMonomial m;
        m.hbar = hbar;
        s.add(m, c);
        return s;
    }

    static GradedSeries symbol(const std::string& name, unsigned order, const Rational& c = 1, int hbar = 0)
    {
        GradedSeries s(order);
        SeriesMonomial m;
        m.powers[name] = 1;
        m.hbar = hbar;
        s.add(m, c);
        return s;
    }

    unsigned order() const noexcept { return order_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add(const SeriesMonomial& m, const Rational& c)
    {
        if (c == 0 || m.weight() > order_)
            return;
        auto& slot = terms_[m];
        slot += c;
        if (slot == 0)
            terms_.erase(m);
    }

    Rational coefficient(const SeriesMonomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant_term() const { return coefficient(SeriesMonomial{}); }

    GradedSeries& operator+=(const GradedSeries& o)
    {
        for (const auto& [m, c] : o.terms_)
            add(m, c);
        return *this;
    }
    GradedSeries operator+(const GradedSeries& o) const
    {
        GradedSeries out(std::min(order_, o.order_));
        out += *this;
        out += o;
        return out;
    }
    GradedSeries operator-(const GradedSeries& o) const { return *this + o * Rational(-1); }

    GradedSeries operator*(const Rational& s) const
    {
        GradedSeries out(order_);
        for (const auto& [m, c] : terms_)
            out.add(m, c * s);
        return out;
    }

    GradedSeries operator*(const GradedSeries& o) const
    {
        GradedSeries out(std::min(order_, o.order_));
        for (const auto& [a, x] : terms_)
            for (const auto& [b, y] : o.terms_)
                if (a.weight() + b.weight() <= out.order_)
                    out.add(a * b, x * y);
        return out;
    }

    bool operator==(const GradedSeries& o) const { return terms_ == o.terms_; }

    /// Homogeneous part of weight k.
    GradedSeries component(unsigned k) const
    {
        GradedSeries out(order_);
        for (const auto& [m, c] : terms_)
            if (m.weight() == k)
                out.add(m, c);
        return out;
    }

    /// Multiplies every monomial by hbar^(power * weight), i.e. substitutes
    /// sym -> hbar^power sym.
    GradedSeries scale_symbols(int power) const
    {
        GradedSeries out(order_);
        for (const auto& [m, c] : terms_) {
            SeriesMonomial n = m;
            n.hbar += power * static_cast<int>(m.weight());
            out.add(n, c);
        }
        return out;
    }

    GradedSeries times_hbar(int power) const
    {
        GradedSeries out(order_);
        for (const auto& [m, c] : terms_) {
            SeriesMonomial n = m;
            n.hbar += power;
            out.add(n, c);
        }
        return out;
    }

    GradedSeries with_order(unsigned order) const
    {
        GradedSeries out(order);
        for (const auto& [m, c] : terms_)
            out.add(m, c);
        return out;
    }

    std::optional<int> min_hbar_exponent() const
    {
        std::optional<int> out;
        for (const auto& [m, c] : terms_)
            out = out ? std::min(*out, m.hbar) : m.hbar;
        return out;
    }

private:
    unsigned order_ = 0;
    Terms terms_;
};

/// One `coeff * monomial * hbar^j` line per term, in monomial order.
inline std::vector<std::string> series_lines(const GradedSeries& s)
{
    std::vector<std::string> out;
    for (const auto& [m, c] : s.terms())
        out.push_back(to_string(c) + " * " + symbol_string(m) + " * hbar^" + std::to_string(m.hbar));
    return out;
}

/// Bernoulli numbers B_0..B_m with B_1 = -1/2.
inline std::vector<Rational> bernoulli_numbers(unsigned m)
{
    std::vector<Rational> b(m + 1, 0);
    b[0] = 1;
    for (unsigned n = 1; n <= m; ++n) {
        Rational sum = 0;
        Rational binom = 1; // C(n + 1, k)
        for (unsigned k = 0; k < n; ++k) {
            sum += binom * b[k];
            binom = binom * Rational(n + 1 - k) / Rational(k + 1);
        }
        b[n] = -sum / Rational(n + 1);
    }
    return b;
}

/// Coefficients a_j of (x/2)/sinh(x/2) = sum_j a_j x^(2j):
/// a_j = (2 - 2^(2j)) B_2j / (2^(2j) (2j)!).
inline std::vector<Rational> a_hat_coefficients(unsigned max_j)
{
    const auto b = bernoulli_numbers(2 * max_j);
    std::vector<Rational> out;
    Rational factorial = 1;
    mpz_class pow4 = 1;
    for (unsigned j = 0; j <= max_j; ++j) {
        if (j > 0) {
            factorial *= Rational(2 * j - 1) * Rational(2 * j);
            pow4 *= 4;
        }
        out.push_back((Rational(2) - Rational(pow4)) * b[2 * j] / (Rational(pow4) * factorial));
    }
    return out;
}

namespace detail {

inline GradedSeries power_series_of(const GradedSeries& x, const std::vector<Rational>& coeffs, unsigned order)
{
    GradedSeries out(order);
    GradedSeries power = GradedSeries::constant(1, order);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        out += power * coeffs[k];
        power = power * x;
    }
    return out;
}

inline std::vector<Rational> exp_coefficients(unsigned order)
{
    std::vector<Rational> c;
    Rational f = 1;
    for (unsigned k = 0; k <= order; ++k) {
        if (k > 0)
            f *= Rational(k);
        c.push_back(Rational(1) / f);
    }
    return c;
}

} // namespace detail

/// prod_i (r_i/2)/sinh(r_i/2), each root a weight-1 series.
inline GradedSeries series_a_hat(const std::vector<GradedSeries>& roots, unsigned order)
{
    const auto a = a_hat_coefficients(order / 2);
    std::vector<Rational> coeffs(2 * a.size() - 1, 0);
    for (std::size_t j = 0; j < a.size(); ++j)
        coeffs[2 * j] = a[j];
    GradedSeries out = GradedSeries::constant(1, order);
    for (const auto& r : roots)
        out = out * detail::power_series_of(r.with_order(order), coeffs, order);
    return out;
}

/// A-hat_hbar(X) = A-hat(hbar X): the coefficient of r^(2j) carries hbar^(2j).
inline GradedSeries series_a_hat_hbar(const std::vector<GradedSeries>& roots, unsigned order)
{
    const auto a = a_hat_coefficients(order / 2);
    GradedSeries out = GradedSeries::constant(1, order);
    for (const auto& r : roots) {
        GradedSeries factor(order);
        GradedSeries power = GradedSeries::constant(1, order);
        const GradedSeries r2 = r.with_order(order) * r.with_order(order);
        for (std::size_t j = 0; j < a.size(); ++j) {
            factor += power.times_hbar(2 * static_cast<int>(j)) * a[j];
            power = power * r2;
        }
        out = out * factor;
    }
    return out;
}

/// sum_r exp(r).
inline GradedSeries series_ch(const std::vector<GradedSeries>& roots, unsigned order)
{
    GradedSeries out(order);
    const auto c = detail::exp_coefficients(order);
    for (const auto& r : roots)
        out += detail::power_series_of(r.with_order(order), c, order);
    return out;
}

/// Moments m_k = phi(Z^k) of a normalized trace; m_0 = 1.
class TraceFunctional {
public:
    TraceFunctional() : moments_{GradedSeries::constant(1, 0)} {}

    /// Throws InvalidArgument unless moments[0] == 1.
    explicit TraceFunctional(std::vector<Rational> moments)
    {
        if (moments.empty() || moments[0] != 1)
            throw DomainError(ErrorKind::InvalidArgument, "the zeroth moment must be 1");
        for (const auto& m : moments)
            moments_.push_back(GradedSeries::constant(m, 0));
    }

    /// Laurent-in-hbar moments (weight-0 series); m_0 must be 1.
    explicit TraceFunctional(std::vector<GradedSeries> moments) : moments_(std::move(moments))
    {
        if (moments_.empty() || !(moments_[0] == GradedSeries::constant(1, 0)))
            throw DomainError(ErrorKind::InvalidArgument, "the zeroth moment must be 1");
    }

    /// phi = lambda tr on an eigenline of eigenvalue mu: m_k = lambda mu^k for
    /// k >= 1, and m_0 = 1.
    static TraceFunctional from_eigen_weights(const Rational& lambda, const Rational& mu, unsigned count)
    {
        std::vector<Rational> m{1};
        Rational p = mu;
        for (unsigned k = 1; k < count; ++k) {
            m.push_back(lambda * p);
            p *= mu;
        }
        return TraceFunctional(m);
    }

    std::size_t size() const noexcept { return moments_.size(); }
    const GradedSeries& moment(std::size_t k) const
    {
        if (k >= moments_.size())
            throw DomainError(ErrorKind::MissingMoment, "moment m_" + std::to_string(k) + " was not supplied");
        return moments_[k];
    }

private:
    std::vector<GradedSeries> moments_;
};

/// sum_k m_k z^k / k!; z must be a weight-1 series. Moments beyond the
/// supplied ones are needed only when z is nonzero.
inline GradedSeries series_ch_phi(const TraceFunctional& tf, const GradedSeries& z, unsigned order)
{
    GradedSeries out = GradedSeries::constant(1, order);
    if (z.is_zero())
        return out;
    GradedSeries power = GradedSeries::constant(1, order);
    Rational factorial = 1;
    for (unsigned k = 1; k <= order; ++k) {
        power = power * z.with_order(order);
        factorial *= Rational(k);
        out += power * tf.moment(k).with_order(order) * (Rational(1) / factorial);
    }
    return out;
}

/// Curvature inputs of the density: tangent Chern roots, the central form
/// theta, the normal-direction symbol fed to the trace, and the rank of the
/// auxiliary gl block.
struct CurvatureData {
    std::vector<GradedSeries> tangent_roots;
    GradedSeries theta;
    std::optional<GradedSeries> normal; // absent: Ch_phi = phi(id) = 1
    unsigned rank = 1;
};

struct IndexDensity {
    unsigned degree = 0; // n - l
    GradedSeries density;
    GradedSeries hbar_spelling; // from A-hat_hbar(R_T / hbar)
    bool spellings_agree = false;
    bool nonnegative_hbar = true;
};

/// hbar^(n-l) (A-hat(R_T) Ch(-theta/hbar) Ch_phi(R_N/hbar))_(n-l), where
/// Ch(-theta/hbar) = rank exp(-theta/hbar). `truncation` defaults to n - l
/// and may not be smaller.
inline IndexDensity index_density(const CurvatureData& cd, unsigned n, unsigned l, const TraceFunctional& tf,
                                  std::optional<unsigned> truncation = std::nullopt)
{
    if (l > n)
        throw DomainError(ErrorKind::InvalidArgument, "l must not exceed n");
    const unsigned p = n - l;
    const unsigned order = truncation.value_or(p);
    if (order < p)
        throw DomainError(ErrorKind::TruncationTooLow, "truncation " + std::to_string(order) +
                                                           " is below the degree n - l = " + std::to_string(p));
    const GradedSeries minus_theta = cd.theta.with_order(order).times_hbar(-1) * Rational(-1);
    std::vector<GradedSeries> ch_roots(cd.rank, minus_theta);
    const GradedSeries ch = series_ch(ch_roots, order);
    const GradedSeries chphi =
        cd.normal ? series_ch_phi(tf, cd.normal->with_order(order).times_hbar(-1), order)
                  : GradedSeries::constant(1, order);

    IndexDensity out;
    out.degree = p;
    out.density = (series_a_hat(cd.tangent_roots, order) * ch * chphi).component(p).times_hbar(static_cast<int>(p));

    std::vector<GradedSeries> scaled;
    for (const auto& r : cd.tangent_roots)
        scaled.push_back(r.with_order(order).times_hbar(-1));
    out.hbar_spelling =
        (series_a_hat_hbar(scaled, order) * ch * chphi).component(p).times_hbar(static_cast<int>(p));
    out.spellings_agree = out.density == out.hbar_spelling;
    const auto low = out.density.min_hbar_exponent();
    out.nonnegative_hbar = !low || *low >= 0;
    return out;
}

struct GeneratingFunctionCheck {
    unsigned order = 0;
    std::vector<GradedSeries> product_then_truncate;
    std::vector<GradedSeries> truncate_then_product;
    bool assembly_agrees = false;
    bool hbar_scaling_agrees = false; // A-hat_hbar(X) = A-hat(hbar X)
    bool passed = false;
};

/// Compares the weight-k parts of A-hat_hbar(Y) Ch(W) Ch_phi(Z) computed
/// from the full product with the sum over i + j + m = k of products of
/// homogeneous parts, for k <= order.
inline GeneratingFunctionCheck generating_function_check(const std::vector<GradedSeries>& y_roots,
                                                         const std::vector<GradedSeries>& gl_roots,
                                                         const TraceFunctional& tf, const GradedSeries& z,
                                                         unsigned order)
{
    GeneratingFunctionCheck out;
    out.order = order;
    const GradedSeries a = series_a_hat_hbar(y_roots, order);
    const GradedSeries ch = series_ch(gl_roots, order);
    const GradedSeries chphi = series_ch_phi(tf, z, order);
    const GradedSeries full = a * ch * chphi;
    out.assembly_agrees = true;
    for (unsigned k = 0; k <= order; ++k) {
        out.product_then_truncate.push_back(full.component(k));
        GradedSeries assembled(order);
        for (unsigned i = 0; i <= k; ++i)
            for (unsigned j = 0; i + j <= k; ++j)
                assembled += a.component(i) * ch.component(j) * chphi.component(k - i - j);
        out.truncate_then_product.push_back(assembled);
        out.assembly_agrees = out.assembly_agrees && assembled == out.product_then_truncate.back();
    }
    out.hbar_scaling_agrees = series_a_hat_hbar(y_roots, order) == series_a_hat(y_roots, order).scale_symbols(1);
    out.passed = out.assembly_agrees && out.hbar_scaling_agrees;
    return out;
}

/// Parses a linear form in symbols: "0", "t", "-t", "2*t + 1/3*q". A bare
/// nonzero number is rejected since every argument must have weight 1.
inline GradedSeries parse_linear_form(const std::string& text, unsigned order)
{
    GradedSeries out(std::max(order, 1u));
    const std::string t = detail::trim(text);
    if (t.empty())
        throw InputError("empty linear form");
    if (t == "0")
        return out;
    auto valid_symbol = [](const std::string& s) {
        if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])) || s == "hbar")
            return false;
        return std::all_of(s.begin(), s.end(),
                           [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
    };
    std::string joined;
    for (char c : t) {
        const auto prev = joined.find_last_not_of(' ');
        if (c == '-' && prev != std::string::npos && joined[prev] != '*' && joined[prev] != '+')
            joined += '+';
        joined += c;
    }
    for (const auto& term_raw : detail::split(joined, '+')) {
        std::string term = detail::trim(term_raw);
        Rational c = 1;
        if (!term.empty() && term[0] == '-') {
            c = -1;
            term = detail::trim(term.substr(1));
        }
        const auto star = term.find('*');
        if (star != std::string::npos) {
            c *= parse_rational(detail::trim(term.substr(0, star)));
            term = detail::trim(term.substr(star + 1));
        }
        if (!valid_symbol(term))
            throw InputError("expected a symbol in '" + term_raw + "'; plain numbers other than 0 have weight 0");
        out += GradedSeries::symbol(term, out.order(), c);
    }
    return out;
}

} // namespace rcatk
