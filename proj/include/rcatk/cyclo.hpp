#pragma once

// Exact arithmetic in the cyclotomic fields Q(zeta_e).
//
// A number is stored in the power basis 1, z, ..., z^(phi(e)-1) after reduction
// modulo the e-th cyclotomic polynomial, so structural equality is field
// equality. Each conductor's field data is built once and shared.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace rcatk {

using Rational = mpq_class;

inline Rational frac(long num, long den)
{
    Rational q(num);
    q /= den;
    return q;
}

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

/// Parses `a` or `a/b` with an optional sign. Throws InputError.
inline Rational parse_rational(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t')
            s.push_back(ch);
    if (s.empty())
        throw InputError("empty rational literal");
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-')
        pos = 1;
    bool seen_digit = false;
    bool seen_slash = false;
    bool digit_after_slash = false;
    for (std::size_t i = pos; i < s.size(); ++i) {
        char ch = s[i];
        if (ch >= '0' && ch <= '9') {
            seen_digit = true;
            if (seen_slash)
                digit_after_slash = true;
        } else if (ch == '/' && !seen_slash && seen_digit) {
            seen_slash = true;
        } else {
            throw InputError("bad rational literal '" + std::string(text) + "'");
        }
    }
    if (!seen_digit || (seen_slash && !digit_after_slash))
        throw InputError("bad rational literal '" + std::string(text) + "'");
    if (s[0] == '+')
        s.erase(0, 1);
    Rational q;
    try {
        q = Rational(s, 10);
    } catch (const std::invalid_argument&) {
        throw InputError("bad rational literal '" + std::string(text) + "'");
    }
    if (q.get_den() == 0)
        throw InputError("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

inline std::size_t hash_value(const Rational& q) noexcept
{
    constexpr unsigned long p = 1000000007UL;
    std::size_t a = mpz_fdiv_ui(q.get_num_mpz_t(), p);
    std::size_t b = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    return a * 1315423911u ^ (b + 0x9e3779b9 + (a << 6));
}

/// Field data for Q(zeta_e): conductor, degree phi(e), and the monic
/// cyclotomic polynomial (coefficients low to high).
class CyclotomicField {
public:
    unsigned conductor() const noexcept { return conductor_; }
    std::size_t degree() const noexcept { return phi_.size() - 1; }
    const std::vector<std::int64_t>& polynomial() const noexcept { return phi_; }

    /// Units k in [1, e) coprime to e; the Galois group.
    const std::vector<unsigned>& galois_units() const noexcept { return units_; }

    static const CyclotomicField& get(unsigned conductor)
    {
        if (conductor == 0)
            throw DomainError(ErrorKind::InvalidArgument, "conductor must be positive");
        static std::mutex mutex;
        static std::map<unsigned, std::unique_ptr<CyclotomicField>> registry;
        std::lock_guard<std::mutex> lock(mutex);
        auto it = registry.find(conductor);
        if (it == registry.end())
            it = registry.emplace(conductor, std::unique_ptr<CyclotomicField>(new CyclotomicField(conductor))).first;
        return *it->second;
    }

    /// Reduces raw power-basis coefficients modulo Phi_e in place and
    /// resizes to phi(e).
    void reduce(std::vector<Rational>& raw) const
    {
        const std::size_t d = degree();
        for (std::size_t i = raw.size(); i-- > d;) {
            if (raw[i] == 0)
                continue;
            Rational lead = raw[i];
            for (std::size_t j = 0; j < d; ++j)
                if (phi_[j] != 0)
                    raw[i - d + j] -= lead * static_cast<long>(phi_[j]);
            raw[i] = 0;
        }
        raw.resize(d);
    }

private:
    explicit CyclotomicField(unsigned e) : conductor_(e)
    {
        // x^e - 1 divided by Phi_d for every proper divisor d.
        std::vector<std::int64_t> num(e + 1, 0);
        num[0] = -1;
        num[e] = 1;
        for (unsigned d = 1; d < e; ++d) {
            if (e % d != 0)
                continue;
            const auto& div = get_unlocked(d);
            num = divide_exact(num, div);
        }
        phi_ = std::move(num);
        for (unsigned k = 1; k <= e; ++k)
            if (std::gcd(k, e) == 1)
                units_.push_back(k % e);
    }

    // Recursion during construction happens while the registry lock is held,
    // so build divisor polynomials without touching the registry.
    static std::vector<std::int64_t> get_unlocked(unsigned d)
    {
        std::vector<std::int64_t> num(d + 1, 0);
        num[0] = -1;
        num[d] = 1;
        for (unsigned k = 1; k < d; ++k)
            if (d % k == 0)
                num = divide_exact(num, get_unlocked(k));
        return num;
    }

    static std::vector<std::int64_t> divide_exact(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den)
    {
        const std::size_t dd = den.size() - 1;
        const std::size_t nd = num.size() - 1;
        std::vector<std::int64_t> quot(nd - dd + 1, 0);
        for (std::size_t i = nd + 1; i-- > dd;) {
            std::int64_t c = num[i];
            quot[i - dd] = c;
            for (std::size_t j = 0; j <= dd; ++j)
                num[i - dd + j] -= c * den[j];
        }
        return quot;
    }

    unsigned conductor_;
    std::vector<std::int64_t> phi_;
    std::vector<unsigned> units_;
};

/// Element of Q(zeta_e) in canonical reduced form.
class CyclotomicNumber {
public:
    CyclotomicNumber() : CyclotomicNumber(1) {}

    explicit CyclotomicNumber(unsigned conductor)
        : field_(&CyclotomicField::get(conductor)), coeffs_(field_->degree())
    {
    }

    CyclotomicNumber(unsigned conductor, const Rational& value) : CyclotomicNumber(conductor)
    {
        coeffs_[0] = value;
    }

    /// Reduces an arbitrary-length coefficient sequence (coefficient i of
    /// z^i) modulo Phi_e.
    static CyclotomicNumber reduce(std::vector<Rational> raw, unsigned conductor)
    {
        CyclotomicNumber out(conductor);
        out.field_->reduce(raw);
        out.coeffs_ = std::move(raw);
        return out;
    }

    static CyclotomicNumber zero(unsigned conductor) { return CyclotomicNumber(conductor); }
    static CyclotomicNumber one(unsigned conductor) { return CyclotomicNumber(conductor, Rational(1)); }

    /// zeta_e^k for any integer k.
    static CyclotomicNumber root_of_unity(unsigned conductor, long k)
    {
        long e = static_cast<long>(conductor);
        long r = ((k % e) + e) % e;
        std::vector<Rational> raw(static_cast<std::size_t>(r) + 1);
        raw[static_cast<std::size_t>(r)] = 1;
        return reduce(std::move(raw), conductor);
    }

    unsigned conductor() const noexcept { return field_->conductor(); }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const noexcept
    {
        for (const auto& c : coeffs_)
            if (c != 0)
                return false;
        return true;
    }

    bool is_rational() const noexcept
    {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0)
                return false;
        return true;
    }

    /// Rational value; throws InvalidArgument when not rational.
    Rational to_rational() const
    {
        if (!is_rational())
            throw DomainError(ErrorKind::InvalidArgument, "cyclotomic number " + to_string() + " is not rational");
        return coeffs_[0];
    }

    CyclotomicNumber& operator+=(const CyclotomicNumber& rhs)
    {
        check_same_field(rhs);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            coeffs_[i] += rhs.coeffs_[i];
        return *this;
    }

    CyclotomicNumber& operator-=(const CyclotomicNumber& rhs)
    {
        check_same_field(rhs);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            coeffs_[i] -= rhs.coeffs_[i];
        return *this;
    }

    CyclotomicNumber& operator*=(const CyclotomicNumber& rhs)
    {
        check_same_field(rhs);
        const std::size_t d = coeffs_.size();
        if (d == 1) {
            coeffs_[0] *= rhs.coeffs_[0];
            return *this;
        }
        std::vector<Rational> raw(2 * d - 1);
        for (std::size_t i = 0; i < d; ++i) {
            if (coeffs_[i] == 0)
                continue;
            for (std::size_t j = 0; j < d; ++j)
                if (rhs.coeffs_[j] != 0)
                    raw[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
        field_->reduce(raw);
        coeffs_ = std::move(raw);
        return *this;
    }

    CyclotomicNumber& operator*=(const Rational& rhs)
    {
        for (auto& c : coeffs_)
            c *= rhs;
        return *this;
    }

    CyclotomicNumber& operator/=(const CyclotomicNumber& rhs) { return *this *= rhs.inverse(); }

    CyclotomicNumber operator-() const
    {
        CyclotomicNumber out = *this;
        for (auto& c : out.coeffs_)
            c = -c;
        return out;
    }

    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const Rational& b) { return a *= b; }
    friend CyclotomicNumber operator*(const Rational& b, CyclotomicNumber a) { return a *= b; }
    friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber& b) { return a /= b; }

    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b)
    {
        return a.conductor() == b.conductor() && a.coeffs_ == b.coeffs_;
    }

    /// Image under the Galois automorphism z -> z^k (gcd(k, e) = 1).
    CyclotomicNumber galois(unsigned k) const
    {
        const unsigned e = conductor();
        std::vector<Rational> raw(e);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0)
                raw[(i * k) % e] += coeffs_[i];
        return reduce(std::move(raw), e);
    }

    /// Complex conjugation, z -> z^(-1).
    CyclotomicNumber conj() const { return galois(conductor() - 1); }

    /// Multiplicative inverse via the norm: x^(-1) = prod_{sigma != id} sigma(x) / N(x).
    CyclotomicNumber inverse() const
    {
        if (is_zero())
            throw DomainError(ErrorKind::InvalidArgument, "division by zero in Q(zeta_" + std::to_string(conductor()) + ")");
        if (is_rational())
            return CyclotomicNumber(conductor(), Rational(1) / coeffs_[0]);
        CyclotomicNumber cofactor = one(conductor());
        for (unsigned k : field_->galois_units())
            if (k != 1)
                cofactor *= galois(k);
        CyclotomicNumber norm = cofactor * *this;
        return cofactor * (Rational(1) / norm.to_rational());
    }

    CyclotomicNumber pow(long k) const
    {
        CyclotomicNumber base = k < 0 ? inverse() : *this;
        unsigned long n = static_cast<unsigned long>(k < 0 ? -k : k);
        CyclotomicNumber acc = one(conductor());
        while (n) {
            if (n & 1)
                acc *= base;
            base *= base;
            n >>= 1;
        }
        return acc;
    }

    /// Embeds into Q(zeta_target) where conductor() divides target.
    CyclotomicNumber lift(unsigned target) const
    {
        const unsigned e = conductor();
        if (target % e != 0)
            throw DomainError(ErrorKind::InvalidArgument,
                              "cannot lift conductor " + std::to_string(e) + " into " + std::to_string(target));
        if (target == e)
            return *this;
        const std::size_t step = target / e;
        std::vector<Rational> raw(target);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            raw[(i * step) % target] += coeffs_[i];
        return reduce(std::move(raw), target);
    }

    /// Literal form `a*z^k + ...`; zero prints as `0`, rationals print bare.
    std::string to_string() const
    {
        if (is_rational())
            return rcatk::to_string(coeffs_[0]);
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0)
                continue;
            if (!out.empty())
                out += " + ";
            out += rcatk::to_string(coeffs_[i]) + "*z^" + std::to_string(i);
        }
        return out;
    }

    std::size_t hash() const noexcept
    {
        std::size_t h = conductor();
        for (const auto& c : coeffs_)
            h = h * 31 + hash_value(c);
        return h;
    }

    friend std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& x) { return os << x.to_string(); }

private:
    void check_same_field(const CyclotomicNumber& rhs) const
    {
        if (field_ != rhs.field_)
            throw DomainError(ErrorKind::InvalidArgument, "mixed conductors " + std::to_string(conductor()) + " and " +
                                                              std::to_string(rhs.conductor()));
    }

    const CyclotomicField* field_;
    std::vector<Rational> coeffs_;
};

/// Parses a literal such as `1/2*z^0 + -1/2*z^3`, `-1`, or `z^2` in Q(zeta_e).
inline CyclotomicNumber parse_cyclotomic(std::string_view text, unsigned conductor)
{
    std::vector<Rational> raw(1);
    std::string s(text);
    std::size_t start = 0;
    bool any = false;
    while (start <= s.size()) {
        std::size_t plus = s.find('+', start);
        // a leading '+' sign of a term is not a separator
        while (plus != std::string::npos) {
            std::size_t k = plus;
            bool only_space_before = true;
            for (std::size_t i = start; i < k; ++i)
                if (s[i] != ' ' && s[i] != '\t')
                    only_space_before = false;
            if (!only_space_before)
                break;
            plus = s.find('+', plus + 1);
        }
        std::string term = s.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
        std::string t;
        for (char ch : term)
            if (ch != ' ' && ch != '\t')
                t.push_back(ch);
        if (t.empty())
            throw InputError("empty term in cyclotomic literal '" + s + "'");
        Rational coeff(1);
        long power = 0;
        std::size_t zpos = t.find('z');
        if (zpos == std::string::npos) {
            coeff = parse_rational(t);
        } else {
            std::string head = t.substr(0, zpos);
            std::string tail = t.substr(zpos + 1);
            if (head.empty() || head == "+") {
                coeff = 1;
            } else if (head == "-") {
                coeff = -1;
            } else {
                if (head.back() != '*')
                    throw InputError("expected '*' before z in '" + t + "'");
                head.pop_back();
                coeff = parse_rational(head);
            }
            if (tail.empty()) {
                power = 1;
            } else {
                if (tail[0] != '^' || tail.size() < 2)
                    throw InputError("expected z^<k> in '" + t + "'");
                for (std::size_t i = 1; i < tail.size(); ++i)
                    if (tail[i] < '0' || tail[i] > '9')
                        throw InputError("bad exponent in '" + t + "'");
                power = std::stol(tail.substr(1));
            }
        }
        if (static_cast<std::size_t>(power) >= raw.size())
            raw.resize(static_cast<std::size_t>(power) + 1);
        raw[static_cast<std::size_t>(power)] += coeff;
        any = true;
        if (plus == std::string::npos)
            break;
        start = plus + 1;
    }
    if (!any)
        throw InputError("empty cyclotomic literal");
    // z^e = 1 lets large exponents wrap before reduction
    std::vector<Rational> wrapped(conductor);
    for (std::size_t i = 0; i < raw.size(); ++i)
        wrapped[i % conductor] += raw[i];
    return CyclotomicNumber::reduce(std::move(wrapped), conductor);
}

// Scalar hooks used by the generic linear algebra in matrix.hpp.
inline bool is_zero(const Rational& q) { return q == 0; }
inline bool is_zero(const CyclotomicNumber& x) { return x.is_zero(); }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline CyclotomicNumber zero_like(const CyclotomicNumber& x) { return CyclotomicNumber::zero(x.conductor()); }
inline CyclotomicNumber one_like(const CyclotomicNumber& x) { return CyclotomicNumber::one(x.conductor()); }
inline Rational inverse(const Rational& q) { return Rational(1) / q; }
inline CyclotomicNumber inverse(const CyclotomicNumber& x) { return x.inverse(); }
inline Rational conj(const Rational& q) { return q; }
inline CyclotomicNumber conj(const CyclotomicNumber& x) { return x.conj(); }
inline std::size_t hash_scalar(const Rational& q) { return hash_value(q); }
inline std::size_t hash_scalar(const CyclotomicNumber& x) { return x.hash(); }
inline std::string scalar_string(const Rational& q) { return to_string(q); }
inline std::string scalar_string(const CyclotomicNumber& x) { return x.to_string(); }

} // namespace rcatk

template <>
struct std::hash<rcatk::CyclotomicNumber> {
    std::size_t operator()(const rcatk::CyclotomicNumber& x) const noexcept { return x.hash(); }
};
