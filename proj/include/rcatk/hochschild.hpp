#pragma once

// Hochschild chains over finite-dimensional algebras given by structure
// constants, degree-capped Weyl algebras, and the signed fundamental
// cycle of the Weyl algebra.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cyclo.hpp"
#include "error.hpp"
#include "group.hpp"
#include "group_io.hpp"
#include "matrix.hpp"

namespace rcatk {

using SparseVector = std::map<std::size_t, Rational>;

/// A unital algebra with a basis and products e_i e_j = sum_k c_ijk e_k.
/// A product may be marked as overflowing (outside a degree cap); using it
/// throws Overflow.
class StructureConstantAlgebra {
public:
    StructureConstantAlgebra() = default;
    StructureConstantAlgebra(std::vector<std::string> labels, std::size_t unit)
        : labels_(std::move(labels)), unit_(unit),
          table_(labels_.size() * labels_.size(), std::optional<SparseVector>(SparseVector{}))
    {
        if (unit_ >= labels_.size())
            throw DomainError(ErrorKind::InvalidArgument, "unit index out of range");
    }

    std::size_t dimension() const noexcept { return labels_.size(); }
    std::size_t unit() const noexcept { return unit_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    std::optional<std::size_t> find_label(const std::string& name) const
    {
        auto it = std::find(labels_.begin(), labels_.end(), name);
        if (it == labels_.end())
            return std::nullopt;
        return static_cast<std::size_t>(it - labels_.begin());
    }

    void set_product(std::size_t i, std::size_t j, SparseVector value)
    {
        std::erase_if(value, [](const auto& kv) { return kv.second == 0; });
        table_.at(i * dimension() + j) = std::move(value);
    }
    void mark_overflow(std::size_t i, std::size_t j) { table_.at(i * dimension() + j).reset(); }
    bool overflows(std::size_t i, std::size_t j) const { return !table_.at(i * dimension() + j).has_value(); }

    const SparseVector& product(std::size_t i, std::size_t j) const
    {
        const auto& p = table_.at(i * dimension() + j);
        if (!p)
            throw DomainError(ErrorKind::Overflow, "product " + labels_[i] + " * " + labels_[j] + " exceeds the cap");
        return *p;
    }

    SparseVector multiply(const SparseVector& a, const SparseVector& b) const
    {
        SparseVector out;
        for (const auto& [i, x] : a)
            for (const auto& [j, y] : b)
                for (const auto& [k, z] : product(i, j))
                    out[k] += x * y * z;
        std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
        return out;
    }

    /// Unit axioms on all basis elements.
    bool check_unit() const
    {
        for (std::size_t i = 0; i < dimension(); ++i) {
            const SparseVector ei{{i, Rational(1)}};
            if (overflows(unit_, i) || overflows(i, unit_) || product(unit_, i) != ei || product(i, unit_) != ei)
                return false;
        }
        return true;
    }

    struct AssociativityReport {
        bool associative = true;
        std::size_t checked = 0;
        std::size_t skipped = 0; // triples touching an overflowing product
    };

    AssociativityReport check_associativity() const
    {
        AssociativityReport r;
        const std::size_t n = dimension();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    try {
                        const SparseVector ei{{i, Rational(1)}}, ek{{k, Rational(1)}};
                        const auto left = multiply(product(i, j), ek);
                        const auto right = multiply(ei, product(j, k));
                        ++r.checked;
                        if (left != right) {
                            r.associative = false;
                            return r;
                        }
                    } catch (const DomainError& e) {
                        if (e.kind() != ErrorKind::Overflow)
                            throw;
                        ++r.skipped;
                    }
                }
        return r;
    }

private:
    std::vector<std::string> labels_;
    std::size_t unit_ = 0;
    std::vector<std::optional<SparseVector>> table_;
};

/// Text format:
///
///   basis 1 a b
///   unit 1
///   a a -> 1*b
///   a b -> -1/2*a + 3*b
///
/// Products not listed are zero; products with the unit default to the
/// unit axioms.
inline StructureConstantAlgebra parse_structure_constants(const std::string& text)
{
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    std::vector<std::string> labels;
    std::optional<std::size_t> unit;
    std::vector<std::tuple<std::size_t, std::size_t, SparseVector, std::size_t>> products;
    auto index = [&](const std::string& name, std::size_t line) {
        auto it = std::find(labels.begin(), labels.end(), name);
        if (it == labels.end())
            throw InputError("unknown basis label '" + name + "'", line);
        return static_cast<std::size_t>(it - labels.begin());
    };
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = detail::strip_comment(raw);
        if (line.empty())
            continue;
        std::istringstream words(line);
        std::string head;
        words >> head;
        if (head == "basis") {
            if (!labels.empty())
                throw InputError("duplicate basis line", lineno);
            for (std::string w; words >> w;) {
                if (std::find(labels.begin(), labels.end(), w) != labels.end())
                    throw InputError("duplicate basis label '" + w + "'", lineno);
                labels.push_back(w);
            }
            if (labels.empty())
                throw InputError("empty basis", lineno);
            continue;
        }
        if (labels.empty())
            throw InputError("'basis' must come first", lineno);
        if (head == "unit") {
            std::string name, extra;
            words >> name;
            if (words >> extra || name.empty())
                throw InputError("'unit' takes one label", lineno);
            unit = index(name, lineno);
            continue;
        }
        const auto arrow = line.find("->");
        if (arrow == std::string::npos)
            throw InputError("expected 'i j -> sum of coeff*k'", lineno);
        std::istringstream lhs(line.substr(0, arrow));
        std::string a, b, extra;
        lhs >> a >> b;
        if (b.empty() || (lhs >> extra))
            throw InputError("left side must name two basis elements", lineno);
        SparseVector value;
        const std::string rhs = detail::trim(line.substr(arrow + 2));
        if (rhs != "0")
            for (const auto& term : detail::split(rhs, '+')) {
                const auto star = term.find('*');
                if (star == std::string::npos)
                    throw InputError("term '" + term + "' must be coeff*label", lineno);
                Rational c;
                try {
                    c = parse_rational(detail::trim(term.substr(0, star)));
                } catch (const InputError& e) {
                    throw InputError(e.what(), lineno);
                }
                value[index(detail::trim(term.substr(star + 1)), lineno)] += c;
            }
        products.emplace_back(index(a, lineno), index(b, lineno), std::move(value), lineno);
    }
    if (labels.empty())
        throw InputError("missing basis");
    if (!unit)
        throw InputError("missing unit");
    StructureConstantAlgebra alg(labels, *unit);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        alg.set_product(*unit, i, {{i, Rational(1)}});
        alg.set_product(i, *unit, {{i, Rational(1)}});
    }
    std::vector<bool> seen(labels.size() * labels.size(), false);
    for (auto& [i, j, v, line] : products) {
        if (seen[i * labels.size() + j])
            throw InputError("product listed twice", line);
        seen[i * labels.size() + j] = true;
        alg.set_product(i, j, std::move(v));
    }
    return alg;
}

/// The group algebra Q[G] with basis the group elements (labels g<index>).
inline StructureConstantAlgebra group_algebra(const FiniteMatrixGroup& g)
{
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < g.order(); ++i)
        labels.push_back("g" + std::to_string(i));
    StructureConstantAlgebra alg(labels, 0);
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
            alg.set_product(a, b, {{g.mul(a, b), Rational(1)}});
    return alg;
}

/// dim A/[A, A], by exact rank of the span of e_i e_j - e_j e_i.
inline std::size_t hh0_dimension(const StructureConstantAlgebra& a)
{
    const std::size_t n = a.dimension();
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<Rational> row(n, 0);
            for (const auto& [k, c] : a.product(i, j))
                row[k] += c;
            for (const auto& [k, c] : a.product(j, i))
                row[k] -= c;
            if (std::any_of(row.begin(), row.end(), [](const Rational& q) { return q != 0; }))
                rows.push_back(std::move(row));
        }
    if (rows.empty())
        return n;
    return n - rank(RationalMatrix::from_rows(rows));
}

inline std::size_t group_algebra_hh0(const FiniteMatrixGroup& g, std::size_t cap = 512)
{
    if (g.order() > cap)
        throw DomainError(ErrorKind::CapExceeded,
                          "|G| = " + std::to_string(g.order()) + " exceeds the cap " + std::to_string(cap));
    return hh0_dimension(group_algebra(g));
}

/// Basis x^a d^b (multi-indices over k variables, |a| + |b| <= cap) of the
/// Weyl algebra, with normally ordered products; products leaving the cap
/// are marked as overflowing.
class CappedWeylAlgebra {
public:
    CappedWeylAlgebra(std::size_t k, unsigned cap) : k_(k), cap_(cap)
    {
        std::vector<unsigned> e(2 * k, 0);
        enumerate(e, 0, cap);
        std::sort(monomials_.begin(), monomials_.end(), [](const auto& a, const auto& b) {
            const auto da = std::accumulate(a.begin(), a.end(), 0u);
            const auto db = std::accumulate(b.begin(), b.end(), 0u);
            return da != db ? da < db : a > b;
        });
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < monomials_.size(); ++i) {
            index_.emplace(monomials_[i], i);
            labels.push_back(label_of(monomials_[i]));
        }
        algebra_ = StructureConstantAlgebra(labels, 0);
        for (std::size_t i = 0; i < monomials_.size(); ++i)
            for (std::size_t j = 0; j < monomials_.size(); ++j)
                fill_product(i, j);
    }

    std::size_t variables() const noexcept { return k_; }
    unsigned cap() const noexcept { return cap_; }
    const StructureConstantAlgebra& algebra() const noexcept { return algebra_; }

    std::size_t x(std::size_t i) const { return basis_index(unit_exponent(i)); }
    std::size_t d(std::size_t i) const { return basis_index(unit_exponent(k_ + i)); }
    std::size_t one() const { return 0; }

    /// Exponent layout: (a_1..a_k, b_1..b_k) for x^a d^b.
    std::size_t basis_index(const std::vector<unsigned>& e) const
    {
        auto it = index_.find(e);
        if (it == index_.end())
            throw DomainError(ErrorKind::Overflow, "monomial outside the cap");
        return it->second;
    }

private:
    std::vector<unsigned> unit_exponent(std::size_t pos) const
    {
        std::vector<unsigned> e(2 * k_, 0);
        e.at(pos) = 1;
        return e;
    }

    void enumerate(std::vector<unsigned>& e, std::size_t pos, unsigned left)
    {
        if (pos == e.size()) {
            monomials_.push_back(e);
            return;
        }
        for (unsigned v = 0; v <= left; ++v) {
            e[pos] = v;
            enumerate(e, pos + 1, left - v);
        }
        e[pos] = 0;
    }

    std::string label_of(const std::vector<unsigned>& e) const
    {
        std::string out;
        auto add = [&](const std::string& base, std::size_t i, unsigned p) {
            if (!p)
                return;
            if (!out.empty())
                out += "*";
            out += base + (k_ > 1 ? std::to_string(i + 1) : "");
            if (p > 1)
                out += "^" + std::to_string(p);
        };
        for (std::size_t i = 0; i < k_; ++i)
            add("x", i, e[i]);
        for (std::size_t i = 0; i < k_; ++i)
            add("d", i, e[k_ + i]);
        return out.empty() ? "1" : out;
    }

    // (x^a d^b)(x^c d^e) = sum_j prod_i C(b_i, j_i) c_i!/(c_i - j_i)! x^(a+c-j) d^(b+e-j)
    void fill_product(std::size_t i, std::size_t j)
    {
        const auto& l = monomials_[i];
        const auto& r = monomials_[j];
        SparseVector value;
        bool overflow = false;
        std::vector<unsigned> jv(k_, 0);
        std::function<void(std::size_t, Rational)> rec = [&](std::size_t pos, Rational coeff) {
            if (pos == k_) {
                std::vector<unsigned> e(2 * k_);
                for (std::size_t v = 0; v < k_; ++v) {
                    e[v] = l[v] + r[v] - jv[v];
                    e[k_ + v] = l[k_ + v] + r[k_ + v] - jv[v];
                }
                auto it = index_.find(e);
                if (it == index_.end())
                    overflow = true;
                else
                    value[it->second] += coeff;
                return;
            }
            const unsigned b = l[k_ + pos], c = r[pos];
            Rational choose = 1, falling = 1;
            for (unsigned t = 0; t <= std::min(b, c); ++t) {
                jv[pos] = t;
                rec(pos + 1, coeff * choose * falling);
                choose = choose * Rational(b - t) / Rational(t + 1);
                falling *= Rational(c - t);
            }
            jv[pos] = 0;
        };
        rec(0, Rational(1));
        if (overflow)
            algebra_.mark_overflow(i, j);
        else
            algebra_.set_product(i, j, std::move(value));
    }

    std::size_t k_;
    unsigned cap_;
    std::vector<std::vector<unsigned>> monomials_;
    std::map<std::vector<unsigned>, std::size_t> index_;
    StructureConstantAlgebra algebra_;
};

/// Formal sum of elementary tensors a_0 (x) ... (x) a_p of basis indices.
struct HochschildChain {
    std::size_t degree = 0;
    std::map<std::vector<std::size_t>, Rational> terms;
    bool normalized = false;

    void add(const std::vector<std::size_t>& t, const Rational& c)
    {
        if (c == 0)
            return;
        auto& slot = terms[t];
        slot += c;
        if (slot == 0)
            terms.erase(t);
    }
    bool is_zero() const noexcept { return terms.empty(); }
};

/// Drops tensors with the unit in a position >= 1.
inline HochschildChain normalize(HochschildChain ch, std::size_t unit)
{
    std::erase_if(ch.terms, [&](const auto& kv) {
        return std::find(kv.first.begin() + 1, kv.first.end(), unit) != kv.first.end();
    });
    ch.normalized = true;
    return ch;
}

/// b(a_0 (x) ... (x) a_p) = sum_{i<p} (-1)^i ... a_i a_{i+1} ... + (-1)^p a_p a_0 (x) ... (x) a_{p-1},
/// normalized when the input is. Degree-0 chains have boundary 0.
inline HochschildChain hochschild_boundary(const HochschildChain& ch, const StructureConstantAlgebra& a)
{
    HochschildChain out;
    out.normalized = ch.normalized;
    if (ch.degree == 0)
        return out;
    const std::size_t p = ch.degree;
    out.degree = p - 1;
    for (const auto& [t, c] : ch.terms) {
        for (std::size_t i = 0; i < p; ++i) {
            const Rational sign = i % 2 ? -1 : 1;
            for (const auto& [k, z] : a.product(t[i], t[i + 1])) {
                std::vector<std::size_t> u;
                u.insert(u.end(), t.begin(), t.begin() + static_cast<long>(i));
                u.push_back(k);
                u.insert(u.end(), t.begin() + static_cast<long>(i) + 2, t.end());
                out.add(u, sign * c * z);
            }
        }
        const Rational sign = p % 2 ? -1 : 1;
        for (const auto& [k, z] : a.product(t[p], t[0])) {
            std::vector<std::size_t> u{k};
            u.insert(u.end(), t.begin() + 1, t.end() - 1);
            out.add(u, sign * c * z);
        }
    }
    return ch.normalized ? normalize(std::move(out), a.unit()) : out;
}

/// sum over S_2k of sgn(s) 1 (x) u_s(1) (x) ... (x) u_s(2k) with
/// u_(2i-1) = d_i, u_(2i) = x_i; `signed_sum = false` drops sgn.
inline HochschildChain fundamental_cycle(const CappedWeylAlgebra& w, std::size_t k, bool signed_sum = true)
{
    if (k > w.variables())
        throw DomainError(ErrorKind::InvalidArgument, "Weyl algebra has only " + std::to_string(w.variables()) +
                                                          " pairs of generators");
    std::vector<std::size_t> u;
    for (std::size_t i = 0; i < k; ++i) {
        u.push_back(w.d(i));
        u.push_back(w.x(i));
    }
    HochschildChain ch;
    ch.degree = 2 * k;
    std::vector<std::size_t> perm(2 * k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j)
                inversions += perm[i] > perm[j];
        std::vector<std::size_t> t{w.one()};
        for (std::size_t i : perm)
            t.push_back(u[i]);
        ch.add(t, Rational(signed_sum && inversions % 2 ? -1 : 1));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return ch;
}

inline std::string chain_to_string(const HochschildChain& ch, const StructureConstantAlgebra& a)
{
    if (ch.is_zero())
        return "0";
    std::string out;
    for (const auto& [t, c] : ch.terms) {
        if (!out.empty())
            out += " + ";
        out += to_string(c) + "*";
        for (std::size_t i = 0; i < t.size(); ++i)
            out += (i ? "(x)" : "") + a.label(t[i]);
    }
    return out;
}

} // namespace rcatk
