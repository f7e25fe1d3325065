#pragma once

// Finite matrix groups given by generators: breadth-first closure, index
// multiplication, element orders, conjugacy classes and small subgroup
// utilities.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cyclo.hpp"
#include "error.hpp"
#include "matrix.hpp"

namespace rcatk {

inline constexpr std::size_t kDefaultGroupCap = 20000;

inline CycloMatrix identity_matrix(std::size_t n, unsigned conductor)
{
    return CycloMatrix::identity(n, CyclotomicNumber::one(conductor), CyclotomicNumber::zero(conductor));
}

inline CycloMatrix lift_matrix(const CycloMatrix& m, unsigned conductor)
{
    CycloMatrix out(m.rows(), m.cols(), CyclotomicNumber::zero(conductor));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = m(i, j).lift(conductor);
    return out;
}

/// A finite subgroup of GL_n(Q(zeta_e)). Element 0 is the identity; the
/// remaining elements are numbered in breadth-first order from the
/// generators. After closure every entry lives in the single field
/// Q(zeta_e) with e = lcm(declared conductor, group exponent).
class FiniteMatrixGroup {
public:
    /// Enumerates the group generated by `generators` (each n x n, entries at
    /// conductor dividing `conductor`). Throws NotInvertible or CapExceeded.
    static FiniteMatrixGroup generate(std::size_t dim, unsigned conductor, const std::vector<CycloMatrix>& generators,
                                      std::size_t cap = kDefaultGroupCap)
    {
        if (dim == 0)
            throw DomainError(ErrorKind::InvalidArgument, "group dimension must be positive");
        FiniteMatrixGroup g;
        g.dim_ = dim;
        g.conductor_ = conductor;

        std::vector<CycloMatrix> gens;
        for (const auto& m : generators) {
            if (m.rows() != dim || m.cols() != dim)
                throw DomainError(ErrorKind::InvalidArgument, "generator is not " + std::to_string(dim) + "x" +
                                                                  std::to_string(dim));
            CycloMatrix lifted = lift_matrix(m, conductor);
            if (determinant(lifted).is_zero())
                throw DomainError(ErrorKind::NotInvertible, "generator is singular");
            gens.push_back(std::move(lifted));
        }
        const std::size_t ngen = gens.size();

        std::unordered_map<CycloMatrix, std::size_t, MatrixHash<CyclotomicNumber>> index;
        g.elements_.push_back(identity_matrix(dim, conductor));
        index.emplace(g.elements_.front(), 0);
        g.parent_.push_back(0);
        g.last_gen_.push_back(0);

        for (std::size_t i = 0; i < g.elements_.size(); ++i) {
            for (std::size_t s = 0; s < ngen; ++s) {
                CycloMatrix prod = g.elements_[i] * gens[s];
                auto it = index.find(prod);
                std::size_t j;
                if (it == index.end()) {
                    j = g.elements_.size();
                    if (j + 1 > cap)
                        throw DomainError(ErrorKind::CapExceeded,
                                          "closure exceeded " + std::to_string(cap) + " elements");
                    index.emplace(prod, j);
                    g.elements_.push_back(std::move(prod));
                    g.parent_.push_back(i);
                    g.last_gen_.push_back(s);
                } else {
                    j = it->second;
                }
                g.right_.push_back(static_cast<std::uint32_t>(j));
            }
        }
        g.ngen_ = ngen;
        for (std::size_t s = 0; s < ngen; ++s)
            g.generators_.push_back(index.at(gens[s]));
        g.build_tables();

        std::size_t exponent = 1;
        for (std::size_t i = 0; i < g.order(); ++i)
            exponent = std::lcm(exponent, g.element_order(i));
        g.exponent_ = exponent;
        const unsigned target = static_cast<unsigned>(std::lcm<std::size_t>(conductor, exponent));
        if (target != conductor) {
            for (auto& m : g.elements_)
                m = lift_matrix(m, target);
            g.conductor_ = target;
        }
        g.index_.clear();
        for (std::size_t i = 0; i < g.order(); ++i)
            g.index_.emplace(g.elements_[i], i);
        return g;
    }

    std::size_t dim() const noexcept { return dim_; }
    unsigned conductor() const noexcept { return conductor_; }
    std::size_t order() const noexcept { return elements_.size(); }
    std::size_t exponent() const noexcept { return exponent_; }
    const CycloMatrix& element(std::size_t i) const { return elements_.at(i); }
    const std::vector<CycloMatrix>& elements() const noexcept { return elements_; }
    const std::vector<std::size_t>& generators() const noexcept { return generators_; }

    std::size_t mul(std::size_t a, std::size_t b) const
    {
        if (!table_.empty())
            return table_[a * order() + b];
        std::size_t out = a;
        for (std::size_t s : words_[b])
            out = right_[out * ngen_ + s];
        return out;
    }

    std::size_t inverse(std::size_t a) const { return inverse_.at(a); }

    std::size_t conjugate(std::size_t g, std::size_t h) const { return mul(mul(g, h), inverse(g)); }

    std::size_t element_order(std::size_t a) const
    {
        std::size_t k = 1;
        for (std::size_t p = a; p != 0; p = mul(p, a))
            ++k;
        return k;
    }

    std::optional<std::size_t> index_of(const CycloMatrix& m) const
    {
        auto it = index_.find(m);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    CyclotomicNumber zero() const { return CyclotomicNumber::zero(conductor_); }
    CyclotomicNumber one() const { return CyclotomicNumber::one(conductor_); }
    CycloMatrix identity() const { return identity_matrix(dim_, conductor_); }

    /// Indices of the subgroup generated by `gens` (element indices).
    std::vector<std::size_t> subgroup(const std::vector<std::size_t>& gens) const
    {
        std::vector<bool> seen(order(), false);
        std::vector<std::size_t> out{0};
        seen[0] = true;
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t s : gens) {
                std::size_t j = mul(out[i], s);
                if (!seen[j]) {
                    seen[j] = true;
                    out.push_back(j);
                }
            }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Elements fixing the vector v (a point stabilizer).
    std::vector<std::size_t> stabilizer(const std::vector<CyclotomicNumber>& v) const
    {
        std::vector<CyclotomicNumber> lifted;
        for (const auto& x : v)
            lifted.push_back(x.lift(conductor_));
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < order(); ++i)
            if (elements_[i].apply(lifted) == lifted)
                out.push_back(i);
        return out;
    }

    bool is_abelian() const
    {
        for (std::size_t a : generators_)
            for (std::size_t b : generators_)
                if (mul(a, b) != mul(b, a))
                    return false;
        return true;
    }

private:
    static constexpr std::size_t kTableLimit = 2048;

    void build_tables()
    {
        const std::size_t n = order();
        words_.assign(n, {});
        for (std::size_t j = 1; j < n; ++j) {
            words_[j] = words_[parent_[j]];
            words_[j].push_back(last_gen_[j]);
        }
        if (n <= kTableLimit) {
            table_.assign(n * n, 0);
            for (std::size_t a = 0; a < n; ++a) {
                table_[a * n] = static_cast<std::uint32_t>(a);
                for (std::size_t b = 1; b < n; ++b)
                    table_[a * n + b] = right_[table_[a * n + parent_[b]] * ngen_ + last_gen_[b]];
            }
        }
        inverse_.assign(n, 0);
        for (std::size_t a = 1; a < n; ++a)
            inverse_[a] = prev_power(a);
    }

    // a^(ord(a) - 1), the inverse of a
    std::size_t prev_power(std::size_t a) const
    {
        std::size_t prev = 0;
        std::size_t p = a;
        while (p != 0) {
            prev = p;
            p = mul(p, a);
        }
        return prev;
    }

    std::size_t dim_ = 0;
    unsigned conductor_ = 1;
    std::size_t exponent_ = 1;
    std::size_t ngen_ = 0;
    std::vector<CycloMatrix> elements_;
    std::vector<std::size_t> generators_;
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> last_gen_;
    std::vector<std::uint32_t> right_;
    std::vector<std::uint32_t> table_;
    std::vector<std::vector<std::size_t>> words_;
    std::vector<std::size_t> inverse_;
    std::unordered_map<CycloMatrix, std::size_t, MatrixHash<CyclotomicNumber>> index_;
};

struct ConjugacyClass {
    std::size_t representative = 0;
    std::vector<std::size_t> members;
    std::size_t centralizer_order = 0;

    std::size_t size() const noexcept { return members.size(); }
};

/// Classes ordered by minimal member index; the representative is that
/// minimal member, so the identity class comes first.
inline std::vector<ConjugacyClass> conjugacy_classes(const FiniteMatrixGroup& g)
{
    std::vector<ConjugacyClass> classes;
    std::vector<bool> assigned(g.order(), false);
    for (std::size_t i = 0; i < g.order(); ++i) {
        if (assigned[i])
            continue;
        ConjugacyClass cls;
        cls.representative = i;
        cls.members.push_back(i);
        assigned[i] = true;
        for (std::size_t k = 0; k < cls.members.size(); ++k)
            for (std::size_t s : g.generators()) {
                std::size_t c = g.conjugate(s, cls.members[k]);
                if (!assigned[c]) {
                    assigned[c] = true;
                    cls.members.push_back(c);
                }
            }
        std::sort(cls.members.begin(), cls.members.end());
        cls.centralizer_order = g.order() / cls.members.size();
        classes.push_back(std::move(cls));
    }
    return classes;
}

/// Maps each element index to the position of its class in `classes`.
inline std::vector<std::size_t> class_lookup(const FiniteMatrixGroup& g, const std::vector<ConjugacyClass>& classes)
{
    std::vector<std::size_t> out(g.order(), 0);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (std::size_t m : classes[c].members)
            out[m] = c;
    return out;
}

/// Block-diagonal direct product G1 x G2 acting on h1 (+) h2.
inline FiniteMatrixGroup direct_product(const FiniteMatrixGroup& a, const FiniteMatrixGroup& b,
                                        std::size_t cap = kDefaultGroupCap)
{
    const unsigned e = static_cast<unsigned>(std::lcm(a.conductor(), b.conductor()));
    const std::size_t n = a.dim() + b.dim();
    std::vector<CycloMatrix> gens;
    auto embed = [&](const CycloMatrix& m, std::size_t offset, const CycloMatrix& base) {
        CycloMatrix out = base;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                out(offset + i, offset + j) = m(i, j).lift(e);
        return out;
    };
    const CycloMatrix id = identity_matrix(n, e);
    for (std::size_t s : a.generators())
        gens.push_back(embed(a.element(s), 0, id));
    for (std::size_t s : b.generators())
        gens.push_back(embed(b.element(s), a.dim(), id));
    return FiniteMatrixGroup::generate(n, e, gens, cap);
}

} // namespace rcatk
