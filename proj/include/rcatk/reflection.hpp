#pragma once

// Reflection-group structure of a finite matrix group: complex reflections
// with roots and coroots, support and fixed space, irreducibility, Molien
// degrees, Coxeter number, well-generatedness, regular and Coxeter
// elements, and the decomposition into irreducible reflection groups.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclo.hpp"
#include "error.hpp"
#include "group.hpp"
#include "matrix.hpp"

namespace rcatk {

using CycloVector = std::vector<CyclotomicNumber>;

/// A complex reflection s with rank(s - 1) = 1.
///
/// `root` spans image(s - 1) in h and `coroot` is a linear form on h whose
/// kernel is the reflecting hyperplane, scaled so that coroot(root) = 2.
/// `lambda` is the nontrivial eigenvalue on the conormal line (the action
/// on h* of the coroot); `root_eigenvalue` = lambda^(-1) is the eigenvalue
/// on the root line.
struct ReflectionData {
    std::size_t element = 0;
    CyclotomicNumber lambda;
    CyclotomicNumber root_eigenvalue;
    CycloVector root;
    CycloVector coroot;
    std::size_t hyperplane = 0;
};

struct ReflectionSet {
    std::vector<ReflectionData> reflections;
    /// Normalized coroot per distinct hyperplane (first nonzero entry 1).
    std::vector<CycloVector> hyperplanes;
};

inline CyclotomicNumber pair(const CycloVector& form, const CycloVector& v)
{
    CyclotomicNumber acc = zero_like(v.front());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!form[i].is_zero() && !v[i].is_zero())
            acc += form[i] * v[i];
    return acc;
}

inline bool is_zero_vector(const CycloVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const CyclotomicNumber& x) { return x.is_zero(); });
}

inline CycloMatrix minus_identity(const CycloMatrix& g, const CyclotomicNumber& eigenvalue)
{
    CycloMatrix m = g;
    for (std::size_t i = 0; i < m.rows(); ++i)
        m(i, i) -= eigenvalue;
    return m;
}

inline ReflectionSet find_reflections(const FiniteMatrixGroup& g)
{
    ReflectionSet out;
    const CyclotomicNumber one = g.one();
    for (std::size_t i = 1; i < g.order(); ++i) {
        CycloMatrix m = minus_identity(g.element(i), one);
        if (rank(m) != 1)
            continue;
        ReflectionData r;
        r.element = i;
        for (std::size_t j = 0; j < m.cols() && r.root.empty(); ++j) {
            auto col = m.column(j);
            if (!is_zero_vector(col))
                r.root = std::move(col);
        }
        for (std::size_t k = 0; k < m.rows() && r.coroot.empty(); ++k) {
            auto row = m.row(k);
            if (!is_zero_vector(row))
                r.coroot = std::move(row);
        }
        const CyclotomicNumber paired = pair(r.coroot, r.root);
        if (paired.is_zero())
            throw DomainError(ErrorKind::InvalidArgument, "reflection with coroot(root) = 0 (not semisimple)");
        const CyclotomicNumber scale = CyclotomicNumber(g.conductor(), Rational(2)) / paired;
        for (auto& x : r.root)
            x *= scale;
        CycloVector image = g.element(i).apply(r.root);
        std::size_t k = 0;
        while (r.root[k].is_zero())
            ++k;
        r.root_eigenvalue = image[k] / r.root[k];
        r.lambda = r.root_eigenvalue.inverse();

        CycloVector normal = r.coroot;
        std::size_t lead = 0;
        while (normal[lead].is_zero())
            ++lead;
        const CyclotomicNumber inv = normal[lead].inverse();
        for (auto& x : normal)
            x *= inv;
        auto it = std::find(out.hyperplanes.begin(), out.hyperplanes.end(), normal);
        r.hyperplane = static_cast<std::size_t>(it - out.hyperplanes.begin());
        if (it == out.hyperplanes.end())
            out.hyperplanes.push_back(std::move(normal));
        out.reflections.push_back(std::move(r));
    }
    return out;
}

/// Element indices of the reflections.
inline std::vector<std::size_t> reflection_elements(const ReflectionSet& rs)
{
    std::vector<std::size_t> out;
    for (const auto& r : rs.reflections)
        out.push_back(r.element);
    return out;
}

/// True iff G is generated by its reflections.
inline bool is_reflection_group(const FiniteMatrixGroup& g, const ReflectionSet& rs)
{
    return g.subgroup(reflection_elements(rs)).size() == g.order();
}

struct SupportData {
    std::vector<CycloVector> support;     // basis of the span of all roots
    std::vector<CycloVector> fixed_space; // basis of h^G
    std::size_t rank = 0;
    /// rank + dim h^G = n and the two spaces are independent.
    bool direct_sum = false;
};

inline std::vector<CycloVector> fixed_space(const FiniteMatrixGroup& g)
{
    const std::size_t n = g.dim();
    const std::size_t ngen = g.generators().size();
    if (ngen == 0)
        return kernel_basis(CycloMatrix(1, n, g.zero()));
    CycloMatrix stacked(n * ngen, n, g.zero());
    for (std::size_t s = 0; s < ngen; ++s) {
        CycloMatrix m = minus_identity(g.element(g.generators()[s]), g.one());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                stacked(s * n + i, j) = m(i, j);
    }
    return kernel_basis(stacked);
}

inline SupportData support_and_rank(const FiniteMatrixGroup& g, const ReflectionSet& rs)
{
    SupportData out;
    std::vector<CycloVector> roots;
    for (const auto& r : rs.reflections)
        roots.push_back(r.root);
    out.support = independent_subset(roots, g.dim(), g.zero());
    out.rank = out.support.size();
    out.fixed_space = fixed_space(g);
    std::vector<CycloVector> both = out.support;
    both.insert(both.end(), out.fixed_space.begin(), out.fixed_space.end());
    const std::size_t joint = both.empty() ? 0 : rank(CycloMatrix::from_columns(both, g.dim(), g.zero()));
    out.direct_sum = joint == g.dim() && out.rank + out.fixed_space.size() == g.dim();
    return out;
}

struct IrreducibilityResult {
    bool irreducible = false;
    Rational inner_product; // <chi, chi>
};

inline IrreducibilityResult is_irreducible(const FiniteMatrixGroup& g)
{
    CyclotomicNumber acc = g.zero();
    for (std::size_t i = 0; i < g.order(); ++i)
        acc += trace(g.element(i)) * trace(g.element(g.inverse(i)));
    acc *= Rational(1) / Rational(static_cast<long>(g.order()));
    IrreducibilityResult out;
    out.inner_product = acc.to_rational();
    if (out.inner_product.get_den() != 1 || out.inner_product < 0)
        throw DomainError(ErrorKind::NonIntegral, "<chi,chi> = " + to_string(out.inner_product));
    out.irreducible = out.inner_product == 1;
    return out;
}

/// Matrix of g restricted to the g-stable subspace spanned by `basis`
/// (columns), i.e. X with g B = B X.
inline CycloMatrix restrict_to(const CycloMatrix& g, const std::vector<CycloVector>& basis)
{
    const CycloMatrix b = CycloMatrix::from_columns(basis, g.rows(), zero_like(g(0, 0)));
    auto x = solve(b, g * b);
    if (!x)
        throw DomainError(ErrorKind::InvalidArgument, "subspace is not stable under the element");
    return *x;
}

/// The group generated by the restrictions of `element_indices` to the
/// stable subspace `basis`.
inline FiniteMatrixGroup restricted_group(const FiniteMatrixGroup& g, const std::vector<CycloVector>& basis,
                                          const std::vector<std::size_t>& element_indices)
{
    std::vector<CycloMatrix> gens;
    for (std::size_t i : element_indices)
        gens.push_back(restrict_to(g.element(i), basis));
    return FiniteMatrixGroup::generate(basis.size(), g.conductor(), gens, g.order());
}

/// Molien series (1/|G|) sum_g 1/det(1 - t g) up to t^order.
inline std::vector<Rational> molien_series(const FiniteMatrixGroup& g, std::size_t order)
{
    const auto classes = conjugacy_classes(g);
    std::vector<CyclotomicNumber> acc(order + 1, g.zero());
    for (const auto& cls : classes) {
        const auto p = char_det(g.element(cls.representative));
        std::vector<CyclotomicNumber> q(order + 1, g.zero());
        q[0] = g.one();
        for (std::size_t k = 1; k <= order; ++k)
            for (std::size_t i = 1; i <= std::min(k, p.size() - 1); ++i)
                if (!p[i].is_zero())
                    q[k] -= p[i] * q[k - i];
        const Rational weight(static_cast<long>(cls.size()));
        for (std::size_t k = 0; k <= order; ++k)
            acc[k] += q[k] * weight;
    }
    std::vector<Rational> out;
    const Rational inv_order = Rational(1) / Rational(static_cast<long>(g.order()));
    for (auto& c : acc)
        out.push_back(c.to_rational() * inv_order);
    return out;
}

/// Degrees d_1 <= ... <= d_n of the basic invariants, extracted from the
/// Molien series by peeling off factors 1/(1 - t^d). Throws
/// NotReflectionGroup when the series is not of that form.
inline std::vector<std::size_t> molien_degrees(const FiniteMatrixGroup& g)
{
    const std::size_t n = g.dim();
    const std::size_t reflections = find_reflections(g).reflections.size();
    // For a reflection group sum(d_i) = N + n, so this cutoff exceeds
    // sum(d_i) + n.
    const std::size_t cutoff = reflections + 2 * n;
    std::vector<Rational> series = molien_series(g, cutoff);
    std::vector<std::size_t> degrees;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t d = 1;
        while (d <= cutoff && series[d] == 0)
            ++d;
        if (d > cutoff)
            throw DomainError(ErrorKind::NotReflectionGroup,
                              "Molien series became 1 after " + std::to_string(step) + " of " + std::to_string(n) +
                                  " factors");
        degrees.push_back(d);
        for (std::size_t k = cutoff; k >= d; --k)
            series[k] -= series[k - d];
    }
    for (std::size_t k = 1; k <= cutoff; ++k)
        if (series[k] != 0)
            throw DomainError(ErrorKind::NotReflectionGroup,
                              "Molien series is not a product of " + std::to_string(n) + " factors 1/(1 - t^d)");
    std::size_t product = 1;
    for (auto d : degrees)
        product *= d;
    if (product != g.order())
        throw DomainError(ErrorKind::NotReflectionGroup,
                          "product of degrees " + std::to_string(product) + " != |G| = " + std::to_string(g.order()));
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

/// h = (N + N*) / dim. Throws NonIntegral when the quotient is fractional.
inline std::size_t coxeter_number(const FiniteMatrixGroup& g, const ReflectionSet& rs)
{
    const std::size_t total = rs.reflections.size() + rs.hyperplanes.size();
    if (total % g.dim() != 0)
        throw DomainError(ErrorKind::NonIntegral, "(N + N*)/dim = " + std::to_string(total) + "/" +
                                                      std::to_string(g.dim()));
    return total / g.dim();
}

struct WellGeneratedResult {
    bool well_generated = false;
    std::vector<std::size_t> witness; // element indices of generating reflections
};

/// Searches for rank(G) reflections generating G. Candidate sets must have
/// linearly independent roots (generators' roots span the support), which
/// prunes the subset search.
inline WellGeneratedResult is_well_generated(const FiniteMatrixGroup& g, const ReflectionSet& rs)
{
    WellGeneratedResult out;
    const auto support = support_and_rank(g, rs);
    const std::size_t r = support.rank;
    if (!is_reflection_group(g, rs))
        return out;
    if (r == 0) {
        out.well_generated = g.order() == 1;
        return out;
    }
    const auto& refl = rs.reflections;
    std::vector<std::size_t> chosen;
    std::vector<CycloVector> roots;

    std::function<bool(std::size_t)> search = [&](std::size_t start) -> bool {
        if (chosen.size() == r) {
            std::vector<std::size_t> gens;
            for (auto c : chosen)
                gens.push_back(refl[c].element);
            return g.subgroup(gens).size() == g.order();
        }
        for (std::size_t k = start; k + (r - chosen.size()) <= refl.size(); ++k) {
            roots.push_back(refl[k].root);
            if (rank(CycloMatrix::from_columns(roots, g.dim(), g.zero())) == roots.size()) {
                chosen.push_back(k);
                if (search(k + 1))
                    return true;
                chosen.pop_back();
            }
            roots.pop_back();
        }
        return false;
    };
    if (search(0)) {
        out.well_generated = true;
        for (auto c : chosen)
            out.witness.push_back(refl[c].element);
    }
    return out;
}

struct RegularElement {
    std::size_t element = 0;
    CycloVector eigenvector;
};

/// An element with a zeta-eigenvector lying on no reflecting hyperplane,
/// where zeta is the given root of unity in the group's field.
inline std::optional<RegularElement> find_regular_element(const FiniteMatrixGroup& g, const ReflectionSet& rs,
                                                          const CyclotomicNumber& zeta)
{
    const CyclotomicNumber z = zeta.lift(g.conductor());
    for (std::size_t i = 0; i < g.order(); ++i) {
        auto eigen = kernel_basis(minus_identity(g.element(i), z));
        if (eigen.empty())
            continue;
        bool avoids = true;
        for (const auto& form : rs.hyperplanes) {
            bool some_nonzero = false;
            for (const auto& v : eigen)
                if (!pair(form, v).is_zero()) {
                    some_nonzero = true;
                    break;
                }
            if (!some_nonzero) {
                avoids = false;
                break;
            }
        }
        if (!avoids)
            continue;
        // v = sum_j k^j e_j for k = 1, 2, ...; finitely many hyperplanes
        // cannot contain every such point.
        for (long k = 1;; ++k) {
            CycloVector v(g.dim(), g.zero());
            Rational coef(1);
            for (const auto& e : eigen) {
                for (std::size_t c = 0; c < v.size(); ++c)
                    v[c] += e[c] * coef;
                coef *= k;
            }
            bool ok = std::none_of(rs.hyperplanes.begin(), rs.hyperplanes.end(),
                                   [&](const CycloVector& form) { return pair(form, v).is_zero(); });
            if (ok)
                return RegularElement{i, std::move(v)};
        }
    }
    return std::nullopt;
}

/// Regular element for a primitive d-th root of unity; none when d does not
/// divide the group exponent (no element has such an eigenvalue).
inline std::optional<RegularElement> find_regular_element(const FiniteMatrixGroup& g, const ReflectionSet& rs,
                                                          std::size_t d)
{
    if (d == 0 || g.conductor() % d != 0 || g.exponent() % d != 0)
        return std::nullopt;
    return find_regular_element(g, rs, CyclotomicNumber::root_of_unity(g.conductor(), static_cast<long>(g.conductor() / d)));
}

/// Eigenvalues of element i as (fraction q of a full turn, i.e. exp(2 pi i q),
/// multiplicity), q in [0, 1).
inline std::vector<std::pair<Rational, std::size_t>> eigenvalue_spectrum(const FiniteMatrixGroup& g, std::size_t i)
{
    std::vector<std::pair<Rational, std::size_t>> out;
    const unsigned e = g.conductor();
    for (unsigned k = 0; k < e; ++k) {
        auto z = CyclotomicNumber::root_of_unity(e, k);
        const std::size_t mult = kernel_basis(minus_identity(g.element(i), z)).size();
        if (mult)
            out.emplace_back(frac(k, e), mult);
    }
    return out;
}

struct CoxeterElement {
    std::size_t element = 0;
    std::size_t coxeter_number = 0;
    CycloVector eigenvector;
};

/// A zeta_h-regular element of an irreducible well-generated reflection
/// group. Throws HypothesisViolated when the group fails the hypotheses or
/// when no regular element exists.
inline CoxeterElement find_coxeter_element(const FiniteMatrixGroup& g, const ReflectionSet& rs)
{
    if (rs.reflections.empty())
        throw DomainError(ErrorKind::HypothesisViolated, "group has no reflections");
    if (!is_reflection_group(g, rs))
        throw DomainError(ErrorKind::HypothesisViolated, "group is not generated by reflections");
    if (!is_irreducible(g).irreducible)
        throw DomainError(ErrorKind::HypothesisViolated, "group does not act irreducibly");
    if (!is_well_generated(g, rs).well_generated)
        throw DomainError(ErrorKind::HypothesisViolated, "group is not well generated");
    const std::size_t h = coxeter_number(g, rs);
    auto reg = find_regular_element(g, rs, h);
    if (!reg)
        throw DomainError(ErrorKind::HypothesisViolated,
                          "no zeta_" + std::to_string(h) + "-regular element in an irreducible well-generated group");
    if (!kernel_basis(minus_identity(g.element(reg->element), g.one())).empty())
        throw DomainError(ErrorKind::HypothesisViolated, "Coxeter element has eigenvalue 1");
    return CoxeterElement{reg->element, h, std::move(reg->eigenvector)};
}

/// Sum over G of g^* g: a G-invariant positive definite Hermitian form.
inline CycloMatrix invariant_hermitian_form(const FiniteMatrixGroup& g)
{
    CycloMatrix acc(g.dim(), g.dim(), g.zero());
    for (const auto& m : g.elements())
        acc += m.adjoint() * m;
    return acc;
}

struct IrreducibleComponent {
    std::vector<CycloVector> subspace;
    std::vector<std::size_t> reflections; // element indices generating G_i
    bool irreducible = false;
};

struct Decomposition {
    std::vector<CycloVector> fixed_space;
    std::vector<IrreducibleComponent> components;
    /// Pieces are G-stable, mutually orthogonal for the invariant Hermitian
    /// form and their dimensions sum to n.
    bool verified = false;
};

/// h = h^G (+) h_1 (+) ... (+) h_m. Reflections are grouped into connected
/// components of the graph joining non-commuting reflections and reflections
/// with a common hyperplane; each component's roots span h_i.
inline Decomposition decompose_reflection_group(const FiniteMatrixGroup& g, const ReflectionSet& rs)
{
    Decomposition out;
    out.fixed_space = fixed_space(g);
    const auto& refl = rs.reflections;
    const std::size_t m = refl.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (refl[a].hyperplane == refl[b].hyperplane ||
                g.mul(refl[a].element, refl[b].element) != g.mul(refl[b].element, refl[a].element))
                parent[find(a)] = find(b);
    std::vector<std::size_t> roots_order;
    for (std::size_t a = 0; a < m; ++a) {
        std::size_t r = find(a);
        if (std::find(roots_order.begin(), roots_order.end(), r) == roots_order.end())
            roots_order.push_back(r);
    }
    for (std::size_t r : roots_order) {
        IrreducibleComponent comp;
        std::vector<CycloVector> roots;
        for (std::size_t a = 0; a < m; ++a)
            if (find(a) == r) {
                comp.reflections.push_back(refl[a].element);
                roots.push_back(refl[a].root);
            }
        comp.subspace = independent_subset(roots, g.dim(), g.zero());
        FiniteMatrixGroup piece = restricted_group(g, comp.subspace, comp.reflections);
        comp.irreducible = is_irreducible(piece).irreducible;
        out.components.push_back(std::move(comp));
    }

    // verification
    std::size_t total = out.fixed_space.size();
    std::vector<std::vector<CycloVector>> pieces{out.fixed_space};
    for (const auto& c : out.components) {
        total += c.subspace.size();
        pieces.push_back(c.subspace);
    }
    bool ok = total == g.dim();
    for (const auto& c : out.components) {
        ok = ok && c.irreducible;
        for (std::size_t s : g.generators())
            try {
                (void)restrict_to(g.element(s), c.subspace);
            } catch (const DomainError&) {
                ok = false;
            }
    }
    const CycloMatrix form = invariant_hermitian_form(g);
    for (std::size_t a = 0; a < pieces.size() && ok; ++a)
        for (std::size_t b = a + 1; b < pieces.size() && ok; ++b)
            for (const auto& u : pieces[a])
                for (const auto& v : pieces[b]) {
                    CycloVector uconj;
                    for (const auto& x : u)
                        uconj.push_back(x.conj());
                    if (!pair(uconj, form.apply(v)).is_zero())
                        ok = false;
                }
    out.verified = ok;
    return out;
}

struct GroupReport {
    std::size_t order = 0;
    std::size_t dim = 0;
    std::size_t reflections = 0; // N
    std::size_t hyperplanes = 0; // N*
    std::size_t rank = 0;
    std::size_t fixed_dim = 0;
    std::size_t classes = 0;
    bool reflection_group = false;
    bool irreducible = false;
    Rational character_norm;
    std::optional<std::vector<std::size_t>> degrees;
    std::optional<std::size_t> coxeter_number;
    bool well_generated = false;
    std::vector<std::size_t> well_generated_witness;
    std::optional<std::size_t> coxeter_element;
};

/// Everything `analyze-group` prints. Degrees are computed on the support
/// when h^G != 0; the Coxeter number and element only for irreducible
/// reflection groups.
inline GroupReport analyze_group(const FiniteMatrixGroup& g)
{
    GroupReport rep;
    const auto rs = find_reflections(g);
    const auto support = support_and_rank(g, rs);
    rep.order = g.order();
    rep.dim = g.dim();
    rep.reflections = rs.reflections.size();
    rep.hyperplanes = rs.hyperplanes.size();
    rep.rank = support.rank;
    rep.fixed_dim = support.fixed_space.size();
    rep.classes = conjugacy_classes(g).size();
    rep.reflection_group = is_reflection_group(g, rs);
    const auto irr = is_irreducible(g);
    rep.irreducible = irr.irreducible;
    rep.character_norm = irr.inner_product;
    if (rep.reflection_group) {
        try {
            if (support.rank == 0) {
                rep.degrees = std::vector<std::size_t>{};
            } else if (support.fixed_space.empty()) {
                rep.degrees = molien_degrees(g);
            } else {
                auto restricted = restricted_group(g, support.support, g.generators());
                rep.degrees = molien_degrees(restricted);
            }
        } catch (const DomainError&) {
            rep.degrees.reset();
        }
        const auto wg = is_well_generated(g, rs);
        rep.well_generated = wg.well_generated;
        rep.well_generated_witness = wg.witness;
        if (rep.irreducible) {
            try {
                rep.coxeter_number = coxeter_number(g, rs);
                if (rep.well_generated)
                    rep.coxeter_element = find_coxeter_element(g, rs).element;
            } catch (const DomainError&) {
            }
        }
    }
    return rep;
}

} // namespace rcatk
