#pragma once

// Dunkl operators of a complex reflection group on a degree-capped
// polynomial algebra, and exact checks of the relations they satisfy.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyclo.hpp"
#include "error.hpp"
#include "group.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "reflection.hpp"

namespace rcatk {

using CycloPolynomial = Polynomial<CyclotomicNumber>;

/// Parameters (t, c) for G. `c` is keyed by the representative (minimal
/// element index) of each conjugacy class of reflections.
struct DunklRep {
    const FiniteMatrixGroup* group = nullptr;
    ReflectionSet reflections;
    std::vector<std::size_t> reflection_class; // per reflection: class representative
    std::vector<std::size_t> class_representatives;
    Rational t = 1;
    std::map<std::size_t, Rational> c;
    unsigned degree = 3;

    const FiniteMatrixGroup& g() const { return *group; }
    Rational c_of(std::size_t reflection) const { return c.at(reflection_class.at(reflection)); }
};

/// Builds the parameter set. Every key of `c` must name a reflection class;
/// classes without a key get the value `c_default` when given, otherwise
/// InvalidArgument.
inline DunklRep make_dunkl_rep(const FiniteMatrixGroup& g, Rational t, const std::map<std::size_t, Rational>& c,
                               unsigned degree, std::optional<Rational> c_default = std::nullopt)
{
    DunklRep rep;
    rep.group = &g;
    rep.reflections = find_reflections(g);
    rep.t = std::move(t);
    rep.degree = degree;
    const auto classes = conjugacy_classes(g);
    const auto lookup = class_lookup(g, classes);
    for (const auto& r : rep.reflections.reflections) {
        const std::size_t rep_index = classes[lookup[r.element]].representative;
        rep.reflection_class.push_back(rep_index);
        if (std::find(rep.class_representatives.begin(), rep.class_representatives.end(), rep_index) ==
            rep.class_representatives.end())
            rep.class_representatives.push_back(rep_index);
    }
    std::sort(rep.class_representatives.begin(), rep.class_representatives.end());
    for (const auto& [key, value] : c) {
        if (key >= g.order())
            throw DomainError(ErrorKind::InvalidArgument, "element index " + std::to_string(key) + " out of range");
        const std::size_t rep_index = classes[lookup[key]].representative;
        if (std::find(rep.class_representatives.begin(), rep.class_representatives.end(), rep_index) ==
            rep.class_representatives.end())
            throw DomainError(ErrorKind::InvalidArgument,
                              "element " + std::to_string(key) + " is not in a class of reflections");
        if (rep.c.count(rep_index) && rep.c[rep_index] != value)
            throw DomainError(ErrorKind::InvalidArgument, "conflicting values of c on one class");
        rep.c[rep_index] = value;
    }
    for (std::size_t k : rep.class_representatives)
        if (!rep.c.count(k)) {
            if (!c_default)
                throw DomainError(ErrorKind::InvalidArgument,
                                  "no value of c for the reflection class of element " + std::to_string(k));
            rep.c[k] = *c_default;
        }
    return rep;
}

/// g . f = f o g^(-1); on coordinates g . x_i = sum_j (g^(-1))_{ij} x_j.
inline CycloPolynomial act(const FiniteMatrixGroup& g, std::size_t element, const CycloPolynomial& f)
{
    const CycloMatrix& inv = g.element(g.inverse(element));
    const std::size_t n = g.dim();
    std::vector<CycloPolynomial> images;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<CyclotomicNumber> row;
        for (std::size_t j = 0; j < n; ++j)
            row.push_back(inv(i, j));
        images.push_back(CycloPolynomial::linear(row));
    }
    CycloPolynomial out(n);
    for (const auto& [e, c] : f.terms()) {
        CycloPolynomial term = CycloPolynomial::monomial(Exponent(n, 0), c);
        for (std::size_t i = 0; i < n; ++i)
            term = term * images[i].pow(e[i], g.one());
        out += term;
    }
    return out;
}

/// t d_y f + sum_s 2 c(s)/(1 - lambda_s) alpha_s(y) (s.f - f)/alpha_s.
inline CycloPolynomial apply_dunkl(const DunklRep& rep, const CycloVector& y, const CycloPolynomial& f)
{
    const auto& g = rep.g();
    const CyclotomicNumber t(g.conductor(), rep.t);
    CycloPolynomial out(g.dim());
    for (std::size_t j = 0; j < g.dim(); ++j)
        if (!y[j].is_zero())
            out += f.partial(j) * (y[j] * t);
    for (std::size_t k = 0; k < rep.reflections.reflections.size(); ++k) {
        const auto& s = rep.reflections.reflections[k];
        const Rational c = rep.c_of(k);
        const CyclotomicNumber ay = pair(s.coroot, y);
        if (c == 0 || ay.is_zero())
            continue;
        const CyclotomicNumber coeff = CyclotomicNumber(g.conductor(), 2 * c) * (g.one() - s.lambda).inverse() * ay;
        const CycloPolynomial diff = act(g, s.element, f) - f;
        out += divide_by_linear(diff, s.coroot) * coeff;
    }
    return out;
}

inline LinearOperator dunkl_operator(const DunklRep& rep, const TruncatedPolynomialAlgebra& alg, const CycloVector& y)
{
    return operator_from(alg, -1, alg.cap(), [&](const CycloPolynomial& f) { return apply_dunkl(rep, y, f); });
}

/// t d_y alone.
inline LinearOperator derivative_operator(const TruncatedPolynomialAlgebra& alg, const CycloVector& y,
                                          const Rational& t)
{
    const CyclotomicNumber tt(alg.conductor(), t);
    return operator_from(alg, -1, alg.cap(), [&](const CycloPolynomial& f) {
        CycloPolynomial out(alg.nvars());
        for (std::size_t j = 0; j < alg.nvars(); ++j)
            out += f.partial(j) * (y[j] * tt);
        return out;
    });
}

/// Multiplication by the linear form u = sum_j u_j x_j.
inline LinearOperator multiplication_operator(const TruncatedPolynomialAlgebra& alg, const CycloVector& u)
{
    const auto lin = CycloPolynomial::linear(u);
    return operator_from(alg, 1, static_cast<long>(alg.cap()) - 1,
                         [&](const CycloPolynomial& f) { return f * lin; });
}

inline LinearOperator group_operator(const FiniteMatrixGroup& g, const TruncatedPolynomialAlgebra& alg,
                                     std::size_t element)
{
    return operator_from(alg, 0, alg.cap(), [&](const CycloPolynomial& f) { return act(g, element, f); });
}

struct RelationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct KappaFit {
    std::size_t class_representative = 0;
    Rational c;
    std::optional<Rational> kappa;
    std::optional<Rational> ratio; // kappa / c, absent when c = 0
};

struct CommutationReport {
    std::vector<RelationCheck> checks;
    std::vector<KappaFit> kappa;
    bool all_passed = false;
};

namespace detail {

inline CycloVector unit_vector(std::size_t n, std::size_t i, unsigned e)
{
    CycloVector v(n, CyclotomicNumber::zero(e));
    v[i] = CyclotomicNumber::one(e);
    return v;
}

inline bool is_zero_on_valid(const TruncatedPolynomialAlgebra& alg, const LinearOperator& a)
{
    LinearOperator z{CycloMatrix(alg.dimension(), alg.dimension(), alg.zero()), a.shift, a.valid};
    return agree_on_valid(alg, a, z);
}

} // namespace detail

/// Checks on the truncation, each restricted to the source degrees where no
/// product was cut off:
///   dunkl-commute   [D_y, D_y'] = 0 for basis vectors
///   x-commute       [x_u, x_u'] = 0
///   equivariance    g D_y g^(-1) = D_{gy} for the generators g
///   mixed           [D_y, x_u] = t u(y) + sum_s kappa(s) alpha_s(y) u(alpha_s^vee) s,
///                   kappa fitted per class of reflections
///   c0-degeneration with c = 0 every D_y is t d_y
///   filtration      D_y lowers degree by exactly one step
inline CommutationReport verify_commutation_relations(const DunklRep& rep)
{
    const auto& g = rep.g();
    const std::size_t n = g.dim();
    const unsigned e = g.conductor();
    TruncatedPolynomialAlgebra alg(n, rep.degree, e);
    CommutationReport out;

    std::vector<LinearOperator> dunkl, mult;
    for (std::size_t i = 0; i < n; ++i) {
        dunkl.push_back(dunkl_operator(rep, alg, detail::unit_vector(n, i, e)));
        mult.push_back(multiplication_operator(alg, detail::unit_vector(n, i, e)));
    }

    {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = i + 1; j < n && ok; ++j)
                ok = detail::is_zero_on_valid(alg, commutator(dunkl[i], dunkl[j]));
        out.checks.push_back({"dunkl-commute", ok, ""});
    }
    {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = i + 1; j < n && ok; ++j)
                ok = detail::is_zero_on_valid(alg, commutator(mult[i], mult[j]));
        out.checks.push_back({"x-commute", ok, ""});
    }
    {
        bool ok = true;
        for (std::size_t s : g.generators()) {
            const auto gop = group_operator(g, alg, s);
            const auto ginv = group_operator(g, alg, g.inverse(s));
            for (std::size_t i = 0; i < n && ok; ++i) {
                const CycloVector gy = g.element(s).apply(detail::unit_vector(n, i, e));
                ok = agree_on_valid(alg, gop * dunkl[i] * ginv, dunkl_operator(rep, alg, gy));
            }
        }
        out.checks.push_back({"equivariance", ok, ""});
    }
    {
        // Unknowns: one kappa per reflection class. Equations: every exact
        // matrix entry of [D_y, x_u] - t u(y) for basis y, u.
        const std::size_t k = rep.class_representatives.size();
        std::vector<LinearOperator> reflection_ops;
        for (const auto& s : rep.reflections.reflections)
            reflection_ops.push_back(group_operator(g, alg, s.element));
        std::vector<std::vector<CyclotomicNumber>> rows;
        std::vector<CyclotomicNumber> rhs;
        for (std::size_t yi = 0; yi < n; ++yi)
            for (std::size_t ui = 0; ui < n; ++ui) {
                const auto y = detail::unit_vector(n, yi, e);
                LinearOperator lhs = commutator(dunkl[yi], mult[ui]);
                std::vector<CycloMatrix> basis(k, CycloMatrix(alg.dimension(), alg.dimension(), alg.zero()));
                for (std::size_t r = 0; r < rep.reflections.reflections.size(); ++r) {
                    const auto& s = rep.reflections.reflections[r];
                    const CyclotomicNumber w = pair(s.coroot, y) * s.root[ui];
                    if (w.is_zero())
                        continue;
                    const std::size_t cls = static_cast<std::size_t>(
                        std::find(rep.class_representatives.begin(), rep.class_representatives.end(),
                                  rep.reflection_class[r]) -
                        rep.class_representatives.begin());
                    basis[cls] += reflection_ops[r].matrix * w;
                }
                const CyclotomicNumber tuy = yi == ui ? CyclotomicNumber(e, rep.t) : alg.zero();
                for (std::size_t col = 0; col < alg.dimension(); ++col) {
                    if (static_cast<long>(alg.degree_of(col)) > lhs.valid)
                        continue;
                    for (std::size_t row = 0; row < alg.dimension(); ++row) {
                        CyclotomicNumber target = lhs.matrix(row, col);
                        if (row == col)
                            target -= tuy;
                        std::vector<CyclotomicNumber> eq;
                        bool nonzero = !target.is_zero();
                        for (std::size_t c = 0; c < k; ++c) {
                            eq.push_back(basis[c](row, col));
                            nonzero = nonzero || !eq.back().is_zero();
                        }
                        if (!nonzero)
                            continue;
                        rows.push_back(std::move(eq));
                        rhs.push_back(std::move(target));
                    }
                }
            }
        bool ok = true;
        std::vector<CyclotomicNumber> kappa(k, alg.zero());
        if (!rows.empty()) {
            if (k == 0) {
                ok = false;
            } else {
                auto sol = solve_any(CycloMatrix::from_rows(rows), rhs);
                if (!sol)
                    ok = false;
                else
                    kappa = *sol;
            }
        }
        for (std::size_t c = 0; c < k; ++c) {
            KappaFit fit;
            fit.class_representative = rep.class_representatives[c];
            fit.c = rep.c.at(fit.class_representative);
            if (ok && kappa[c].is_rational()) {
                fit.kappa = kappa[c].to_rational();
                if (fit.c != 0)
                    fit.ratio = *fit.kappa / fit.c;
            }
            out.kappa.push_back(fit);
        }
        out.checks.push_back({"mixed", ok, ok ? "" : "no kappa reproduces [D_y, x_u]"});
    }
    {
        DunklRep flat = rep;
        for (auto& [key, value] : flat.c)
            value = 0;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            const auto y = detail::unit_vector(n, i, e);
            ok = agree_on_valid(alg, dunkl_operator(flat, alg, y), derivative_operator(alg, y, rep.t));
        }
        out.checks.push_back({"c0-degeneration", ok, ""});
    }
    {
        bool ok = true;
        for (const auto& d : dunkl)
            for (std::size_t col = 0; col < alg.dimension(); ++col)
                for (std::size_t row = 0; row < alg.dimension(); ++row)
                    if (!d.matrix(row, col).is_zero() && alg.degree_of(row) + 1 != alg.degree_of(col))
                        ok = false;
        out.checks.push_back({"filtration", ok, ""});
    }
    out.all_passed = std::all_of(out.checks.begin(), out.checks.end(), [](const auto& c) { return c.passed; });
    return out;
}

struct PbwReport {
    std::size_t level = 0;
    std::size_t predicted = 0;
    std::size_t rank = 0;
    std::size_t baseline_rank = 0; // the same words at c = 0
    unsigned source_degree = 0;
    bool matches = false;
};

namespace detail {

inline std::vector<Exponent> exponents_up_to(std::size_t n, unsigned d)
{
    TruncatedPolynomialAlgebra alg(n, d, 1);
    return alg.basis();
}

inline std::size_t pbw_rank(const DunklRep& rep, std::size_t level, unsigned source_degree)
{
    const auto& g = rep.g();
    const std::size_t n = g.dim();
    const unsigned e = g.conductor();
    const unsigned d = rep.degree;
    // Images land in degree <= source_degree + d - level, so this cap keeps
    // every word exact.
    TruncatedPolynomialAlgebra big(n, source_degree + d, e);
    const std::size_t sources = big.count_up_to(source_degree);
    std::vector<CycloPolynomial> dunkl_images;
    std::vector<std::vector<CycloPolynomial>> after_group(g.order());
    for (std::size_t h = 0; h < g.order(); ++h)
        for (std::size_t j = 0; j < sources; ++j)
            after_group[h].push_back(act(g, h, big.basis_element(j)));

    std::vector<CycloVector> ys;
    for (std::size_t i = 0; i < n; ++i)
        ys.push_back(unit_vector(n, i, e));

    std::vector<std::vector<CyclotomicNumber>> rows;
    const auto as = exponents_up_to(n, d - static_cast<unsigned>(level));
    const auto bs = exponents_up_to(n, static_cast<unsigned>(level));
    for (std::size_t h = 0; h < g.order(); ++h)
        for (const auto& b : bs) {
            std::vector<CycloPolynomial> db = after_group[h];
            for (auto& f : db)
                for (std::size_t i = 0; i < n; ++i)
                    for (unsigned k = 0; k < b[i]; ++k)
                        f = apply_dunkl(rep, ys[i], f);
            for (const auto& a : as) {
                const auto xa = CycloPolynomial::monomial(a, big.one());
                std::vector<CyclotomicNumber> row;
                row.reserve(sources * big.dimension());
                for (const auto& f : db) {
                    auto v = big.coordinates(f * xa);
                    row.insert(row.end(), v.begin(), v.end());
                }
                rows.push_back(std::move(row));
            }
        }
    return rank(CycloMatrix::from_rows(rows));
}

} // namespace detail

/// Rank of the span of x^a D^b g (|b| <= level, |a| <= degree - level) as
/// maps from polynomials of degree <= source_degree (default: degree),
/// against the symbol count. Sources must be wide enough for the words to
/// act faithfully; for S_3 at degree 3 the sign-isotypic part is only the
/// cubic discriminant, on which x.d acts as the scalar 3.
inline PbwReport pbw_spot_check(const DunklRep& rep, std::size_t level,
                                std::optional<unsigned> source_degree = std::nullopt)
{
    const unsigned sources = source_degree.value_or(rep.degree);
    if (level > rep.degree)
        throw DomainError(ErrorKind::InvalidArgument, "filtration level exceeds the degree cap");
    PbwReport out;
    out.level = level;
    out.source_degree = sources;
    const std::size_t n = rep.g().dim();
    out.predicted = detail::exponents_up_to(n, rep.degree - static_cast<unsigned>(level)).size() *
                    detail::exponents_up_to(n, static_cast<unsigned>(level)).size() * rep.g().order();
    out.rank = detail::pbw_rank(rep, level, sources);
    DunklRep flat = rep;
    for (auto& [key, value] : flat.c)
        value = 0;
    out.baseline_rank = detail::pbw_rank(flat, level, sources);
    out.matches = out.rank == out.predicted && out.baseline_rank == out.predicted;
    return out;
}

} // namespace rcatk
