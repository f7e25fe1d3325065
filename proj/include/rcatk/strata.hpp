#pragma once

// Dimension counts attached to the strata of fixed points: class profiles
// a_j, their shifts, trace-space witnesses, and hypercohomology and Euler
// characteristics of orbifold descriptors.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cyclo.hpp"
#include "error.hpp"
#include "group.hpp"
#include "group_io.hpp"
#include "reflection.hpp"

namespace rcatk {

struct ClassFixedData {
    std::size_t representative = 0;
    std::size_t size = 0;
    std::size_t fixed_dim = 0; // m_g = dim ker(g - 1) on h
    std::size_t codim = 0;     // l_g = n - m_g
};

/// a[j] = #{classes : dim (h + h*)^g = j}, j = 0..2n.
struct HomologyProfile {
    std::size_t n = 0;
    std::vector<ClassFixedData> classes;
    std::vector<std::size_t> a;

    std::size_t class_count() const noexcept { return classes.size(); }
};

inline HomologyProfile hochschild_profile(const FiniteMatrixGroup& g)
{
    HomologyProfile p;
    p.n = g.dim();
    p.a.assign(2 * p.n + 1, 0);
    for (const auto& c : conjugacy_classes(g)) {
        ClassFixedData d;
        d.representative = c.representative;
        d.size = c.size();
        d.fixed_dim = kernel_basis(minus_identity(g.element(c.representative), g.one())).size();
        d.codim = p.n - d.fixed_dim;
        ++p.a[2 * d.fixed_dim];
        p.classes.push_back(d);
    }
    return p;
}

/// dim HH_m for H acting on C^l inside C^n: a(H)_{m - 2n + 2l}, m = 0..2n.
inline std::vector<std::size_t> shifted_profile(const HomologyProfile& h, std::size_t n, std::size_t l)
{
    if (l > n)
        throw DomainError(ErrorKind::InvalidArgument, "l must not exceed n");
    if (h.n != l)
        throw DomainError(ErrorKind::InvalidArgument,
                          "profile is for C^" + std::to_string(h.n) + ", expected C^" + std::to_string(l));
    std::vector<std::size_t> out(2 * n + 1, 0);
    const std::size_t shift = 2 * (n - l);
    for (std::size_t j = 0; j < h.a.size(); ++j)
        out[j + shift] = h.a[j];
    return out;
}

/// Profile of a block-diagonal product from the factor profiles.
inline std::vector<std::size_t> convolve_profiles(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    if (a.empty() || b.empty())
        return {};
    std::vector<std::size_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

struct TraceBoundReport {
    bool fixed_space_zero = false;
    bool well_generated = false;
    std::optional<std::size_t> witness;
    std::vector<std::size_t> factor_coxeter_elements;
    std::size_t a0 = 0;
    bool bound_holds = false;
    std::string failure;
};

/// When h^G = 0 and G is well generated, multiplies Coxeter elements of the
/// irreducible factors into an element without eigenvalue 1.
inline TraceBoundReport trace_space_lower_bound(const FiniteMatrixGroup& g)
{
    TraceBoundReport rep;
    const auto rs = find_reflections(g);
    const auto profile = hochschild_profile(g);
    rep.a0 = profile.a[0];
    rep.fixed_space_zero = fixed_space(g).empty();
    rep.well_generated = is_reflection_group(g, rs) && is_well_generated(g, rs).well_generated;
    if (!rep.fixed_space_zero) {
        rep.failure = "h^G != 0";
        return rep;
    }
    if (!rep.well_generated) {
        rep.failure = "not a well-generated reflection group";
        return rep;
    }
    const auto dec = decompose_reflection_group(g, rs);
    std::size_t c = 0;
    for (const auto& comp : dec.components) {
        const auto members = g.subgroup(comp.reflections);
        FiniteMatrixGroup piece = restricted_group(g, comp.subspace, comp.reflections);
        const auto local = find_coxeter_element(piece, find_reflections(piece));
        const CycloMatrix& target = piece.element(local.element);
        std::optional<std::size_t> lifted;
        for (std::size_t m : members)
            if (restrict_to(g.element(m), comp.subspace) == target) {
                lifted = m;
                break;
            }
        if (!lifted) {
            rep.failure = "Coxeter element of a factor does not lift";
            return rep;
        }
        rep.factor_coxeter_elements.push_back(*lifted);
        c = g.mul(c, *lifted);
    }
    if (!kernel_basis(minus_identity(g.element(c), g.one())).empty()) {
        rep.failure = "product of Coxeter elements has eigenvalue 1";
        return rep;
    }
    rep.witness = c;
    rep.bound_holds = rep.a0 >= 1;
    if (!rep.bound_holds)
        rep.failure = "a_0 = 0 despite a fixed-point-free witness";
    return rep;
}

struct OrbifoldComponent {
    std::size_t codim = 0;
    std::vector<long> betti; // b_0..b_{2(n - codim)}, missing entries are 0
};

struct OrbifoldClass {
    std::size_t representative = 0;
    std::vector<OrbifoldComponent> components;
};

/// Fixed-point data of a finite group acting on a complex manifold of
/// dimension n, one block per conjugacy class. Betti numbers are those of
/// the centralizer-invariant cohomology of each fixed component.
struct OrbifoldDescriptor {
    std::size_t n = 0;
    std::string group_path;
    std::vector<OrbifoldClass> classes;
};

namespace detail {

inline DomainError malformed(const std::string& msg, std::size_t line = 0)
{
    return DomainError(ErrorKind::MalformedDescriptor, line ? "line " + std::to_string(line) + ": " + msg : msg);
}

inline std::size_t parse_count(const std::string& s, std::size_t line, const char* what)
{
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw malformed(std::string("expected a nonnegative integer for ") + what + ", got '" + s + "'", line);
    return std::stoul(s);
}

} // namespace detail

/// Format:
///
///   orbifold
///   group z2.grp            # optional, relative to the descriptor
///   ambient_dim 1
///   class 0
///   component codim=0 betti=1,0,1
///   class 1
///   component codim=1 betti=1
///   component codim=1 betti=1
inline OrbifoldDescriptor parse_orbifold_descriptor(const std::string& text)
{
    OrbifoldDescriptor d;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    bool header = false, have_dim = false;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = detail::strip_comment(raw);
        if (line.empty())
            continue;
        std::istringstream words(line);
        std::vector<std::string> tok;
        for (std::string w; words >> w;)
            tok.push_back(w);
        const std::string& head = tok[0];
        if (!header) {
            if (head != "orbifold" || tok.size() != 1)
                throw detail::malformed("descriptor must start with 'orbifold'", lineno);
            header = true;
            continue;
        }
        if (head == "group") {
            if (tok.size() != 2)
                throw detail::malformed("'group' takes one path", lineno);
            d.group_path = tok[1];
        } else if (head == "ambient_dim") {
            if (tok.size() != 2 || have_dim)
                throw detail::malformed("'ambient_dim' takes one value and appears once", lineno);
            d.n = detail::parse_count(tok[1], lineno, "ambient_dim");
            have_dim = true;
        } else if (head == "class") {
            if (!have_dim)
                throw detail::malformed("'ambient_dim' must precede class blocks", lineno);
            if (tok.size() != 2)
                throw detail::malformed("'class' takes one element index", lineno);
            d.classes.push_back({detail::parse_count(tok[1], lineno, "class"), {}});
        } else if (head == "component") {
            if (d.classes.empty())
                throw detail::malformed("component outside a class block", lineno);
            OrbifoldComponent comp;
            bool have_codim = false, have_betti = false;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                const auto eq = tok[i].find('=');
                const std::string key = tok[i].substr(0, eq);
                const std::string value = eq == std::string::npos ? "" : tok[i].substr(eq + 1);
                if (key == "codim" && !have_codim) {
                    comp.codim = detail::parse_count(value, lineno, "codim");
                    have_codim = true;
                } else if (key == "betti" && !have_betti) {
                    for (const auto& b : detail::split(value, ','))
                        comp.betti.push_back(static_cast<long>(detail::parse_count(b, lineno, "betti")));
                    have_betti = true;
                } else {
                    throw detail::malformed("unexpected field '" + tok[i] + "'", lineno);
                }
            }
            if (!have_codim || !have_betti)
                throw detail::malformed("component needs codim= and betti=", lineno);
            if (comp.codim > d.n)
                throw detail::malformed("codim exceeds ambient_dim", lineno);
            if (comp.betti.size() > 2 * (d.n - comp.codim) + 1)
                throw detail::malformed("betti index beyond 2(n - l)", lineno);
            d.classes.back().components.push_back(std::move(comp));
        } else {
            throw detail::malformed("unexpected line '" + line + "'", lineno);
        }
    }
    if (!header)
        throw detail::malformed("empty descriptor");
    if (!have_dim)
        throw detail::malformed("missing ambient_dim");
    return d;
}

inline std::string format_orbifold_descriptor(const OrbifoldDescriptor& d)
{
    std::ostringstream out;
    out << "orbifold\n";
    if (!d.group_path.empty())
        out << "group " << d.group_path << "\n";
    out << "ambient_dim " << d.n << "\n";
    for (const auto& c : d.classes) {
        out << "class " << c.representative << "\n";
        for (const auto& comp : c.components) {
            out << "component codim=" << comp.codim << " betti=";
            for (std::size_t k = 0; k < comp.betti.size(); ++k)
                out << (k ? "," : "") << comp.betti[k];
            out << "\n";
        }
    }
    return out.str();
}

/// Checks the descriptor against G: class indices exist and are pairwise
/// non-conjugate, the identity class is present with only codim-0
/// components. Returns the class size of each block.
inline std::vector<std::size_t> validate_descriptor(const OrbifoldDescriptor& d, const FiniteMatrixGroup& g)
{
    const auto classes = conjugacy_classes(g);
    const auto lookup = class_lookup(g, classes);
    std::vector<bool> used(classes.size(), false);
    std::vector<std::size_t> sizes;
    bool identity = false;
    for (const auto& c : d.classes) {
        if (c.representative >= g.order())
            throw detail::malformed("class index " + std::to_string(c.representative) + " out of range for |G| = " +
                                    std::to_string(g.order()));
        const std::size_t k = lookup[c.representative];
        if (used[k])
            throw detail::malformed("class of element " + std::to_string(c.representative) + " listed twice");
        used[k] = true;
        sizes.push_back(classes[k].size());
        if (k == 0) {
            identity = !c.components.empty();
            for (const auto& comp : c.components)
                if (comp.codim != 0)
                    throw detail::malformed("identity components must have codim 0");
        }
    }
    if (!identity)
        throw detail::malformed("identity class with a codim-0 component is required");
    return sizes;
}

/// dim H^{-k} = sum over classes and components of b_{2n - 2l - k}, k = 0..2n,
/// and the Chen-Ruan side in the 2n - 2l - * reindexing: cr[2n - k] = h[k].
struct HypercohomologyTable {
    std::size_t n = 0;
    std::vector<long> h;  // h[k] = dim H^{-k}
    std::vector<long> cr; // cr[2n - k] = h[k], no age grading
};

inline HypercohomologyTable orbifold_hypercohomology(const OrbifoldDescriptor& d, const FiniteMatrixGroup& g)
{
    (void)validate_descriptor(d, g);
    HypercohomologyTable t;
    t.n = d.n;
    t.h.assign(2 * d.n + 1, 0);
    for (const auto& c : d.classes)
        for (const auto& comp : c.components) {
            const std::size_t top = 2 * (d.n - comp.codim);
            for (std::size_t j = 0; j < comp.betti.size(); ++j)
                t.h[top - j] += comp.betti[j];
        }
    t.cr.assign(2 * d.n + 1, 0);
    for (std::size_t k = 0; k <= 2 * d.n; ++k)
        t.cr[2 * d.n - k] = t.h[k];
    return t;
}

struct EulerCharacteristics {
    Rational chi_top;
    long chi_hh = 0;
    bool identity_check = false;
};

/// chi_top = (1/|G|) sum over classes of |class| * sum of component Euler
/// characteristics; chi_hh = alternating sum of dim H^{-k}.
inline EulerCharacteristics evaluate_euler_characteristics(const OrbifoldDescriptor& d, const FiniteMatrixGroup& g)
{
    const auto sizes = validate_descriptor(d, g);
    EulerCharacteristics e;
    Rational sum = 0;
    for (std::size_t i = 0; i < d.classes.size(); ++i)
        for (const auto& comp : d.classes[i].components) {
            long chi = 0;
            for (std::size_t k = 0; k < comp.betti.size(); ++k)
                chi += (k % 2 ? -1 : 1) * comp.betti[k];
            sum += Rational(static_cast<long>(sizes[i]) * chi);
        }
    e.chi_top = sum / Rational(static_cast<long>(g.order()));
    const auto t = orbifold_hypercohomology(d, g);
    for (std::size_t k = 0; k < t.h.size(); ++k)
        e.chi_hh += (k % 2 ? -1 : 1) * t.h[k];
    e.identity_check = Rational(e.chi_hh) == e.chi_top * Rational(static_cast<long>(g.order()));
    return e;
}

/// As evaluate_euler_characteristics, throwing IdentityViolation when
/// chi_hh != |G| chi_top.
inline EulerCharacteristics euler_characteristics(const OrbifoldDescriptor& d, const FiniteMatrixGroup& g)
{
    auto e = evaluate_euler_characteristics(d, g);
    if (!e.identity_check)
        throw DomainError(ErrorKind::IdentityViolation,
                          "chi_hh = " + std::to_string(e.chi_hh) + " but |G| chi_top = " +
                              to_string(e.chi_top * Rational(static_cast<long>(g.order()))));
    return e;
}

/// The descriptor of G acting linearly on h: one component per class, of
/// codimension l_g, with the cohomology of a point.
inline OrbifoldDescriptor linear_descriptor(const FiniteMatrixGroup& g)
{
    OrbifoldDescriptor d;
    d.n = g.dim();
    for (const auto& c : hochschild_profile(g).classes) {
        OrbifoldComponent comp;
        comp.codim = c.codim;
        comp.betti.assign(2 * (d.n - c.codim) + 1, 0);
        comp.betti[0] = 1;
        d.classes.push_back({c.representative, {comp}});
    }
    return d;
}

inline OrbifoldDescriptor load_orbifold_descriptor(const std::string& path)
{
    std::string text;
    try {
        text = detail::read_file(path);
    } catch (const InputError& e) {
        throw detail::malformed(e.what());
    }
    return parse_orbifold_descriptor(text);
}

} // namespace rcatk
