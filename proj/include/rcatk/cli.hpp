#pragma once

// Command-line front end. Each subcommand echoes a canonical config header,
// then prints its report as `key=value` lines or as an aligned table.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "charclasses.hpp"
#include "cherednik.hpp"
#include "error.hpp"
#include "group_io.hpp"
#include "hochschild.hpp"
#include "reflection.hpp"
#include "strata.hpp"

namespace rcatk::cli {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string subcommand;
    std::string format = "lines";
    std::map<std::string, std::string> options; // printed sorted by key
};

struct Row {
    std::string key;
    std::string value;
    bool bare = false; // lines mode prints the value alone
};

struct Report {
    std::vector<Row> rows;
    std::optional<DomainError> failure; // raised after the report is printed

    void add(std::string key, std::string value) { rows.push_back({std::move(key), std::move(value), false}); }
    void bare(std::string key, std::string value) { rows.push_back({std::move(key), std::move(value), true}); }
};

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

template <class Range>
std::string join(const Range& xs, const std::string& sep = ",")
{
    std::ostringstream out;
    bool first = true;
    for (const auto& x : xs) {
        if (!first)
            out << sep;
        first = false;
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Rational>)
            out << to_string(x);
        else
            out << x;
    }
    return out.str();
}

inline void print_header(const RunConfig& cfg, std::ostream& out)
{
    out << "# rcatk " << kVersion << " " << cfg.subcommand << "\n";
    out << "# format=" << cfg.format << "\n";
    for (const auto& [k, v] : cfg.options)
        out << "# " << k << "=" << v << "\n";
}

inline void print_report(const RunConfig& cfg, const Report& r, std::ostream& out)
{
    if (cfg.format == "lines") {
        for (const auto& row : r.rows)
            out << (row.bare ? row.value : row.key + "=" + row.value) << "\n";
        return;
    }
    std::size_t width = 0;
    for (const auto& row : r.rows)
        width = std::max(width, row.key.size());
    for (const auto& row : r.rows)
        out << row.key << std::string(width - row.key.size() + 2, ' ') << row.value << "\n";
}

inline std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    for (const auto& part : rcatk::detail::split(s, ','))
        out.push_back(rcatk::detail::trim(part));
    return out;
}

inline unsigned long parse_count(const std::string& s, const char* what)
{
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw InputError(std::string("expected a nonnegative integer for ") + what + ", got '" + s + "'");
    return std::stoul(s);
}

inline std::string spectrum_string(const std::vector<std::pair<Rational, std::size_t>>& spec)
{
    std::vector<std::string> parts;
    for (const auto& [q, m] : spec)
        for (std::size_t i = 0; i < m; ++i)
            parts.push_back("e(" + to_string(q) + ")");
    return join(parts);
}

// Subcommand bodies. Each fills the report and adds its options to cfg.

inline Report analyze_group_cmd(const std::string& path, RunConfig& cfg)
{
    cfg.options["group"] = path;
    const auto g = load_group(path);
    const auto rep = analyze_group(g);
    Report r;
    r.add("order", std::to_string(rep.order));
    r.add("dim", std::to_string(rep.dim));
    r.add("conductor", std::to_string(g.conductor()));
    r.add("classes", std::to_string(rep.classes));
    r.add("N", std::to_string(rep.reflections));
    r.add("N*", std::to_string(rep.hyperplanes));
    r.add("rank", std::to_string(rep.rank));
    r.add("fixed_dim", std::to_string(rep.fixed_dim));
    r.add("reflection_group", yes_no(rep.reflection_group));
    r.add("irreducible", yes_no(rep.irreducible));
    r.add("character_norm", to_string(rep.character_norm));
    r.add("degrees", rep.degrees ? join(*rep.degrees) : "n/a");
    r.add("h", rep.coxeter_number ? std::to_string(*rep.coxeter_number) : "n/a");
    r.add("well_generated", yes_no(rep.well_generated));
    if (rep.well_generated)
        r.add("generating_reflections", join(rep.well_generated_witness));
    if (rep.coxeter_element) {
        r.add("coxeter_element", std::to_string(*rep.coxeter_element));
        r.add("coxeter_eigenvalues", spectrum_string(eigenvalue_spectrum(g, *rep.coxeter_element)));
    } else {
        r.add("coxeter_element", "n/a");
    }
    return r;
}

inline Report invariants_cmd(const std::string& path, std::optional<std::size_t> ambient, RunConfig& cfg)
{
    cfg.options["group"] = path;
    if (ambient)
        cfg.options["ambient"] = std::to_string(*ambient);
    const auto g = load_group(path);
    const auto prof = hochschild_profile(g);
    Report r;
    r.add("n", std::to_string(prof.n));
    r.add("classes", std::to_string(prof.classes.size()));
    for (std::size_t j = 0; j < prof.a.size(); ++j)
        if (prof.a[j])
            r.add("a[" + std::to_string(j) + "]", std::to_string(prof.a[j]));
    if (ambient) {
        const auto shifted = shifted_profile(prof, *ambient, prof.n);
        for (std::size_t m = 0; m < shifted.size(); ++m)
            if (shifted[m])
                r.add("hh[" + std::to_string(m) + "]", std::to_string(shifted[m]));
    }
    const auto tb = trace_space_lower_bound(g);
    r.add("hG_zero", yes_no(tb.fixed_space_zero));
    r.add("well_generated", yes_no(tb.well_generated));
    r.add("witness", tb.witness ? std::to_string(*tb.witness) : "none");
    r.add("a0", std::to_string(tb.a0));
    r.add("trace_bound", tb.bound_holds ? "holds" : "hypothesis-fails: " + tb.failure);
    return r;
}

inline Report orbifold_cmd(const std::string& descriptor, const std::string& group_path, bool linear, RunConfig& cfg)
{
    OrbifoldDescriptor d;
    std::string gpath = group_path;
    if (linear) {
        if (gpath.empty())
            throw InputError("--linear needs --group");
        cfg.options["linear"] = "yes";
    } else {
        if (descriptor.empty())
            throw InputError("give a descriptor file or --group with --linear");
        cfg.options["descriptor"] = descriptor;
        d = load_orbifold_descriptor(descriptor);
        if (gpath.empty()) {
            if (d.group_path.empty())
                throw DomainError(ErrorKind::MalformedDescriptor, "descriptor names no group and --group is absent");
            gpath = (std::filesystem::path(descriptor).parent_path() / d.group_path).lexically_normal().string();
        }
    }
    cfg.options["group"] = gpath;
    const auto g = load_group(gpath);
    if (linear)
        d = linear_descriptor(g);
    const auto t = orbifold_hypercohomology(d, g);
    const auto e = evaluate_euler_characteristics(d, g);
    Report r;
    r.add("n", std::to_string(t.n));
    r.add("order", std::to_string(g.order()));
    for (std::size_t k = 0; k < t.h.size(); ++k)
        r.add("H[-" + std::to_string(k) + "]", std::to_string(t.h[k]));
    for (std::size_t j = 0; j < t.cr.size(); ++j)
        r.add("CR[" + std::to_string(j) + "]", std::to_string(t.cr[j]));
    r.add("chi_top", to_string(e.chi_top));
    r.add("chi_hh", std::to_string(e.chi_hh));
    r.add("identity_check", e.identity_check ? "pass" : "fail");
    if (!e.identity_check)
        r.failure = DomainError(ErrorKind::IdentityViolation,
                                "chi_hh = " + std::to_string(e.chi_hh) + " but |G| chi_top = " +
                                    to_string(e.chi_top * Rational(static_cast<long>(g.order()))));
    return r;
}

inline Report dunkl_cmd(const std::string& path, const std::string& t_text, const std::string& c_text, unsigned degree,
                        RunConfig& cfg)
{
    cfg.options["group"] = path;
    cfg.options["t"] = t_text;
    cfg.options["c"] = c_text;
    cfg.options["degree"] = std::to_string(degree);
    const Rational t = parse_rational(t_text);
    std::map<std::size_t, Rational> c;
    std::optional<Rational> c_default;
    for (const auto& item : split_list(c_text)) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InputError("expected class=value in --c, got '" + item + "'");
        const std::string key = rcatk::detail::trim(item.substr(0, eq));
        const Rational value = parse_rational(item.substr(eq + 1));
        if (key == "all")
            c_default = value;
        else
            c[parse_count(key, "a class representative")] = value;
    }
    const auto g = load_group(path);
    const auto rep = make_dunkl_rep(g, t, c, degree, c_default);
    const auto report = verify_commutation_relations(rep);
    Report r;
    for (const auto& chk : report.checks)
        r.add("check " + chk.name, std::string(chk.passed ? "PASS" : "FAIL") + (chk.detail.empty() ? "" : " " + chk.detail));
    for (const auto& fit : report.kappa) {
        const std::string key = "kappa[" + std::to_string(fit.class_representative) + "]";
        std::string value = "c=" + to_string(fit.c) + " kappa=" + (fit.kappa ? to_string(*fit.kappa) : "none");
        value += " ratio=" + (fit.ratio ? to_string(*fit.ratio) : "n/a");
        r.add(key, value);
    }
    r.add("all_passed", yes_no(report.all_passed));
    return r;
}

inline Report hochschild_cmd(std::optional<std::size_t> cycle, std::size_t cap, const std::string& algebra_path,
                             const std::string& group_path, RunConfig& cfg)
{
    if (!cycle && algebra_path.empty() && group_path.empty())
        throw InputError("hochschild-check needs --cycle, --algebra or --group");
    Report r;
    if (cycle) {
        cfg.options["cycle"] = std::to_string(*cycle);
        cfg.options["cap"] = std::to_string(cap);
        const CappedWeylAlgebra w(*cycle, cap);
        const auto& a = w.algebra();
        const auto c = fundamental_cycle(w, *cycle);
        r.add("terms", std::to_string(c.terms.size()));
        const auto b = hochschild_boundary(c, a);
        r.add("boundary", b.is_zero() ? "0" : chain_to_string(b, a));
        r.add("normalized_cycle", yes_no(hochschild_boundary(normalize(c, a.unit()), a).is_zero()));
        const auto u = normalize(fundamental_cycle(w, *cycle, false), a.unit());
        const bool unsigned_ok = hochschild_boundary(u, a).is_zero();
        r.add("unsigned_normalized_cycle", yes_no(unsigned_ok));
        if (!unsigned_ok && *cycle > 0)
            r.add("discrepancy", "the sum without sgn(sigma) is not a cycle");
    }
    if (!algebra_path.empty()) {
        cfg.options["algebra"] = algebra_path;
        const auto a = parse_structure_constants(rcatk::detail::read_file(algebra_path));
        const auto assoc = a.check_associativity();
        r.add("dimension", std::to_string(a.dimension()));
        r.add("unit_ok", yes_no(a.check_unit()));
        r.add("associative", yes_no(assoc.associative));
        r.add("hh0", std::to_string(hh0_dimension(a)));
    }
    if (!group_path.empty()) {
        cfg.options["group"] = group_path;
        const auto g = load_group(group_path);
        const auto hh0 = group_algebra_hh0(g);
        const auto classes = conjugacy_classes(g).size();
        r.add("group_algebra_hh0", std::to_string(hh0));
        r.add("classes", std::to_string(classes));
        r.add("hh0_matches_classes", yes_no(hh0 == classes));
    }
    return r;
}

struct DensityArgs {
    unsigned n = 0;
    unsigned l = 0;
    std::string tangent = "0";
    std::string theta = "0";
    std::string moments = "1";
    std::string eigen;
    std::optional<unsigned> hbar_order;
    unsigned rank = 1;
    std::string normal_symbol;
};

inline Report index_density_cmd(const DensityArgs& a, RunConfig& cfg)
{
    if (a.l > a.n)
        throw InputError("--l must not exceed --n");
    if (!a.eigen.empty() && a.moments != "1")
        throw InputError("--moments and --eigen-weights are exclusive");
    const unsigned p = a.n - a.l;
    const unsigned order = a.hbar_order.value_or(p);
    cfg.options["n"] = std::to_string(a.n);
    cfg.options["l"] = std::to_string(a.l);
    cfg.options["tangent-roots"] = a.tangent;
    cfg.options["theta"] = a.theta;
    cfg.options["hbar-order"] = std::to_string(order);
    cfg.options["rank"] = std::to_string(a.rank);

    CurvatureData cd;
    cd.rank = a.rank;
    for (const auto& root : split_list(a.tangent))
        cd.tangent_roots.push_back(parse_linear_form(root, order));
    cd.theta = parse_linear_form(a.theta, order);

    TraceFunctional tf;
    bool engaged = !a.normal_symbol.empty();
    if (!a.eigen.empty()) {
        cfg.options["eigen-weights"] = a.eigen;
        const auto parts = split_list(a.eigen);
        if (parts.size() != 2)
            throw InputError("--eigen-weights expects lambda,mu");
        tf = TraceFunctional::from_eigen_weights(parse_rational(parts[0]), parse_rational(parts[1]), order + 1);
        engaged = true;
    } else {
        cfg.options["moments"] = a.moments;
        std::vector<Rational> m;
        for (const auto& s : split_list(a.moments))
            m.push_back(parse_rational(s));
        if (m.empty() || m[0] != 1)
            throw InputError("the zeroth moment must be 1");
        tf = TraceFunctional(m);
        engaged = engaged || m.size() > 1;
    }
    if (engaged) {
        const std::string sym = a.normal_symbol.empty() ? "rN" : a.normal_symbol;
        cfg.options["normal-symbol"] = sym;
        cd.normal = parse_linear_form(sym, order);
    }

    const auto d = index_density(cd, a.n, a.l, tf, order);
    if (!d.spellings_agree)
        throw DomainError(ErrorKind::IdentityViolation, "A-hat(R_T) and A-hat_hbar(R_T/hbar) spellings differ");
    Report r;
    auto lines = series_lines(d.density);
    if (lines.empty())
        lines.push_back("0 * 1 * hbar^0");
    for (const auto& line : lines)
        r.bare("term", line);
    if (cfg.format == "table") {
        r.add("spellings", "agree");
        r.add("nonnegative_hbar", yes_no(d.nonnegative_hbar));
    }
    return r;
}

inline int exit_code_for(const DomainError& e)
{
    switch (e.kind()) {
    case ErrorKind::MalformedDescriptor:
    case ErrorKind::InvalidArgument:
        return 2;
    default:
        return 1;
    }
}

} // namespace detail

/// Parses argv, runs one subcommand and returns the exit code: 0 on
/// success, 1 on a domain error, 2 on malformed input or usage.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact invariants of finite complex reflection groups", "rcatk"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--format", cfg.format, "output mode")->check(CLI::IsMember({"lines", "table"}));
    app.set_version_flag("--version", kVersion);

    std::string group_file;
    auto* analyze = app.add_subcommand("analyze-group", "reflections, degrees, Coxeter data");
    analyze->add_option("group", group_file, "group file")->required();

    std::string inv_file;
    std::optional<std::size_t> ambient;
    auto* inv = app.add_subcommand("invariants", "Hochschild profile and trace-space bound");
    inv->add_option("group", inv_file, "group file")->required();
    inv->add_option("--ambient", ambient, "embed in dimension n and print the shifted profile");

    std::string orb_file;
    std::string orb_group;
    bool orb_linear = false;
    auto* orb = app.add_subcommand("orbifold", "hypercohomology and Euler characteristics");
    orb->add_option("descriptor", orb_file, "orbifold descriptor file");
    orb->add_option("--group", orb_group, "group file (overrides the descriptor's)");
    orb->add_flag("--linear", orb_linear, "use the linear descriptor of --group");

    std::string dk_group;
    std::string dk_t = "1";
    std::string dk_c;
    unsigned dk_degree = 3;
    auto* dk = app.add_subcommand("dunkl-check", "commutation relations of Dunkl operators");
    dk->add_option("--group", dk_group, "group file")->required();
    dk->add_option("--t", dk_t, "parameter t");
    dk->add_option("--c", dk_c, "class=value,... keyed by class representative, or all=value")->required();
    dk->add_option("--degree", dk_degree, "polynomial degree cap");

    std::optional<std::size_t> hc_cycle;
    std::size_t hc_cap = 2;
    std::string hc_algebra;
    std::string hc_group;
    auto* hc = app.add_subcommand("hochschild-check", "fundamental cycle and HH_0 checks");
    hc->add_option("--cycle", hc_cycle, "half-degree k of the cycle in the Weyl algebra A_k");
    hc->add_option("--cap", hc_cap, "total degree cap of the Weyl algebra basis");
    hc->add_option("--algebra", hc_algebra, "structure-constant algebra file");
    hc->add_option("--group", hc_group, "group file: compare HH_0 of C[G] with the class count");

    detail::DensityArgs da;
    auto* idx = app.add_subcommand("index-density", "truncated A-hat Ch Ch_phi density");
    idx->add_option("--n", da.n, "ambient dimension")->required();
    idx->add_option("--l", da.l, "codimension of the stratum")->required();
    idx->add_option("--tangent-roots", da.tangent, "comma separated linear forms");
    idx->add_option("--theta", da.theta, "central curvature form");
    idx->add_option("--moments", da.moments, "m0,m1,... with m0 = 1");
    idx->add_option("--eigen-weights", da.eigen, "lambda,mu: m_k = lambda mu^k for k >= 1");
    idx->add_option("--hbar-order", da.hbar_order, "truncation order, at least n - l");
    idx->add_option("--rank", da.rank, "rank of the gl block")->check(CLI::PositiveNumber);
    idx->add_option("--normal-symbol", da.normal_symbol, "symbol fed to the trace moments");

    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i)
        args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return 2;
    }

    try {
        Report report;
        if (*analyze) {
            cfg.subcommand = "analyze-group";
            report = detail::analyze_group_cmd(group_file, cfg);
        } else if (*inv) {
            cfg.subcommand = "invariants";
            report = detail::invariants_cmd(inv_file, ambient, cfg);
        } else if (*orb) {
            cfg.subcommand = "orbifold";
            report = detail::orbifold_cmd(orb_file, orb_group, orb_linear, cfg);
        } else if (*dk) {
            cfg.subcommand = "dunkl-check";
            report = detail::dunkl_cmd(dk_group, dk_t, dk_c, dk_degree, cfg);
        } else if (*hc) {
            cfg.subcommand = "hochschild-check";
            report = detail::hochschild_cmd(hc_cycle, hc_cap, hc_algebra, hc_group, cfg);
        } else {
            cfg.subcommand = "index-density";
            report = detail::index_density_cmd(da, cfg);
        }
        detail::print_header(cfg, out);
        detail::print_report(cfg, report, out);
        if (report.failure) {
            err << "error: " << report.failure->what() << "\n";
            return 1;
        }
        return 0;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return detail::exit_code_for(e);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace rcatk::cli
