#include <gtest/gtest.h>

#include <set>

#include "rcatk/strata.hpp"
#include "test_support.hpp"

using namespace rcatk;
using rcatk::testing::data_path;
using rcatk::testing::group;

namespace {

using Profile = std::vector<std::size_t>;

// a_j from raw conjugation orbits and ranks of g - 1.
Profile brute_force_profile(const FiniteMatrixGroup& g)
{
    const std::size_t n = g.dim();
    Profile a(2 * n + 1, 0);
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < g.order(); ++i) {
        if (seen.count(i))
            continue;
        for (std::size_t k = 0; k < g.order(); ++k)
            seen.insert(*g.index_of(g.element(k) * g.element(i) * g.element(g.inverse(k))));
        CycloMatrix m = g.element(i) - g.identity();
        a[2 * (n - rank(m))] += 1;
    }
    return a;
}

OrbifoldDescriptor orbifold(const std::string& name)
{
    return load_orbifold_descriptor(data_path("orbifolds/" + name + ".orb"));
}

const std::vector<std::string> kCorpus = {"trivial1", "trivial2", "z2", "z3", "z4", "z5", "z6", "z7",
                                          "klein4", "s3_2d", "s3_3d", "s4_3d", "g3_1_2", "z4_rotation"};

} // namespace

TEST(HochschildProfile, Examples)
{
    EXPECT_EQ(hochschild_profile(group("trivial2")).a, (Profile{0, 0, 0, 0, 1}));
    EXPECT_EQ(hochschild_profile(group("z2")).a, (Profile{1, 0, 1}));
    EXPECT_EQ(hochschild_profile(group("s3_2d")).a, (Profile{1, 0, 1, 0, 1}));
    EXPECT_EQ(hochschild_profile(group("z5")).a, (Profile{4, 0, 1}));
    // 4-cycles fix nothing; 3-cycles and double transpositions fix a line
    EXPECT_EQ(hochschild_profile(group("s4_3d")).a, (Profile{1, 0, 2, 0, 1, 0, 1}));
}

TEST(HochschildProfile, MatchesBruteForceAndParity)
{
    for (const auto& name : kCorpus) {
        auto g = group(name);
        auto p = hochschild_profile(g);
        EXPECT_EQ(p.a, brute_force_profile(g)) << name;
        std::size_t total = 0;
        for (std::size_t j = 0; j < p.a.size(); ++j) {
            total += p.a[j];
            if (j % 2)
                EXPECT_EQ(p.a[j], 0u) << name;
        }
        EXPECT_EQ(total, conjugacy_classes(g).size()) << name;
        EXPECT_GE(p.a.back(), 1u);
    }
}

TEST(HochschildProfile, KuennethConvolution)
{
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"z2", "z2"}, {"z2", "z3"}, {"s3_2d", "z2"}, {"trivial1", "z4"}, {"z3", "s3_2d"}};
    for (const auto& [x, y] : pairs) {
        auto a = group(x), b = group(y);
        auto prod = direct_product(a, b);
        EXPECT_EQ(hochschild_profile(prod).a,
                  convolve_profiles(hochschild_profile(a).a, hochschild_profile(b).a))
            << x << " x " << y;
    }
    // Z_2 x Z_2 is the Klein four-group
    EXPECT_EQ(convolve_profiles(hochschild_profile(group("z2")).a, hochschild_profile(group("z2")).a),
              hochschild_profile(group("klein4")).a);
}

TEST(ShiftedProfile, Examples)
{
    auto z2 = hochschild_profile(group("z2"));
    EXPECT_EQ(shifted_profile(z2, 1, 1), z2.a);
    EXPECT_EQ(shifted_profile(z2, 2, 1), (Profile{0, 0, 1, 0, 1}));
    auto triv = hochschild_profile(group("trivial1"));
    triv.n = 0;
    triv.a = {1};
    EXPECT_EQ(shifted_profile(triv, 3, 0), (Profile{0, 0, 0, 0, 0, 0, 1}));
    EXPECT_THROW(shifted_profile(z2, 3, 2), DomainError);
    EXPECT_THROW(shifted_profile(z2, 0, 1), DomainError);
}

TEST(TraceBound, Examples)
{
    for (unsigned m = 2; m <= 7; ++m) {
        auto g = group("z" + std::to_string(m));
        auto r = trace_space_lower_bound(g);
        ASSERT_TRUE(r.witness.has_value());
        EXPECT_EQ(g.element_order(*r.witness), m);
        EXPECT_EQ(r.a0, m - 1);
        EXPECT_TRUE(r.bound_holds);
    }
    auto s3 = group("s3_2d");
    auto r = trace_space_lower_bound(s3);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(s3.element_order(*r.witness), 3u);
    EXPECT_EQ(r.a0, 1u);

    auto nat = trace_space_lower_bound(group("s3_3d"));
    EXPECT_FALSE(nat.fixed_space_zero);
    EXPECT_FALSE(nat.witness.has_value());
    EXPECT_EQ(nat.a0, 0u);
    EXPECT_FALSE(nat.bound_holds);
}

TEST(TraceBound, ReducibleProductsUseFactorCoxeterElements)
{
    auto klein = group("klein4");
    auto r = trace_space_lower_bound(klein);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.factor_coxeter_elements.size(), 2u);
    EXPECT_EQ(klein.element(*r.witness), klein.identity() * CyclotomicNumber(klein.conductor(), Rational(-1)));

    auto g = direct_product(group("s3_2d"), group("z3"));
    auto q = trace_space_lower_bound(g);
    ASSERT_TRUE(q.witness.has_value());
    EXPECT_EQ(g.element_order(*q.witness), 3u);
    EXPECT_TRUE(kernel_basis(minus_identity(g.element(*q.witness), g.one())).empty());

    auto rot = trace_space_lower_bound(group("z4_rotation"));
    EXPECT_FALSE(rot.well_generated);
    EXPECT_EQ(rot.a0, 3u);
}

TEST(Orbifold, ParseErrors)
{
    auto bad = [](const std::string& text) {
        try {
            parse_orbifold_descriptor(text);
        } catch (const DomainError& e) {
            return e.kind() == ErrorKind::MalformedDescriptor;
        }
        return false;
    };
    EXPECT_TRUE(bad(""));
    EXPECT_TRUE(bad("ambient_dim 1\n"));
    EXPECT_TRUE(bad("orbifold\nclass 0\n"));
    EXPECT_TRUE(bad("orbifold\nambient_dim 1\ncomponent codim=0 betti=1\n"));
    EXPECT_TRUE(bad("orbifold\nambient_dim 1\nclass 0\ncomponent codim=2 betti=1\n"));
    EXPECT_TRUE(bad("orbifold\nambient_dim 1\nclass 0\ncomponent codim=1 betti=1,0\n"));
    EXPECT_TRUE(bad("orbifold\nambient_dim 1\nclass 0\ncomponent codim=0 betti=1,-1\n"));
    EXPECT_TRUE(bad("orbifold\nambient_dim 1\nclass 0\ncomponent codim=0\n"));
    EXPECT_TRUE(bad("orbifold\nambient_dim 1\nclass 0\ncomponent codim=0 betti=1 color=red\n"));
}

TEST(Orbifold, ValidationAgainstGroup)
{
    auto z2 = group("z2");
    auto expect_malformed = [&](const std::string& text) {
        auto d = parse_orbifold_descriptor(text);
        try {
            orbifold_hypercohomology(d, z2);
            FAIL() << text;
        } catch (const DomainError& e) {
            EXPECT_EQ(e.kind(), ErrorKind::MalformedDescriptor);
        }
    };
    expect_malformed("orbifold\nambient_dim 1\nclass 1\ncomponent codim=1 betti=1\n");
    expect_malformed("orbifold\nambient_dim 1\nclass 0\ncomponent codim=0 betti=1\nclass 0\n");
    expect_malformed("orbifold\nambient_dim 1\nclass 5\n");
    expect_malformed("orbifold\nambient_dim 1\nclass 0\ncomponent codim=1 betti=1\n");
}

TEST(Orbifold, HypercohomologyExamples)
{
    auto triv = parse_orbifold_descriptor("orbifold\nambient_dim 1\nclass 0\ncomponent codim=0 betti=1,0,1\n");
    auto t = orbifold_hypercohomology(triv, group("trivial1"));
    EXPECT_EQ(t.h, (std::vector<long>{1, 0, 1}));

    auto z2 = group("z2");
    auto lin = orbifold_hypercohomology(orbifold("z2_linear"), z2);
    EXPECT_EQ(lin.h, (std::vector<long>{1, 0, 1}));
    EXPECT_EQ(lin.cr, (std::vector<long>{1, 0, 1}));

    auto only_identity =
        parse_orbifold_descriptor("orbifold\nambient_dim 1\nclass 0\ncomponent codim=0 betti=1,0,1\nclass 1\n");
    EXPECT_EQ(orbifold_hypercohomology(only_identity, z2).h, (std::vector<long>{1, 0, 1}));

    auto p1 = orbifold_hypercohomology(orbifold("z2_p1"), z2);
    EXPECT_EQ(p1.h, (std::vector<long>{3, 0, 1}));
}

TEST(Orbifold, ChenRuanReindexing)
{
    auto d = parse_orbifold_descriptor(
        "orbifold\nambient_dim 2\nclass 0\ncomponent codim=0 betti=1,0,2,0,1\nclass 1\ncomponent codim=1 betti=1,0,1\n");
    auto g = direct_product(group("z2"), group("trivial1"));
    auto t = orbifold_hypercohomology(d, g);
    // identity: b_{4-k}; involution (l = 1): b_{2-k}
    EXPECT_EQ(t.h, (std::vector<long>{2, 0, 3, 0, 1}));
    EXPECT_EQ(t.cr, (std::vector<long>{1, 0, 3, 0, 2}));
}

TEST(Orbifold, LinearDescriptorReproducesProfile)
{
    for (const auto& name : kCorpus) {
        auto g = group(name);
        auto t = orbifold_hypercohomology(linear_descriptor(g), g);
        auto p = hochschild_profile(g);
        ASSERT_EQ(t.h.size(), p.a.size());
        for (std::size_t k = 0; k < p.a.size(); ++k)
            EXPECT_EQ(t.h[k], static_cast<long>(p.a[k])) << name << " k=" << k;
    }
    auto text = format_orbifold_descriptor(linear_descriptor(group("z2")));
    auto round = parse_orbifold_descriptor(text);
    EXPECT_EQ(format_orbifold_descriptor(round), text);
    auto g = group("s3_2d");
    EXPECT_EQ(orbifold_hypercohomology(orbifold("s3_linear"), g).h,
              orbifold_hypercohomology(linear_descriptor(g), g).h);
}

TEST(Euler, Examples)
{
    auto triv = parse_orbifold_descriptor("orbifold\nambient_dim 1\nclass 0\ncomponent codim=0 betti=1,0,1\n");
    auto e = euler_characteristics(triv, group("trivial1"));
    EXPECT_EQ(e.chi_top, 2);
    EXPECT_EQ(e.chi_hh, 2);
    EXPECT_TRUE(e.identity_check);

    auto z2 = euler_characteristics(orbifold("z2_linear"), group("z2"));
    EXPECT_EQ(z2.chi_top, 1);
    EXPECT_EQ(z2.chi_hh, 2);

    auto p1 = euler_characteristics(orbifold("z2_p1"), group("z2"));
    EXPECT_EQ(p1.chi_top, 2);
    EXPECT_EQ(p1.chi_hh, 4);
    auto p13 = euler_characteristics(orbifold("z3_p1"), group("z3"));
    EXPECT_EQ(p13.chi_top, 2);
    EXPECT_EQ(p13.chi_hh, 6);
}

TEST(Euler, AbelianLinearDescriptorsPass)
{
    for (const auto& name : kCorpus) {
        auto g = group(name);
        if (!g.is_abelian())
            continue;
        auto e = evaluate_euler_characteristics(linear_descriptor(g), g);
        EXPECT_TRUE(e.identity_check) << name;
        EXPECT_EQ(e.chi_top, 1);
    }
}

TEST(Euler, NonAbelianLinearDescriptorViolatesIdentity)
{
    // chi_hh counts classes once; |G| chi_top weights them by size
    auto g = group("s3_2d");
    auto e = evaluate_euler_characteristics(orbifold("s3_linear"), g);
    EXPECT_EQ(e.chi_hh, 3);
    EXPECT_EQ(e.chi_top, 1);
    EXPECT_FALSE(e.identity_check);
    try {
        euler_characteristics(orbifold("s3_linear"), g);
        FAIL() << "expected IdentityViolation";
    } catch (const DomainError& err) {
        EXPECT_EQ(err.kind(), ErrorKind::IdentityViolation);
    }
}
