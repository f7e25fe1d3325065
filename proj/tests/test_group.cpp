#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "rcatk/group.hpp"
#include "rcatk/group_io.hpp"
#include "rcatk/reflection.hpp"
#include "test_support.hpp"

using namespace rcatk;
using rcatk::testing::group;

namespace {

CycloMatrix permutation_matrix(const std::vector<int>& p, unsigned e)
{
    CycloMatrix m(p.size(), p.size(), CyclotomicNumber::zero(e));
    for (std::size_t i = 0; i < p.size(); ++i)
        m(static_cast<std::size_t>(p[i]), i) = CyclotomicNumber::one(e);
    return m;
}

// Orbit sizes of conjugation computed with raw matrix products.
std::multiset<std::size_t> brute_force_class_sizes(const FiniteMatrixGroup& g)
{
    std::multiset<std::size_t> sizes;
    std::vector<bool> done(g.order(), false);
    for (std::size_t i = 0; i < g.order(); ++i) {
        if (done[i])
            continue;
        std::set<std::size_t> orbit;
        for (std::size_t k = 0; k < g.order(); ++k) {
            CycloMatrix inv = g.element(g.inverse(k));
            CycloMatrix c = g.element(k) * g.element(i) * inv;
            orbit.insert(*g.index_of(c));
        }
        for (auto o : orbit)
            done[o] = true;
        sizes.insert(orbit.size());
    }
    return sizes;
}

std::vector<Rational> product_series(const std::vector<std::size_t>& degrees, std::size_t order)
{
    std::vector<Rational> s(order + 1, 0);
    s[0] = 1;
    for (auto d : degrees)
        for (std::size_t k = d; k <= order; ++k)
            s[k] += s[k - d];
    return s;
}

} // namespace

TEST(GenerateGroup, SmallExamples)
{
    EXPECT_EQ(group("z2").order(), 2u);
    EXPECT_EQ(group("z5").order(), 5u);
    EXPECT_EQ(group("trivial1").order(), 1u);
    EXPECT_EQ(group("klein4").order(), 4u);
    EXPECT_EQ(group("s4_3d").order(), 24u);
    EXPECT_EQ(group("g3_1_2").order(), 18u);
}

TEST(GenerateGroup, S3PermutationClosureMatchesEnumeration)
{
    auto g = group("s3_3d");
    EXPECT_EQ(g.order(), 6u);
    std::vector<int> p{0, 1, 2};
    do {
        EXPECT_TRUE(g.index_of(permutation_matrix(p, g.conductor())).has_value());
    } while (std::next_permutation(p.begin(), p.end()));
}

TEST(GenerateGroup, ClosedUnderProductsAndInverses)
{
    for (const char* name : {"s3_2d", "klein4", "g3_1_2", "z6"}) {
        auto g = group(name);
        EXPECT_EQ(g.element(0), g.identity());
        for (std::size_t a = 0; a < g.order(); ++a) {
            EXPECT_EQ(g.mul(a, g.inverse(a)), 0u);
            for (std::size_t b = 0; b < g.order(); ++b)
                EXPECT_EQ(g.element(g.mul(a, b)), g.element(a) * g.element(b)) << name;
        }
    }
}

TEST(GenerateGroup, ConductorBecomesExponentMultiple)
{
    auto s3 = group("s3_3d");
    EXPECT_EQ(s3.exponent(), 6u);
    EXPECT_EQ(s3.conductor(), 6u);
    auto s4 = group("s4_3d");
    EXPECT_EQ(s4.conductor(), 12u);
}

TEST(GenerateGroup, Errors)
{
    CycloMatrix shear = CycloMatrix::from_rows({{CyclotomicNumber::one(1), CyclotomicNumber::one(1)},
                                                {CyclotomicNumber::zero(1), CyclotomicNumber::one(1)}});
    EXPECT_THROW(
        {
            try {
                FiniteMatrixGroup::generate(2, 1, {shear}, 50);
            } catch (const DomainError& e) {
                EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
                throw;
            }
        },
        DomainError);
    CycloMatrix singular(1, 1, CyclotomicNumber::zero(1));
    try {
        FiniteMatrixGroup::generate(1, 1, {singular});
        FAIL() << "expected NotInvertible";
    } catch (const DomainError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotInvertible);
    }
}

TEST(GroupFile, MalformedInputs)
{
    EXPECT_THROW(parse_group_descriptor("dim 2\nconductor 1\ngen\n1 ; 0\n"), InputError);
    EXPECT_THROW(parse_group_descriptor("dim 1\ngen\n1\n"), InputError);
    EXPECT_THROW(parse_group_descriptor("dim 1\nconductor 1\n"), InputError);
    EXPECT_THROW(parse_group_descriptor("dim 1\nconductor 1\ngen\n1 ; 2\n"), InputError);
    EXPECT_THROW(parse_group_descriptor("dim x\nconductor 1\ngen\n1\n"), InputError);
    auto d = parse_group_descriptor("# c\ndim 1 # trailing\nconductor 4\ngen\n z^1 \n");
    EXPECT_EQ(d.generators.size(), 1u);
}

TEST(ConjugacyClasses, Examples)
{
    EXPECT_EQ(conjugacy_classes(group("z2")).size(), 2u);
    auto z5 = conjugacy_classes(group("z5"));
    EXPECT_EQ(z5.size(), 5u);
    for (const auto& c : z5)
        EXPECT_EQ(c.size(), 1u);

    for (const char* name : {"s3_2d", "s3_3d"}) {
        auto g = group(name);
        auto classes = conjugacy_classes(g);
        std::multiset<std::size_t> sizes;
        for (const auto& c : classes)
            sizes.insert(c.size());
        EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 2, 3}));
        EXPECT_EQ(sizes, brute_force_class_sizes(g));
    }
}

TEST(ConjugacyClasses, PartitionAndCentralizers)
{
    for (const char* name : {"s4_3d", "g3_1_2", "klein4", "s3_3d"}) {
        auto g = group(name);
        auto classes = conjugacy_classes(g);
        std::size_t total = 0;
        std::vector<int> hit(g.order(), 0);
        for (const auto& c : classes) {
            total += c.size();
            EXPECT_EQ(c.size() * c.centralizer_order, g.order());
            for (auto m : c.members)
                ++hit[m];
        }
        EXPECT_EQ(total, g.order());
        EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; }));
        EXPECT_EQ(classes.front().representative, 0u);
    }
    EXPECT_EQ(conjugacy_classes(group("s4_3d")).size(), 5u);
}

TEST(Reflections, Counts)
{
    auto z2 = find_reflections(group("z2"));
    ASSERT_EQ(z2.reflections.size(), 1u);
    EXPECT_EQ(z2.reflections[0].lambda, CyclotomicNumber(2, Rational(-1)));

    EXPECT_EQ(find_reflections(group("s3_3d")).reflections.size(), 3u);
    for (unsigned m = 2; m <= 7; ++m) {
        auto rs = find_reflections(group("z" + std::to_string(m)));
        EXPECT_EQ(rs.reflections.size(), m - 1);
        EXPECT_EQ(rs.hyperplanes.size(), 1u);
    }
    auto g312 = find_reflections(group("g3_1_2"));
    EXPECT_EQ(g312.reflections.size(), 7u);
    EXPECT_EQ(g312.hyperplanes.size(), 5u);
    EXPECT_TRUE(find_reflections(group("z4_rotation")).reflections.empty());
}

TEST(Reflections, RootsCorootsAndEigenvalues)
{
    for (const char* name : {"s3_2d", "s4_3d", "g3_1_2", "z5", "klein4"}) {
        auto g = group(name);
        auto rs = find_reflections(g);
        for (const auto& r : rs.reflections) {
            const auto& s = g.element(r.element);
            // s fixes its hyperplane pointwise
            CycloMatrix form(1, g.dim(), g.zero());
            for (std::size_t j = 0; j < g.dim(); ++j)
                form(0, j) = r.coroot[j];
            for (const auto& v : kernel_basis(form))
                EXPECT_EQ(s.apply(v), v);
            // s(root) = lambda^vee root, lambda^vee = lambda^(-1)
            auto image = s.apply(r.root);
            for (std::size_t i = 0; i < g.dim(); ++i)
                EXPECT_EQ(image[i], r.root_eigenvalue * r.root[i]);
            EXPECT_EQ(r.lambda * r.root_eigenvalue, g.one());
            EXPECT_NE(r.lambda, g.one());
            EXPECT_EQ(pair(r.coroot, r.root), CyclotomicNumber(g.conductor(), Rational(2)));
            EXPECT_EQ(r.lambda.pow(static_cast<long>(g.element_order(r.element))), g.one());
        }
    }
}

TEST(Support, Examples)
{
    auto z2 = group("z2");
    auto s = support_and_rank(z2, find_reflections(z2));
    EXPECT_EQ(s.rank, 1u);
    EXPECT_TRUE(s.fixed_space.empty());

    auto s3 = group("s3_3d");
    auto t = support_and_rank(s3, find_reflections(s3));
    EXPECT_EQ(t.rank, 2u);
    EXPECT_EQ(t.fixed_space.size(), 1u);
    EXPECT_TRUE(t.direct_sum);

    auto triv = group("trivial1");
    EXPECT_EQ(support_and_rank(triv, find_reflections(triv)).rank, 0u);
}

TEST(Irreducible, Examples)
{
    EXPECT_TRUE(is_irreducible(group("z2")).irreducible);
    auto s3n = is_irreducible(group("s3_3d"));
    EXPECT_FALSE(s3n.irreducible);
    // characters (3,1,1,1,0,0): (9 + 1 + 1 + 1)/6 = 2
    EXPECT_EQ(s3n.inner_product, 2);
    EXPECT_TRUE(is_irreducible(group("s3_2d")).irreducible);
    EXPECT_EQ(is_irreducible(group("klein4")).inner_product, 2);
}

TEST(MolienDegrees, Examples)
{
    for (unsigned m = 2; m <= 7; ++m)
        EXPECT_EQ(molien_degrees(group("z" + std::to_string(m))), (std::vector<std::size_t>{m}));
    EXPECT_EQ(molien_degrees(group("s3_2d")), (std::vector<std::size_t>{2, 3}));
    EXPECT_EQ(molien_degrees(group("trivial1")), (std::vector<std::size_t>{1}));
    EXPECT_EQ(molien_degrees(group("s4_3d")), (std::vector<std::size_t>{2, 3, 4}));
    EXPECT_EQ(molien_degrees(group("g3_1_2")), (std::vector<std::size_t>{3, 6}));
    EXPECT_EQ(molien_degrees(group("s3_3d")), (std::vector<std::size_t>{1, 2, 3}));
}

TEST(MolienDegrees, SeriesMatchesClosedForm)
{
    // 1/((1 - t^2)(1 - t^3)) = 1, 0, 1, 1, 1, 1, 2, ...
    auto series = molien_series(group("s3_2d"), 6);
    EXPECT_EQ(series, (std::vector<Rational>{1, 0, 1, 1, 1, 1, 2}));
    EXPECT_EQ(molien_series(group("s4_3d"), 12), product_series({2, 3, 4}, 12));
}

TEST(MolienDegrees, NonReflectionGroupRejected)
{
    try {
        molien_degrees(group("z4_rotation"));
        FAIL() << "expected NotReflectionGroup";
    } catch (const DomainError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotReflectionGroup);
    }
}

TEST(MolienDegrees, ShephardToddIdentities)
{
    for (const char* name : {"z2", "z3", "z7", "s3_2d", "s4_3d", "g3_1_2", "klein4"}) {
        auto g = group(name);
        auto degrees = molien_degrees(g);
        std::size_t product = 1, excess = 0;
        for (auto d : degrees) {
            product *= d;
            excess += d - 1;
        }
        EXPECT_EQ(product, g.order()) << name;
        EXPECT_EQ(excess, find_reflections(g).reflections.size()) << name;
    }
}

TEST(CoxeterNumber, Examples)
{
    auto s3 = group("s3_2d");
    EXPECT_EQ(coxeter_number(s3, find_reflections(s3)), 3u);
    for (unsigned m = 2; m <= 7; ++m) {
        auto g = group("z" + std::to_string(m));
        EXPECT_EQ(coxeter_number(g, find_reflections(g)), m);
    }
    auto g312 = group("g3_1_2");
    EXPECT_EQ(coxeter_number(g312, find_reflections(g312)), 6u);
    auto s4 = group("s4_3d");
    EXPECT_EQ(coxeter_number(s4, find_reflections(s4)), 4u);
    auto rot = group("z4_rotation");
    EXPECT_EQ(coxeter_number(rot, find_reflections(rot)), 0u);
    auto z3 = group("z3");
    auto z3z2 = direct_product(z3, group("trivial1"));
    // N = 2, N* = 1 on C^2
    try {
        coxeter_number(z3z2, find_reflections(z3z2));
        FAIL() << "expected NonIntegral";
    } catch (const DomainError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonIntegral);
    }
}

TEST(WellGenerated, Examples)
{
    for (unsigned m = 2; m <= 7; ++m) {
        auto g = group("z" + std::to_string(m));
        auto wg = is_well_generated(g, find_reflections(g));
        EXPECT_TRUE(wg.well_generated);
        ASSERT_EQ(wg.witness.size(), 1u);
        EXPECT_EQ(g.element_order(wg.witness[0]), m);
    }
    auto s3 = group("s3_2d");
    auto wg = is_well_generated(s3, find_reflections(s3));
    EXPECT_TRUE(wg.well_generated);
    EXPECT_EQ(wg.witness.size(), 2u);
    EXPECT_EQ(s3.subgroup(wg.witness).size(), 6u);

    auto klein = group("klein4");
    EXPECT_TRUE(is_well_generated(klein, find_reflections(klein)).well_generated);
    auto rot = group("z4_rotation");
    EXPECT_FALSE(is_well_generated(rot, find_reflections(rot)).well_generated);
    auto g312 = group("g3_1_2");
    EXPECT_TRUE(is_well_generated(g312, find_reflections(g312)).well_generated);
}

TEST(RegularElements, Examples)
{
    auto z5 = group("z5");
    auto rs5 = find_reflections(z5);
    auto reg = find_regular_element(z5, rs5, 5);
    ASSERT_TRUE(reg.has_value());
    EXPECT_EQ(z5.element_order(reg->element), 5u);

    auto s3 = group("s3_2d");
    auto rs = find_reflections(s3);
    auto r3 = find_regular_element(s3, rs, 3);
    ASSERT_TRUE(r3.has_value());
    EXPECT_EQ(s3.element_order(r3->element), 3u);
    for (const auto& form : rs.hyperplanes)
        EXPECT_FALSE(pair(form, r3->eigenvector).is_zero());
    EXPECT_FALSE(find_regular_element(s3, rs, 5).has_value());
}

TEST(CoxeterElement, Examples)
{
    auto z7 = group("z7");
    auto c7 = find_coxeter_element(z7, find_reflections(z7));
    EXPECT_EQ(c7.coxeter_number, 7u);
    EXPECT_EQ(z7.element_order(c7.element), 7u);

    auto s3 = group("s3_2d");
    auto c = find_coxeter_element(s3, find_reflections(s3));
    EXPECT_EQ(s3.element_order(c.element), 3u);
    auto spectrum = eigenvalue_spectrum(s3, c.element);
    ASSERT_EQ(spectrum.size(), 2u);
    EXPECT_EQ(spectrum[0], std::make_pair(frac(1, 3), std::size_t{1}));
    EXPECT_EQ(spectrum[1], std::make_pair(frac(2, 3), std::size_t{1}));

    auto s4 = group("s4_3d");
    auto c4 = find_coxeter_element(s4, find_reflections(s4));
    EXPECT_EQ(c4.coxeter_number, 4u);
    EXPECT_EQ(s4.element_order(c4.element), 4u);
    EXPECT_TRUE(kernel_basis(minus_identity(s4.element(c4.element), s4.one())).empty());

    auto g312 = group("g3_1_2");
    auto c6 = find_coxeter_element(g312, find_reflections(g312));
    EXPECT_EQ(g312.element_order(c6.element), 6u);
}

TEST(CoxeterElement, HypothesisViolated)
{
    for (const char* name : {"s3_3d", "klein4", "z4_rotation"}) {
        auto g = group(name);
        try {
            find_coxeter_element(g, find_reflections(g));
            FAIL() << name;
        } catch (const DomainError& e) {
            EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolated);
        }
    }
}

TEST(Decomposition, Examples)
{
    auto klein = group("klein4");
    auto d = decompose_reflection_group(klein, find_reflections(klein));
    EXPECT_TRUE(d.fixed_space.empty());
    ASSERT_EQ(d.components.size(), 2u);
    EXPECT_EQ(d.components[0].subspace.size(), 1u);
    EXPECT_EQ(d.components[1].subspace.size(), 1u);
    EXPECT_TRUE(d.verified);

    auto s3 = group("s3_3d");
    auto e = decompose_reflection_group(s3, find_reflections(s3));
    EXPECT_EQ(e.fixed_space.size(), 1u);
    ASSERT_EQ(e.components.size(), 1u);
    EXPECT_EQ(e.components[0].subspace.size(), 2u);
    EXPECT_TRUE(e.verified);

    for (const char* name : {"s4_3d", "g3_1_2", "z5"}) {
        auto g = group(name);
        auto f = decompose_reflection_group(g, find_reflections(g));
        EXPECT_EQ(f.components.size(), 1u) << name;
        EXPECT_TRUE(f.verified) << name;
    }
}

TEST(Decomposition, ProductOfIrreducibles)
{
    auto g = direct_product(group("s3_2d"), group("z3"));
    auto d = decompose_reflection_group(g, find_reflections(g));
    ASSERT_EQ(d.components.size(), 2u);
    std::multiset<std::size_t> dims{d.components[0].subspace.size(), d.components[1].subspace.size()};
    EXPECT_EQ(dims, (std::multiset<std::size_t>{1, 2}));
    EXPECT_TRUE(d.verified);
}

TEST(Stabilizer, PointOnMirror)
{
    auto s3 = group("s3_3d");
    auto one = CyclotomicNumber::one(1);
    auto two = CyclotomicNumber(1, Rational(2));
    EXPECT_EQ(s3.stabilizer({one, one, one}).size(), 6u);
    EXPECT_EQ(s3.stabilizer({one, one, two}).size(), 2u);
    EXPECT_EQ(s3.stabilizer({one, two, CyclotomicNumber(1, Rational(3))}).size(), 1u);
}

TEST(Report, S3TwoDim)
{
    auto rep = analyze_group(group("s3_2d"));
    EXPECT_EQ(rep.order, 6u);
    EXPECT_EQ(rep.reflections, 3u);
    EXPECT_EQ(rep.hyperplanes, 3u);
    ASSERT_TRUE(rep.degrees.has_value());
    EXPECT_EQ(*rep.degrees, (std::vector<std::size_t>{2, 3}));
    EXPECT_EQ(rep.coxeter_number, std::optional<std::size_t>(3));
    EXPECT_TRUE(rep.well_generated);
    EXPECT_TRUE(rep.coxeter_element.has_value());

    auto nat = analyze_group(group("s3_3d"));
    ASSERT_TRUE(nat.degrees.has_value());
    EXPECT_EQ(*nat.degrees, (std::vector<std::size_t>{2, 3}));
    EXPECT_EQ(nat.fixed_dim, 1u);
}
