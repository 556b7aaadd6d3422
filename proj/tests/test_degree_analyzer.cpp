#include <cmath>

#include <gtest/gtest.h>

#include "dpint/degree_analyzer.hpp"
#include "dpint/expr.hpp"
#include "dpint/height_analyzer.hpp"

using namespace dpint;

namespace {

QFunc fz(const char* s) { return parse_expression(s, "z"); }
const QFunc kOne(1);
const QFunc kZ = QFunc(QPoly::variable(BigRational(1)));

// Reference degree sequences from an independent computer-algebra run
// (sympy, rational functions over QQ), seeds y_0 = 1, y_1 = z.
const std::vector<long> kNonIntegrable{0, 1, 2, 4, 10, 24, 56, 132, 312, 736, 1736, 4096};
const std::vector<long> kConfined{0, 1, 2, 5, 8, 13, 18, 25, 32, 41, 50, 61, 72, 85, 98, 113, 128, 145};
const std::vector<long> kMixed{0, 1, 2, 4, 10, 24, 58, 140, 338};

}  // namespace

TEST(FieldOrbitTest, NonIntegrableDegrees) {
    auto fam = CoefficientFamily::parse("1", "0", "1");
    auto orbit = iterate_field(fam, kOne, kZ, 9);
    EXPECT_EQ(orbit.degrees, std::vector<long>(kNonIntegrable.begin(), kNonIntegrable.begin() + 11));
    EXPECT_TRUE(verify_step_identity(fam, orbit));
    EXPECT_EQ(orbit.last_index(), 10);
}

TEST(FieldOrbitTest, ConfinedDegreesGrowQuadratically) {
    auto fam = CoefficientFamily::parse("0", "j", "1");
    auto orbit = iterate_field(fam, kOne, kZ, 16);
    EXPECT_EQ(orbit.degrees, kConfined);
    EXPECT_TRUE(verify_step_identity(fam, orbit));
}

TEST(FieldOrbitTest, RationalCoefficientsDegrees) {
    auto fam = CoefficientFamily::parse("j", "1/(j+1)", "j^2+1");
    auto orbit = iterate_field(fam, kOne, kZ, 7);
    EXPECT_EQ(orbit.degrees, kMixed);
}

TEST(FieldOrbitTest, ZeroIterateIsSingular) {
    // y_2 = 1 + 1/z^2 - y_0 = 0 identically
    auto fam = CoefficientFamily::parse("1", "0", "1");
    EXPECT_NO_THROW(iterate_field(fam, fz("1 + 1/z^2"), kZ, 1));
    try {
        iterate_field(fam, fz("1 + 1/z^2"), kZ, 2);
        FAIL();
    } catch (const SingularOrbitError& e) {
        EXPECT_EQ(e.index(), 2);
    }
}

TEST(FieldOrbitTest, ZeroStepsKeepsSeeds) {
    auto orbit = iterate_field(CoefficientFamily::parse("1", "0", "1"), kOne, kZ, 0);
    EXPECT_EQ(orbit.degrees, (std::vector<long>{0, 1}));
    EXPECT_THROW(iterate_field(CoefficientFamily::parse("1", "0", "1"), kOne, kZ, -1), DomainError);
}

TEST(FieldOrbitTest, SpecializationCommutesWithIteration) {
    auto fam = CoefficientFamily::parse("0", "j", "1");
    auto orbit = iterate_field(fam, kOne, kZ, 8);
    // reference values of the orbit at z = 2 (independent computation)
    const std::vector<const char*> ref{"1",   "2",      "-1/4",      "6",           "7/9",
                                       "39/49", "1197/169", "2080/29241", "7397289/25600", "-81282080/1871341081"};
    auto q = iterate_rationals(fam, 0, BigRational(1), BigRational(2), 8);
    for (std::size_t i = 0; i < ref.size(); ++i) {
        EXPECT_EQ(orbit.iterates[i].eval(BigRational(2)), BigRational::parse(ref[i]));
        EXPECT_EQ(q.iterates[i], BigRational::parse(ref[i]));
    }
}

TEST(CumulativeDegreeTest, RunningSums) {
    EXPECT_EQ(cumulative_degree(std::vector<long>{0, 1, 2, 4}), (std::vector<long>{0, 1, 3, 7}));
    EXPECT_TRUE(cumulative_degree(std::vector<long>{}).empty());
}

TEST(EntropyTest, NonIntegrableTailSlope) {
    // reference slope: least squares of log d_j over j = 6..11 (numpy.polyfit)
    auto e = entropy_estimate(0, kNonIntegrable);
    EXPECT_EQ(e.tail_first, 6);
    EXPECT_EQ(e.tail_last, 11);
    EXPECT_NEAR(e.slope, 0.858568863678347, 1e-12);
    EXPECT_NEAR(e.endpoint_slope, 0.858482895196839, 1e-12);
    EXPECT_GT(e.slope, std::log(1.25));
    EXPECT_EQ(e.cumulative.back(), 7109);
}

TEST(EntropyTest, RejectsShortOrConstantWindows) {
    EXPECT_THROW(entropy_over(0, kNonIntegrable, 9, 11), DomainError);
    EXPECT_THROW(entropy_over(0, kNonIntegrable, 0, 5), DomainError);
    EXPECT_THROW(entropy_estimate(0, kNonIntegrable, 0.0), DomainError);
    EXPECT_NO_THROW(entropy_over(0, kNonIntegrable, 1, 4));
}

TEST(EntropyTest, ConfinedSlopeDecreases) {
    auto early = entropy_over(0, kConfined, 5, 10).slope;
    auto late = entropy_over(0, kConfined, 12, 17).slope;
    EXPECT_GT(early, late);
    EXPECT_LT(late, 0.15);
}

TEST(LocalOrderTest, PatternAtZero) {
    auto orbit = iterate_field(CoefficientFamily::parse("1", "0", "1"), kOne, kZ, 9);
    auto trace = local_order_trace(orbit, ProjectivePoint<BigRational>::at(BigRational(0)));
    const std::vector<long> ref{0, 1, -2, 0, -2, 1, -2, 0, -2, 1, -2};
    ASSERT_EQ(trace.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(trace[i], ref[i]) << i;
}

TEST(LocalOrderTest, ConfinedSingularityClosesAfterThreeSteps) {
    // reference orders from the same computer-algebra run: the zero of y_1
    // produces a pole and a zero, after which every iterate is regular at 0
    auto orbit = iterate_field(CoefficientFamily::parse("0", "j", "1"), kOne, kZ, 10);
    auto trace = local_order_trace(orbit, ProjectivePoint<BigRational>::at(BigRational(0)));
    const std::vector<long> ref{0, 1, -2, 1, 0, 0, 0, 0, 0, 0, 0, 0};
    ASSERT_EQ(trace.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(trace[i], ref[i]) << i;
}

TEST(EntropyTest, SyntheticSequences) {
    std::vector<long> geometric, square;
    for (long j = 0; j <= 30; ++j) {
        geometric.push_back(1L << j);
        square.push_back(j * j);
    }
    EXPECT_NEAR(entropy_over(0, geometric, 5, 30).slope, std::log(2.0), 1e-12);
    EXPECT_NEAR(entropy_estimate(0, geometric).endpoint_slope, std::log(2.0), 1e-12);
    // d_j = j^2 over [10, 30]: least-squares slope 0.10624367431447075 (numpy.polyfit);
    // the slope of 2 log j decays only like 2/j
    const double s = entropy_over(0, square, 10, 30).slope;
    EXPECT_NEAR(s, 0.10624367431447075, 1e-12);
    EXPECT_LT(entropy_over(0, square, 25, 30).slope, s);
}

TEST(ModularDegreesTest, AgreesWithExactIteration) {
    struct Case {
        const char *a, *b, *c;
        long steps;
    };
    for (const Case& t : {Case{"1", "0", "1", 9}, Case{"0", "j", "1", 16}, Case{"j", "1/(j+1)", "j^2+1", 7}}) {
        auto fam = CoefficientFamily::parse(t.a, t.b, t.c);
        EXPECT_EQ(degrees_modular(fam, kOne, kZ, t.steps), iterate_field(fam, kOne, kZ, t.steps).degrees);
    }
}

TEST(ModularDegreesTest, ReachesLongerOrbits) {
    auto fam = CoefficientFamily::parse("1", "0", "1");
    EXPECT_EQ(degrees_modular(fam, kOne, kZ, 10), kNonIntegrable);
    auto fam2 = CoefficientFamily::parse("0", "j", "1");
    auto d = degrees_modular(fam2, kOne, kZ, 30);
    EXPECT_EQ(std::vector<long>(d.begin(), d.begin() + 18), kConfined);
    // second differences of the confined degrees are bounded
    for (std::size_t i = 2; i < d.size(); ++i) EXPECT_LE(std::abs(d[i] - 2 * d[i - 1] + d[i - 2]), 4);
}

TEST(ModularDegreesTest, SingularSeedIsReported) {
    EXPECT_THROW(degrees_modular(CoefficientFamily::parse("1", "0", "1"), kOne, QFunc(), 3), SingularOrbitError);
    EXPECT_THROW(degrees_modular(CoefficientFamily::parse("1/(j-2)", "0", "1"), kOne, kZ, 3), PoleError);
}
