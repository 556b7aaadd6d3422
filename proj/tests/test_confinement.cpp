#include <random>

#include <gtest/gtest.h>

#include "dpint/confinement.hpp"
#include "support.hpp"

using namespace dpint;

TEST(ConfinementResidualsTest, ClosedFormConditions) {
    auto fam = CoefficientFamily::parse("j - 3", "j^2", "j");
    auto r = confinement_residuals(fam, 2);
    EXPECT_EQ(r[0], BigRational(0));   // a_3
    EXPECT_EQ(r[1], BigRational(2));   // c_4 - c_2
    EXPECT_EQ(r[2], BigRational(2));   // b_4 - 2 b_3 + b_2 = 16 - 18 + 4
}

TEST(ConfinementTest, ConfinedFamilyHasExpectedValuations) {
    auto fam = CoefficientFamily::parse("0", "j", "1");
    for (long j0 : {1L, 2L, 7L, -3L}) {
        auto rep = confinement_test(fam, j0);
        EXPECT_EQ(rep.laurent_verdict, LaurentVerdict::confined) << j0;
        EXPECT_TRUE(rep.residuals_vanish());
        EXPECT_TRUE(rep.cross_check_ok());
        // eps, pole of order 2, simple zero, then finite nonzero values
        EXPECT_EQ(rep.orbit_valuations[0], 1);
        EXPECT_EQ(rep.orbit_valuations[1], -2);
        EXPECT_EQ(rep.orbit_valuations[2], 1);
        EXPECT_EQ(rep.orbit_valuations[3], 0);
        EXPECT_EQ(rep.orbit_valuations[4], 0);
    }
}

TEST(ConfinementTest, EachPerturbationBreaksConfinement) {
    struct Case {
        const char *a, *b, *c;
        int component;
    };
    for (const Case& t : {Case{"1", "j", "1", 0}, Case{"0", "j", "j", 1}, Case{"0", "j^2", "1", 2}}) {
        auto rep = confinement_test(CoefficientFamily::parse(t.a, t.b, t.c), 3);
        EXPECT_EQ(rep.laurent_verdict, LaurentVerdict::unconfined) << t.a << "," << t.b << "," << t.c;
        for (int i = 0; i < 3; ++i) EXPECT_EQ(rep.residuals[static_cast<std::size_t>(i)].is_zero(), i != t.component);
        EXPECT_TRUE(rep.cross_check_ok());
    }
}

TEST(ConfinementTest, NarrowWindowIsIndeterminate) {
    auto fam = CoefficientFamily::parse("0", "j", "1");
    auto rep = confinement_test(fam, 2, 1);  // retried at window 2, still too narrow
    EXPECT_EQ(rep.laurent_verdict, LaurentVerdict::indeterminate);
    EXPECT_EQ(rep.window_used, 2u);
    EXPECT_TRUE(rep.cross_check_ok());
    EXPECT_EQ(confinement_test(fam, 2, 3).laurent_verdict, LaurentVerdict::confined);
}

TEST(ConfinementTest, SeriesVerdictAgreesWithResidualsOnRandomFamilies) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
        CoefficientFamily fam = testgen::random_family(rng);
        for (long j0 = 1; j0 <= 3; ++j0) {
            if (fam.c_at(j0).is_zero()) continue;
            auto rep = confinement_test(fam, j0);
            EXPECT_TRUE(rep.cross_check_ok()) << fam.a().to_string("j") << " | " << fam.b().to_string("j") << " | "
                                              << fam.c().to_string("j") << " at " << j0;
        }
    }
}

TEST(ConfinementScanTest, RecoversDiscretePainleveParameters) {
    auto scan = confinement_scan(CoefficientFamily::parse("0", "3*j+1", "2"), 2, 50);
    ASSERT_EQ(scan.verdict.form, EquationForm::dP1);
    ASSERT_TRUE(scan.verdict.parameters.has_value());
    EXPECT_EQ(scan.verdict.parameters->A, BigRational(3));
    EXPECT_EQ(scan.verdict.parameters->B, BigRational(1));
    EXPECT_EQ(scan.verdict.parameters->C, BigRational(2));
    EXPECT_EQ(scan.reports.size(), 49u);
}

TEST(ConfinementScanTest, IdentitiesDetectEachPerturbation) {
    auto s1 = confinement_scan(CoefficientFamily::parse("1", "j", "1"), 2, 6);
    EXPECT_EQ(s1.verdict.form, EquationForm::not_dP1);
    EXPECT_FALSE(s1.identities.a_vanishes);
    auto s2 = confinement_scan(CoefficientFamily::parse("0", "j", "j"), 2, 6);
    EXPECT_FALSE(s2.identities.c_two_periodic);
    EXPECT_TRUE(s2.identities.b_second_difference_vanishes);
    auto s3 = confinement_scan(CoefficientFamily::parse("0", "j^2", "1"), 2, 6);
    EXPECT_FALSE(s3.identities.b_second_difference_vanishes);
    EXPECT_EQ(s3.verdict.form, EquationForm::not_dP1);
}

TEST(ConfinementScanTest, SkipsZerosOfCAndRejectsEmptyRange) {
    auto scan = confinement_scan(CoefficientFamily::parse("0", "j", "j - 5"), 2, 8);
    EXPECT_EQ(scan.skipped, std::vector<long>{5});
    EXPECT_EQ(scan.verdict.form, EquationForm::not_dP1);
    EXPECT_THROW(confinement_scan(CoefficientFamily::parse("0", "j", "1"), 3, 2), DomainError);
}
