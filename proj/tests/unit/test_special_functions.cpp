#include <random>

#include "meinardus/errors.hpp"
#include "meinardus/special_functions.hpp"
#include "support.hpp"

using namespace meinardus;
using testing_support::R;

TEST(Gamma, SmallValues)
{
    EXPECT_CLOSE(gamma(Real(1)), Real(1), -55);
    EXPECT_CLOSE(gamma(Real(4)), Real(6), -55);
    EXPECT_CLOSE(gamma(Real("0.5")), sqrt(pi()), -55);
    EXPECT_CLOSE(gamma(Real(1) / 3), R("2.6789385347077476336556929409746776441286893779573011009504283276"), -55);
    EXPECT_CLOSE(gamma(Real(7) / 2), R("3.323350970447842551184064031264647217745405230229475865400889606"), -55);
    EXPECT_CLOSE(gamma(Real(1) / 100), R("99.432585119150603713532988870510743354529525445430931688018093732"), -55);
    EXPECT_CLOSE(gamma(Real(25)), R("620448401733239439360000"), -55);
}

TEST(Gamma, LogGammaLargeArgument)
{
    EXPECT_CLOSE(log_gamma(Real(201) / 2), R("361.43554046777762155525191270252076285877883524722184753697971666"), -55);
}

TEST(Gamma, RejectsNonPositive)
{
    EXPECT_THROW(gamma(Real(0)), DomainError);
    EXPECT_THROW(gamma(Real(-2.5)), DomainError);
}

TEST(Gamma, RecurrenceOnRandomPoints)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.01, 10.0);
    for (int i = 0; i < 100; ++i) {
        Real x = dist(rng);
        EXPECT_CLOSE(gamma(x + 1), x * gamma(x), -50);
    }
}

TEST(Zeta, KnownValues)
{
    EXPECT_CLOSE(zeta(Real(2)), pi() * pi() / 6, -55);
    EXPECT_EQ(zeta(Real(0)), Real(-0.5));
    EXPECT_CLOSE(zeta(Real(-1)), Real(-1) / 12, -55);
    EXPECT_EQ(zeta(Real(-4)), Real(0));
    EXPECT_CLOSE(zeta(Real(3)), R("1.2020569031595942853997381615114499907649862923404988817922715553"), -55);
    EXPECT_CLOSE(zeta(Real(-7)), Real(1) / 240, -55);
}

TEST(Zeta, NonIntegerArguments)
{
    EXPECT_CLOSE(zeta(Real("0.5")), R("-1.4603545088095868128894991525152980124672293310125814905428860878"), -55);
    EXPECT_CLOSE(zeta(Real("-0.5")), R("-0.20788622497735456601730672539704930222626853128767253761011355711"), -55);
    EXPECT_CLOSE(zeta(Real("1.5")), R("2.6123753486854883433485675679240716305708006524000634075733282488"), -55);
    EXPECT_CLOSE(zeta(Real("-1.5")), R("-0.025485201889833035949542986910704745469024984600972996834645498349"), -55);
    EXPECT_CLOSE(zeta(Real("-2.5")), R("0.0085169287778503305423585670283444869362759902200744777658888549519"), -55);
    EXPECT_CLOSE(zeta(Real("0.3")), R("-0.90455925725398399000787615183372386495250456694680194859451439969"), -55);
    EXPECT_CLOSE(zeta(Real("7.25")), R("1.0069722090257466993993737132585357159579672816707077267399435574"), -55);
    EXPECT_CLOSE(zeta(Real("-20.5")), R("-108.21747505877605540482714192885790597703271194681949738402737425"), -50);
}

TEST(Zeta, PoleAtOne)
{
    EXPECT_THROW(zeta(Real(1)), PoleError);
}

TEST(Zeta, FunctionalEquationConsistency)
{
    for (const char* x : {"-0.5", "-1.5", "-2.5"}) {
        Real direct = detail::zeta_euler_maclaurin(Real(x));
        Real reflected = detail::zeta_reflected(Real(x));
        EXPECT_CLOSE(direct, reflected, -40) << x;
    }
}

TEST(ZetaPrime, ClassicalIdentities)
{
    EXPECT_CLOSE(zeta_prime(Real(0)), -log(2 * pi()) / 2, -30);
    const Real lnA("0.24875447703378426254725299357611397609736971366853511699985563969");
    EXPECT_CLOSE(zeta_prime(Real(-1)), Real(1) / 12 - lnA, -30);
    EXPECT_CLOSE(zeta_prime(Real(-2)), -zeta(Real(3)) / (4 * pi() * pi()), -30);
}

TEST(ZetaPrime, FractionalAndPositiveArguments)
{
    EXPECT_CLOSE(zeta_prime(Real("-0.5")), R("-0.36085433959994760734742080636395106588485278791863221081437628128"), -30);
    EXPECT_CLOSE(zeta_prime(Real("-1.5")), R("-0.076309255320550886620318998025505755182071589285259695634538143259"), -30);
    EXPECT_CLOSE(zeta_prime(Real("0.5")), R("-3.9226461392091517274715314467145995137303239715065052095682984853"), -30);
    EXPECT_CLOSE(zeta_prime(Real(2)), R("-0.93754825431584375370257409456786497789786028861482992588543348036"), -30);
}

TEST(Bernoulli, SmallIndices)
{
    EXPECT_EQ(bernoulli(0), Rational(1));
    EXPECT_EQ(bernoulli(1), Rational(-1, 2));
    EXPECT_EQ(bernoulli(2), Rational(1, 6));
    EXPECT_EQ(bernoulli(3), Rational(0));
    EXPECT_EQ(bernoulli(12), Rational(-691, 2730));
    EXPECT_EQ(bernoulli(20), Rational(-174611, 330));
    EXPECT_EQ(zeta_nonpositive_integer(0), Rational(-1, 2));
    EXPECT_EQ(zeta_nonpositive_integer(1), Rational(-1, 12));
    EXPECT_EQ(zeta_nonpositive_integer(3), Rational(1, 120));
}

TEST(Precision, HigherDigitsTighterValues)
{
    ScopedDigits guard(120);
    EXPECT_CLOSE(zeta(Real(2)), pi() * pi() / 6, -115);
    EXPECT_CLOSE(gamma(Real("0.5")), sqrt(pi()), -115);
}
