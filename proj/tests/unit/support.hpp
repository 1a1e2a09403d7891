#ifndef MEINARDUS_TEST_SUPPORT_HPP
#define MEINARDUS_TEST_SUPPORT_HPP

#include <string>

#include <gtest/gtest.h>

#include "meinardus/real.hpp"

namespace testing_support {

using meinardus::Real;

inline Real rel_err(const Real& got, const Real& want)
{
    if (want == 0)
        return abs(got);
    return abs(got - want) / abs(want);
}

inline Real tol(int exponent)
{
    return pow(Real(10), exponent);
}

inline ::testing::AssertionResult close(const Real& got, const Real& want, int exponent)
{
    if (rel_err(got, want) <= tol(exponent))
        return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "got " << meinardus::format_real(got, 30) << " want "
                                         << meinardus::format_real(want, 30) << " (tol 1e" << exponent << ")";
}

inline Real R(const char* text)
{
    return Real(text);
}

} // namespace testing_support

#define EXPECT_CLOSE(got, want, exp10) EXPECT_TRUE(testing_support::close((got), (want), (exp10)))

#endif
