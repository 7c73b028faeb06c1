// Comparison helpers for the GoogleTest suites.
#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "lgi/lgi.hpp"
#include "random_inputs.hpp"

namespace lgi::testing {

inline ::testing::AssertionResult near(const JonesMatrix& a, const JonesMatrix& b, double tolerance) {
    const double d = max_abs_diff(a, b);
    if (d <= tolerance) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "max |a - b| = " << d << " > " << tolerance;
}

inline ::testing::AssertionResult near(const CoherencyMatrix& a, const CoherencyMatrix& b, double tolerance) {
    const double d = max_abs_diff(a, b);
    if (d <= tolerance) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "max |a - b| = " << d << " > " << tolerance;
}

}  // namespace lgi::testing
