#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "speclen/minkowski.hpp"

using namespace speclen;

TEST_CASE("inner product uses the (+,-,-,-) signature") {
  const FourVector x{1.0, 2.0, 3.0, 4.0};
  const FourVector y{5.0, 6.0, 7.0, 8.0};
  CHECK(inner(x, y) == doctest::Approx(5.0 - 12.0 - 21.0 - 32.0));
  CHECK(norm_sq(x) == doctest::Approx(1.0 - 4.0 - 9.0 - 16.0));
  CHECK(inner(x, y) == inner(y, x));
}

TEST_CASE("classification covers the three causal types") {
  CHECK(classify({1.0, 0.0, 0.0, 0.0}) == CausalType::timelike);
  CHECK(classify({0.0, 1.0, 0.0, 0.0}) == CausalType::spacelike);
  CHECK(classify({1.0, 1.0, 0.0, 0.0}) == CausalType::null);
  CHECK(classify({5.0, 3.0, 0.0, 4.0}) == CausalType::null);
  CHECK(to_string(CausalType::timelike) == "timelike");
  CHECK(to_string(CausalType::spacelike) == "spacelike");
  CHECK(to_string(CausalType::null) == "null");
}

TEST_CASE("classification tolerance scales with the squared components") {
  // |norm_sq| below 1e-9 * max(1, max component^2) counts as null
  CHECK(classify({1.0, std::sqrt(1.0 - 1e-10), 0.0, 0.0}) == CausalType::null);
  const double big = 1e6;
  CHECK(classify_tol({big, big, 0.0, 0.0}) == doctest::Approx(1e-9 * big * big));
  CHECK(classify({big, std::sqrt(big * big - 1.0), 0.0, 0.0}) == CausalType::null);
  CHECK(classify_tol({0.5, 0.1, 0.0, 0.0}) == doctest::Approx(1e-9));
}

TEST_CASE("angle is the arccos of the clamped metric cosine") {
  // orthogonal spacelike pair
  CHECK(angle({0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}) == doctest::Approx(M_PI / 2));
  // the metric cosine of same-direction spacelike vectors is -1
  CHECK(angle({0.0, 2.0, 0.0, 0.0}, {0.0, 5.0, 0.0, 0.0}) == doctest::Approx(M_PI));
  CHECK(angle({0.0, 2.0, 0.0, 0.0}, {0.0, -5.0, 0.0, 0.0}) == doctest::Approx(0.0));
  // self-angle of a timelike vector
  CHECK(angle({2.0, 0.5, 0.0, 0.0}, {2.0, 0.5, 0.0, 0.0}) == doctest::Approx(0.0));
  // boosted timelike pair: cosine 1.25 exceeds 1 and is clamped, so angle 0
  const double g = 1.25;  // gamma factor for v = 0.6
  CHECK(angle({1.0, 0.0, 0.0, 0.0}, {g, g * 0.6, 0.0, 0.0}) == doctest::Approx(0.0));
  // opposite time orientation clamps at -1
  CHECK(angle({1.0, 0.0, 0.0, 0.0}, {-g, g * 0.6, 0.0, 0.0}) == doctest::Approx(M_PI));
  // euclidean 120 degrees between spacelike vectors maps to acos(+1/2)
  const double a = angle({0.0, 1.0, 0.0, 0.0}, {0.0, -0.5, std::sqrt(3.0) / 2, 0.0});
  CHECK(a == doctest::Approx(M_PI / 3).epsilon(1e-12));
}

TEST_CASE("angle rejects null and mixed-type pairs") {
  CHECK_THROWS_AS(angle({1.0, 1.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(angle({1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(angle({0.0, 1.0, 0.0, 0.0}, {2.0, 0.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("proper time squared is the line element in meters squared") {
  // c = 1: tau^2 = dt^2 - dx^2
  CHECK(proper_time_sq(5.0, 3.0, 0.0, 0.0, 1.0) == doctest::Approx(16.0));
  // physical c: (c dt)^2 - |dx|^2
  const double c = 2.99792458e8;
  CHECK(proper_time_sq(1.0, c / 2, 0.0, 0.0, c) == doctest::Approx(0.75 * c * c));
  // a light signal crossing c meters in one second has zero interval
  CHECK(proper_time_sq(1.0, 0.0, c, 0.0, c) == doctest::Approx(0.0));
  // purely spatial displacement is negative
  CHECK(proper_time_sq(0.0, 3.0, 4.0, 0.0, c) == doctest::Approx(-25.0));
}

TEST_CASE("light path length is c dt and requires dt >= 0") {
  CHECK(light_path_length(2.0, 3.0) == doctest::Approx(6.0));
  CHECK(light_path_length(0.0, 3.0) == 0.0);
  const double c = 2.99792458e8;
  // the meter-defining value: distance light covers in 1/299792458 s
  CHECK(light_path_length(1.0 / 299792458.0, c) == doctest::Approx(1.0));
  CHECK_THROWS_AS(light_path_length(-1.0, 3.0), std::invalid_argument);
}

TEST_CASE("metric inverse check vanishes for the exact inverse") {
  CHECK(metric_inverse_check() == 0.0);
  CHECK(metric_inverse_check({1.0, -1.0, -1.0, -1.0}, {1.0, -1.0, -1.0, -1.0}) == 0.0);
  CHECK(metric_inverse_check({2.0, -1.0, -1.0, -1.0}, {0.5, -1.0, -1.0, -1.0}) == 0.0);
  CHECK(metric_inverse_check({2.0, -1.0, -1.0, -1.0}, {1.0, -1.0, -1.0, -1.0}) ==
        doctest::Approx(1.0));
}
