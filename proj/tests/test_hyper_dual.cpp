#include <doctest.h>

#include <cmath>

#include "fkm/hyper_dual.hpp"

using fkm::HyperDual;

namespace {

template <class T>
T sample_fn(const T& x, const T& y) {
  using std::exp, std::log, std::pow, std::sin, std::sqrt, std::cos;
  return sin(x) * exp(y) / (1.0 + x * x) + sqrt(2.0 + y) * pow(x * x + 1.0, 1.5) + log(3.0 + x * y) - cos(x * y);
}

}  // namespace

TEST_CASE("hyper-dual value and first derivatives match central differences") {
  const double x = 0.3, y = -0.4, h = 1e-5;
  const HyperDual hx(x, 1.0, 1.0, 0.0), hy(y);
  const HyperDual r = sample_fn(hx, hy);
  CHECK(r.v == doctest::Approx(sample_fn(x, y)).epsilon(1e-15));

  const double fd = (sample_fn(x + h, y) - sample_fn(x - h, y)) / (2 * h);
  CHECK(std::abs(r.d1 - fd) < 1e-8);
  CHECK(r.d1 == r.d2);
  const double fd2 = (sample_fn(x + h, y) - 2 * sample_fn(x, y) + sample_fn(x - h, y)) / (h * h);
  CHECK(std::abs(r.d12 - fd2) < 1e-4);
}

TEST_CASE("mixed partial from seeding two variables") {
  const double x = 0.7, y = 0.2, h = 1e-4;
  const HyperDual r = sample_fn(HyperDual(x, 1.0, 0.0, 0.0), HyperDual(y, 0.0, 1.0, 0.0));
  const double fxy = (sample_fn(x + h, y + h) - sample_fn(x + h, y - h) - sample_fn(x - h, y + h) +
                      sample_fn(x - h, y - h)) /
                     (4 * h * h);
  CHECK(std::abs(r.d12 - fxy) < 1e-6);
}

TEST_CASE("elementary identities are exact") {
  const HyperDual x(1.3, 1.0, 1.0, 0.0);
  const HyperDual one = sin(x) * sin(x) + cos(x) * cos(x);
  CHECK(std::abs(one.v - 1.0) < 1e-15);
  CHECK(std::abs(one.d1) < 1e-15);
  CHECK(std::abs(one.d12) < 1e-15);

  const HyperDual e = log(exp(x));
  CHECK(std::abs(e.d1 - 1.0) < 1e-15);
  CHECK(std::abs(e.d12) < 1e-14);

  const HyperDual q = x / x;
  CHECK(std::abs(q.d1) < 1e-15);
  CHECK(std::abs(q.d12) < 1e-15);

  // d^2/dx^2 x^3 = 6x
  const HyperDual c = pow(x, 3.0);
  CHECK(c.d12 == doctest::Approx(6 * 1.3));
}

TEST_CASE("comparisons look at the value only") {
  CHECK(HyperDual(1.0, 5.0, 0.0, 0.0) == HyperDual(1.0));
  CHECK(HyperDual(-2.0, 1.0, 0.0, 0.0) < HyperDual(0.0));
  CHECK(abs(HyperDual(-2.0, 1.0, 1.0, 3.0)).d1 == -1.0);
}
