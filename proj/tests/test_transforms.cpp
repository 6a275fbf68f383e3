#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>

#include "heun/transforms.hpp"

using namespace heun;

namespace {

// Interior sample of lambda x for each case.
std::vector<double> interior_xi(const CoordinateCase& cc, int n) {
  double lo = cc.xi_min, hi = cc.xi_max;
  if (cc.kind == DomainKind::FullLine) lo = -12.0;
  if (!std::isfinite(hi)) hi = lo + 14.0;
  std::vector<double> out;
  for (int i = 1; i <= n; ++i) out.push_back(lo + (hi - lo) * i / (n + 1.0));
  return out;
}

} // namespace

TEST(Cases, TableShape) {
  int zero = 0;
  for (CaseId id : kAllCases) {
    const auto cc = coordinate_case(id);
    EXPECT_EQ(parse_case(cc.name).id, id);
    EXPECT_EQ(case_from_ab(cc.a, cc.b).id, id);
    zero += cc.zero_energy_only;
  }
  EXPECT_EQ(zero, 2);
  EXPECT_TRUE(coordinate_case(CaseId::HalfThreeHalves).zero_energy_only);
  EXPECT_TRUE(coordinate_case(CaseId::ZeroThreeHalves).zero_energy_only);
  EXPECT_THROW(case_from_ab(1.0, 0.5), UnsupportedError);
  EXPECT_THROW(parse_case("2,2"), DomainError);
}

TEST(YOfX, Examples) {
  EXPECT_DOUBLE_EQ(y_of_x(coordinate_case(CaseId::OneOne), 1.0, 0.0), 0.5);
  EXPECT_NEAR(y_of_x(coordinate_case(CaseId::HalfHalf), 2.0, 0.25 * std::numbers::pi), 1.0, 1e-16);
  EXPECT_NEAR(y_of_x(coordinate_case(CaseId::HalfOne), 1.0, std::log(3.0)), 0.25, 1e-15);
  EXPECT_NEAR(y_of_x(coordinate_case(CaseId::ZeroOne), 0.5, 4.0), 1.0 - std::exp(-2.0), 1e-15);
}

TEST(YOfX, DomainErrors) {
  EXPECT_THROW(y_of_x(coordinate_case(CaseId::HalfHalf), 1.0, 2.0), DomainError);
  EXPECT_THROW(y_of_x(coordinate_case(CaseId::HalfOne), 1.0, -0.1), DomainError);
  EXPECT_THROW(y_of_x(coordinate_case(CaseId::ZeroThreeHalves), 1.0, 1.0), DomainError);
  EXPECT_THROW(y_of_x(coordinate_case(CaseId::OneOne), 0.0, 1.0), DomainError);
}

TEST(XOfY, Examples) {
  EXPECT_NEAR(x_of_y(coordinate_case(CaseId::ZeroOne), 1.0, 1.0 - std::exp(-2.0)), 2.0, 1e-14);
  EXPECT_NEAR(x_of_y(coordinate_case(CaseId::HalfHalf), 1.0, 0.25), -std::numbers::pi / 6.0, 1e-15);
  EXPECT_NEAR(x_of_y_integral(coordinate_case(CaseId::HalfHalf), 1.0, 0.25), -std::numbers::pi / 6.0, 1e-14);
  EXPECT_TRUE(std::isinf(x_of_y(coordinate_case(CaseId::OneOne), 1.0, 0.0)));
  EXPECT_TRUE(std::isinf(x_of_y(coordinate_case(CaseId::HalfOne), 1.0, 1.0)));
  EXPECT_EQ(x_of_y(coordinate_case(CaseId::ZeroThreeHalves), 2.0, 0.0), 1.0);
}

TEST(XOfY, RoundTripAndMonotone) {
  for (CaseId id : kAllCases) {
    const auto cc = coordinate_case(id);
    const double lambda = 1.7;
    double prev = -1.0;
    for (double xi : interior_xi(cc, 100)) {
      const double x = xi / lambda;
      const double y = y_of_x(cc, lambda, x);
      EXPECT_GE(y, 0.0);
      EXPECT_LE(y, 1.0);
      EXPECT_GT(y, prev) << cc.name;
      prev = y;
      if (y > 1e-12 && y < 1.0 - 1e-12) EXPECT_LT(std::abs(x_of_y(cc, lambda, y) - x), 1e-10 * (1.0 + std::abs(x)));
    }
  }
}

TEST(XOfY, IntegralRepresentationMatchesClosedForms) {
  for (CaseId id : kAllCases) {
    const auto cc = coordinate_case(id);
    for (double y : {0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
      const double a = x_of_y(cc, 1.0, y);
      const double b = x_of_y_integral(cc, 1.0, y);
      EXPECT_NEAR(a, b, 1e-11 * (1.0 + std::abs(a))) << cc.name << " y=" << y;
    }
  }
}

TEST(XOfY, AntiderivativeByQuadrature) {
  boost::math::quadrature::tanh_sinh<double> ts;
  for (CaseId id : kAllCases) {
    const auto cc = coordinate_case(id);
    auto g = [&](double t) { return std::pow(t, -cc.a) * std::pow(1.0 - t, -cc.b); };
    for (auto [y1, y2] : {std::pair{0.1, 0.4}, std::pair{0.3, 0.8}, std::pair{0.05, 0.95}}) {
      const double I = ts.integrate(g, y1, y2);
      const double dx = x_of_y(cc, 1.0, y2) - x_of_y(cc, 1.0, y1);
      EXPECT_NEAR(dx, I, 1e-9 * (1.0 + std::abs(I))) << cc.name;
    }
  }
}

TEST(DyDx, Values) {
  EXPECT_EQ(dy_dx(coordinate_case(CaseId::HalfOne), 2.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(dy_dx(coordinate_case(CaseId::OneOne), 3.0, 0.5), 0.75);
}

TEST(DyDx, MatchesFiniteDifference) {
  for (CaseId id : kAllCases) {
    const auto cc = coordinate_case(id);
    const double lambda = 1.3;
    for (double xi : interior_xi(cc, 100)) {
      const double x = xi / lambda;
      const double h = 1e-5 * std::max(1.0, std::abs(x));
      const double fd = (y_of_x(cc, lambda, x + h) - y_of_x(cc, lambda, x - h)) / (2.0 * h);
      const double y = y_of_x(cc, lambda, x);
      EXPECT_NEAR(dy_dx(cc, lambda, y), fd, 1e-8) << cc.name << " xi=" << xi;
    }
  }
}

TEST(DyDx, SecondDerivativeByFiniteDifference) {
  for (CaseId id : kAllCases) {
    const auto cc = coordinate_case(id);
    for (double xi : interior_xi(cc, 10)) {
      const double h = 1e-4;
      const double fd = (y_of_x(cc, 1.0, xi + h) - 2.0 * y_of_x(cc, 1.0, xi) + y_of_x(cc, 1.0, xi - h)) / (h * h);
      EXPECT_NEAR(d2y_dx2(cc, 1.0, y_of_x(cc, 1.0, xi)), fd, 1e-6) << cc.name;
    }
  }
}

TEST(YPoint, ComplementWithoutCancellation) {
  const auto cc = coordinate_case(CaseId::ZeroOne);
  const YPoint p = y_point(cc, 1.0, 35.0);
  EXPECT_NEAR(p.ym / std::exp(-35.0), 1.0, 1e-14);
  const auto c11 = coordinate_case(CaseId::OneOne);
  const YPoint q = y_point(c11, 1.0, 40.0);
  EXPECT_NEAR(q.ym / (1.0 / (1.0 + std::exp(40.0))), 1.0, 1e-14);
}
