#include "btq/curve.h"
#include "doctest.h"

using namespace btq;

namespace {
// independent point count via the quadratic character (odd prime q, a1 = a3 = 0)
long long count_points(int q, int a2, int a4, int a6) {
  long long n = 1;
  for (long long x = 0; x < q; ++x) {
    long long r = ((x * x % q * x + a2 * x % q * x + a4 * x + a6) % q + q) % q;
    long long sols = 0;
    for (long long y = 0; y < q; ++y) sols += (y * y % q == r);
    n += sols;
  }
  return n;
}

PicData synthetic(std::vector<long long> tors) {
  PicData p;
  p.pic.torsion = tors;
  return p;
}
}  // namespace

TEST_CASE("closed points") {
  CurveConfig b2;
  b2.q = 2;
  auto pts = enumerate_closed_points(b2, 2);
  int d1 = 0, d2 = 0;
  for (auto& p : pts) (p.degree == 1 ? d1 : d2)++;
  CHECK(d1 == 3);
  CHECK(d2 == 1);
  CurveConfig b3;
  b3.q = 3;
  CHECK(enumerate_closed_points(b3, 1).size() == 4);
  auto E = elliptic_config(5, {0, 0, 0, -1, 0}, {"O"});
  auto epts = enumerate_closed_points(E, 2);
  long long n1 = 0, n2 = 0;
  for (auto& p : epts) (p.degree == 1 ? n1 : n2)++;
  CHECK(n1 == count_points(5, 0, -1, 0));
  // |E(F_25)| = |E(F_5)| + 2 * (number of degree-2 points)
  EllipticCurve E25 = E.curve.extend(2);
  CHECK(static_cast<long long>(E25.points().size()) == n1 + 2 * n2);
}

TEST_CASE("nagata on P1") {
  auto a = nagata(p1_config(3, {"t", "inf"}));
  CHECK(a.pic.is_zero());
  CHECK(a.unit_rank == 1);
  CHECK(a.exact);
  auto b = nagata(p1_config(3, {"t^2+1"}));
  CHECK(b.pic.str() == "Z/2");
  CHECK(b.unit_rank == 0);
  CHECK(b.exact);
  for (auto& cfg : {p1_config(2, {"t", "t+1", "inf"}), p1_config(2, {"t^2+t+1", "inf"}), p1_config(5, {"t^2+2", "t^2+3"}),
                    p1_config(5, {"t", "t^2+2"})}) {
    auto p = nagata(cfg);
    CHECK(p.exact);
    CHECK(p.unit_rank == cfg.s() - 1);
  }
  CHECK(nagata(p1_config(5, {"t^2+2", "t^2+3"})).pic.str() == "Z/2");
}

TEST_CASE("nagata on elliptic curves") {
  for (auto& a : std::vector<std::vector<int>>{{0, 0, 0, -1, 0}, {0, 0, 0, 1, 1}}) {
    auto c = elliptic_config(5, a, {"O"});
    auto p = nagata(c);
    CHECK(p.exact);
    CHECK(p.unit_rank == 0);
    ECGroup G = ECGroup::compute(c.curve);
    CHECK(p.pic == G.abstract());
    CHECK(p.pic.order() == count_points(5, a[1], a[3], a[4]));
    for (auto& pts : std::vector<std::vector<std::string>>{{"O", "1:1"}, {"1:1", "1:2"}, {"O", "2:0"}, {"2:0"}}) {
      auto c2 = elliptic_config(5, a, pts);
      auto p2 = nagata(c2);
      INFO(c2.str());
      for (auto& line : p2.exactness_report) INFO(line);
      CHECK(p2.exact);
      CHECK(p2.unit_rank == c2.s() - 1);
      CHECK(p2.pic.order() == p2.degree_gcd * p2.pic0.order());
    }
  }
}

TEST_CASE("kummer sets") {
  CHECK(kummer(synthetic({3})).orbits.size() == 2);
  CHECK(kummer(synthetic({2})).orbits.size() == 2);
  CHECK(kummer(synthetic({8})).orbits.size() == 5);
  for (auto t : std::vector<std::vector<long long>>{{}, {2, 4}, {3, 6}, {5}, {2, 2, 2}}) {
    auto K = kummer(synthetic(t));
    long long n = synthetic(t).pic.order(), fixed = K.fixed_points();
    CHECK(static_cast<long long>(K.orbits.size()) * 2 == n + fixed);
  }
  PicData inf;
  inf.pic.free_rank = 1;
  CHECK_THROWS(kummer(inf));
}

TEST_CASE("units") {
  auto u = units_group(p1_config(3, {"t", "inf"}));
  REQUIRE(u.size() == 1);
  CHECK(u[0].function == "t");
  auto u3 = units_group(p1_config(3, {"t", "t-1", "inf"}));
  REQUIRE(u3.size() == 2);
  auto u2 = units_group(p1_config(3, {"t^2+1", "inf"}));
  REQUIRE(u2.size() == 1);
  CHECK(u2[0].function == "t^2+1");
  CHECK(u2[0].divisor == std::vector<long long>{1, -2});

  // valuations vanish away from the punctures
  auto check_support = [](const CurveConfig& c) {
    auto us = units_group(c);
    auto all = enumerate_closed_points(c, 2);
    for (auto& un : us)
      for (auto& P : all) {
        bool punct = false;
        for (size_t i = 0; i < c.punctures.size(); ++i)
          if (c.punctures[i].label == P.label) {
            punct = true;
            CHECK(unit_valuation(c, un, P) == un.divisor[i]);
          }
        if (!punct) CHECK(unit_valuation(c, un, P) == 0);
      }
    return us.size();
  };
  CHECK(check_support(p1_config(3, {"t^2+1", "inf"})) == 1);
  CHECK(check_support(p1_config(5, {"t", "t+1", "t^2+2"})) == 2);
  CHECK(check_support(elliptic_config(5, {0, 0, 0, -1, 0}, {"O", "0,0"})) == 1);
  CHECK(check_support(elliptic_config(5, {0, 0, 0, 1, 1}, {"O", "1:1", "1:2"})) == 2);
  CHECK(check_support(elliptic_config(5, {0, 0, 0, -1, 0}, {"O", "2:0"})) == 1);
  CHECK_THROWS_WITH(units_group(elliptic_config(5, {0, 0, 0, 1, 1}, {"O", "1:1"}), 2), "unit not found within bound");
}
