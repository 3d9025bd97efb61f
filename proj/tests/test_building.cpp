#include <set>

#include "btq/building.h"
#include "doctest.h"

using namespace btq;

namespace {
Building rational_building(int q, int s) {
  const Fq& F = Fq::get(q);
  std::vector<Place> ps = {Place::infinity(F)};
  for (auto& p : monic_irreducibles(F, 1))
    if (static_cast<int>(ps.size()) < s) ps.push_back(Place::finite(p));
  return Building(ps);
}
}  // namespace

TEST_CASE("vertex links") {
  Building B2 = rational_building(2, 2);
  auto L = vertex_link(B2, B2.base());
  CHECK(L.count(0) == 6);
  CHECK(L.count(1) == 9);
  CHECK(L.simplicial().counts() == std::vector<int>{6, 9});
  Building B1 = rational_building(2, 1);
  CHECK(vertex_link(B1, B1.base()).count(1) == 0);
  Building B3 = rational_building(2, 3);
  CHECK(vertex_link(B3, B3.base()).count(2) == 27);
  CHECK(vertex_link(B3, B3.base()).simplicial().counts() == std::vector<int>{9, 27, 27});
}

TEST_CASE("balls") {
  Building B1 = rational_building(2, 1);
  CHECK(building_ball(B1, B1.base(), 0).counts() == std::vector<int>{1});
  CHECK(building_ball(B1, B1.base(), 2).counts() == std::vector<int>{10, 9});
  Building B2 = rational_building(2, 2);
  auto K = building_ball(B2, B2.base(), 1);
  CHECK(K.counts() == std::vector<int>{7, 6});
  for (int s = 1; s <= 3; ++s) {
    Building B = rational_building(s == 3 ? 2 : 3, s);
    for (int r = 0; r <= 2; ++r) {
      auto ball = building_ball(B, B.base(), r);
      auto C = ball.chain_complex();  // throws if not face-closed
      CHECK(C.is_complex());
      auto H = C.homology_all();
      CHECK(H[0].str() == "Z");
      for (size_t k = 1; k < H.size(); ++k) CHECK(H[k].is_zero());
      // cubes are determined by their corner sets
      std::set<std::set<BuildingVertex>> seen;
      for (auto& layer : ball.cubes)
        for (auto& c : layer) {
          auto cs = c.corners();
          std::set<BuildingVertex> st(cs.begin(), cs.end());
          CHECK(st.size() == cs.size());
          CHECK(seen.insert(st).second);
          for (auto& v : cs) CHECK(B.distance(B.base(), v) <= r);
        }
    }
  }
}

TEST_CASE("apartments and antipodes") {
  for (int s = 1; s <= 5; ++s) {
    auto H = apartment_link(s).chain_complex().homology_all();
    REQUIRE(static_cast<int>(H.size()) == s);
    for (int k = 0; k < s; ++k) {
      std::string expect = (k == 0 || k == s - 1) ? "Z" : "0";
      if (s == 1) expect = "Z^2";
      CHECK(H[k].str() == expect);
    }
  }
  CHECK(apartment_link(2).counts() == std::vector<int>{4, 4});
  CHECK(groups_str(antipodal_quotient(1).cells.homology()) == "(Z)");
  CHECK(groups_str(antipodal_quotient(2).cells.homology()) == "(Z, Z)");
  auto rp2 = antipodal_quotient(3);
  CHECK(!rp2.subdivided);
  CHECK(groups_str(rp2.cells.homology()) == "(Z, Z/2, 0)");
  // the standard RP^2 cell structure: one cell per dimension, d2 = 2, d1 = 0
  ChainComplex std_rp2({1, 1, 1});
  std_rp2.d[2].add(0, 0, 2);
  std_rp2.d[2].finalize();
  CHECK(groups_str(std_rp2.homology_all()) == groups_str(rp2.cells.homology()));
  CHECK(groups_str(antipodal_quotient(4).cells.homology()) == "(Z, Z/2, 0, Z)");
}

TEST_CASE("quotient of an edge by its flip subdivides") {
  auto K = SimplicialComplex::from_facets(2, {{0, 1}});
  auto Q = quotient_by_involution(K, {1, 0});
  CHECK(Q.subdivided);
  CHECK(Q.cells.counts == std::vector<int>{2, 1});
  CHECK(groups_str(Q.cells.homology()) == "(Z, 0)");
}
