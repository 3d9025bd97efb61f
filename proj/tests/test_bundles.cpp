#include <doctest.h>

#include <random>

#include "btq/bundles.h"

using namespace btq;

TEST_CASE("classify: base and diagonal vertices") {
  for (int q : {2, 3}) {
    auto c = p1_config(q, {"inf"});
    Building B = building_of(c);
    auto b0 = classify_vertex(c, B.base());
    CHECK(b0.n == 0);
    for (int a = 1; a <= 4; ++a) CHECK(classify_vertex(c, a0_vertex(c, {a})).n == a);
  }
}

TEST_CASE("classify is invariant under the group") {
  auto c = p1_config(3, {"t", "inf"});
  Building B = building_of(c);
  auto gens = group_generators(c, GroupFlavor::GL2, 2);
  std::mt19937 rng(7);
  auto ball = building_ball(B, B.base(), 2);
  for (int trial = 0; trial < 20; ++trial) {
    auto& v = ball.cubes[0][rng() % ball.cubes[0].size()].base;
    auto& g = gens[rng() % gens.size()];
    CHECK(classify_vertex(c, v) == classify_vertex(c, B.act(g, v)));
  }
}

TEST_CASE("stabilizer descriptors on the one-puncture line") {
  auto c = p1_config(3, {"inf"});
  auto s0 = stabilizer_descriptor(BundleClass{0, 0, 1}, c);
  CHECK(s0.kind == StabDescriptor::FullGL2k);
  CHECK(s0.order == 8 * 6);
  for (int n : {1, 3}) {
    auto s = stabilizer_descriptor(BundleClass{n, 0, 1}, c);
    CHECK(s.kind == StabDescriptor::TorusUnipotent);
    CHECK(s.h == n + 1);
  }
}

TEST_CASE("Serre ray quotient") {
  for (int q : {2, 3}) {
    auto c = p1_config(q, {"inf"});
    for (int r = 1; r <= (q == 2 ? 5 : 3); ++r) {
      auto Q = quotient_ball(c, r);
      CHECK(Q.counts()[0] == r + 1);
      CHECK(Q.counts()[1] == r);
      for (auto& v : Q.cells[0]) CHECK(!v.ambiguous);
      auto H = Q.chain_complex().homology_all(Coeff{});
      CHECK(H[0].str() == "Z");
      CHECK(H[1].str() == "0");
    }
  }
}

TEST_CASE("vertex orbit oracle agrees with classification") {
  auto c = p1_config(2, {"t", "inf"});
  auto Q = quotient_ball(c, 2);
  auto orbs = vertex_orbits_bfs(c, 2, GroupFlavor::GL2);
  CHECK(orbs.size() == Q.cells[0].size());
  for (auto& o : orbs) {
    auto b = classify_vertex(c, o.front());
    for (auto& v : o) CHECK(classify_vertex(c, v) == b);
  }
}

TEST_CASE("link action trichotomy") {
  auto c = p1_config(3, {"t", "inf"});
  int tested = 0;
  for (int a1 = 0; a1 <= 2; ++a1)
    for (int a2 = 0; a2 <= 2; ++a2)
      for (auto part : {StabPart::Full, StabPart::Torus, StabPart::UnipotentStrict}) {
        auto rep = stabilizer_link_action(c, {a1, a2}, part);
        CHECK(rep.generators_stabilize);
        for (auto& d : rep.directions) {
          CHECK(d.fixed == d.predicted_fixed);
          ++tested;
        }
      }
  CHECK(tested >= 10);
}

TEST_CASE("parabolic components") {
  CHECK(quotient_ball(p1_config(2, {"inf"}), 3).parabolic_components() == 1);
  CHECK(quotient_ball(p1_config(2, {"t", "inf"}), 2).parabolic_components() == 1);
}

TEST_CASE("exact quotient of the two-puncture building") {
  auto Q = quotient_ball(p1_config(2, {"t", "inf"}), 3);
  CHECK(Q.counts() == std::vector<int>{4, 6, 3});
  for (auto& l : Q.cells)
    for (auto& x : l) CHECK(!x.ambiguous);
  // orbits never mix directions
  for (auto& e : Q.cells[1]) CHECK(e.rep.dirs.size() == 1);
  CHECK(groups_str(Q.chain_complex().homology_all(Coeff::parse("Z[1/2]"))) == "(Z, 0, 0)");
}

TEST_CASE("SL2 Serre ray and degree-2 components") {
  auto Q = quotient_ball(p1_config(3, {"inf"}), 4, GroupFlavor::SL2);
  CHECK(Q.counts() == std::vector<int>{5, 4});
  CHECK(Q.cells[0][0].stab.kind != StabDescriptor::CentralOnly);
  auto Q2 = quotient_ball(p1_config(3, {"t^2+1"}), 3);
  CHECK(Q2.parabolic_components() == 2);
  CHECK(Q2.faces_parabolic_closed());
  CHECK_THROWS_AS(quotient_ball(p1_config(3, {"t", "inf"}), 2, GroupFlavor::SL2), std::domain_error);
}
