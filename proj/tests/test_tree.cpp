#include <random>
#include <set>
#include <unordered_set>

#include "btq/tree.h"
#include "doctest.h"

using namespace btq;

namespace {
RatFunc P_(const Fq& F, const std::string& s) { return RatFunc(parse_poly(F, s)); }

RatFunc random_unit_scalar(const Fq& F, std::mt19937& rng) {
  std::uniform_int_distribution<int> c(1, F.q - 1), dg(0, 2);
  auto rp = [&] {
    std::vector<int> v(dg(rng) + 1);
    for (auto& x : v) x = c(rng);
    return Poly(F, v);
  };
  return RatFunc(rp(), rp());
}

Mat2 random_mat(const Fq& F, std::mt19937& rng, int deg) {
  std::uniform_int_distribution<int> c(0, F.q - 1), dg(0, deg);
  for (;;) {
    std::array<RatFunc, 4> e;
    for (auto& x : e) {
      std::vector<int> v(dg(rng) + 1), w(dg(rng) + 1);
      for (auto& y : v) y = c(rng);
      for (auto& y : w) y = c(rng);
      Poly den(F, w);
      if (den.is_zero()) den = Poly::constant(F, 1);
      x = RatFunc(Poly(F, v), den);
    }
    Mat2 M(e[0], e[1], e[2], e[3]);
    if (!M.det().is_zero()) return M;
  }
}
}  // namespace

TEST_CASE("canonical coordinates") {
  const Fq& F = Fq::get(2);
  Place P = parse_place(F, "t");
  auto one = P_(F, "1"), zero = one - one, t = P_(F, "t");
  CHECK(canonicalize(Mat2::identity(F), P) == TreeVertex{});
  TreeVertex a = canonicalize({t, one, zero, one}, P), b = canonicalize({t, zero, zero, one}, P);
  CHECK(a.m == 1);
  CHECK(a.u == std::map<int, uint32_t>{{0, 1}});
  CHECK(b.m == 1);
  CHECK(b.u.empty());
  CHECK(a != b);
  CHECK(!matrix_equivalent({t, zero, zero, one}, {t, one, zero, one}, P));
  Mat2 M{t, one, zero, one};
  CHECK(matrix_equivalent(M, t * M, P));
}

TEST_CASE("canonicalize agrees with matrix_equivalent") {
  std::mt19937 rng(3);
  for (int q : {2, 3, 5}) {
    const Fq& F = Fq::get(q);
    std::vector<Place> places = {Place::infinity(F), Place::finite(monic_irreducibles(F, 1)[0])};
    if (q == 2) places.push_back(parse_place(F, "t^2+t+1"));
    for (auto& P : places)
      for (int it = 0; it < 150; ++it) {
        Mat2 M1 = random_mat(F, rng, 2), M2 = it % 3 ? random_mat(F, rng, 2) : random_unit_scalar(F, rng) * M1;
        bool eq = matrix_equivalent(M1, M2, P);
        CHECK(eq == (canonicalize(M1, P) == canonicalize(M2, P)));
        CHECK(canonicalize(random_unit_scalar(F, rng) * M1, P) == canonicalize(M1, P));
        // the canonical matrix represents the same class
        CHECK(matrix_equivalent(canonicalize(M1, P).matrix(P), M1, P));
      }
  }
}

TEST_CASE("links and distances") {
  const Fq& F3 = Fq::get(3);
  Place P3 = parse_place(F3, "t");
  CHECK(link(TreeVertex{}, P3).size() == 4);
  const Fq& F2 = Fq::get(2);
  Place P2 = parse_place(F2, "t");
  auto L = link(TreeVertex{}, P2);
  REQUIRE(L.size() == 3);
  CHECK(L[0] == TreeVertex{1, {}});
  CHECK(L[1] == TreeVertex{1, {{0, 1}}});
  CHECK(L[2] == TreeVertex{-1, {}});
  for (auto& P : {P2, Place::infinity(F2), parse_place(F2, "t^2+t+1")}) {
    auto ball = tree_ball(TreeVertex{}, P, 3);
    for (auto& v : ball) {
      auto Lv = link(v, P);
      std::set<TreeVertex> uniq(Lv.begin(), Lv.end());
      CHECK(uniq.size() == Lv.size());
      for (size_t k = 0; k < Lv.size(); ++k) {
        auto& w = Lv[k];
        CHECK(w.type() != v.type());
        CHECK(distance(v, w) == 1);
        auto back = link(w, P);
        CHECK(std::find(back.begin(), back.end(), v) != back.end());
        CHECK(link_coordinate(v, w, P) == (k + 1 == Lv.size() ? -1 : static_cast<long long>(k)));
        // link directions come from right multiplication by the standard matrices
        Mat2 step = k + 1 == Lv.size() ? Mat2::diag(pi_power(P, -1), P_(F2, "1"))
                                       : Mat2(pi_power(P, 1), digit_term(P, static_cast<uint32_t>(k), 0),
                                              P_(F2, "0"), P_(F2, "1"));
        CHECK(canonicalize(v.matrix(P) * step, P) == w);
      }
    }
  }
  TreeVertex base{}, far{3, {}};
  CHECK(distance(base, base) == 0);
  CHECK(distance(base, far) == 3);
  CHECK(distance_bfs(base, far, P2, 5) == 3);
  auto ball = tree_ball(base, P3, 4);
  for (size_t i = 0; i < ball.size(); i += 7)
    for (size_t j = 0; j < ball.size(); j += 11) {
      CHECK(distance(ball[i], ball[j]) == distance(ball[j], ball[i]));
      CHECK(distance(ball[i], ball[j]) == distance_bfs(ball[i], ball[j], P3, 8));
    }
}

TEST_CASE("ball sizes") {
  for (int q : {2, 3, 4, 5}) {
    const Fq& F = Fq::get(q);
    for (auto& P : {Place::infinity(F), Place::finite(monic_irreducibles(F, 1)[0])})
      for (int r = 0; r <= 4; ++r) {
        long long expect = 1 + (q + 1) * (static_cast<long long>(std::pow(q, r)) - 1) / (q - 1);
        CHECK(static_cast<long long>(tree_ball(TreeVertex{}, P, r).size()) == expect);
      }
  }
}
