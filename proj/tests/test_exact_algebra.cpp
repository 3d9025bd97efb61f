#include <random>

#include "btq/homology.h"
#include "btq/ratfunc.h"
#include "doctest.h"

using namespace btq;

namespace {
RatFunc rf(const Fq& F, const std::string& n, const std::string& d = "1") {
  return RatFunc(parse_poly(F, n), parse_poly(F, d));
}

RatFunc random_rf(const Fq& F, std::mt19937& rng, int maxdeg) {
  std::uniform_int_distribution<int> coef(0, F.q - 1), dg(0, maxdeg);
  auto rp = [&](bool nonzero) {
    for (;;) {
      std::vector<int> c(dg(rng) + 1);
      for (auto& x : c) x = coef(rng);
      Poly p(F, c);
      if (!nonzero || !p.is_zero()) return p;
    }
  };
  return RatFunc(rp(true), rp(true));
}
}  // namespace

TEST_CASE("field arithmetic") {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64}) {
    const Fq& F = Fq::get(q);
    for (int a = 0; a < q; ++a) {
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a) CHECK(F.mul(a, F.inv(a)) == 1);
      for (int b = 0; b < q; ++b) CHECK(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
    }
    // generator has order q - 1
    int g = F.generator(), x = g, ord = 1;
    while (x != 1) x = F.mul(x, g), ++ord;
    CHECK(ord == q - 1);
  }
}

TEST_CASE("polynomials over non-prime fields parse in the printed basis") {
  const Fq& F = Fq::get(4);
  Poly p = parse_poly(F, "t^2+a*t+a+1");
  CHECK(p.deg() == 2);
  int a = F.p;  // code of the generator
  CHECK(p.str() == parse_poly(F, p.str()).str());
  CHECK(parse_place(F, "t+a").pi() == parse_poly(F, "t+a"));
  CHECK(F.str(a) == "a");
  CHECK_THROWS(parse_poly(F, "a^2"));
  CHECK_THROWS(parse_poly(Fq::get(3), "t+a"));
}

TEST_CASE("valuations") {
  const Fq& F2 = Fq::get(2);
  CHECK(valuation(rf(F2, "t^3", "t+1"), parse_place(F2, "t")) == 3);
  CHECK(valuation(rf(F2, "t^2+1", "t"), Place::infinity(F2)) == -1);
  CHECK(valuation(rf(F2, "t^2+t+1"), parse_place(F2, "t^2+t+1")) == 1);
  CHECK_THROWS_WITH(valuation(RatFunc(F2) - RatFunc(F2), Place::infinity(F2)), "valuation of zero undefined");

  std::mt19937 rng(7);
  for (int q : {2, 3, 5}) {
    const Fq& F = Fq::get(q);
    std::vector<Place> places = {Place::infinity(F)};
    for (int d = 1; d <= 4; ++d)
      for (auto& p : monic_irreducibles(F, d)) places.push_back(Place::finite(p));
    for (int it = 0; it < 100; ++it) {
      RatFunc f = random_rf(F, rng, 4), g = random_rf(F, rng, 4);
      long long sum = 0;
      for (auto& P : places) {
        CHECK(valuation(f * g, P) == valuation(f, P) + valuation(g, P));
        sum += P.degree() * valuation(f, P);
      }
      CHECK(sum == 0);
    }
  }
}

TEST_CASE("padic expansions") {
  const Fq& F2 = Fq::get(2);
  auto e = padic_expand(rf(F2, "1", "1+t"), parse_place(F2, "t"), 3);
  CHECK(e.start == 0);
  REQUIRE(e.coeffs.size() == 3);
  for (auto& c : e.coeffs) CHECK(c.is_one());
  e = padic_expand(rf(F2, "t"), parse_place(F2, "t"), 3);
  CHECK(e.start == 1);
  CHECK(e.at(1).is_one());
  CHECK(e.at(2).is_zero());
  e = padic_expand(rf(F2, "1", "t"), Place::infinity(F2), 2);
  CHECK(e.start == 1);
  CHECK(e.at(1).is_one());
  CHECK(padic_expand(RatFunc(F2) - RatFunc(F2), Place::infinity(F2), 4).coeffs.empty());
}

TEST_CASE("smith normal form") {
  CHECK(snf(IntMatrix::identity(2)).factors == std::vector<mpz_class>{1, 1});
  CHECK(snf(IntMatrix::from({{2, 4}, {6, 8}})).factors == std::vector<mpz_class>{2, 4});
  CHECK(snf(IntMatrix(3, 3)).factors.empty());
  CHECK(snf(IntMatrix(0, 4)).factors.empty());

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dim(1, 8), ent(-20, 20);
  for (int it = 0; it < 100; ++it) {
    IntMatrix M(dim(rng), dim(rng));
    for (auto& x : M.a) x = ent(rng) * (ent(rng) > 5 ? 0 : 1);
    auto r = snf(M, true);
    IntMatrix D = r.U * M * r.V;
    for (int i = 0; i < D.rows; ++i)
      for (int j = 0; j < D.cols; ++j)
        CHECK(D(i, j) == (i == j && i < r.rank() ? r.factors[i] : 0));
    CHECK(abs(det(r.U)) == 1);
    CHECK(abs(det(r.V)) == 1);
    CHECK(r.V * r.Vinv == IntMatrix::identity(M.cols));
    for (int i = 1; i < r.rank(); ++i) CHECK(r.factors[i] % r.factors[i - 1] == 0);
    auto sp = snf_invariants(SparseMatrix::from_dense(M));
    CHECK(sp == r.factors);
    CHECK(rank_Q(SparseMatrix::from_dense(M)) == r.rank());
  }
}

TEST_CASE("homology of pairs") {
  // 4-cycle
  IntMatrix d1(4, 4);
  for (int e = 0; e < 4; ++e) d1(e, e) = -1, d1((e + 1) % 4, e) = 1;
  CHECK(homology_of_pair(IntMatrix(0, 4), d1).str() == "Z");
  CHECK(homology_of_pair(d1, IntMatrix(4, 0)).str() == "Z");

  IntMatrix two = IntMatrix::from({{2}}), three = IntMatrix::from({{3}});
  CHECK(homology_of_pair(IntMatrix(0, 1), two).str() == "Z/2");
  CHECK(homology_of_pair(IntMatrix(0, 1), two, Coeff::half()).is_zero());
  CHECK(homology_of_pair(IntMatrix(0, 1), three, Coeff::mod(3)).str() == "Z/3");
  CHECK(homology_of_pair(three, IntMatrix(1, 0), Coeff::mod(3)).str() == "Z/3");
  CHECK_THROWS_WITH(homology_of_pair(IntMatrix::from({{1}}), IntMatrix::from({{1}})), "not a complex");
}
