#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "floerkit/scalars.hpp"

using namespace fk;

TEST_CASE("scalar parsing and arithmetic") {
  Scalar a = Scalar::parse(Field::Qi, "1/2-3/4i");
  CHECK(a.re() == mpq_class(1, 2));
  CHECK(a.im() == mpq_class(-3, 4));
  CHECK((a * a.inv()).is_one());
  CHECK(Scalar::parse(Field::Qi, "2i").str() == "2i");
  CHECK(Scalar(Field::F2, 3).is_one());
  CHECK((Scalar::one(Field::F2) + Scalar::one(Field::F2)).is_zero());
  CHECK_THROWS_AS(Scalar::parse(Field::Q, "1+i"), FieldMismatch);
  CHECK_THROWS_AS(Scalar::zero(Field::Q).inv(), DivisionByZero);
  CHECK_THROWS_AS(Scalar(Field::Q, 1) + Scalar(Field::F2, 1), FieldMismatch);
}

TEST_CASE("polynomials") {
  Poly u = Poly::var(Field::Q, 2, 0), v = Poly::var(Field::Q, 2, 1);
  Poly p = (u + v) * (u - v);
  CHECK(p == u * u - v * v);
  CHECK(!p.is_monomial());
  CHECK(p.alex_degree() == -2);
  CHECK(!(u + u * v).alex_degree().has_value());
  CHECK(u.rescale({Scalar(Field::Q, 3), Scalar(Field::Q, 1)}) == u.scaled(Scalar(Field::Q, 3)));
}

TEST_CASE("dense linear algebra") {
  Mat m(Field::Q, 3, 3);
  long vals[] = {1, 2, 3, 2, 4, 6, 1, 0, 1};
  for (int k = 0; k < 9; ++k) m(k / 3, k % 3) = Scalar(Field::Q, vals[k]);
  CHECK(rank(m) == 2);
  Mat k = kernel(m);
  CHECK(k.cols() == 1);
  CHECK((m * k).is_zero());
  CHECK(!inverse(m).has_value());
  Mat b = m.col_block({0});
  auto x = solve(m, b);
  REQUIRE(x.has_value());
  CHECK(m * *x == b);
  Mat id = Mat::identity(Field::Q, 3);
  CHECK(power(id.scaled(Scalar(Field::Q, 2)), 3) == id.scaled(Scalar(Field::Q, 8)));
}

TEST_CASE("sparse system and polynomial matrices") {
  LinearSystem s(Field::F2);
  int x = s.add_unknown(), y = s.add_unknown();
  s.add_equation({{x, Scalar::one(Field::F2)}, {y, Scalar::one(Field::F2)}}, Scalar::one(Field::F2));
  s.add_equation({{y, Scalar::one(Field::F2)}}, Scalar::one(Field::F2));
  auto sol = s.solve();
  REQUIRE(sol.has_value());
  CHECK((*sol)[x].is_zero());
  CHECK((*sol)[y].is_one());
  s.add_equation({{x, Scalar::one(Field::F2)}}, Scalar::one(Field::F2));
  CHECK(!s.solve().has_value());

  PolyMatrix a = PolyMatrix::identity(Field::Q, 1, 2);
  a.set(0, 1, Poly::var(Field::Q, 1, 0));
  PolyMatrix sq = a * a;
  CHECK(sq.at(0, 1) == Poly::var(Field::Q, 1, 0).scaled(Scalar(Field::Q, 2)));
  CHECK(PolyMatrix::from_dense(Mat::identity(Field::Q, 2)).to_dense() == Mat::identity(Field::Q, 2));
}
