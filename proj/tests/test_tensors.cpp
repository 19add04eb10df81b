#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "floerkit/random.hpp"
#include "floerkit/tensors.hpp"

using namespace fk;

TEST_CASE("free factors") {
  FreeComplex u = load_complex(data_path("complexes/unknot.cx"));
  DerivedTensor d = derived_tensor(u, u);
  CHECK(validate(d.cx).ok());
  CHECK(derived_module(d).str() == "Free(h=0, A=0)");
  FreeComplex tre = load_complex(data_path("complexes/trefoil.cx"));
  CHECK(derived_module(derived_tensor(u, tre)) == homology_over_ring(tre));
  CHECK(derived_module(derived_tensor(tre, u)) == homology_over_ring(tre));
  CHECK(three_way_check(u, u).ok());
}

TEST_CASE("torsion with torsion gives Tor0 and Tor1") {
  FreeComplex c = load_complex(data_path("complexes/cone_u.cx"));
  GradedModule m = derived_module(derived_tensor(c, c));
  // k[U]/U in adjacent homological degrees
  REQUIRE(m.summands.size() == 2);
  CHECK(!m.summands[0].free);
  CHECK(!m.summands[1].free);
  CHECK(std::abs(m.summands[0].h - m.summands[1].h) == 1);
  CHECK(m == homology_over_ring(tensor_ring(c, c)));
  auto [lo, hi] = alex_window(derived_tensor(c, c).cx, 2);
  CHECK(u_actions_agree(derived_tensor(c, c).cx, lo, hi));
}

TEST_CASE("acyclic factor") {
  FreeComplex c(Field::Q, 1, {{"a", 1, {0}}, {"b", 0, {0}}});
  c.set_d(1, 0, c.one());
  FreeComplex tre = load_complex(data_path("complexes/trefoil.cx"));
  ThreeWay r = three_way_check(c, tre);
  CHECK(r.ok());
  CHECK(r.dims[0].empty());
  CHECK(r.dims[1].empty());
}

TEST_CASE("Lambda bimodule") {
  CHECK(lambda_dd_ok(Field::Q));
  CHECK(lambda_dd_ok(Field::F2));
  FreeComplex u = load_complex(data_path("complexes/unknot.cx"));
  FreeComplex l = lambda_box(u, u);
  REQUIRE(l.size() == 2);
  CHECK(l.d.at(1, 0) == Poly::var(Field::Q, 2, 0) - Poly::var(Field::Q, 2, 1));
  CHECK(l.d.column(1).empty());
  std::mt19937 rng(2);
  for (int it = 0; it < 10; ++it) {
    Field f = it % 2 ? Field::Q : Field::F2;
    FreeComplex a = random_complex(f, 4, rng), b = random_complex(f, 4, rng);
    std::string why;
    CHECK_MESSAGE(lambda_box_matches(a, b, &why), why);
    CHECK(validate(lambda_box(a, b)).ok());
  }
}

TEST_CASE("random three-way agreement") {
  std::mt19937 rng(17);
  for (int it = 0; it < 20; ++it) {
    Field f = it % 2 ? Field::Q : Field::F2;
    FreeComplex a = random_complex(f, 4, rng), b = random_complex(f, 4, rng);
    ThreeWay r = three_way_check(a, b);
    CHECK_MESSAGE(r.ok(), r.why);
  }
}
