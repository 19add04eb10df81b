#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "floerkit/random.hpp"

using namespace fk;

TEST_CASE("trefoil module matches the oracle") {
  FreeComplex c = load_complex(data_path("complexes/trefoil.cx"));
  CHECK(validate(c).ok());
  json o = read_json(data_path("oracles/trefoil.json"));
  GradedModule m = homology_over_ring(c);
  CHECK(m == module_from_oracle(o["summands"]));
  CHECK(m.str() == "Free(h=0, A=-1) + Torsion(h=0, A=1, order=1)");
  CHECK(homology_over_field(c) == dims_from_oracle(o["hat"]));
  CHECK(homology_over_ring(load_complex(data_path("complexes/trefoil_f2.cx"))) == m);
  CHECK(homology_over_ring(load_complex(data_path("complexes/unknot.cx"))).str() == "Free(h=0, A=0)");
}

TEST_CASE("validation witnesses") {
  auto d2 = validate(load_complex(data_path("complexes/bad_d2.cx")));
  CHECK(d2.has("d2", "a", "c"));
  auto al = validate(load_complex(data_path("complexes/bad_grading.cx")));
  CHECK(al.has("alex", "a", "b"));
  auto hg = validate(load_complex(data_path("complexes/bad_hgrading.cx")));
  CHECK(hg.has("hgrading", "a", "b"));
  try {
    load_complex(data_path("complexes/bad_syntax.cx"));
    FAIL("accepted a malformed file");
  } catch (const InputError& e) {
    CHECK(e.where == "generators[0].h");
  }
}

TEST_CASE("json round trip") {
  FreeComplex c = load_complex(data_path("complexes/hopf.cx"));
  FreeComplex c2 = complex_from_json(to_json(c));
  CHECK(to_json(c2) == to_json(c));
  CHECK(c2.d == c.d);
}

TEST_CASE("module complexes resolve their modules") {
  GradedModule m;
  m.summands = {{true, 0, -1, 0}, {false, 2, 1, 2}, {false, -1, 0, 1}};
  m.canonicalize();
  for (Field f : {Field::F2, Field::Q}) {
    FreeComplex c = module_complex(m, f);
    CHECK(validate(c).ok());
    CHECK(homology_over_ring(c) == m);
    GradedView v(c);
    CHECK(module_from_ranks(homology_table(v, -6, 3), rank_table(v, 0, 9, -6, 3), -6, 3) == m);
  }
}

TEST_CASE("random complexes: cone, shift, tensor, reductions") {
  std::mt19937 rng(7);
  for (int it = 0; it < 40; ++it) {
    Field f = it % 2 ? Field::Q : Field::F2;
    FreeComplex c = random_complex(f, 5, rng);
    REQUIRE(validate(c).ok());
    SDR s = sdr(c);
    std::string why;
    CHECK_MESSAGE(check_sdr(c, s, &why), why);
    CHECK(homology_over_ring(c) == homology_over_ring(s.H));
    GradedModule m = homology_over_ring(c);
    GradedView v(c);
    CHECK(module_from_ranks(homology_table(v, -12, 6), rank_table(v, 0, 18, -12, 6), -12, 6) == m);
    CHECK(validate(shift(c, 3)).ok());
    FreeComplex d = random_complex(f, 3, rng);
    CHECK(validate(tensor_ring(c, d)).ok());
    FreeComplex hat = specialize_zero(c);
    CHECK(validate(tensor_field(hat, specialize_zero(d))).ok());
    // cone of the identity is acyclic, cone of U is c / U
    ChainMap id = identity_map(c);
    CHECK(is_cycle(id));
    CHECK(homology_over_ring(cone(id)).summands.empty());
    ChainMap u = id;
    u.m = id.m.mul_poly(Poly::var(f, 1, 0));
    u.ashift = {-1};
    CHECK(is_cycle(u));
    FreeComplex cu = cone(u);
    CHECK(validate(cu).ok());
    CHECK(homology_over_ring(cu).free_rank() == 0);
  }
}

TEST_CASE("ring invariants ignore the grading") {
  FreeComplex c = load_complex(data_path("complexes/trefoil.cx"));
  RingInvariants r = ring_invariants(c);
  CHECK(r.free_rank == 1);
  REQUIRE(r.torsion.size() == 1);
  CHECK(r.torsion[0] == Poly::var(Field::Q, 1, 0));
}
