#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "floerkit/bordered.hpp"

using namespace fk;
using namespace fk::torus;

namespace {

TypeD load_d(const std::string& n) { return typed_from_json(read_json(data_path("bordered/" + n + ".json")), ""); }
TypeA load_a(const std::string& n) { return typea_from_json(read_json(data_path("bordered/" + n + ".json")), ""); }

std::vector<std::pair<std::string, TypeA>> probes() {
  return {{"trivial1", load_a("trivial1")},
          {"trivial2", load_a("trivial2")},
          {"iota1.A", free_a_module(1)},
          {"iota2.A", free_a_module(2)}};
}

}  // namespace

TEST_CASE("torus algebra") {
  std::string why;
  CHECK_MESSAGE(check_algebra(&why), why);
  CHECK(mul(R1, R2) == R12);
  CHECK(mul(R2, R1) == -1);
  CHECK(mul(R3, R2) == -1);
  CHECK(mul(I1, R1) == R1);
  CHECK(mul(I2, R1) == -1);
  CHECK(mul(R12, R3) == R123);
  CHECK(parse("rho23") == R23);
  CHECK_THROWS_AS(parse("rho31"), std::invalid_argument);
}

TEST_CASE("modules") {
  TypeD m0 = load_d("M0"), m1 = load_d("M1"), k = load_d("K");
  for (auto* d : {&m0, &m1, &k}) {
    CHECK(structure_ok(*d));
    CHECK(idempotents_ok(*d, *d, d->delta));
  }
  CHECK(coef_str(k.delta.at({0, 0})) == "rho23 U");
  CHECK(coef_str(m1.delta.at({m1.index("a"), m1.index("b")})) == "rho2");
  CHECK(to_json(typed_from_json(to_json(k))) == to_json(k));
  for (auto& [n, a] : probes()) {
    std::string why;
    CHECK_MESSAGE(ainf_ok(a, &why), n << ": " << why);
  }
}

TEST_CASE("box tensor") {
  TypeA t1 = load_a("trivial1");
  FreeComplex c = box(t1, load_d("M0"));
  CHECK(c.size() == 1);
  CHECK(c.d.is_zero());
  // iota2.A box K: iota2|x -> rho23|x U
  FreeComplex f = box(free_a_module(2), load_d("K"));
  CHECK(f.size() == 2);
  CHECK(ring_invariants(f).free_rank == 0);
  REQUIRE(ring_invariants(f).torsion.size() == 1);
  CHECK(ring_invariants(f).torsion[0] == Poly::var(Field::F2, 1, 0));
}

TEST_CASE("unbounded module") {
  TypeA s = solid_torus_module(5);
  std::string why;
  CHECK_MESSAGE(ainf_ok(s, &why), why);
  TypeA bad = s;
  bad.m.erase({0, {R3, R23, R2}});
  CHECK(!ainf_ok(bad, &why));
  try {
    box(s, load_d("K"));
    CHECK(false);
  } catch (const Divergent& e) {
    CHECK(e.witness == "x -> x via rho23");
  }
  CHECK(box(s, load_d("M1")).size() == 1);
}

TEST_CASE("surgery cone") {
  ConeData c = cone_data(load_d("M0"), load_d("M1"), load_d("K"));
  BorderedReport r = bordered_verify(c, probes());
  CHECK(r.algebra);
  CHECK(r.phi_cycles);
  const Transcription& d = r.displayed;
  CHECK(d.idempotents);
  CHECK(d.dd);
  CHECK(d.pi_cycle);
  REQUIRE(d.solutions.size() == 1);
  CHECK(coef_str(d.solutions[0]) == "rho2");  // c = 1
  CHECK(d.pi_i);
  CHECK(d.i_pi);
  CHECK(d.pairing);
  CHECK(d.consistent());
  CHECK(!r.naive.consistent());
  CHECK(!r.naive.idempotents);
  CHECK(!r.naive.pi_cycle);
  CHECK(!r.naive.pairing);
  CHECK(r.chosen() == "displayed");
  CHECK(r.ok());
  // the rank-1 pairing: k[U] from iota2, nothing from iota1
  CHECK(ring_invariants(box(load_a("trivial2"), d.cone)).str() == ring_invariants(box(load_a("trivial2"), c.k)).str());
  CHECK(ring_invariants(box(load_a("trivial2"), c.k)).free_rank == 1);
  CHECK(ring_invariants(box(load_a("trivial1"), d.cone)).free_rank == 0);
  CHECK(ring_invariants(box(load_a("trivial1"), d.cone)).torsion.empty());
  RingInvariants nv = ring_invariants(box(load_a("trivial1"), r.naive.cone));
  REQUIRE(nv.torsion.size() == 1);
  CHECK(nv.torsion[0] == Poly::var(Field::F2, 1, 0));
}

TEST_CASE("bypass map") {
  CHECK(f2_bypass(1) == 0);
  CHECK(f2_bypass(3) == 2);
  CHECK(f2_bypass(0) == -1);
  for (Field f : {Field::F2, Field::Q}) {
    FreeComplex c = bypass_cone(f);
    CHECK(validate(c).ok());
    CHECK(homology_over_ring(c).str() == "Free(h=0, A=0)");
    // Cone(U : k[U] -> k[U]) is k[U]/U
    FreeComplex u(f, 1, {{"p", 1, {-1}}, {"q", 0, {0}}});
    u.set_d(1, 0, Poly::var(f, 1, 0));
    CHECK(homology_over_ring(u).str() == "Torsion(h=0, A=0, order=1)");
  }
}

TEST_CASE("bypass triangle") {
  for (std::string n : {"unknot", "trefoil", "trefoil_f2", "hopf"}) {
    FreeComplex c = load_complex(data_path("complexes/" + n + ".cx"));
    if (c.arity != 1) continue;
    TriangleReport r = bypass_triangle(c);
    CHECK_MESSAGE(r.ok(), n << ": " << r.why);
  }
  FreeComplex tre = load_complex(data_path("complexes/trefoil.cx"));
  int hat = 0;
  for (auto& n : bypass_triangle(tre).nodes) hat += n.dim_q;
  CHECK(hat == 3);
  FreeComplex acyc(Field::Q, 1, {{"a", 1, {0}}, {"b", 0, {0}}});
  acyc.set_d(1, 0, acyc.one());
  TriangleReport r = bypass_triangle(acyc);
  CHECK(r.ok());
  for (auto& n : r.nodes) CHECK(n.dim_c + n.dim_q == 0);
}
