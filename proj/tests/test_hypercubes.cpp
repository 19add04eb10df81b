#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "floerkit/random.hpp"

using namespace fk;

namespace {

Hypercube square() { return cube_from_json(read_json(data_path("cubes/square.json"))); }

std::vector<Scalar> menu(Field f) {
  if (f == Field::Qi) return {Scalar(f, 1), Scalar(f, 0, 1), Scalar(f, 2, -1)};
  return {Scalar(f, 0), Scalar(f, 1), Scalar(f, -2)};
}

}  // namespace

TEST_CASE("bundled square") {
  Hypercube h = square();
  CHECK(validate_cube(h).ok());
  FreeComplex t = total(h);
  CHECK(validate(t).ok());
  CHECK(homology_over_field(t).empty());
  Hypercube edge = restrict_cube(h, "1*");
  CHECK(edge.n == 1);
  CHECK(edge.get(0, 1) == -PolyMatrix::identity(Field::Q, 0, 2));
  CHECK(to_json(cube_from_json(to_json(h))) == to_json(h));
  CHECK(bits(1, 3) == "100");
  CHECK(parse_bits("011") == 6);
}

TEST_CASE("seeded cube defect is reported") {
  Hypercube h = square();
  h.set(0, 1, PolyMatrix::identity(Field::Q, 0, 2).scaled(Scalar(Field::Q, 2)));
  auto r = validate_cube(h);
  CHECK(!r.ok());
  CHECK(r.str().find("cube") != std::string::npos);
}

TEST_CASE("cone of a cube morphism is the cone of totals") {
  std::mt19937 rng(11);
  for (int it = 0; it < 12; ++it) {
    Field f = it % 2 ? Field::Q : Field::Qi;
    auto inst = random_operator_cube(f, 1 + it % 2, 4, menu(f), rng);
    REQUIRE(validate_cube(inst.cube).ok());
    REQUIRE(is_cycle(inst.mu));
    CubeMorphism g = inst.mu;
    Hypercube c = cone_cube(g);
    CHECK(validate_cube(c).ok());
    FreeComplex ts = total(inst.cube);
    ChainMap m{ts, ts, total_map(g), 0, {}};
    CHECK(is_cycle(m));
    CHECK(homology_over_field(total(c)) == homology_over_field(cone(m)));
    CubeMorphism sq = compose(g, g);
    CHECK(is_cycle(sq));
  }
}

TEST_CASE("perturbation and quasi-inverses") {
  std::mt19937 rng(5);
  for (int it = 0; it < 16; ++it) {
    Field f = it % 3 == 0 ? Field::F2 : Field::Q;
    auto inst = random_operator_cube(f, 1 + it % 3, 5, {Scalar::one(f)}, rng);
    const Hypercube& h = inst.cube;
    Perturbed p = perturb(h);
    CHECK(validate_cube(p.cube).ok());
    PolyMatrix D = total(h).d, Dp = total(p.cube).d;
    int n = D.rows(), m = Dp.rows();
    CHECK(p.pi * p.i == PolyMatrix::identity(f, 0, m));
    CHECK(p.i * p.pi - PolyMatrix::identity(f, 0, n) == D * p.h + p.h * D);
    CHECK(D * p.i == p.i * Dp);
    CHECK(p.pi * D == Dp * p.pi);
    CHECK((p.h * p.h).is_zero());
    CHECK(homology_over_field(total(h)) == homology_over_field(total(p.cube)));
    // every vertex of the reduced cube has zero internal differential
    for (int e = 0; e < p.cube.vertices(); ++e) CHECK(p.cube.get(e, e).is_zero());

    CubeMorphism inc = morphism_from_total(p.cube, h, p.i, 0);
    REQUIRE(is_cycle(inc));
    QuasiInverse q = invert_quasi_iso(inc);
    std::string why;
    CHECK_MESSAGE(check_quasi_inverse(inc, q, &why), why);

    PolyMatrix P = random_filtered_iso(h, rng);
    Hypercube h2 = cube_from_total(h, P * D * unitriangular_inverse(P));
    CHECK(validate_cube(h2).ok());
    CubeMorphism iso = morphism_from_total(h, h2, P, 0);
    CHECK(is_cycle(iso));
    QuasiInverse q2 = invert_quasi_iso(iso);
    CHECK_MESSAGE(check_quasi_inverse(iso, q2, &why), why);
  }
}

TEST_CASE("non quasi-isomorphisms are refused") {
  Hypercube h = square();
  CubeMorphism z{h, h, {}, 0};
  CHECK_THROWS_AS(invert_quasi_iso(z), std::invalid_argument);
}
