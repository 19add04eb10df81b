#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "common.hpp"
#include "floerkit/random.hpp"

using namespace fk;

namespace {

System load_system(const std::string& rel) { return system_from_json(read_json(data_path(rel)), ""); }

// G_i spanned by e_A, A in [-i, 1], phi the inclusion
System ladder(Field f, int lo, int hi) {
  System s;
  s.field = f;
  s.lo = lo;
  s.hi = hi;
  for (int i = lo; i <= hi; ++i) {
    std::vector<Generator> g;
    for (int a = -i; a <= 1; ++a) g.push_back({"e" + std::to_string(a), 0, {a}});
    s.spaces.push_back(g);
  }
  for (int i = lo; i < hi; ++i) {
    Mat m(f, s.dim(i + 1), s.dim(i));
    for (int c = 0; c < s.dim(i); ++c) m(c + 1, c) = Scalar::one(f);
    s.maps[{i, i + 1}] = m;
  }
  return s;
}

}  // namespace

TEST_CASE("constant system") {
  System s = load_system("systems/constant.json");
  CHECK(check_transitive(s));
  Limit l = direct_limit(s, 0, 0);
  CHECK(l.dims == DimTable{{{0, 0}, 2}});
  CHECK(l.stable_from.at(0) == s.lo);
  CHECK(limit_quotient_dims(s) == l.dims);
}

TEST_CASE("scaled system calibrates") {
  System s = load_system("systems/scaled.json");
  std::string why;
  CHECK(!check_transitive(s, &why));
  CHECK(why.find("!=") != std::string::npos);
  Calibrated c = calibrate(s, 0);
  CHECK(check_transitive(c.sys));
  // phi_{1->2} phi_{0->1} = 4 id against phi_{0->2} = 2 id
  CHECK(c.alpha.at({1, 2}) == Scalar(Field::Q, mpq_class(1, 2)));
  CHECK(c.alpha.at({0, 3}) == Scalar::one(Field::Q));
  for (int i0 = 0; i0 <= 4; ++i0)
    for (int j0 = i0; j0 <= 4; ++j0) {
      Transporter t = limit_transporter(s, i0, j0);
      CHECK(t.theta * t.tau == Scalar::one(Field::Q));
    }
  CHECK(limit_transporter(s, 0, 1).theta == Scalar(Field::Q, 2));
  CHECK(limit_transporter(s, 1, 0).theta == Scalar(Field::Q, mpq_class(1, 2)));
  // round trip through JSON
  CHECK(to_json(system_from_json(to_json(s))) == to_json(s));
}

TEST_CASE("non-proportional composites are rejected") {
  System s = load_system("systems/constant.json");
  Mat m = Mat::identity(Field::Q, 2);
  m(0, 0) = Scalar(Field::Q, 3);
  s.maps[{0, 2}] = m;
  try {
    calibrate(s, 0);
    CHECK(false);
  } catch (const CalibrationError& e) {
    CHECK(e.witness == "phi_{1->2} o phi_{0->1}");
  }
}

TEST_CASE("random projective systems") {
  std::mt19937 rng(4242);
  for (int t = 0; t < 40; ++t) {
    Field f = t % 3 == 0 ? Field::F2 : Field::Q;
    System exact;
    System p = random_projective(f, rng, &exact);
    CHECK(check_transitive(exact));
    bool base_ok = true;
    for (int j = 1; j <= 3; ++j)
      if (exact.map(0, j).is_zero()) base_ok = false;
    if (!base_ok || exact.dim(0) == 0) continue;
    Calibrated c = calibrate(p, 0);
    CHECK(check_transitive(c.sys));
    for (auto& [k, m] : c.sys.maps) CHECK(rank(m) == rank(exact.map(k.first, k.second)));
    CHECK(limit_quotient_dims(c.sys) == limit_quotient_dims(exact));
  }
}

TEST_CASE("stability") {
  System s = ladder(Field::Q, 0, 4);
  CHECK(check_transitive(s));
  // grading q appears from G_{-q} on
  Limit l = direct_limit(s, -3, 1);
  CHECK(l.stable_from.at(1) == 0);
  CHECK(l.stable_from.at(-2) == 2);
  CHECK(l.stable_from.at(-3) == 3);
  CHECK(l.dims.size() == 5);
  try {
    direct_limit(s, -4, 1);
    CHECK(false);
  } catch (const Unstable& e) {
    CHECK(e.q == -4);
    CHECK(std::string(e.what()) == "unstable at grading -4");
  }
  CHECK(limit_quotient_dims(s).size() == 6);
}

TEST_CASE("morphisms of systems") {
  System s = load_system("systems/constant.json");
  System p = load_system("systems/scaled.json");
  // F_i : S_i -> P_{i+1} = 3 id, commutes only up to scalars
  SystemMorphism f{s, p, 1, {}};
  for (int i = 0; i <= 3; ++i) f.comp[i] = Mat::identity(Field::Q, 2).scaled(Scalar(Field::Q, 3));
  CHECK(!commutes(f));
  SystemMorphism g = calibrate_morphism(f, 0);
  CHECK(commutes(g));
  CHECK(limit_map(g) == Mat::identity(Field::Q, 2).scaled(Scalar(Field::Q, 6)));
  SystemMorphism id{s, s, 0, {}};
  for (int i = 0; i <= 4; ++i) id.comp[i] = Mat::identity(Field::Q, 2);
  CHECK(commutes(id));
  SystemMorphism h = compose(id, id);
  CHECK(h.comp.size() == 5);
  CHECK(limit_map(h) == Mat::identity(Field::Q, 2));
}

TEST_CASE("staircase") {
  for (Field f : {Field::Q, Field::F2}) {
    System g = ladder(f, 0, 4), h = ladder(f, 0, 4);
    Staircase st{g, h};
    for (int n = 1; n <= 3; ++n)
      for (int m = 1; m <= 3; ++m) {
        std::string why;
        CHECK_MESSAGE(staircase_relations(st, n, m, &why), why);
        CHECK(validate(st.complex(n, m)).ok());
        int delta = std::max(1 - n, 1 - m);
        TruncatedVerdict v = staircase_truncated(st, n, m, delta);
        CHECK(v.hypothesis);
        CHECK(v.left == v.right);
        CHECK(!v.left.empty());
        CHECK(!staircase_truncated(st, n, m, delta - 1).hypothesis);
      }
  }
}

TEST_CASE("staircase relations with random maps") {
  std::mt19937 rng(77);
  for (int t = 0; t < 15; ++t) {
    System eg, eh;
    random_projective(Field::Q, rng, &eg);
    random_projective(Field::Q, rng, &eh);
    Staircase st{eg, eh};
    std::string why;
    CHECK_MESSAGE(staircase_relations(st, 1, 1, &why), why);
    CHECK_MESSAGE(staircase_relations(st, 2, 1, &why), why);
  }
}

TEST_CASE("input errors") {
  json j = read_json(data_path("systems/constant.json"));
  j["maps"]["2,1"] = json::array();
  try {
    system_from_json(j, "");
    CHECK(false);
  } catch (const InputError& e) {
    CHECK(e.where == "maps.2,1");
  }
}
