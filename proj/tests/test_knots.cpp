#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "floerkit/bordered.hpp"
#include "floerkit/knots.hpp"

using namespace fk;

namespace {

const std::vector<std::string> kKnots = {"unknot", "rh_trefoil", "lh_trefoil", "figure8"};

KnotModel knot(const std::string& n) { return load_knot(data_path("knots/" + n + ".json")); }
LinkModel link(const std::string& n) { return load_link(data_path("links/" + n + ".json")); }

RankTable positive(const RankTable& t) {
  RankTable out;
  for (auto& [k, v] : t)
    if (std::get<2>(k) > 0) out[k] = v;
  return out;
}

int top_alex(const GradedModule& m) {
  int t = std::numeric_limits<int>::min();
  for (auto& s : m.summands) t = std::max(t, s.alex);
  return t;
}

}  // namespace

TEST_CASE("shift functions") {
  CHECK(knot_shift(2).tau == 1);
  CHECK(knot_shift(2).sigma == -1);
  CHECK(knot_shift(3).tau == 0);
  CHECK(knot_shift(3).sigma == -1);
  CHECK(link_shift({1, 1}).tau == 0);
  CHECK(link_shift({1, 1}).sigma == 0);
  for (int n = -6; n <= 6; ++n) {
    int tau = n % 2 == 0 ? 1 : 0;
    CHECK(knot_shift(n).tau == tau);
    CHECK(2 * knot_shift(n).sigma == -(n - 1 + tau));
  }
}

TEST_CASE("knot models") {
  for (auto& n : kKnots) {
    KnotModel k = knot(n);
    std::string why;
    CHECK_MESSAGE(check_model(k, &why), n << ": " << why);
    CHECK(check_transitive(plus_system(k)));
  }
  // raw grading -1 at n = 1 plus sigma(1) = 0
  KnotModel t = knot("rh_trefoil");
  CHECK(t.space(1)[0].name == "x0_0");
  CHECK(t.space(1)[0].alex == std::vector<int>{-1});
  CHECK(t.space(2)[0].alex == std::vector<int>{-1});
  json j = read_json(data_path("knots/rh_trefoil.json"));
  j["phi_plus"].erase("2");
  try {
    knot_from_json(j);
    CHECK(false);
  } catch (const InputError& e) {
    CHECK(e.where == "phi_plus.2");
  }
  // phi- that preserves A is rejected
  KnotModel bad = t;
  bad.minus[2] = bad.plus[2];
  std::string why;
  CHECK(!check_model(bad, &why));
}

TEST_CASE("free model against the oracle") {
  for (auto& n : kKnots) {
    KnotModel k = knot(n);
    json o = read_json(data_path("oracles/knot_" + n + ".json"));
    GradedModule first;
    for (int i = k.lo; i < k.hi; ++i) {
      const json& e = o["cki"][std::to_string(i)];
      FreeComplex c = cki_minus(k, i);
      CHECK(validate(c).ok());
      int alo = e["window"][0], ahi = e["window"][1];
      GradedView v(c);
      CHECK_MESSAGE(homology_table(v, alo, ahi) == dims_from_oracle(e["dims"]), n << " n=" << i);
      CHECK(positive(rank_table(v, 0, ahi - alo, alo, ahi)) == ranks_from_oracle(e["ranks"]));
      GradedModule m = homology_over_ring(c);
      CHECK(m == module_from_oracle(e["summands"]));
      if (i == k.lo) first = m;
      CHECK_MESSAGE(m == first, n << " depends on n at " << i);
    }
  }
  // the staircase trefoil complex has the same module
  json tre = read_json(data_path("oracles/trefoil.json"));
  CHECK(homology_over_ring(cki_minus(knot("rh_trefoil"), 1)) == module_from_oracle(tre["summands"]));
  CHECK(homology_over_ring(cki_minus(knot("rh_trefoil"), 1)) == homology_over_ring(load_complex(data_path("complexes/trefoil.cx"))));
}

TEST_CASE("direct limit is the free model") {
  for (auto& n : kKnots) {
    KnotModel k = knot(n);
    LimitModule l = khi_minus_limit(k);
    for (int i = k.lo; i < k.hi; ++i) CHECK_MESSAGE(l.module == homology_over_ring(cki_minus(k, i)), n << " n=" << i);
    // above the floor C_hi is the limit
    DimTable top;
    for (auto& g : k.space(k.hi))
      if (g.total_alex() >= l.qlo) top[{g.h, g.total_alex()}] += 1;
    CHECK(l.dims == top);
    for (auto& [q, from] : l.stable_from) CHECK(from < k.hi);
  }
  CHECK(khi_minus_limit(knot("unknot")).module.str() == "Free(h=0, A=0)");
}

TEST_CASE("connected sums") {
  json o = read_json(data_path("oracles/consum.json"));
  for (size_t i = 0; i < kKnots.size(); ++i)
    for (size_t j = i; j < kKnots.size(); ++j) {
      KnotModel k1 = knot(kKnots[i]), k2 = knot(kKnots[j]);
      ConnectedSum r = connected_sum(k1, k2);
      std::string name = kKnots[i] + "#" + kKnots[j];
      CHECK_MESSAGE(r.c.ok(), name << ": " << r.c.why);
      CHECK_MESSAGE(r.u_agree, name);
      CHECK_MESSAGE(r.homogeneous, name);
      CHECK_MESSAGE(r.dims_a == r.dims_b, name << " expanded square above " << r.q);
      CHECK_MESSAGE(r.dims_a == r.dims_single, name << " single arrow above " << r.q);
      CHECK(!r.dims_a.empty());
      CHECK(r.ok());
      GradedModule m1 = homology_over_ring(cki_minus(k1, k1.lo)), m2 = homology_over_ring(cki_minus(k2, k2.lo));
      CHECK(top_alex(r.module) == top_alex(m1) + top_alex(m2));
      if (kKnots[i] == "unknot") CHECK_MESSAGE(r.module == m2, name);
      std::string key = kKnots[i] + "#" + kKnots[j];
      std::string rkey = kKnots[j] + "#" + kKnots[i];
      const json* e = o.contains(key) ? &o[key] : o.contains(rkey) ? &o[rkey] : nullptr;
      if (!e) continue;
      int alo = (*e)["window"][0], ahi = (*e)["window"][1];
      GradedView v(r.a.cx);
      CHECK_MESSAGE(homology_table(v, alo, ahi) == dims_from_oracle((*e)["dims"]), name);
      CHECK(positive(rank_table(v, 0, ahi - alo, alo, ahi)) == ranks_from_oracle((*e)["ranks"]));
      CHECK(r.module == module_from_oracle((*e)["summands"]));
    }
  // trefoil # trefoil: free (x) T twice, T (x) T, and one Tor summand one degree up
  ConnectedSum tt = connected_sum(knot("rh_trefoil"), knot("rh_trefoil"));
  CHECK(tt.module.torsion_count() == 4);
  CHECK(tt.module.free_rank() == 1);
  int up = 0;
  for (auto& s : tt.module.summands) up += s.h == 1 && !s.free;
  CHECK(up == 1);
  CHECK(connected_sum(knot("unknot"), knot("unknot")).module.str() == "Free(h=0, A=0)");
}

TEST_CASE("link square") {
  for (std::string n : {"hopf", "unlink2"}) {
    LinkModel l = link(n);
    json o = read_json(data_path("oracles/link_" + n + ".json"));
    for (int a = l.lo[0]; a < l.hi[0]; ++a)
      for (int b = l.lo[1]; b < l.hi[1]; ++b) {
        const json& e = o["cli"][std::to_string(a) + "," + std::to_string(b)];
        Hypercube c = cli_minus_link(l, a, b);
        ValidationReport vr = validate_cube(c);
        CHECK_MESSAGE(vr.ok(), n << " " << a << "," << b << ": " << vr.str());
        FreeComplex t = total(c);
        CHECK(validate(t).ok());
        int alo = e["window"][0], ahi = e["window"][1];
        CHECK(homology_table(t, alo, ahi) == dims_from_oracle(e["dims"]));
        CHECK(homology_over_field(specialize_zero(t)) == dims_from_oracle(e["hat"]));
        CHECK(homology_table(skein_different(t), alo, ahi) == dims_from_oracle(e["skein"]));
      }
  }
  // the bundled Hopf complex agrees with the square
  json hopf = read_json(data_path("oracles/hopf.json"));
  CHECK(homology_table(total(cli_minus_link(link("hopf"), 2, 2)), -4, 2) == dims_from_oracle(hopf["dims"]));
  // a broken square is caught
  LinkModel bad = link("hopf");
  Mat& m = bad.minus[0][{2, 3}];
  for (int r = 0, done = 0; r < m.rows() && !done; ++r)
    for (int c = 0; c < m.cols() && !done; ++c)
      if (!m(r, c).is_zero()) {
        m(r, c) = Scalar(Field::Q, 2);
        done = 1;
      }
  ValidationReport vr = validate_cube(cli_minus_link(bad, 2, 2));
  CHECK(!vr.ok());
  CHECK(vr.violations[0].kind == "cube");
  CHECK(!vr.violations[0].a.empty());
}

TEST_CASE("skein") {
  // different components on the unlink: k[U] (x) V
  FreeComplex u = total(cli_minus_link(link("unlink2"), 1, 1));
  DimTable want;
  for (int a = -4; a <= 0; ++a) want[{0, a}] = want[{1, a}] = 1;
  CHECK(homology_table(skein_different(u), -4, 0) == want);
  for (auto& n : kKnots) {
    FreeComplex c = cki_minus(knot(n), 1);
    GradedModule m = homology_over_ring(c);
    CHECK(homology_over_ring(skein_same(c, Scalar::one(Field::Q))) == tensor_w(m));
    int amin = alex_window(c, 0).first;
    DimTable low1 = homology_table(skein_same(c, Scalar::one(Field::Q)), amin - 3, amin - 1);
    DimTable low2 = homology_table(skein_same(c, Scalar(Field::Q, 2)), amin - 3, amin - 1);
    CHECK(!low1.empty());
    CHECK(low2.empty());
  }
  CHECK(tensor_w(homology_over_ring(cki_minus(knot("unknot"), 0))).str() == "Free(h=1, A=-1) + Free(h=0, A=0)");
}

TEST_CASE("unit rescaling") {
  FreeComplex c = cki_minus(knot("rh_trefoil"), 0);
  CHECK(unit_rescale_iso(c, {Scalar::one(Field::Q)}, -5, 2).ok());
  FreeComplex k(Field::Q, 1, {{"1", 0, {0}}});
  CHECK(unit_rescale_iso(k, {Scalar(Field::Q, 2)}, -4, 0).ok());
  FreeComplex t = tensor_field(c, c);
  Scalar one = Scalar::one(Field::Q);
  CHECK(unit_rescale_iso(t, {one, -one}, -8, 4).ok());
  FreeComplex plus = derived_with(c, c, one), minus = derived_with(c, c, -one);
  CHECK(homology_table(plus, -8, 4) == homology_table(minus, -8, 4));
  CHECK(rank_table(plus, 0, 6, -8, 4) == rank_table(minus, 0, 6, -8, 4));
  // ungraded input is refused
  FreeComplex dt = derived_tensor(c, c).cx;
  CHECK_THROWS_AS(unit_rescale_iso(dt, {one, -one}, -8, 4), std::invalid_argument);
}

TEST_CASE("bypass triangles on the models") {
  TriangleReport r = bypass_triangle(cki_minus(knot("rh_trefoil"), 1));
  CHECK_MESSAGE(r.ok(), r.why);
  int hat = 0;
  for (auto& n : r.nodes) hat += n.dim_q;
  CHECK(hat == 3);
  TriangleReport h = bypass_triangle(collapse_variables(total(cli_minus_link(link("hopf"), 2, 2))));
  CHECK_MESSAGE(h.ok(), h.why);
}
