#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include <algorithm>

#include "floerkit/random.hpp"

using namespace fk;

namespace {

Mat mat(Field f, int n, std::initializer_list<long> v) {
  Mat m(f, n, n);
  int k = 0;
  for (long x : v) {
    m(k / n, k % n) = Scalar(f, x);
    ++k;
  }
  return m;
}

std::string nonsplit_factor(const Mat& m) {
  try {
    eigenvalues(m);
  } catch (const NonSplit& e) {
    return e.factor;
  }
  return "";
}

CubeMorphism from_dense(const Hypercube& h, const Mat& m, int grading) {
  return morphism_from_total(h, h, PolyMatrix::from_dense(m), grading);
}

std::vector<Scalar> distinct(std::vector<Scalar> v) {
  std::vector<Scalar> out;
  for (auto& x : v)
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("eigenvalues") {
  auto ev = eigenvalues(mat(Field::Q, 3, {2, 1, 0, 0, 2, 0, 0, 0, 4}));
  REQUIRE(ev.size() == 3);
  CHECK(ev[0] == Scalar(Field::Q, 2));
  CHECK(ev[1] == Scalar(Field::Q, 2));
  CHECK(ev[2] == Scalar(Field::Q, 4));
  auto rot = eigenvalues(mat(Field::Qi, 2, {0, -1, 1, 0}));
  REQUIRE(rot.size() == 2);
  CHECK(rot[0] == Scalar(Field::Qi, 0, -1));
  CHECK(rot[1] == Scalar(Field::Qi, 0, 1));
  CHECK(nonsplit_factor(mat(Field::Q, 2, {0, 2, 1, 0})) == "x^2 - 2");
  CHECK(nonsplit_factor(mat(Field::Q, 2, {0, -1, 1, 0})) == "x^2 + 1");
  CHECK(nonsplit_factor(mat(Field::F2, 2, {1, 1, 1, 0})) == "x^2 + x + 1");
  CHECK(nonsplit_factor(mat(Field::Q, 3, {3, 0, 0, 0, 0, 2, 0, 1, 0})) == "x^2 - 2");
  auto half = eigenvalues(mat(Field::Q, 2, {1, 1, 0, 1}).scaled(Scalar::parse(Field::Q, "1/3")));
  CHECK(half[0] == Scalar::parse(Field::Q, "1/3"));
  CHECK(upoly_str(charpoly(mat(Field::Q, 2, {1, 0, 0, 1}))) == "x^2 - 2x + 1");
  Mat g = gen_eigenspace(mat(Field::Q, 3, {2, 1, 0, 0, 2, 0, 0, 0, 4}), Scalar(Field::Q, 2));
  CHECK(g.cols() == 2);
}

TEST_CASE("bundled square operator") {
  Hypercube h = cube_from_json(read_json(data_path("cubes/square.json")));
  CubeMorphism mu = morphism_from_json(h, h, read_json(data_path("cubes/square_op.json")));
  CHECK(is_cycle(mu));
  auto ev = total_eigenvalues(h, mu);
  CHECK(ev.size() == 8);
  Splitting s = build_splitting(h, mu, Scalar(Field::Q, 2));
  std::string why;
  CHECK_MESSAGE(check_splitting(s, &why), why);
  Hypercube e = eigen_cube(s);
  CHECK(validate_cube(e).ok());
  CHECK(e.total_size() == 4);
  CHECK_MESSAGE(check_closed_forms(s, e, &why), why);
}

TEST_CASE("random operator cubes") {
  std::mt19937 rng(3);
  for (int it = 0; it < 20; ++it) {
    Field f = it % 2 ? Field::Q : Field::Qi;
    std::vector<Scalar> menu = f == Field::Qi ? std::vector<Scalar>{Scalar(f, 1), Scalar(f, 0, 1), Scalar(f, 2, -1)}
                                              : std::vector<Scalar>{Scalar(f, 0), Scalar(f, 3), Scalar(f, -1)};
    auto inst = random_operator_cube(f, 1 + it % 3, 5, menu, rng);
    const Hypercube& h = inst.cube;
    REQUIRE(validate_cube(h).ok());
    REQUIRE(is_cycle(inst.mu));
    int sum = 0;
    for (const Scalar& lam : inst.lambdas) {
      auto gd = gr_dims(h, inst.mu, lam);
      for (int e = 0; e < h.vertices(); ++e) {
        Mat me = inst.mu.get(e, e).to_dense();
        int want = h.vsize(e) ? gen_eigenspace(me, lam).cols() : 0;
        CHECK(gd[e] == want);
      }
      for (unsigned seed : {0u, 9u}) {
        Splitting s = build_splitting(h, inst.mu, lam, seed);
        std::string why;
        CHECK_MESSAGE(check_splitting(s, &why), why);
        Hypercube e = eigen_cube(s);
        CHECK(validate_cube(e).ok());
        CHECK_MESSAGE(check_closed_forms(s, e, &why), why);
        CHECK(homology_over_field(total(e)) == homology_over_field(eigen_subcomplex(h, inst.mu, lam)));
        if (seed == 0) sum += e.total_size();
      }
    }
    CHECK(sum == h.total_size());
  }
}

TEST_CASE("eigenspace functoriality") {
  std::mt19937 rng(11);
  int used = 0;
  for (int it = 0; it < 40 && used < 12; ++it) {
    Field f = it % 2 ? Field::Q : Field::Qi;
    std::vector<Scalar> menu{Scalar(f, 2), Scalar(f, -1)};
    auto inst = random_operator_cube(f, 1 + it % 2, 3, menu, rng);
    const Hypercube& h = inst.cube;
    int n = h.total_size();
    if (n < 4 || n > 8) continue;
    ++used;
    Mat D = total(h).d.to_dense(), mu = total_dense(inst.mu), I = Mat::identity(f, n);
    Mat K = random_filtered_k(h, rng);
    // (f, h) = (id + DK + KD, K mu - mu K) is homotopic to (id, 0)
    CubeMorphism F = from_dense(h, I + D * K + K * D, 0), HF = from_dense(h, K * mu - mu * K, 1);
    CubeMorphism G = inst.mu, HG = from_dense(h, Mat(f, n, n), 1);
    CubeMorphism GF = compose(G, F);
    CubeMorphism HGF = from_dense(h, mu * (K * mu - mu * K), 1);
    for (const Scalar& lam : distinct(inst.lambdas)) {
      Splitting s = build_splitting(h, inst.mu, lam);
      Hypercube e = eigen_cube(s);
      Mat Ie = Mat::identity(f, e.total_size());
      CubeMorphism eid = eigen_morphism(identity_morphism(h), HG, s, s);
      CHECK(is_cycle(eid));
      CHECK(find_homotopy(e, e, total_dense(eid), Ie).has_value());
      CubeMorphism ef = eigen_morphism(F, HF, s, s), ef2 = eigen_morphism(F, HF, s, s, 5);
      CubeMorphism eg = eigen_morphism(G, HG, s, s), egf = eigen_morphism(GF, HGF, s, s);
      CHECK(is_cycle(ef));
      CHECK(is_cycle(egf));
      // independent of the splitting of the cone, and of the representative of the pair
      CHECK(find_homotopy(e, e, total_dense(ef), total_dense(ef2)).has_value());
      CHECK(find_homotopy(e, e, total_dense(ef), Ie).has_value());
      CHECK(find_homotopy(e, e, total_dense(egf), total_dense(eg) * total_dense(ef)).has_value());
    }
  }
  CHECK(used >= 8);
}

TEST_CASE("simultaneous eigenspaces") {
  std::mt19937 rng(12);
  int used = 0;
  for (int it = 0; it < 40 && used < 10; ++it) {
    Field f = Field::Q;
    auto inst = random_operator_cube(f, 1 + it % 2, 3, {Scalar(f, 1), Scalar(f, 3)}, rng);
    const Hypercube& h = inst.cube;
    int n = h.total_size();
    if (n < 4 || n > 8) continue;
    Mat D = total(h).d.to_dense(), mu = total_dense(inst.mu);
    Mat K = random_filtered_k(h, rng);
    // mu' = mu^2 + [D, K] commutes with mu up to D(K mu - mu K) + (K mu - mu K) D
    CubeMorphism mu2 = from_dense(h, mu * mu + D * K + K * D, 0);
    CubeMorphism k = from_dense(h, K * mu - mu * K, 1);
    CubeMorphism zero = from_dense(h, Mat(f, n, n), 1);
    std::vector<Scalar> ev2;
    try {
      ev2 = distinct(total_eigenvalues(h, mu2));
    } catch (const NonSplit&) {
      continue;  // the lemma needs the eigenvalues in the field
    }
    ++used;
    for (const Scalar& lam : distinct(inst.lambdas)) {
      DimTable e = homology_over_field(total(eigen_cube(build_splitting(h, inst.mu, lam))));
      for (const Scalar& lam2 : ev2) {
        SimultaneousResult r = simultaneous(h, inst.mu, mu2, k, lam, lam2);
        CHECK_MESSAGE(r.equal(), table_str(r.first) << " vs " << table_str(r.second));
      }
      SimultaneousResult same = simultaneous(h, inst.mu, inst.mu, zero, lam, lam);
      CHECK(same.first == e);
      CHECK(same.equal());
      Scalar other = lam + Scalar(f, 7);
      CHECK(simultaneous(h, inst.mu, inst.mu, zero, lam, other).first.empty());
    }
  }
  CHECK(used >= 8);
}

TEST_CASE("grading shift") {
  std::mt19937 rng(13);
  int used = 0, caught = 0;
  for (int it = 0; it < 40 && used < 10; ++it) {
    Field f = it % 2 ? Field::Q : Field::Qi;
    auto inst = random_operator_cube(f, 1 + it % 3, 3, {Scalar(f, 0), Scalar(f, 2)}, rng);
    const Hypercube& h = inst.cube;
    int n = h.total_size();
    if (n < 4 || n > 8) continue;
    ++used;
    Mat D = total(h).d.to_dense(), mu = total_dense(inst.mu);
    Scalar alpha(f, 3);
    Mat K = random_filtered_k(h, rng);
    CubeMorphism mu2 = from_dense(h, mu + Mat::identity(f, n).scaled(alpha) + D * K + K * D, 0);
    REQUIRE(is_cycle(mu2));
    for (const Scalar& lam : distinct(inst.lambdas)) {
      ShiftVerdict v = shift_compare(h, inst.mu, mu2, alpha, lam);
      CHECK(v.hypothesis);
      CHECK(v.ok());
      // a wrong shift is caught whenever E^lambda has homology
      if (!v.left.empty()) {
        CHECK(!shift_compare(h, inst.mu, mu2, alpha + Scalar::one(f), lam).ok());
        ++caught;
      }
    }
  }
  CHECK(used >= 8);
  CHECK(caught > 0);
}
