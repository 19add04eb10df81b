#include "floerkit/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "floerkit/bordered.hpp"
#include "floerkit/io.hpp"
#include "floerkit/knots.hpp"
#include "floerkit/random.hpp"

namespace fk {

void SuiteReport::check(bool c, const std::string& what) {
  ++checks;
  if (c) return;
  ++failed;
  if (failures.size() < 20) failures.push_back(what);
}

std::string default_data_dir() {
#ifdef FK_DATA_DIR
  return FK_DATA_DIR;
#else
  return "data";
#endif
}

namespace {

const std::vector<std::string> kKnots = {"unknot", "rh_trefoil", "lh_trefoil", "figure8"};

struct Ctx {
  std::string dir;
  std::string at(const std::string& rel) const { return dir + "/" + rel; }
  KnotModel knot(const std::string& n) const { return load_knot(at("knots/" + n + ".json")); }
  LinkModel link(const std::string& n) const { return load_link(at("links/" + n + ".json")); }
};

std::string str(int x) { return std::to_string(x); }

GradedModule oracle_module(const json& j) {
  GradedModule m;
  for (auto& s : j) m.summands.push_back({s["kind"] == "free", s["h"].get<int>(), s["alex"].get<int>(), s["order"].get<int>()});
  m.canonicalize();
  return m;
}

DimTable oracle_dims(const json& j) {
  DimTable t;
  for (auto& e : j) t[{e[0].get<int>(), e[1].get<int>()}] = e[2].get<int>();
  return t;
}

RankTable oracle_ranks(const json& j) {
  RankTable t;
  for (auto& e : j) t[{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()}] = e[3].get<int>();
  return t;
}

RankTable positive(const RankTable& t) {
  RankTable out;
  for (auto& [k, v] : t)
    if (std::get<2>(k) > 0) out[k] = v;
  return out;
}

std::vector<Scalar> distinct(const std::vector<Scalar>& v) {
  std::vector<Scalar> out;
  for (auto& x : v)
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  return out;
}

CubeMorphism from_dense(const Hypercube& h, const Mat& m, int grading) {
  return morphism_from_total(h, h, PolyMatrix::from_dense(m), grading);
}

// rank on homology of m : C_{h,a} -> C'_{h2,a2}
int rank_between(const GradedView& src, int h, int a, const GradedView& tgt, int h2, int a2, const Mat& m) {
  Mat z = src.cycles(h, a), b = tgt.boundaries(h2, a2);
  if (z.cols() == 0) return 0;
  return rank(b.hcat(m * z)) - rank(b);
}

Mat pm(const GradedView& v, const Poly& p, int h, int a) {
  if (p.is_zero()) return Mat(v.complex().field, v.dim(h, a - 1), v.dim(h, a));
  return v.pmat(p, h, a);
}

// Long exact sequence of Cone(p) = cone(C[1] -p-> C) for p of degree (0, -1):
//   H(C)_{h,A+1} -p-> H(C)_{h,A} -i-> H(Cone)_{h,A} -pr-> H(C)_{h-1,A+1} -p-> H(C)_{h-1,A}
// ker = im at the three middle nodes of every (h, A) in the window, compositions zero on homology.
bool cone_les_exact(const FreeComplex& c, const FreeComplex& cone, const Poly& p, int alo, int ahi, std::string* why) {
  GradedView v(c), vc(cone);
  int ns = c.size();
  Field f = c.field;
  auto incl = [&](int h, int a) {
    const auto& src = v.basis(h, a);
    Mat m(f, vc.dim(h, a), int(src.size()));
    for (size_t j = 0; j < src.size(); ++j) m(vc.locate(h, a, ns + src[j].first, src[j].second), int(j)) = Scalar::one(f);
    return m;
  };
  auto proj = [&](int h, int a) {
    const auto& src = vc.basis(h, a);
    Mat m(f, v.dim(h - 1, a + 1), int(src.size()));
    for (size_t j = 0; j < src.size(); ++j)
      if (src[j].first < ns) m(v.locate(h - 1, a + 1, src[j].first, src[j].second), int(j)) = Scalar::one(f);
    return m;
  };
  auto rp = [&](int h, int a) { return rank_between(v, h, a, v, h, a - 1, pm(v, p, h, a)); };
  std::set<int> hs;
  for (int h : v.h_values()) hs.insert({h, h + 1});
  for (int h : vc.h_values()) hs.insert(h);
  for (int h : hs)
    for (int a = alo; a <= ahi; ++a) {
      Mat i = incl(h, a), pr = proj(h, a);
      int ri = rank_between(v, h, a, vc, h, a, i), rpr = rank_between(vc, h, a, v, h - 1, a + 1, pr);
      std::string at = "(h, A) = (" + str(h) + ", " + str(a) + ")";
      std::string bad;
      if (rp(h, a + 1) != v.hom_dim(h, a) - ri) bad = "at H(C)";
      else if (ri != vc.hom_dim(h, a) - rpr) bad = "at H(Cone)";
      else if (rpr != v.hom_dim(h - 1, a + 1) - rp(h - 1, a + 1)) bad = "at H(C) one degree down";
      else if (rank_between(v, h, a + 1, vc, h, a, i * pm(v, p, h, a + 1)) != 0 ||
               rank_between(v, h, a, v, h - 1, a + 1, pr * i) != 0 ||
               rank_between(vc, h, a, v, h - 1, a, pm(v, p, h - 1, a + 1) * pr) != 0)
        bad = "composition is not zero";
      if (!bad.empty()) {
        if (why) *why = at + ": not exact " + bad;
        return false;
      }
    }
  return true;
}

void tensors(SuiteReport& r, const Ctx&) {
  std::mt19937 rng(2024);
  int complexes = 0;
  for (int it = 0; it < 60; ++it) {
    Field f = it % 2 ? Field::Q : Field::F2;
    int n1 = 1 + int(rng() % 6), n2 = 1 + int(rng() % 6);
    FreeComplex a = random_complex(f, n1, rng), b = random_complex(f, n2, rng);
    complexes += 2;
    ThreeWay t = three_way_check(a, b);
    std::string tag = "pair " + str(it);
    r.check(t.dims[0] == t.dims[1] && t.dims[1] == t.dims[2], tag + ": homology tables differ");
    r.check(t.ranks[0] == t.ranks[1] && t.ranks[1] == t.ranks[2], tag + ": U-rank tables differ");
    r.check(t.identities, tag + ": Phi Psi = id, Psi Phi = id + [d, H]: " + t.why);
    r.check(t.u_agree, tag + ": U1 != U2 on homology");
    if (it % 6 == 0) {
      std::string why;
      r.check(lambda_box_matches(a, b, &why), tag + ": M box Lambda box N: " + why);
    }
  }
  for (Field f : {Field::F2, Field::Q}) r.check(lambda_dd_ok(f), "Lambda is not a DD bimodule");
  r.note(str(complexes) + " random complexes with 1-6 generators over F2 and Q");
}

void eigencubes(SuiteReport& r, const Ctx&) {
  std::mt19937 rng(3);
  int cubes = 0;
  for (int it = 0; it < 50; ++it) {
    Field f = it % 2 ? Field::Q : Field::Qi;
    std::vector<Scalar> menu = f == Field::Qi ? std::vector<Scalar>{Scalar(f, 1), Scalar(f, 0, 1), Scalar(f, 2, -1)}
                                              : std::vector<Scalar>{Scalar(f, 0), Scalar(f, 3), Scalar(f, -1)};
    auto inst = random_operator_cube(f, 1 + it % 3, 5, menu, rng);
    const Hypercube& h = inst.cube;
    std::string tag = "cube " + str(it);
    r.check(validate_cube(h).ok() && is_cycle(inst.mu), tag + ": generator produced an invalid instance");
    ++cubes;
    int sum = 0;
    for (const Scalar& lam : inst.lambdas) {
      std::string lt = tag + " lambda " + lam.str();
      auto gd = gr_dims(h, inst.mu, lam);
      for (int e = 0; e < h.vertices(); ++e) {
        int want = h.vsize(e) ? gen_eigenspace(inst.mu.get(e, e).to_dense(), lam).cols() : 0;
        r.check(gd[e] == want, lt + ": gr dimension at vertex " + bits(e, h.n));
      }
      for (unsigned seed : {0u, 9u}) {
        Splitting s = build_splitting(h, inst.mu, lam, seed);
        std::string why;
        r.check(check_splitting(s, &why), lt + ": splitting: " + why);
        Hypercube e = eigen_cube(s);
        r.check(validate_cube(e).ok(), lt + ": E^lambda is not a cube");
        r.check(check_closed_forms(s, e, &why), lt + ": closed forms: " + why);
        r.check(homology_over_field(total(e)) == homology_over_field(eigen_subcomplex(h, inst.mu, lam)),
                lt + ": total(E^lambda) against the eigen-subspace complex");
        if (seed == 0) sum += e.total_size();
      }
    }
    r.check(sum == h.total_size(), tag + ": sum of dim e^lambda != dim total");
  }
  r.note(str(cubes) + " random cubes of dimension 1-3 over Q and Q(i)");
}

void functoriality(SuiteReport& r, const Ctx&) {
  std::mt19937 rng(11);
  int used = 0;
  for (int it = 0; it < 40 && used < 10; ++it) {
    Field f = it % 2 ? Field::Q : Field::Qi;
    auto inst = random_operator_cube(f, 1 + it % 2, 3, {Scalar(f, 2), Scalar(f, -1)}, rng);
    const Hypercube& h = inst.cube;
    int n = h.total_size();
    if (n < 4 || n > 8) continue;
    ++used;
    std::string tag = "functor instance " + str(it);
    Mat D = total(h).d.to_dense(), mu = total_dense(inst.mu), I = Mat::identity(f, n);
    Mat K = random_filtered_k(h, rng);
    // (id + DK + KD, K mu - mu K) is a second representative of the identity pair
    CubeMorphism F = from_dense(h, I + D * K + K * D, 0), HF = from_dense(h, K * mu - mu * K, 1);
    CubeMorphism G = inst.mu, HG = from_dense(h, Mat(f, n, n), 1);
    CubeMorphism GF = compose(G, F), HGF = from_dense(h, mu * (K * mu - mu * K), 1);
    for (const Scalar& lam : distinct(inst.lambdas)) {
      Splitting s = build_splitting(h, inst.mu, lam);
      Hypercube e = eigen_cube(s);
      Mat Ie = Mat::identity(f, e.total_size());
      CubeMorphism eid = eigen_morphism(identity_morphism(h), HG, s, s);
      r.check(is_cycle(eid) && find_homotopy(e, e, total_dense(eid), Ie).has_value(), tag + ": E(id) is not ~ id");
      CubeMorphism ef = eigen_morphism(F, HF, s, s), ef2 = eigen_morphism(F, HF, s, s, 5);
      CubeMorphism eg = eigen_morphism(G, HG, s, s), egf = eigen_morphism(GF, HGF, s, s);
      r.check(is_cycle(ef) && is_cycle(egf), tag + ": induced maps are not cycles");
      r.check(find_homotopy(e, e, total_dense(ef), total_dense(ef2)).has_value(), tag + ": depends on the splitting");
      r.check(find_homotopy(e, e, total_dense(ef), Ie).has_value(), tag + ": homotopic pairs give different maps");
      r.check(find_homotopy(e, e, total_dense(egf), total_dense(eg) * total_dense(ef)).has_value(),
              tag + ": E(g f) is not ~ E(g) E(f)");
    }
  }
  r.check(used >= 8, "too few functoriality instances: " + str(used));

  int sim = 0;
  for (int it = 0; it < 40 && sim < 10; ++it) {
    Field f = Field::Q;
    auto inst = random_operator_cube(f, 1 + it % 2, 3, {Scalar(f, 1), Scalar(f, 3)}, rng);
    const Hypercube& h = inst.cube;
    int n = h.total_size();
    if (n < 4 || n > 8) continue;
    Mat D = total(h).d.to_dense(), mu = total_dense(inst.mu);
    Mat K = random_filtered_k(h, rng);
    CubeMorphism mu2 = from_dense(h, mu * mu + D * K + K * D, 0), k = from_dense(h, K * mu - mu * K, 1);
    std::vector<Scalar> ev2;
    try {
      ev2 = distinct(total_eigenvalues(h, mu2));
    } catch (const NonSplit&) {
      continue;
    }
    ++sim;
    for (const Scalar& lam : distinct(inst.lambdas))
      for (const Scalar& lam2 : ev2) {
        SimultaneousResult s = simultaneous(h, inst.mu, mu2, k, lam, lam2);
        r.check(s.equal(), "simultaneous " + str(it) + ": " + table_str(s.first) + " vs " + table_str(s.second));
      }
  }
  r.check(sim >= 8, "too few simultaneous instances: " + str(sim));

  int shifts = 0, caught = 0;
  for (int it = 0; it < 40 && shifts < 10; ++it) {
    Field f = it % 2 ? Field::Q : Field::Qi;
    auto inst = random_operator_cube(f, 1 + it % 3, 3, {Scalar(f, 0), Scalar(f, 2)}, rng);
    const Hypercube& h = inst.cube;
    int n = h.total_size();
    if (n < 4 || n > 8) continue;
    ++shifts;
    Mat D = total(h).d.to_dense(), mu = total_dense(inst.mu);
    Scalar alpha(f, 3);
    Mat K = random_filtered_k(h, rng);
    CubeMorphism mu2 = from_dense(h, mu + Mat::identity(f, n).scaled(alpha) + D * K + K * D, 0);
    for (const Scalar& lam : distinct(inst.lambdas)) {
      ShiftVerdict v = shift_compare(h, inst.mu, mu2, alpha, lam);
      r.check(v.ok(), "shift " + str(it) + " lambda " + lam.str() + ": " + table_str(v.left) + " vs " + table_str(v.right));
      if (!v.left.empty()) {
        r.check(!shift_compare(h, inst.mu, mu2, alpha + Scalar::one(f), lam).ok(), "shift " + str(it) + ": wrong alpha accepted");
        ++caught;
      }
    }
  }
  r.check(shifts >= 8 && caught > 0, "too few grading shift instances");
  r.note(str(used) + " functoriality, " + str(sim) + " simultaneous and " + str(shifts) + " grading shift instances");
}

void limits(SuiteReport& r, const Ctx& cx) {
  // staircase identities on the phi+ systems of the bundled knots
  std::vector<System> sys;
  for (auto& n : kKnots) sys.push_back(plus_system(cx.knot(n)));
  int stairs = 0;
  for (size_t i = 0; i < sys.size(); ++i)
    for (size_t j = i; j < sys.size(); ++j) {
      Staircase st{sys[i], sys[j]};
      for (int n = sys[i].lo + 1; n < sys[i].hi; ++n)
        for (int m = sys[j].lo + 1; m < sys[j].hi; ++m) {
          std::string why;
          r.check(staircase_relations(st, n, m, &why), kKnots[i] + " x " + kKnots[j] + " at " + str(n) + "," + str(m) + ": " + why);
          ++stairs;
        }
    }
  // the bundled unit-scaled system
  System s = system_from_json(read_json(cx.at("systems/scaled.json")));
  r.check(!check_transitive(s), "scaled.json is already transitive");
  DimTable first;
  for (int i0 = s.lo; i0 <= s.hi; ++i0) {
    Calibrated c = calibrate(s, i0);
    r.check(check_transitive(c.sys), "scaled.json calibrated at " + str(i0) + " is not transitive");
    DimTable d = limit_quotient_dims(c.sys);
    if (i0 == s.lo) first = d;
    r.check(d == first, "scaled.json: limit depends on the base point " + str(i0));
    for (int j0 = s.lo; j0 <= s.hi; ++j0) {
      Transporter t = limit_transporter(s, i0, j0);
      r.check(t.theta * t.tau == Scalar::one(s.field), "tau theta != id for " + str(i0) + " -> " + str(j0));
    }
  }
  // random projective systems
  std::mt19937 rng(4242);
  int random = 0;
  for (int t = 0; t < 60; ++t) {
    Field f = t % 3 == 0 ? Field::F2 : Field::Q;
    System exact;
    System p = random_projective(f, rng, &exact);
    r.check(check_transitive(exact), "random system " + str(t) + " is not transitive before scaling");
    DimTable want = limit_quotient_dims(exact);
    for (int i0 = 0; i0 <= 1; ++i0) {
      bool base_ok = exact.dim(i0) > 0;
      for (int j = i0 + 1; j <= 3; ++j)
        if (exact.map(i0, j).is_zero()) base_ok = false;
      if (!base_ok) continue;
      ++random;
      Calibrated c = calibrate(p, i0);
      r.check(check_transitive(c.sys), "random system " + str(t) + " at " + str(i0) + ": not transitive");
      r.check(limit_quotient_dims(c.sys) == want, "random system " + str(t) + ": limit depends on the base point");
      Transporter tr = limit_transporter(p, i0, 3);
      r.check(tr.theta * tr.tau == Scalar::one(f), "random system " + str(t) + ": tau theta != id");
    }
  }
  r.note(str(stairs) + " staircases on the knot systems, " + str(random) + " calibrations of random projective systems");
}

void bordered(SuiteReport& r, const Ctx& cx) {
  using namespace torus;
  auto d = [&](const std::string& n) { return typed_from_json(read_json(cx.at("bordered/" + n + ".json"))); };
  auto a = [&](const std::string& n) { return typea_from_json(read_json(cx.at("bordered/" + n + ".json"))); };
  std::vector<std::pair<std::string, TypeA>> probes = {
      {"trivial1", a("trivial1")}, {"trivial2", a("trivial2")}, {"iota1.A", free_a_module(1)}, {"iota2.A", free_a_module(2)}};
  std::string why;
  r.check(torus::check_algebra(&why), "torus algebra: " + why);
  ConeData c = cone_data(d("M0"), d("M1"), d("K"));
  for (auto* m : {&c.m0, &c.m1, &c.k}) r.check(structure_ok(*m, &why), "type D structure: " + why);
  BorderedReport b = bordered_verify(c, probes);
  r.check(b.algebra, "algebra relations");
  r.check(b.phi_cycles, "phi+ and phi- are not cycles");
  const Transcription& t = b.displayed.consistent() ? b.displayed : b.naive;
  r.check(t.solutions.size() == 1, "no unique truncated term");
  r.check(t.pi_i, "Pi o I != id");
  r.check(t.i_pi, "I o Pi != id + d(H)");
  r.check(t.pairing, "cone pairing differs from K: " + t.witness);
  r.check(b.displayed.consistent() != b.naive.consistent(), "both or neither transcription is consistent");
  r.check(b.ok(), "bordered report");
  FreeComplex cone = box(a("trivial2"), t.cone), k = box(a("trivial2"), c.k);
  r.check(ring_invariants(cone) == ring_invariants(k), "rank-1 pairing: " + ring_invariants(cone).str() + " vs " + ring_invariants(k).str());
  r.note("consistent transcription: " + b.chosen() + (t.solutions.size() == 1 ? ", truncated term " + coef_str(t.solutions[0]) : ""));
  for (auto& l : b.pairing_lines) r.note(l);
}

void freemodel(SuiteReport& r, const Ctx& cx) {
  for (auto& n : kKnots) {
    KnotModel k = cx.knot(n);
    json o = read_json(cx.at("oracles/knot_" + n + ".json"));
    LimitModule l = khi_minus_limit(k);
    for (int i = k.lo; i < k.hi; ++i) {
      std::string tag = n + " n=" + str(i);
      FreeComplex c = cki_minus(k, i);
      r.check(validate(c).ok(), tag + ": CKI- is not a complex");
      const json& e = o["cki"][str(i)];
      int alo = e["window"][0], ahi = e["window"][1];
      GradedView v(c);
      r.check(homology_table(v, alo, ahi) == oracle_dims(e["dims"]), tag + ": homology table against the oracle");
      r.check(positive(rank_table(v, 0, ahi - alo, alo, ahi)) == oracle_ranks(e["ranks"]), tag + ": U ranks against the oracle");
      GradedModule m = homology_over_ring(c);
      r.check(m == oracle_module(e["summands"]), tag + ": module against the oracle");
      r.check(m == l.module, tag + ": " + m.str() + " vs limit " + l.module.str());
    }
    r.note(n + ": " + l.module.str());
  }
}

void consum(SuiteReport& r, const Ctx& cx) {
  json o = read_json(cx.at("oracles/consum.json"));
  std::vector<KnotModel> ks;
  for (auto& n : kKnots) ks.push_back(cx.knot(n));
  for (size_t i = 0; i < ks.size(); ++i)
    for (size_t j = i; j < ks.size(); ++j) {
      std::string name = kKnots[i] + "#" + kKnots[j];
      ConnectedSum s = connected_sum(ks[i], ks[j]);
      r.check(s.c.ok(), name + ": derived tensor three ways: " + s.c.why);
      r.check(s.u_agree, name + ": U1 != U2 on homology");
      r.check(s.homogeneous, name + ": expanded square is not homogeneous");
      r.check(!s.dims_a.empty() && s.dims_a == s.dims_b, name + ": expanded square differs above " + str(s.q));
      r.check(s.dims_a == s.dims_single, name + ": single arrow differs above " + str(s.q));
      if (kKnots[i] == "unknot")
        r.check(s.module == homology_over_ring(cki_minus(ks[j], ks[j].lo)), name + ": K # unknot is not K");
      std::string rkey = kKnots[j] + "#" + kKnots[i];
      const json* e = o.contains(name) ? &o[name] : o.contains(rkey) ? &o[rkey] : nullptr;
      if (!e) continue;
      int alo = (*e)["window"][0], ahi = (*e)["window"][1];
      r.check(homology_table(s.a.cx, alo, ahi) == oracle_dims((*e)["dims"]), name + ": homology against the oracle");
      r.check(s.module == oracle_module((*e)["summands"]), name + ": module against the oracle");
      r.note(name + ": " + s.module.str());
    }
}

void triangles(SuiteReport& r, const Ctx& cx) {
  auto tri = [&](const std::string& tag, const FreeComplex& c) {
    TriangleReport t = bypass_triangle(c);
    r.check(t.ok(), "bypass triangle on " + tag + ": " + t.why);
    return t;
  };
  int hat = 0;
  for (auto& n : tri("trefoil CKI-", cki_minus(cx.knot("rh_trefoil"), 1)).nodes) hat += n.dim_q;
  r.check(hat == 3, "trefoil hat dimension " + str(hat));
  tri("trefoil.cx", load_complex(cx.at("complexes/trefoil.cx")));
  tri("figure8 CKI-", cki_minus(cx.knot("figure8"), 1));
  LinkModel hopf = cx.link("hopf");
  tri("Hopf CLI- with U1 = U2", collapse_variables(total(cli_minus_link(hopf, 2, 2))));
  for (Field f : {Field::F2, Field::Q})
    r.check(homology_over_ring(bypass_cone(f)).str() == "Free(h=0, A=0)", "Cone(f_*) is not free of rank 1");

  // skein, different components, on the link squares
  for (std::string n : {"hopf", "unlink2"}) {
    LinkModel l = cx.link(n);
    for (int a = l.lo[0]; a < l.hi[0]; ++a)
      for (int b = l.lo[1]; b < l.hi[1]; ++b) {
        FreeComplex full = total(cli_minus_link(l, a, b));
        auto [alo, ahi] = alex_window(full, 4);
        Poly p = Poly::var(full.field, 2, 0) - Poly::var(full.field, 2, 1);
        std::string tag = n + " " + str(a) + "," + str(b), why;
        // the reduction is a homotopy equivalence over k[U1, U2]; one square is also run unreduced
        FreeComplex t = sdr(full).H;
        r.check(cone_les_exact(t, skein_different(t), p, alo, ahi, &why), tag + ": " + why);
        if (n == "hopf" && a == l.lo[0] && b == l.lo[1])
          r.check(cone_les_exact(full, skein_different(full), p, alo, ahi, &why), tag + " unreduced: " + why);
      }
  }
  // skein, same component, on the knots: alpha = 1 gives M (x) W
  for (auto& n : {"rh_trefoil", "figure8"}) {
    FreeComplex c = cki_minus(cx.knot(n), 1);
    GradedModule m = homology_over_ring(c);
    auto [alo, ahi] = alex_window(c, 4);
    for (int al : {1, 2}) {
      Scalar alpha(c.field, al);
      FreeComplex s = skein_same(c, alpha);
      std::string why;
      Poly p = Poly::var(c.field, 1, 0).scaled(Scalar::one(c.field) - alpha);
      r.check(cone_les_exact(c, s, p, alo, ahi, &why), std::string(n) + " alpha " + str(al) + ": " + why);
    }
    r.check(homology_over_ring(skein_same(c, Scalar::one(c.field))) == tensor_w(m), std::string(n) + ": same component is not M (x) W");
    // the check notices a map that does not belong to the cone
    r.check(!cone_les_exact(c, skein_same(c, Scalar(c.field, 2)), Poly(c.field, 1), alo, ahi, nullptr),
            std::string(n) + ": exactness check accepted the wrong map");
  }
}

void robustness(SuiteReport& r, const Ctx& cx) {
  auto cx_file = [&](const std::string& n) { return load_complex(cx.at("complexes/" + n + ".cx")); };
  r.check(validate(cx_file("bad_d2")).has("d2", "a", "c"), "d^2 != 0 witness (a, c)");
  r.check(validate(cx_file("bad_grading")).has("alex", "a", "b"), "Alexander witness (a, b)");
  r.check(validate(cx_file("bad_hgrading")).has("hgrading", "a", "b"), "homological witness (a, b)");
  r.check(validate(cx_file("trefoil")).ok(), "trefoil rejected");
  try {
    cx_file("bad_syntax");
    r.check(false, "bad_syntax.cx accepted");
  } catch (const InputError& e) {
    r.check(e.where == "generators[0].h", "bad_syntax.cx witness " + e.where);
  }
  Hypercube h = cube_from_json(read_json(cx.at("cubes/square.json")));
  r.check(validate_cube(h).ok(), "square rejected");
  h.set(0, 1, h.get(0, 1).scaled(Scalar(h.field, 2)));
  ValidationReport vr = validate_cube(h);
  r.check(!vr.ok() && vr.violations[0].kind == "cube", "seeded cube defect not reported as a cube violation");
  // random d^2 != 0 seeds: flip one entry of a valid complex with a nonzero square
  std::mt19937 rng(99);
  int seeded = 0;
  for (int it = 0; it < 30; ++it) {
    FreeComplex c = random_field_complex(Field::Q, 4, rng);
    for (int s = 0; s < c.size(); ++s)
      for (int t = 0; t < c.size(); ++t) {
        if (c.gens[t].h != c.gens[s].h - 1 || c.gens[t].total_alex() != c.gens[s].total_alex()) continue;
        FreeComplex b = c;
        b.set_d(t, s, c.d.at(t, s) + c.one());
        ValidationReport v = validate(b);
        bool broken = !((b.d * b.d).is_zero());
        if (!broken) continue;
        ++seeded;
        bool named = false;
        for (auto& x : v.violations) named |= x.kind == "d2";
        r.check(named, "seeded d^2 != 0 at " + c.gens[s].name + " -> " + c.gens[t].name + " not reported");
      }
  }
  r.check(seeded > 0, "no d^2 seeds");
  auto factor = [](Field f, std::vector<long> v) {
    int n = v.size() == 4 ? 2 : 3;
    Mat m(f, n, n);
    for (size_t k = 0; k < v.size(); ++k) m(int(k) / n, int(k) % n) = Scalar(f, v[k]);
    try {
      eigenvalues(m);
    } catch (const NonSplit& e) {
      return e.factor;
    }
    return std::string("split");
  };
  r.check(factor(Field::Q, {0, 2, 1, 0}) == "x^2 - 2", "x^2 - 2 over Q");
  r.check(factor(Field::Q, {0, -1, 1, 0}) == "x^2 + 1", "x^2 + 1 over Q");
  r.check(factor(Field::Qi, {0, -1, 1, 0}) == "split", "x^2 + 1 over Q(i) splits");
  r.check(factor(Field::Qi, {0, 2, 1, 0}) == "x^2 - 2", "x^2 - 2 over Q(i)");
  r.check(factor(Field::F2, {1, 1, 1, 0}) == "x^2 + x + 1", "x^2 + x + 1 over F2");
  r.check(factor(Field::Q, {3, 0, 0, 0, 0, 2, 0, 1, 0}) == "x^2 - 2", "leftover factor after the root 3");
  r.note(str(seeded) + " seeded d^2 defects");
}

using Fn = void (*)(SuiteReport&, const Ctx&);
const std::vector<std::pair<std::string, Fn>>& table() {
  static const std::vector<std::pair<std::string, Fn>> t = {
      {"tensors", tensors},     {"eigencubes", eigencubes}, {"functoriality", functoriality},
      {"limits", limits},       {"bordered", bordered},     {"freemodel", freemodel},
      {"consum", consum},       {"triangles", triangles},   {"robustness", robustness}};
  return t;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto& [n, f] : table()) v.push_back(n);
    return v;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const std::string& data_dir) {
  auto& t = table();
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i].first != name) continue;
    SuiteReport r;
    r.name = name;
    r.criterion = int(i) + 1;
    try {
      t[i].second(r, Ctx{data_dir});
    } catch (const std::exception& e) {
      r.check(false, std::string("exception: ") + e.what());
    }
    return r;
  }
  throw std::invalid_argument("unknown suite " + name);
}

}  // namespace fk
