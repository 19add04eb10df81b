#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "floerkit/cli.hpp"
#include "floerkit/knots.hpp"

using namespace fk;

namespace {

struct Run {
  int code;
  std::string out, err;
  bool has(const std::string& s) const { return out.find(s) != std::string::npos; }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_file(const std::string& name, const json& j) {
  std::string p = std::string(FK_TMP_DIR) + "/" + name;
  std::ofstream(p) << j.dump(2);
  return p;
}

}  // namespace

TEST_CASE("homology reports") {
  Run r = run({"homology", data_path("complexes/unknot.cx"), "--ring"});
  CHECK(r.code == 0);
  CHECK(r.has("\nFree(h=0, A=0)\n"));
  CHECK(r.has("k[U]_{(0,0)}"));
  // reruns are byte identical
  CHECK(run({"homology", data_path("complexes/unknot.cx"), "--ring"}).out == r.out);
  Run t = run({"homology", data_path("complexes/trefoil.cx"), "--field"});
  CHECK(t.code == 0);
  CHECK(t.has("homology at U = 0: q^-1 + q + t"));
  Run f2 = run({"homology", data_path("complexes/trefoil.cx"), "--field=F2", "--ring"});
  CHECK(f2.has("Free(h=0, A=-1) + Torsion(h=0, A=1, order=1)"));
  Run cut = run({"homology", data_path("complexes/trefoil.cx"), "--truncate", "0", "--field"});
  CHECK(cut.code == 0);
  CHECK(!cut.has("A=-1"));
}

TEST_CASE("exit codes") {
  Run bad = run({"homology", data_path("complexes/bad_d2.cx")});
  CHECK(bad.code == 1);
  CHECK(bad.has("d2 (a, c)"));
  Run syn = run({"homology", data_path("complexes/bad_syntax.cx")});
  CHECK(syn.code == 2);
  CHECK(syn.err.find("generators[0].h") != std::string::npos);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"homology", "no/such/file.cx"}).code == 2);
  CHECK(run({"verify", "--suite", "nope"}).code == 2);
  // a knot file missing a map names the field
  json j = read_json(data_path("knots/rh_trefoil.json"));
  j["phi_plus"].erase("2");
  Run k = run({"freemodel", tmp_file("fk_missing.json", j)});
  CHECK(k.code == 2);
  CHECK(k.err.find("phi_plus.2") != std::string::npos);
  Run n = run({"freemodel", data_path("knots/rh_trefoil.json"), "--n", "9"});
  CHECK(n.code == 2);
  CHECK(n.err.find("--n") != std::string::npos);
}

TEST_CASE("json output round trips") {
  Run r = run({"freemodel", data_path("knots/figure8.json"), "--n", "2", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["status"] == "ok");
  FreeComplex c = complex_from_json(j["result"]["complex"]);
  CHECK(homology_over_ring(c).str() == j["result"]["module_str"].get<std::string>());
  CHECK(c.size() == cki_minus(load_knot(data_path("knots/figure8.json")), 2).size());

  Run e = run({"eigencube", data_path("cubes/square.json"), "--op", data_path("cubes/square_op.json"), "--lambda", "2", "--json"});
  REQUIRE(e.code == 0);
  Hypercube h = cube_from_json(json::parse(e.out)["result"]["cube"]);
  CHECK(validate_cube(h).ok());
  CHECK(h.total_size() == 4);
  CHECK(to_json(h) == json::parse(e.out)["result"]["cube"]);
  std::string file = std::string(FK_TMP_DIR) + "/fk_eigen.json";
  CHECK(run({"eigencube", data_path("cubes/square.json"), "--op", data_path("cubes/square_op.json"), "--lambda", "2", "--out", file}).code == 0);
  CHECK(to_json(cube_from_json(read_json(file))) == to_json(h));
  // an eigenvalue that does not occur gives the empty cube
  Run none = run({"eigencube", data_path("cubes/square.json"), "--op", data_path("cubes/square_op.json"), "--lambda", "5"});
  CHECK(none.code == 0);
  CHECK(none.has("dimension of E^lambda: 0"));

  Run d = run({"dtensor", data_path("complexes/trefoil.cx"), data_path("complexes/unknot.cx"), "--check-three-way", "--json"});
  REQUIRE(d.code == 0);
  CHECK(json::parse(d.out)["result"]["module_str"] == "Free(h=0, A=-1) + Torsion(h=0, A=1, order=1)");
}

TEST_CASE("limits and bordered") {
  CHECK(run({"limit", data_path("systems/scaled.json")}).code == 1);
  Run c = run({"limit", data_path("systems/scaled.json"), "--calibrate", "0"});
  CHECK(c.code == 0);
  CHECK(c.has("alpha 1->2 = 1/2"));
  CHECK(c.has("limit: 2"));
  // the last step drops a generator, so grading 0 never settles
  json j = read_json(data_path("systems/constant.json"));
  j["maps"]["3,4"] = json::array({json::array({"e1", "e1", "1"})});
  Run u = run({"limit", tmp_file("fk_drop.json", j)});
  CHECK(u.code == 1);
  CHECK(u.has("stable: FAILED [grading 0]"));
  Run b = run({"box", data_path("bordered/trivial2.json"), data_path("bordered/K.json")});
  CHECK(b.code == 0);
  CHECK(b.has("homology: free rank 1"));
  Run v = run({"bordered-verify", "--data", FK_DATA_DIR});
  CHECK(v.code == 0);
  CHECK(v.has("consistent transcription: displayed"));
}

TEST_CASE("knot commands") {
  Run s = run({"consum", data_path("knots/unknot.json"), data_path("knots/rh_trefoil.json")});
  CHECK(s.code == 0);
  CHECK(s.has("\nFree(h=0, A=-1) + Torsion(h=0, A=1, order=1)\n"));
  Run w = run({"skein", data_path("knots/unknot.json"), "--same-component"});
  CHECK(w.code == 0);
  CHECK(w.has("Free(h=1, A=-1) + Free(h=0, A=0)"));
  Run l = run({"skein", data_path("links/hopf.json"), "--n", "2", "2", "--window", "-4", "2", "--json"});
  REQUIRE(l.code == 0);
  json o = read_json(data_path("oracles/link_hopf.json"));
  CHECK(json::parse(l.out)["result"]["table"] == o["cli"]["2,2"]["skein"]);
}

TEST_CASE("verify suites") {
  Run r = run({"verify", "--suite", "tensors"});
  CHECK(r.code == 0);
  CHECK(r.has("criterion 1 tensors: PASS"));
  Run b = run({"verify", "--suite", "robustness", "--json"});
  CHECK(b.code == 0);
  CHECK(json::parse(b.out)["result"]["suites"][0]["failed"] == 0);
}
