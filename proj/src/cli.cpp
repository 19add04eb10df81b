#include "floerkit/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "floerkit/bordered.hpp"
#include "floerkit/eigenspaces.hpp"
#include "floerkit/io.hpp"
#include "floerkit/knots.hpp"
#include "floerkit/verify.hpp"

namespace fk {

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open file");
  uint64_t h = 1469598103934665603ull;
  for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
    h ^= uint64_t(static_cast<unsigned char>(*it));
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct Verdict {
  std::string name;
  bool ok = false;
  std::string witness;
};

struct Report {
  std::vector<std::string> args;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::string> lines;
  json result = json::object();
  std::vector<Verdict> verdicts;

  std::string input(const std::string& path) {
    inputs.push_back({path, file_digest(path)});
    return path;
  }
  void line(const std::string& s) { lines.push_back(s); }
  void verdict(const std::string& name, bool ok, const std::string& witness = "") { verdicts.push_back({name, ok, witness}); }
  bool ok() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.ok; });
  }
};

// sum of dim t^h q^A, in table order
std::string poincare(const DimTable& t) {
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, d] : t) {
    if (!first) os << " + ";
    first = false;
    std::string mono;
    if (k.first) mono += k.first == 1 ? "t" : "t^" + std::to_string(k.first);
    if (k.second) mono += std::string(mono.empty() ? "" : " ") + (k.second == 1 ? "q" : "q^" + std::to_string(k.second));
    if (d != 1 || mono.empty()) os << d << (mono.empty() ? "" : " ");
    os << mono;
  }
  return os.str();
}

void table(Report& r, const std::string& key, const DimTable& t) {
  r.line(key + ": " + poincare(t));
  for (auto& [k, d] : t) r.line("  h=" + std::to_string(k.first) + " A=" + std::to_string(k.second) + " : " + std::to_string(d));
  r.result[key] = to_json(t);
}

void module(Report& r, const std::string& key, const GradedModule& m) {
  r.line(m.str());
  r.line(m.pretty());
  r.result[key] = to_json(m);
  r.result[key + "_str"] = m.str();
}

std::string witness(const ValidationReport& v) {
  std::string s = v.ok() ? "" : v.str();
  while (!s.empty() && s.back() == '\n') s.pop_back();
  for (char& c : s)
    if (c == '\n') c = ';';
  return s;
}

std::pair<int, int> window_or(const std::vector<int>& w, const FreeComplex& c, int pad) {
  if (w.size() == 2) return {w[0], w[1]};
  return alex_window(c, pad);
}

struct Options {
  bool json = false;
  std::string data = default_data_dir();
  std::vector<std::string> files;
  std::vector<std::string> field;  // present with zero or one value
  bool field_given = false, ring = false;
  int truncate = 0;
  bool truncate_given = false;
  std::vector<int> window, n, range;
  bool three_way = false, same = false;
  std::string suite = "all", op, lambda = "", alpha = "1", out;
  int calibrate = 0;
  bool calibrate_given = false;
};

Field field_value(const Options& o, Field dflt) {
  if (o.field.empty()) return dflt;
  try {
    return parse_field(o.field[0]);
  } catch (const std::exception&) {
    throw InputError("--field", "field must be F2, Q or Qi");
  }
}

void homology(Report& r, const Options& o) {
  FreeComplex c = load_complex(r.input(o.files.at(0)));
  if (!o.field.empty()) c = with_field(c, field_value(o, c.field));
  ValidationReport v = validate(c);
  r.verdict("valid complex", v.ok(), witness(v));
  if (!v.ok()) return;
  if (o.truncate_given) c = truncate_above(c, o.truncate);
  r.result["field"] = field_name(c.field);
  r.result["arity"] = c.arity;
  bool field_mode = o.field_given && !o.ring;
  if (c.arity == 0 || field_mode) {
    table(r, c.arity ? "homology at U = 0" : "homology", homology_over_field(c));
    return;
  }
  if (c.arity == 1) {
    module(r, "module", homology_over_ring(c));
    if (o.window.size() == 2) table(r, "table", homology_table(c, o.window[0], o.window[1]));
    return;
  }
  auto [alo, ahi] = window_or(o.window, c, 4);
  table(r, "table", homology_table(c, alo, ahi));
}

void dtensor(Report& r, const Options& o) {
  FreeComplex a = load_complex(r.input(o.files.at(0))), b = load_complex(r.input(o.files.at(1)));
  if (!o.field.empty()) {
    a = with_field(a, field_value(o, a.field));
    b = with_field(b, field_value(o, b.field));
  }
  if (a.field != b.field) throw InputError("field", "the two complexes have different fields");
  if (a.arity != 1 || b.arity != 1) throw InputError("arity", "both complexes must be over k[U]");
  for (auto* c : {&a, &b}) {
    ValidationReport v = validate(*c);
    r.verdict("valid complex", v.ok(), witness(v));
    if (!v.ok()) return;
  }
  DerivedTensor d = derived_tensor(a, b);
  module(r, "module", derived_module(d));
  auto [alo, ahi] = window_or(o.window, d.cx, 0);
  table(r, "table", homology_table(d.cx, alo, ahi));
  if (!o.three_way) return;
  ThreeWay t = three_way_check(a, b, 3, alo, ahi);
  r.verdict("tables agree", t.dims[0] == t.dims[1] && t.dims[1] == t.dims[2]);
  r.verdict("U ranks agree", t.ranks[0] == t.ranks[1] && t.ranks[1] == t.ranks[2]);
  r.verdict("Phi Psi = id, Psi Phi = id + [d, H]", t.identities, t.why);
  r.verdict("U1 = U2 on homology", t.u_agree);
}

void eigencube(Report& r, const Options& o) {
  Hypercube h = cube_from_json(read_json(r.input(o.files.at(0))));
  if (o.op.empty()) throw InputError("--op", "an operator file is required");
  CubeMorphism mu = morphism_from_json(h, h, read_json(r.input(o.op)));
  if (o.lambda.empty()) throw InputError("--lambda", "an eigenvalue is required");
  Scalar lam;
  try {
    lam = Scalar::parse(h.field, o.lambda);
  } catch (const std::exception&) {
    throw InputError("--lambda", "not a scalar of " + field_name(h.field));
  }
  ValidationReport v = validate_cube(h);
  r.verdict("valid cube", v.ok(), witness(v));
  r.verdict("operator is a cycle", is_cycle(mu));
  if (!r.ok()) return;
  std::vector<Scalar> ev;
  try {
    ev = total_eigenvalues(h, mu);
  } catch (const NonSplit& e) {
    r.verdict("eigenvalues in the field", false, e.factor);
    return;
  }
  std::string evs;
  for (auto& x : ev) evs += (evs.empty() ? "" : " ") + x.str();
  r.line("eigenvalues: " + evs);
  Splitting s = build_splitting(h, mu, lam);
  std::string why;
  r.verdict("splitting", check_splitting(s, &why), why);
  Hypercube e = eigen_cube(s);
  ValidationReport ve = validate_cube(e);
  r.verdict("E^lambda is a cube", ve.ok(), witness(ve));
  r.verdict("closed forms", check_closed_forms(s, e, &why), why);
  r.line("dimension of E^lambda: " + std::to_string(e.total_size()));
  json cube = to_json(e);
  r.result["cube"] = cube;
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw InputError(o.out, "cannot write file");
    f << cube.dump(2) << "\n";
    r.line("cube written to " + o.out);
  } else {
    r.line("cube:");
    std::istringstream is(cube.dump(2));
    for (std::string l; std::getline(is, l);) r.line(l);
  }
}

void limit(Report& r, const Options& o) {
  System s = system_from_json(read_json(r.input(o.files.at(0))));
  if (o.calibrate_given) {
    if (o.calibrate < s.lo || o.calibrate > s.hi) throw InputError("--calibrate", "base point outside the window");
    try {
      Calibrated c = calibrate(s, o.calibrate);
      for (auto& [k, a] : c.alpha)
        r.line("alpha " + std::to_string(k.first) + "->" + std::to_string(k.second) + " = " + a.str());
      s = c.sys;
    } catch (const CalibrationError& e) {
      r.verdict("calibration", false, e.witness);
      return;
    }
  }
  std::string why;
  r.verdict("transitive", check_transitive(s, &why), why);
  if (!r.ok()) return;
  int qlo = 0, qhi = 0;
  if (o.range.size() == 2) {
    qlo = o.range[0];
    qhi = o.range[1];
  } else {
    bool first = true;
    for (auto& g : s.space(s.hi)) {
      int a = g.total_alex();
      qlo = first ? a : std::min(qlo, a);
      qhi = first ? a : std::max(qhi, a);
      first = false;
    }
  }
  try {
    Limit l = direct_limit(s, qlo, qhi);
    table(r, "limit", l.dims);
    json st = json::object();
    for (auto& [q, from] : l.stable_from) {
      r.line("grading " + std::to_string(q) + " stable from " + std::to_string(from));
      st[std::to_string(q)] = from;
    }
    r.result["stable_from"] = st;
    r.verdict("stable", true);
  } catch (const Unstable& e) {
    r.verdict("stable", false, "grading " + std::to_string(e.q));
  }
}

void box_cmd(Report& r, const Options& o) {
  TypeA a = typea_from_json(read_json(r.input(o.files.at(0))));
  TypeD d = typed_from_json(read_json(r.input(o.files.at(1))));
  std::string why;
  r.verdict("A-infinity relations", ainf_ok(a, &why), why);
  r.verdict("type D structure", structure_ok(d, &why), why);
  if (!r.ok()) return;
  try {
    FreeComplex c = box(a, d);
    r.line("generators: " + std::to_string(c.size()));
    RingInvariants inv = ring_invariants(c);
    r.line("homology: " + inv.str());
    r.result["homology"] = inv.str();
    r.result["complex"] = to_json(c);
  } catch (const Divergent& e) {
    r.verdict("bounded pairing", false, e.witness);
  }
}

void bordered_cmd(Report& r, const Options& o) {
  auto path = [&](const std::string& n) { return r.input(o.data + "/bordered/" + n + ".json"); };
  TypeD m0 = typed_from_json(read_json(path("M0"))), m1 = typed_from_json(read_json(path("M1")));
  TypeD k = typed_from_json(read_json(path("K")));
  std::vector<std::pair<std::string, TypeA>> probes = {{"trivial1", typea_from_json(read_json(path("trivial1")))},
                                                       {"trivial2", typea_from_json(read_json(path("trivial2")))},
                                                       {"iota1.A", free_a_module(1)},
                                                       {"iota2.A", free_a_module(2)}};
  BorderedReport b = bordered_verify(cone_data(m0, m1, k), probes);
  r.verdict("algebra relations", b.algebra);
  r.verdict("phi+ and phi- are cycles", b.phi_cycles);
  for (const Transcription* t : {&b.displayed, &b.naive}) {
    std::string sol;
    for (auto& c : t->solutions) sol += (sol.empty() ? "" : ", ") + coef_str(c);
    r.line(t->name + ": idempotents " + (t->idempotents ? "yes" : "no") + ", delta^2 = 0 " + (t->dd ? "yes" : "no") +
           ", Pi cycle " + (t->pi_cycle ? "yes" : "no") + ", truncated term {" + sol + "}, Pi I = id " + (t->pi_i ? "yes" : "no") +
           ", I Pi = id + dH " + (t->i_pi ? "yes" : "no") + ", pairing " + (t->pairing ? "yes" : "no") +
           (t->witness.empty() ? "" : " (" + t->witness + ")"));
  }
  for (auto& l : b.pairing_lines) r.line("pairing " + l);
  r.line("consistent transcription: " + b.chosen());
  r.result["chosen"] = b.chosen();
  r.verdict("exactly one transcription is consistent", b.displayed.consistent() != b.naive.consistent());
}

int knot_n(const KnotModel& k, const Options& o) {
  int n = o.n.empty() ? k.lo : o.n[0];
  if (n < k.lo || n >= k.hi) throw InputError("--n", "framing outside [" + std::to_string(k.lo) + ", " + std::to_string(k.hi - 1) + "]");
  return n;
}

void consum_cmd(Report& r, const Options& o) {
  KnotModel a = load_knot(r.input(o.files.at(0))), b = load_knot(r.input(o.files.at(1)));
  for (auto* k : {&a, &b}) {
    std::string why;
    r.verdict("model " + k->name, check_model(*k, &why), why);
  }
  if (!r.ok()) return;
  ConnectedSum s = connected_sum(a, b);
  module(r, "module", s.module);
  r.line("expanded square at (" + std::to_string(s.n) + ", " + std::to_string(s.m) + "), compared above A = " + std::to_string(s.q));
  table(r, "table above q", s.dims_a);
  r.verdict("derived tensor three ways", s.c.ok(), s.c.why);
  r.verdict("U1 = U2 on homology", s.u_agree);
  r.verdict("expanded square homogeneous", s.homogeneous);
  r.verdict("expanded square agrees", s.dims_a == s.dims_b);
  r.verdict("single arrow agrees", s.dims_a == s.dims_single);
}

void freemodel_cmd(Report& r, const Options& o) {
  KnotModel k = load_knot(r.input(o.files.at(0)));
  std::string why;
  r.verdict("model", check_model(k, &why), why);
  if (!r.ok()) return;
  int n = knot_n(k, o);
  FreeComplex c = cki_minus(k, n);
  Shift sh = knot_shift(n);
  r.line("n = " + std::to_string(n) + ", tau = " + std::to_string(sh.tau) + ", sigma = " + std::to_string(sh.sigma));
  GradedModule m = homology_over_ring(c);
  module(r, "module", m);
  LimitModule l = khi_minus_limit(k);
  r.line("direct limit: " + l.module.str());
  r.verdict("free model = direct limit", m == l.module, l.module.str());
  r.result["complex"] = to_json(c);
}

void skein_cmd(Report& r, const Options& o) {
  if (o.same) {
    KnotModel k = load_knot(r.input(o.files.at(0)));
    int n = knot_n(k, o);
    Scalar alpha;
    try {
      alpha = Scalar::parse(k.field, o.alpha);
    } catch (const std::exception&) {
      throw InputError("--alpha", "not a scalar");
    }
    FreeComplex c = cki_minus(k, n);
    GradedModule m = homology_over_ring(c);
    GradedModule s = homology_over_ring(skein_same(c, alpha));
    module(r, "module", s);
    if (alpha == Scalar::one(k.field)) r.verdict("same component = KHI- (x) W", s == tensor_w(m), tensor_w(m).str());
    return;
  }
  LinkModel l = load_link(r.input(o.files.at(0)));
  int n1 = o.n.empty() ? l.lo[0] : o.n[0], n2 = o.n.size() > 1 ? o.n[1] : o.n.empty() ? l.lo[1] : o.n[0];
  if (n1 < l.lo[0] || n1 + 1 > l.hi[0] || n2 < l.lo[1] || n2 + 1 > l.hi[1]) throw InputError("--n", "framings outside the window");
  Hypercube sq = cli_minus_link(l, n1, n2);
  ValidationReport v = validate_cube(sq);
  r.verdict("square", v.ok(), witness(v));
  if (!v.ok()) return;
  FreeComplex t = total(sq);
  auto [alo, ahi] = window_or(o.window, t, 4);
  // the reduction is a homotopy equivalence over k[U1, U2]
  FreeComplex red = sdr(t).H;
  table(r, "table", homology_table(skein_different(red), alo, ahi));
}

void verify_cmd(Report& r, const Options& o) {
  std::vector<std::string> names;
  if (o.suite == "all")
    names = suite_names();
  else if (std::find(suite_names().begin(), suite_names().end(), o.suite) != suite_names().end())
    names = {o.suite};
  else
    throw InputError("--suite", "unknown suite " + o.suite);
  json suites = json::array();
  for (auto& n : names) {
    SuiteReport s = run_suite(n, o.data);
    r.line("criterion " + std::to_string(s.criterion) + " " + n + ": " + (s.ok() ? "PASS" : "FAIL") + " (" + std::to_string(s.checks) +
           " checks)");
    for (auto& x : s.notes) r.line("    " + x);
    r.verdict(n, s.ok(), s.failures.empty() ? "" : s.failures[0]);
    suites.push_back({{"name", n}, {"criterion", s.criterion}, {"checks", s.checks}, {"failed", s.failed}, {"notes", s.notes},
                      {"failures", s.failures}});
  }
  r.result["suites"] = suites;
}

void render(const Report& r, bool as_json, std::ostream& out) {
  if (as_json) {
    json j;
    j["command"] = r.args;
    json in = json::array();
    for (auto& [p, d] : r.inputs) in.push_back({{"file", p}, {"fnv1a64", d}});
    j["inputs"] = in;
    j["result"] = r.result;
    json vs = json::array();
    for (auto& v : r.verdicts) vs.push_back({{"name", v.name}, {"ok", v.ok}, {"witness", v.witness}});
    j["verdicts"] = vs;
    j["status"] = r.ok() ? "ok" : "failed";
    out << j.dump(2) << "\n";
    return;
  }
  std::string cmd;
  for (auto& a : r.args) cmd += " " + a;
  out << "# floerkit" << cmd << "\n";
  for (auto& [p, d] : r.inputs) out << "# input " << p << " fnv1a64 " << d << "\n";
  for (auto& l : r.lines) out << l << "\n";
  for (auto& v : r.verdicts) out << "verdict " << v.name << ": " << (v.ok ? "ok" : "FAILED") << (v.ok || v.witness.empty() ? "" : " [" + v.witness + "]") << "\n";
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact chain complexes, hypercubes and knot models over k[U]", "floerkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "machine-readable report");
  app.add_option("--data", o.data, "bundled data directory");

  auto files = [&](CLI::App* s, int k, const std::string& what) { s->add_option("files", o.files, what)->required()->expected(k); };
  auto field = [&](CLI::App* s) {
    s->add_option("--field", o.field, "homology at U = 0; with a value, change coefficients (F2, Q, Qi)")->expected(0, 1);
  };
  auto window = [&](CLI::App* s) { s->add_option("--window", o.window, "Alexander window a b")->expected(2); };

  CLI::App* homology_c = app.add_subcommand("homology", "homology of a complex file");
  files(homology_c, 1, "complex file");
  homology_c->add_flag("--ring", o.ring, "module over k[U] (default)");
  field(homology_c);
  homology_c->add_option("--truncate", o.truncate, "keep generators with A > q");
  window(homology_c);

  CLI::App* dtensor_c = app.add_subcommand("dtensor", "derived tensor product over k[U]");
  files(dtensor_c, 2, "two complex files");
  dtensor_c->add_flag("--check-three-way", o.three_way, "compare the three descriptions");
  field(dtensor_c);
  window(dtensor_c);

  CLI::App* eigen_c = app.add_subcommand("eigencube", "generalized eigenspace cube of an operator");
  files(eigen_c, 1, "cube file");
  eigen_c->add_option("--op", o.op, "operator file")->required();
  eigen_c->add_option("--lambda", o.lambda, "eigenvalue")->required();
  eigen_c->add_option("--out", o.out, "write the reduced cube file here");

  CLI::App* limit_c = app.add_subcommand("limit", "direct limit of a transitive system");
  files(limit_c, 1, "system file");
  limit_c->add_option("--calibrate", o.calibrate, "calibrate a projective system at this base point");
  limit_c->add_option("--grading-range", o.range, "gradings a b")->expected(2);

  CLI::App* box_c = app.add_subcommand("box", "box tensor product of a type A and a type D structure");
  files(box_c, 2, "type A file, type D file");

  CLI::App* bordered_c = app.add_subcommand("bordered-verify", "surgery cone over the torus algebra");

  CLI::App* consum_c = app.add_subcommand("consum", "connected sum of two knot models");
  files(consum_c, 2, "two knot files");

  CLI::App* free_c = app.add_subcommand("freemodel", "CKI- of a knot model at framing n");
  files(free_c, 1, "knot file");
  free_c->add_option("--n", o.n, "framing")->expected(1);

  CLI::App* skein_c = app.add_subcommand("skein", "skein cones");
  files(skein_c, 1, "link file, or a knot file with --same-component");
  skein_c->add_flag("--same-component", o.same, "Cone((1 - alpha) U) on a knot model");
  skein_c->add_option("--alpha", o.alpha, "unit alpha for --same-component");
  skein_c->add_option("--n", o.n, "framing, or two framings for a link")->expected(1, 2);
  window(skein_c);

  CLI::App* verify_c = app.add_subcommand("verify", "property suites on the bundled corpus");
  verify_c->add_option("--suite", o.suite, "suite name or all");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  o.field.erase(std::remove(o.field.begin(), o.field.end(), std::string()), o.field.end());
  for (CLI::App* s : app.get_subcommands()) {
    if (auto* f = s->get_option_no_throw("--field")) o.field_given = f->count() > 0;
    if (auto* t = s->get_option_no_throw("--truncate")) o.truncate_given = t->count() > 0;
  }
  o.calibrate_given = limit_c->get_option("--calibrate")->count() > 0;

  Report r;
  r.args = args;
  try {
    if (homology_c->parsed()) homology(r, o);
    else if (dtensor_c->parsed()) dtensor(r, o);
    else if (eigen_c->parsed()) eigencube(r, o);
    else if (limit_c->parsed()) limit(r, o);
    else if (box_c->parsed()) box_cmd(r, o);
    else if (bordered_c->parsed()) bordered_cmd(r, o);
    else if (consum_c->parsed()) consum_cmd(r, o);
    else if (free_c->parsed()) freemodel_cmd(r, o);
    else if (skein_c->parsed()) skein_cmd(r, o);
    else if (verify_c->parsed()) verify_cmd(r, o);
  } catch (const InputError& e) {
    // field paths are relative to the file being read, which is the last input
    std::string file = r.inputs.empty() ? "" : r.inputs.back().first;
    bool prefix = !file.empty() && e.where.rfind(file, 0) != 0 && e.where.rfind("--", 0) != 0;
    err << "error: " << (prefix ? file + ": " : "") << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  render(r, o.json, out);
  return r.ok() ? 0 : 1;
}

}  // namespace fk
