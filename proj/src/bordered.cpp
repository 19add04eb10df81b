#include "floerkit/bordered.hpp"

#include <algorithm>
#include <functional>

namespace fk {

namespace torus {

namespace {
const char* kNames[kBasis] = {"iota1", "iota2", "rho1", "rho2", "rho3", "rho12", "rho23", "rho123"};
const int kLeft[kBasis] = {1, 2, 1, 2, 1, 1, 2, 1};
const int kRight[kBasis] = {1, 2, 2, 1, 2, 1, 2, 2};
// path labels of the non-idempotent elements
const char* kPath[kBasis] = {"", "", "1", "2", "3", "12", "23", "123"};
}  // namespace

int left_idem(int b) { return kLeft[b]; }
int right_idem(int b) { return kRight[b]; }
bool is_idem(int b) { return b == I1 || b == I2; }
int idem_elt(int idem) { return idem == 1 ? I1 : I2; }
std::string name(int b) { return kNames[b]; }

int parse(const std::string& s) {
  for (int b = 0; b < kBasis; ++b)
    if (s == kNames[b]) return b;
  throw std::invalid_argument("unknown algebra element '" + s + "'");
}

int mul(int a, int b) {
  if (kRight[a] != kLeft[b]) return -1;
  if (is_idem(a)) return b;
  if (is_idem(b)) return a;
  std::string p = std::string(kPath[a]) + kPath[b];
  for (int c = R1; c < kBasis; ++c)
    if (p == kPath[c]) return c;
  return -1;  // rho2 rho1, rho3 rho2 and their multiples
}

bool check_algebra(std::string* why) {
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  if (mul(R2, R1) != -1 || mul(R3, R2) != -1) return fail("rho2 rho1 or rho3 rho2 is nonzero");
  if (mul(R1, R2) != R12 || mul(R2, R3) != R23 || mul(R12, R3) != R123 || mul(R1, R23) != R123)
    return fail("path products");
  if (mul(I1, I2) != -1 || mul(I2, I1) != -1 || mul(I1, I1) != I1 || mul(I2, I2) != I2)
    return fail("idempotents are not orthogonal");
  for (int a = 0; a < kBasis; ++a) {
    if (mul(idem_elt(kLeft[a]), a) != a || mul(a, idem_elt(kRight[a])) != a) return fail("unit law at " + name(a));
    if (mul(idem_elt(3 - kLeft[a]), a) != -1 || mul(a, idem_elt(3 - kRight[a])) != -1)
      return fail("wrong idempotent acts on " + name(a));
    for (int b = 0; b < kBasis; ++b) {
      int ab = mul(a, b);
      if (ab >= 0 && (kLeft[ab] != kLeft[a] || kRight[ab] != kRight[b])) return fail("idempotents of " + name(ab));
      for (int c = 0; c < kBasis; ++c) {
        int l = ab < 0 ? -1 : mul(ab, c);
        int bc = mul(b, c);
        int r = bc < 0 ? -1 : mul(a, bc);
        if (l != r) return fail("associativity at " + name(a) + " " + name(b) + " " + name(c));
      }
    }
  }
  return true;
}

}  // namespace torus

using namespace torus;

Coef operator+(const Coef& a, const Coef& b) {
  Coef r = a;
  for (auto& t : b)
    if (!r.erase(t)) r.insert(t);
  return r;
}

Coef operator*(const Coef& a, const Coef& b) {
  Coef r;
  for (auto& [x, p] : a)
    for (auto& [y, q] : b) {
      int z = mul(x, y);
      if (z < 0) continue;
      std::pair<int, int> t{z, p + q};
      if (!r.erase(t)) r.insert(t);
    }
  return r;
}

std::string coef_str(const Coef& c) {
  if (c.empty()) return "0";
  std::string s;
  for (auto& [b, p] : c) {
    if (!s.empty()) s += " + ";
    s += name(b);
    if (p == 1) s += " U";
    if (p > 1) s += " U^" + std::to_string(p);
  }
  return s;
}

int TypeD::index(const std::string& n) const {
  for (int i = 0; i < size(); ++i)
    if (names[size_t(i)] == n) return i;
  throw std::out_of_range("no generator '" + n + "'");
}

namespace {

void put(DMap& m, std::pair<int, int> k, const Coef& c) {
  Coef v = m[k] + c;
  if (v.empty())
    m.erase(k);
  else
    m[k] = v;
}

}  // namespace

DMap dcompose(const DMap& f, const DMap& g) {
  DMap r;
  for (auto& [k1, a] : f)
    for (auto& [k2, b] : g)
      if (k2.second == k1.first) put(r, {k2.first, k1.second}, a * b);
  return r;
}

DMap dadd(const DMap& f, const DMap& g) {
  DMap r = f;
  for (auto& [k, c] : g) put(r, k, c);
  return r;
}

DMap did(const TypeD& x) {
  DMap r;
  for (int i = 0; i < x.size(); ++i) r[{i, i}] = {{idem_elt(x.idem[size_t(i)]), 0}};
  return r;
}

DMap dboundary(const TypeD& x, const TypeD& y, const DMap& f) { return dadd(dcompose(f, y.delta), dcompose(x.delta, f)); }

bool structure_ok(const TypeD& x, std::string* why) {
  DMap dd = dcompose(x.delta, x.delta);
  if (dd.empty()) return true;
  if (why) {
    auto& [k, c] = *dd.begin();
    *why = "delta o delta: " + x.names[size_t(k.second)] + " -> " + coef_str(c) + " (x) " + x.names[size_t(k.first)];
  }
  return false;
}

bool idempotents_ok(const TypeD& x, const TypeD& y, const DMap& f, std::string* why) {
  for (auto& [k, c] : f)
    for (auto& [b, p] : c)
      if (left_idem(b) != x.idem[size_t(k.second)] || right_idem(b) != y.idem[size_t(k.first)]) {
        if (why) *why = name(b) + " from " + x.names[size_t(k.second)] + " to " + y.names[size_t(k.first)];
        return false;
      }
  return true;
}

TypeD dcone(const TypeD& x, const TypeD& y, const DMap& f) {
  TypeD c;
  int n = x.size();
  for (int i = 0; i < n; ++i) {
    c.names.push_back(x.names[size_t(i)] + "0");
    c.idem.push_back(x.idem[size_t(i)]);
  }
  for (int i = 0; i < y.size(); ++i) {
    c.names.push_back(y.names[size_t(i)] + "1");
    c.idem.push_back(y.idem[size_t(i)]);
  }
  for (auto& [k, v] : x.delta) c.delta[k] = v;
  for (auto& [k, v] : y.delta) c.delta[{k.first + n, k.second + n}] = v;
  for (auto& [k, v] : f) put(c.delta, {k.first + n, k.second}, v);
  return c;
}

// ---------------------------------------------------------------- files

namespace {

void read_gens(const json& j, const std::string& path, std::vector<std::string>& names, std::vector<int>& idem) {
  if (as_field(need(j, "field", path), join_path(path, "field")) != Field::F2)
    throw InputError(join_path(path, "field"), "bordered modules are over F2");
  const json& g = need(j, "generators", path);
  std::string gp = join_path(path, "generators");
  if (!g.is_array()) throw InputError(gp, "expected a list");
  for (size_t i = 0; i < g.size(); ++i) {
    std::string p = join_path(gp, i);
    std::string n = as_str(need(g[i], "name", p), join_path(p, "name"));
    if (std::find(names.begin(), names.end(), n) != names.end()) throw InputError(join_path(p, "name"), "duplicate generator");
    int id = as_int(need(g[i], "idem", p), join_path(p, "idem"));
    if (id != 1 && id != 2) throw InputError(join_path(p, "idem"), "idempotent must be 1 or 2");
    names.push_back(n);
    idem.push_back(id);
  }
}

int gen_index(const std::vector<std::string>& names, const json& v, const std::string& p) {
  std::string n = as_str(v, p);
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end()) throw InputError(p, "unknown generator '" + n + "'");
  return int(it - names.begin());
}

int alg(const json& v, const std::string& p) {
  try {
    return parse(as_str(v, p));
  } catch (const std::invalid_argument& e) {
    throw InputError(p, e.what());
  }
}

bool odd(const json& v, const std::string& p) { return !as_scalar(Field::F2, v, p).is_zero(); }

}  // namespace

TypeD typed_from_json(const json& j, const std::string& path) {
  TypeD d;
  read_gens(j, path, d.names, d.idem);
  const json& e = need(j, "delta", path);
  std::string ep = join_path(path, "delta");
  if (!e.is_array()) throw InputError(ep, "expected a list");
  for (size_t i = 0; i < e.size(); ++i) {
    std::string p = join_path(ep, i);
    if (!e[i].is_array() || e[i].size() != 5) throw InputError(p, "expected [from, element, to, U power, coefficient]");
    int s = gen_index(d.names, e[i][0], join_path(p, 0));
    int b = alg(e[i][1], join_path(p, 1));
    int t = gen_index(d.names, e[i][2], join_path(p, 2));
    int u = as_int(e[i][3], join_path(p, 3));
    if (u < 0) throw InputError(join_path(p, 3), "negative U power");
    if (odd(e[i][4], join_path(p, 4))) put(d.delta, {t, s}, {{b, u}});
  }
  return d;
}

json to_json(const TypeD& d) {
  json g = json::array(), e = json::array();
  for (int i = 0; i < d.size(); ++i) g.push_back({{"name", d.names[size_t(i)]}, {"idem", d.idem[size_t(i)]}});
  for (auto& [k, c] : d.delta)
    for (auto& [b, p] : c) e.push_back(json::array({d.names[size_t(k.second)], name(b), d.names[size_t(k.first)], p, "1"}));
  return json{{"kind", "D"}, {"field", "F2"}, {"generators", g}, {"delta", e}};
}

TypeA typea_from_json(const json& j, const std::string& path) {
  TypeA a;
  read_gens(j, path, a.names, a.idem);
  if (j.contains("kmax")) a.kmax = as_int(j["kmax"], join_path(path, "kmax"));
  if (j.contains("unbounded")) a.unbounded = j["unbounded"].is_boolean() && j["unbounded"].get<bool>();
  const json& e = need(j, "actions", path);
  std::string ep = join_path(path, "actions");
  if (!e.is_array()) throw InputError(ep, "expected a list");
  for (size_t i = 0; i < e.size(); ++i) {
    std::string p = join_path(ep, i);
    if (!e[i].is_array() || e[i].size() != 5 || !e[i][1].is_array())
      throw InputError(p, "expected [x, [elements], y, U power, coefficient]");
    int x = gen_index(a.names, e[i][0], join_path(p, 0));
    std::vector<int> in;
    for (size_t k = 0; k < e[i][1].size(); ++k) {
      int b = alg(e[i][1][k], join_path(join_path(p, 1), k));
      if (is_idem(b)) throw InputError(join_path(join_path(p, 1), k), "idempotent inputs are implied by unitality");
      in.push_back(b);
    }
    if (int(in.size()) > a.kmax) throw InputError(join_path(p, 1), "more inputs than kmax");
    int y = gen_index(a.names, e[i][2], join_path(p, 2));
    int u = as_int(e[i][3], join_path(p, 3));
    if (u < 0) throw InputError(join_path(p, 3), "negative U power");
    if (odd(e[i][4], join_path(p, 4))) {
      auto& s = a.m[{x, in}];
      if (!s.erase({y, u})) s.insert({y, u});
    }
  }
  return a;
}

TypeA free_a_module(int idem) {
  TypeA a;
  std::vector<int> basis;
  for (int b = 0; b < kBasis; ++b)
    if (left_idem(b) == idem) basis.push_back(b);
  for (int b : basis) {
    a.names.push_back(name(b));
    a.idem.push_back(right_idem(b));
  }
  for (size_t i = 0; i < basis.size(); ++i)
    for (int c = R1; c < kBasis; ++c) {
      int p = mul(basis[i], c);
      if (p < 0) continue;
      int j = int(std::find(basis.begin(), basis.end(), p) - basis.begin());
      a.m[{int(i), {c}}].insert({j, 0});
    }
  return a;
}

TypeA solid_torus_module(int kmax) {
  TypeA a;
  a.names = {"n"};
  a.idem = {1};
  a.kmax = kmax;
  a.unbounded = true;
  for (int i = 0; i + 2 <= kmax; ++i) {
    std::vector<int> in{R3};
    for (int k = 0; k < i; ++k) in.push_back(R23);
    in.push_back(R2);
    a.m[{0, in}].insert({0, 0});
  }
  return a;
}

namespace {

using Terms = std::set<std::pair<int, int>>;

void toggle(Terms& t, std::pair<int, int> x) {
  if (!t.erase(x)) t.insert(x);
}

Terms act(const TypeA& a, int x, const std::vector<int>& in) {
  auto it = a.m.find({x, in});
  return it == a.m.end() ? Terms{} : it->second;
}

}  // namespace

bool ainf_ok(const TypeA& a, std::string* why) {
  std::vector<int> seq;
  std::string err;
  std::function<bool(int, int)> rec = [&](int x, int len) -> bool {
    // relation for the current sequence
    Terms sum;
    int n = int(seq.size());
    for (int i = 0; i <= n; ++i) {
      std::vector<int> first(seq.begin(), seq.begin() + i), rest(seq.begin() + i, seq.end());
      for (auto& [y, p] : act(a, x, first))
        for (auto& [z, q] : act(a, y, rest)) toggle(sum, {z, p + q});
    }
    for (int j = 0; j + 1 < n; ++j) {
      int ab = mul(seq[size_t(j)], seq[size_t(j + 1)]);
      if (ab < 0) continue;
      std::vector<int> s2(seq.begin(), seq.begin() + j);
      s2.push_back(ab);
      s2.insert(s2.end(), seq.begin() + j + 2, seq.end());
      for (auto& t : act(a, x, s2)) toggle(sum, t);
    }
    if (!sum.empty()) {
      err = "relation fails at " + a.names[size_t(x)];
      for (int b : seq) err += " " + name(b);
      return false;
    }
    if (len == a.kmax) return true;
    int need_idem = seq.empty() ? a.idem[size_t(x)] : right_idem(seq.back());
    for (int b = R1; b < kBasis; ++b) {
      if (left_idem(b) != need_idem) continue;
      seq.push_back(b);
      bool ok = rec(x, len + 1);
      seq.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  for (int x = 0; x < a.size(); ++x)
    if (!rec(x, 0)) {
      if (why) *why = err;
      return false;
    }
  return true;
}

FreeComplex box(const TypeA& a, const TypeD& d) {
  // non-idempotent delta edges: source -> (target, element, U power)
  std::vector<std::vector<std::tuple<int, int, int>>> out(size_t(d.size()));
  for (auto& [k, c] : d.delta)
    for (auto& [b, p] : c)
      if (!is_idem(b)) out[size_t(k.second)].push_back({k.first, b, p});
  if (a.unbounded) {
    // longest chain of delta edges, with a cycle as witness of divergence
    std::vector<int> state(size_t(d.size()), 0), depth(size_t(d.size()), 0);
    std::vector<int> stack;
    std::function<void(int)> dfs = [&](int v) {
      state[size_t(v)] = 1;
      stack.push_back(v);
      for (auto& [t, b, p] : out[size_t(v)]) {
        if (state[size_t(t)] == 1) {
          std::string w;
          auto it = std::find(stack.begin(), stack.end(), t);
          for (; it != stack.end(); ++it) w += d.names[size_t(*it)] + " -> ";
          throw Divergent(w + d.names[size_t(t)] + " via " + name(b));
        }
        if (state[size_t(t)] == 0) dfs(t);
        depth[size_t(v)] = std::max(depth[size_t(v)], depth[size_t(t)] + 1);
      }
      stack.pop_back();
      state[size_t(v)] = 2;
    };
    for (int v = 0; v < d.size(); ++v)
      if (!state[size_t(v)]) dfs(v);
    for (int v = 0; v < d.size(); ++v)
      if (depth[size_t(v)] > a.kmax)
        throw Divergent("delta chains from " + d.names[size_t(v)] + " outrun the action table");
  }
  std::vector<Generator> gens;
  std::map<std::pair<int, int>, int> idx;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < d.size(); ++y)
      if (a.idem[size_t(x)] == d.idem[size_t(y)]) {
        idx[{x, y}] = int(gens.size());
        gens.push_back({a.names[size_t(x)] + "|" + d.names[size_t(y)], 0, {0}});
      }
  FreeComplex c(Field::F2, 1, gens);
  std::map<std::tuple<int, int, int>, int> terms;  // (target, source, U power) -> parity
  auto add = [&](int w, int z, int s, int p) {
    auto it = idx.find({w, z});
    if (it != idx.end()) terms[{it->second, s, p}] ^= 1;
  };
  std::vector<int> seq;
  for (auto& [xy, s] : idx) {
    auto [x, y] = xy;
    for (auto& [w, p] : act(a, x, {})) add(w, y, s, p);
    for (auto& [k, co] : d.delta)
      if (k.second == y)
        for (auto& [b, p] : co)
          if (b == idem_elt(a.idem[size_t(x)])) add(x, k.first, s, p);
    std::function<void(int, int)> walk = [&](int z, int up) {
      if (!seq.empty())
        for (auto& [w, p] : act(a, x, seq)) add(w, z, s, up + p);
      if (int(seq.size()) == a.kmax) return;
      for (auto& [t, b, p] : out[size_t(z)]) {
        seq.push_back(b);
        walk(t, up + p);
        seq.pop_back();
      }
    };
    walk(y, 0);
  }
  for (auto& [k, v] : terms)
    if (v) c.d.add(std::get<0>(k), std::get<1>(k), Poly::monomial(Field::F2, {std::get<2>(k)}, Scalar::one(Field::F2)));
  return c;
}

// ---------------------------------------------------------------- the surgery cone

ConeData cone_data(const TypeD& m0, const TypeD& m1, const TypeD& k) {
  ConeData c{m0, m1, k, {}, {}};
  int a0 = m0.index("a"), a1 = m1.index("a"), b1 = m1.index("b");
  c.phi_plus[{a1, a0}] = {{idem_elt(m0.idem[size_t(a0)]), 0}};
  c.phi_minus[{b1, a0}] = {{R3, 0}};
  return c;
}

namespace {

DMap upow(const DMap& f, int k) {
  DMap r;
  for (auto& [key, c] : f) {
    Coef v;
    for (auto& [b, p] : c) v.insert({b, p + k});
    r[key] = v;
  }
  return r;
}

Coef poly_coef(int b, int mask) {
  Coef c;
  for (int i = 0; i < 3; ++i)
    if (mask >> i & 1) c.insert({b, i});
  return c;
}

void check(Transcription& t, const ConeData& c, const std::vector<std::pair<std::string, TypeA>>& probes,
           std::vector<std::string>* lines) {
  const TypeD& cone = t.cone;
  const TypeD& k = c.k;
  auto note = [&](const std::string& w) {
    if (t.witness.empty()) t.witness = w;
  };
  std::string why;
  t.idempotents = idempotents_ok(cone, cone, cone.delta, &why);
  if (!t.idempotents) note("idempotents: " + why);
  t.dd = structure_ok(cone, &why);
  if (!t.dd) note(why);
  int a0 = cone.index("a0"), a1 = cone.index("a1"), b1 = cone.index("b1"), x = k.index("x");
  DMap pi;
  pi[{x, b1}] = {{I2, 0}};
  pi[{x, a1}] = {{R3, 1}};
  t.pi_cycle = dboundary(cone, k, pi).empty();
  if (!t.pi_cycle) note("d(Pi) != 0");
  // I(x) = b1 + rho2 (x) a0 (x) c, c a polynomial of degree at most 2
  for (int mask = 0; mask < 8; ++mask) {
    DMap i;
    i[{b1, x}] = {{I2, 0}};
    if (mask) i[{a0, x}] = poly_coef(R2, mask);
    if (dboundary(k, cone, i).empty()) t.solutions.push_back(poly_coef(R2, mask));
  }
  if (t.solutions.size() != 1) {
    note(std::to_string(t.solutions.size()) + " solutions for the missing term of I");
  } else {
    DMap i;
    i[{b1, x}] = {{I2, 0}};
    if (!t.solutions[0].empty()) i[{a0, x}] = t.solutions[0];
    DMap h;
    h[{a0, a1}] = {{I1, 0}};
    t.pi_i = dcompose(i, pi) == did(k);
    if (!t.pi_i) note("Pi o I != id");
    t.i_pi = dadd(dcompose(pi, i), did(cone)) == dboundary(cone, cone, h);
    if (!t.i_pi) note("I o Pi != id + d(H)");
  }
  t.pairing = true;
  for (auto& [n, a] : probes) {
    RingInvariants l = ring_invariants(box(a, cone)), r = ring_invariants(box(a, k));
    if (lines) lines->push_back(t.name + " " + n + ": " + l.str() + " | " + r.str());
    if (!(l == r)) {
      t.pairing = false;
      note("pairing with " + n + " gives " + l.str() + " against " + r.str());
    }
  }
}

}  // namespace

BorderedReport bordered_verify(const ConeData& c, const std::vector<std::pair<std::string, TypeA>>& probes) {
  BorderedReport r;
  r.algebra = check_algebra();
  r.phi_cycles = dboundary(c.m0, c.m1, c.phi_plus).empty() && dboundary(c.m0, c.m1, c.phi_minus).empty() &&
                 idempotents_ok(c.m0, c.m1, c.phi_plus) && idempotents_ok(c.m0, c.m1, c.phi_minus);
  r.displayed.name = "displayed";
  r.displayed.cone = dcone(c.m0, c.m1, dadd(c.phi_plus, upow(c.phi_minus, 1)));
  // rho2 as printed for the negative bypass map, U on the positive one
  DMap printed;
  for (auto& [k, v] : c.phi_minus) printed[k] = {{R2, 0}};
  r.naive.name = "naive";
  r.naive.cone = dcone(c.m0, c.m1, dadd(upow(c.phi_plus, 1), printed));
  check(r.displayed, c, probes, &r.pairing_lines);
  check(r.naive, c, probes, &r.pairing_lines);
  return r;
}

// ---------------------------------------------------------------- bypass

int f2_bypass(int i) { return i > 0 ? i - 1 : -1; }

FreeComplex bypass_cone(Field f) {
  // resolution of k[U]/U: d p = U q
  FreeComplex r(f, 1, {{"p", 1, {-1}}, {"q", 0, {0}}});
  r.set_d(1, 0, Poly::var(f, 1, 0));
  FreeComplex t(f, 1, {{"z", 0, {-1}}});
  // f_*(U^i q) = U^{i-1} z is realized on the resolution by p -> z
  PolyMatrix m(f, 1, 1, 2);
  m.set(0, 0, Poly::constant(f, 1, Scalar::one(f)));
  return cone(ChainMap{r, t, m, -1, {0}});
}

bool TriangleReport::ok() const {
  if (!compositions_zero) return false;
  for (auto& n : nodes)
    if (!n.exact) return false;
  return true;
}

TriangleReport bypass_triangle(const FreeComplex& c) {
  if (c.arity != 1) throw std::invalid_argument("bypass triangle needs a single U variable");
  TriangleReport r;
  FreeComplex q = specialize_zero(c);
  GradedView vc(c), vq(q);
  int span = vc.max_alex() - vc.min_alex();
  int alo = vc.min_alex() - span - 2, ahi = vc.max_alex() + 1;
  std::set<int> hs;
  for (int h : vc.h_values())
    for (int k = -1; k <= 1; ++k) hs.insert(h + k);
  Field f = c.field;
  // induced map in homology coordinates
  auto induced = [&](const Mat& m, const GradedView& vs, int hs_, int as, const GradedView& vt, int ht, int at) {
    Mat b = vs.hom_basis(hs_, as);
    int rt = vt.hom_dim(ht, at);
    if (b.cols() == 0 || rt == 0) return Mat(f, rt, b.cols());
    return vt.hom_coords(m * b, ht, at);
  };
  auto pi_mat = [&](int h, int a) {
    const auto& bc = vc.basis(h, a);
    Mat m(f, vq.dim(h, a), int(bc.size()));
    for (size_t k = 0; k < bc.size(); ++k)
      if (bc[k].second[0] == 0) m(vq.locate(h, a, bc[k].first, {}), int(k)) = Scalar::one(f);
    return m;
  };
  // lift to exponent 0, apply d, divide by U
  auto conn_mat = [&](int h, int a) {
    const auto& bq = vq.basis(h, a);
    int hd = c.hdown(h);
    Mat lift(f, vc.dim(h, a), int(bq.size()));
    for (size_t k = 0; k < bq.size(); ++k) lift(vc.locate(h, a, bq[k].first, {0}), int(k)) = Scalar::one(f);
    Mat dl = vc.dmat(h, a) * lift;
    const auto& bd = vc.basis(hd, a);
    Mat m(f, vc.dim(hd, a + 1), int(bq.size()));
    for (int row = 0; row < dl.rows(); ++row) {
      auto [g, e] = bd[size_t(row)];
      if (e[0] == 0) continue;
      int t = vc.locate(hd, a + 1, g, {e[0] - 1});
      for (int col = 0; col < dl.cols(); ++col) m(t, col) = dl(row, col);
    }
    return m;
  };
  std::map<std::pair<int, int>, TriangleNode> nodes;
  std::map<std::pair<int, int>, Mat> mu, mpi, mc;
  for (int h : hs)
    for (int a = alo; a <= ahi; ++a) {
      TriangleNode n;
      n.h = h;
      n.a = a;
      n.dim_c = vc.hom_dim(h, a);
      n.dim_q = vq.hom_dim(h, a);
      mu[{h, a}] = induced(vc.umat(0, 1, h, a + 1), vc, h, a + 1, vc, h, a);
      mpi[{h, a}] = induced(pi_mat(h, a), vc, h, a, vq, h, a);
      mc[{h, a}] = induced(conn_mat(h, a), vq, h, a, vc, c.hdown(h), a + 1);
      n.rank_u = rank(mu[{h, a}]);
      n.rank_pi = rank(mpi[{h, a}]);
      n.rank_conn = rank(mc[{h, a}]);
      nodes[{h, a}] = n;
    }
  for (auto& [k, n] : nodes) {
    auto [h, a] = k;
    int hd = c.hdown(h);
    auto below = nodes.find({hd, a});
    int ru_next = below == nodes.end() ? 0 : below->second.rank_u;
    int dim_next = vc.hom_dim(hd, a + 1);
    n.exact = n.rank_u + n.rank_pi == n.dim_c && n.rank_pi + n.rank_conn == n.dim_q && n.rank_conn + ru_next == dim_next;
    if (!(mpi[k] * mu[k]).is_zero() || !(mc[k] * mpi[k]).is_zero() ||
        (below != nodes.end() && !(mu[{hd, a}] * mc[k]).is_zero())) {
      r.compositions_zero = false;
      if (r.why.empty()) r.why = "composition nonzero at (h=" + std::to_string(h) + ", A=" + std::to_string(a) + ")";
    }
    if (!n.exact && r.why.empty()) r.why = "not exact at (h=" + std::to_string(h) + ", A=" + std::to_string(a) + ")";
    r.nodes.push_back(n);
  }
  return r;
}

}  // namespace fk
