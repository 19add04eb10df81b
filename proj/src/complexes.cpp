#include "floerkit/complexes.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace fk {

FreeComplex::FreeComplex(Field f, int r, std::vector<Generator> g)
    : field(f), arity(r), gens(std::move(g)), d(f, r, int(gens.size()), int(gens.size())) {}

int FreeComplex::index(const std::string& name) const {
  for (int k = 0; k < size(); ++k)
    if (gens[k].name == name) return k;
  throw std::out_of_range("no generator named '" + name + "'");
}

// ---------------------------------------------------------------- validation

bool ValidationReport::has(const std::string& kind, const std::string& a, const std::string& b) const {
  for (auto& v : violations)
    if (v.kind == kind && v.a == a && v.b == b) return true;
  return false;
}

std::string ValidationReport::str() const {
  if (ok()) return "valid\n";
  std::ostringstream os;
  for (auto& v : violations) os << v.kind << " (" << v.a << ", " << v.b << "): " << v.detail << "\n";
  return os.str();
}

namespace {

// A(target) - A(source) required for a monomial U^e entry, componentwise when possible.
bool entry_homogeneous(const Generator& s, const Generator& t, const Poly& p, int arity,
                       const std::vector<int>& shift, std::string* why) {
  bool per = int(s.alex.size()) == arity && int(t.alex.size()) == arity && arity > 0 &&
             (shift.empty() || int(shift.size()) == arity);
  for (auto& [e, c] : p.terms()) {
    if (per) {
      for (int i = 0; i < arity; ++i) {
        int sh = shift.empty() ? 0 : shift[i];
        if (t.alex[i] - e[i] != s.alex[i] + sh) {
          if (why) *why = "U-exponent " + std::to_string(e[i]) + " in variable " + std::to_string(i + 1) +
                          " does not match Alexander component";
          return false;
        }
      }
    } else {
      int sh = std::accumulate(shift.begin(), shift.end(), 0);
      int deg = std::accumulate(e.begin(), e.end(), 0);
      if (t.total_alex() - deg != s.total_alex() + sh) {
        if (why) *why = "A(" + t.name + ")-" + std::to_string(deg) + " != A(" + s.name + ")" +
                        (sh ? std::to_string(sh) : "");
        return false;
      }
    }
  }
  return true;
}

}  // namespace

ValidationReport validate(const FreeComplex& c) {
  ValidationReport r;
  if (c.d.rows() != c.size() || c.d.cols() != c.size()) {
    r.violations.push_back({"ring", "", "", "differential has wrong shape"});
    return r;
  }
  size_t alen = c.gens.empty() ? 0 : c.gens[0].alex.size();
  for (auto& g : c.gens)
    if (g.alex.size() != alen) r.violations.push_back({"alex", g.name, g.name, "Alexander vector length differs"});
  for (int s = 0; s < c.size(); ++s)
    for (auto& [t, p] : c.d.column(s)) {
      const auto& gs = c.gens[s];
      const auto& gt = c.gens[t];
      if (p.arity() != c.arity || p.field() != c.field) {
        r.violations.push_back({"ring", gs.name, gt.name, "entry ring differs from complex ring"});
        continue;
      }
      if (!c.same_h(gt.h, c.hdown(gs.h)))
        r.violations.push_back({"hgrading", gs.name, gt.name,
                                "h(" + gt.name + ")=" + std::to_string(gt.h) + " but h(" + gs.name +
                                    ")-1=" + std::to_string(gs.h - 1)});
      std::string why;
      if (!entry_homogeneous(gs, gt, p, c.arity, {}, &why)) r.violations.push_back({"alex", gs.name, gt.name, why});
    }
  PolyMatrix dd = c.d * c.d;
  for (int s = 0; s < c.size(); ++s)
    for (auto& [t, p] : dd.column(s))
      r.violations.push_back({"d2", c.gens[s].name, c.gens[t].name, "d^2 coefficient " + p.str()});
  return r;
}

ValidationReport validate_map(const ChainMap& f) {
  ValidationReport r;
  const auto& S = f.source;
  const auto& T = f.target;
  if (f.m.rows() != T.size() || f.m.cols() != S.size()) {
    r.violations.push_back({"ring", "", "", "map has wrong shape"});
    return r;
  }
  for (int s = 0; s < S.size(); ++s)
    for (auto& [t, p] : f.m.column(s)) {
      int want = S.gens[s].h + f.hshift;
      if (!T.same_h(T.gens[t].h, want))
        r.violations.push_back({"hgrading", S.gens[s].name, T.gens[t].name, "map does not have degree " +
                                                                               std::to_string(f.hshift)});
      std::string why;
      if (!entry_homogeneous(S.gens[s], T.gens[t], p, S.arity, f.ashift, &why))
        r.violations.push_back({"alex", S.gens[s].name, T.gens[t].name, why});
    }
  PolyMatrix a = T.d * f.m;
  PolyMatrix b = f.m * S.d;
  PolyMatrix diff = (f.hshift % 2 == 0) ? a - b : a + b;
  for (int s = 0; s < diff.cols(); ++s)
    for (auto& [t, p] : diff.column(s))
      r.violations.push_back({"cycle", S.gens[s].name, T.gens[t].name, "commutator coefficient " + p.str()});
  return r;
}

bool is_cycle(const ChainMap& f) {
  PolyMatrix a = f.target.d * f.m;
  PolyMatrix b = f.m * f.source.d;
  return ((f.hshift % 2 == 0) ? a - b : a + b).is_zero();
}

// ---------------------------------------------------------------- modules

void GradedModule::canonicalize() { std::sort(summands.begin(), summands.end()); }

int GradedModule::free_rank() const {
  return int(std::count_if(summands.begin(), summands.end(), [](const Summand& s) { return s.free; }));
}

int GradedModule::torsion_count() const { return int(summands.size()) - free_rank(); }

std::string GradedModule::str() const {
  if (summands.empty()) return "0";
  std::ostringstream os;
  for (size_t k = 0; k < summands.size(); ++k) {
    const auto& s = summands[k];
    if (k) os << " + ";
    if (s.free)
      os << "Free(h=" << s.h << ", A=" << s.alex << ")";
    else
      os << "Torsion(h=" << s.h << ", A=" << s.alex << ", order=" << s.order << ")";
  }
  return os.str();
}

std::string GradedModule::pretty() const {
  if (summands.empty()) return "0";
  std::ostringstream os;
  for (size_t k = 0; k < summands.size(); ++k) {
    const auto& s = summands[k];
    if (k) os << " + ";
    if (s.free)
      os << "k[U]";
    else
      os << "(k[U]/U" << (s.order > 1 ? "^" + std::to_string(s.order) : "") << ")";
    os << "_{(" << s.h << "," << s.alex << ")}";
  }
  return os.str();
}

std::string table_str(const DimTable& t) {
  std::ostringstream os;
  for (auto& [k, v] : t) os << "  h=" << k.first << " A=" << k.second << " : " << v << "\n";
  return os.str();
}

FreeComplex module_complex(const GradedModule& m, Field f) {
  std::vector<Generator> g;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> orders;
  int k = 0;
  for (auto& s : m.summands) {
    if (s.free) {
      g.push_back({"f" + std::to_string(k++), s.h, {s.alex}});
      continue;
    }
    g.push_back({"y" + std::to_string(k), s.h, {s.alex}});
    g.push_back({"z" + std::to_string(k++), s.h + 1, {s.alex - s.order}});
    pairs.emplace_back(int(g.size()) - 2, int(g.size()) - 1);
    orders.push_back(s.order);
  }
  FreeComplex c(f, 1, g);
  for (size_t p = 0; p < pairs.size(); ++p)
    c.set_d(pairs[p].first, pairs[p].second, Poly::monomial(f, {orders[p]}, Scalar::one(f)));
  return c;
}

// ---------------------------------------------------------------- homology over k[U]

GradedModule homology_over_ring(const FreeComplex& c) {
  if (c.arity != 1) throw std::invalid_argument("homology_over_ring needs a single U variable");
  struct E {
    Scalar c;
    int k;
  };
  int n = c.size();
  std::vector<std::map<int, E>> col(n);
  std::vector<std::set<int>> row(n);
  auto add = [&](int t, int s, const Scalar& v, int k) {
    if (v.is_zero()) return;
    auto it = col[s].find(t);
    if (it == col[s].end()) {
      col[s].emplace(t, E{v, k});
      row[t].insert(s);
      return;
    }
    if (it->second.k != k) throw std::invalid_argument("complex is not Alexander homogeneous");
    it->second.c += v;
    if (it->second.c.is_zero()) {
      col[s].erase(it);
      row[t].erase(s);
    }
  };
  for (int s = 0; s < n; ++s)
    for (auto& [t, p] : c.d.column(s)) {
      if (!p.is_monomial()) throw std::invalid_argument("differential entry is not a monomial");
      add(t, s, p.terms().begin()->second, p.terms().begin()->first[0]);
    }
  std::vector<bool> alive(n, true);
  GradedModule m;
  while (true) {
    int bx = -1, by = -1, bk = 0;
    for (int s = 0; s < n; ++s) {
      if (!alive[s]) continue;
      for (auto& [t, e] : col[s])
        if (bx < 0 || e.k < bk) {
          bx = s;
          by = t;
          bk = e.k;
        }
    }
    if (bx < 0) break;
    int x = bx, y = by;
    Scalar cc = col[x].at(y).c;
    // clear row y by changing the other sources
    for (int x2 : std::vector<int>(row[y].begin(), row[y].end())) {
      if (x2 == x) continue;
      E e2 = col[x2].at(y);
      Scalar f = e2.c / cc;
      int sh = e2.k - bk;
      for (auto [t, ex] : std::map<int, E>(col[x])) add(t, x2, -(f * ex.c), ex.k + sh);
      for (int z : std::vector<int>(row[x2].begin(), row[x2].end())) {
        E ez = col[z].at(x2);
        add(x, z, ez.c * f, ez.k + sh);
      }
    }
    // clear column x by changing the target basis around y
    for (auto [t, et] : std::map<int, E>(col[x])) {
      if (t == y) continue;
      Scalar a = et.c / cc;
      int sh = et.k - bk;
      col[x].erase(t);
      row[t].erase(x);
      for (auto [u, eu] : std::map<int, E>(col[t])) add(u, y, a * eu.c, eu.k + sh);
    }
    if (!col[y].empty() || !row[x].empty() || row[y].size() != 1)
      throw std::logic_error("homology_over_ring: complex is not a complex (d^2 != 0)");
    const auto& gy = c.gens[y];
    if (bk > 0) m.summands.push_back({false, gy.h, gy.total_alex(), bk});
    col[x].clear();
    row[y].clear();
    alive[x] = alive[y] = false;
  }
  for (int s = 0; s < n; ++s)
    if (alive[s]) m.summands.push_back({true, c.gens[s].h, c.gens[s].total_alex(), 0});
  m.canonicalize();
  return m;
}

// ---------------------------------------------------------------- ungraded Smith form

namespace {

int udeg(const Poly& p) {
  int d = -1;
  for (auto& [e, c] : p.terms()) d = std::max(d, e[0]);
  return d;
}

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(p.coeff({udeg(p)}).inv());
}

void udivmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  q = Poly(a.field(), 1);
  r = a;
  int db = udeg(b);
  Scalar lb = b.coeff({db});
  while (!r.is_zero() && udeg(r) >= db) {
    int dr = udeg(r);
    Poly t = Poly::monomial(a.field(), {dr - db}, r.coeff({dr}) / lb);
    q += t;
    r = r - t * b;
  }
}

Poly ugcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    udivmod(a, b, q, r);
    a = b;
    b = r;
  }
  return monic(a);
}

}  // namespace

bool RingInvariants::operator==(const RingInvariants& o) const {
  return free_rank == o.free_rank && torsion == o.torsion;
}

std::string RingInvariants::str() const {
  std::ostringstream os;
  os << "free rank " << free_rank;
  for (auto& p : torsion) os << " + k[U]/(" << p.str() << ")";
  return os.str();
}

RingInvariants ring_invariants(const FreeComplex& cx) {
  if (cx.arity != 1) throw std::invalid_argument("ring_invariants needs a single U variable");
  int n = cx.size();
  std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n, Poly(cx.field, 1)));
  for (int s = 0; s < n; ++s)
    for (auto& [t, p] : cx.d.column(s)) a[t][s] = p;
  std::vector<Poly> diag;
  int r0 = 0;
  while (true) {
    int bi = -1, bj = -1, bd = 0;
    for (int i = r0; i < n; ++i)
      for (int j = r0; j < n; ++j)
        if (!a[i][j].is_zero() && (bi < 0 || udeg(a[i][j]) < bd)) {
          bi = i;
          bj = j;
          bd = udeg(a[i][j]);
        }
    if (bi < 0) break;
    std::swap(a[r0], a[bi]);
    for (int i = 0; i < n; ++i) std::swap(a[i][r0], a[i][bj]);
    bool clean = true;
    for (int i = r0 + 1; i < n; ++i) {
      if (a[i][r0].is_zero()) continue;
      Poly q, r;
      udivmod(a[i][r0], a[r0][r0], q, r);
      for (int j = r0; j < n; ++j) a[i][j] = a[i][j] - q * a[r0][j];
      if (!r.is_zero()) clean = false;
    }
    for (int j = r0 + 1; j < n; ++j) {
      if (a[r0][j].is_zero()) continue;
      Poly q, r;
      udivmod(a[r0][j], a[r0][r0], q, r);
      for (int i = r0; i < n; ++i) a[i][j] = a[i][j] - q * a[i][r0];
      if (!r.is_zero()) clean = false;
    }
    if (!clean) continue;
    diag.push_back(monic(a[r0][r0]));
    ++r0;
  }
  // make the diagonal a divisibility chain
  for (size_t i = 0; i < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) {
      Poly g = ugcd(diag[i], diag[j]);
      Poly l, rem;
      udivmod(diag[i] * diag[j], g, l, rem);
      diag[i] = g;
      diag[j] = monic(l);
    }
  RingInvariants inv;
  inv.free_rank = n - 2 * int(diag.size());
  for (auto& p : diag)
    if (udeg(p) > 0) inv.torsion.push_back(p);
  return inv;
}

// ---------------------------------------------------------------- constructions

FreeComplex cone(const ChainMap& f) {
  const auto& S = f.source;
  const auto& T = f.target;
  if (S.field != T.field || S.arity != T.arity) throw std::invalid_argument("cone: ring mismatch");
  if (!is_cycle(f)) throw std::invalid_argument("cone: map is not a cycle");
  size_t alen = S.gens.empty() ? (T.gens.empty() ? 0 : T.gens[0].alex.size()) : S.gens[0].alex.size();
  bool collapse = !f.ashift.empty() && f.ashift.size() != alen;
  for (auto& g : T.gens)
    if (g.alex.size() != alen) collapse = true;
  int tot_shift = std::accumulate(f.ashift.begin(), f.ashift.end(), 0);
  std::vector<Generator> g;
  for (auto x : S.gens) {
    x.name = "s." + x.name;
    x.h += f.hshift + 1;
    if (collapse)
      x.alex = {x.total_alex() + tot_shift};
    else
      for (size_t i = 0; i < f.ashift.size(); ++i) x.alex[i] += f.ashift[i];
    g.push_back(x);
  }
  for (auto x : T.gens) {
    x.name = "t." + x.name;
    if (collapse) x.alex = {x.total_alex()};
    g.push_back(x);
  }
  FreeComplex c(S.field, S.arity, g);
  c.z2 = S.z2 || T.z2;
  int ns = S.size();
  bool neg = (f.hshift + 1) % 2 != 0;
  for (int s = 0; s < ns; ++s)
    for (auto& [t, p] : S.d.column(s)) c.set_d(t, s, p);
  for (int s = 0; s < ns; ++s)
    for (auto& [t, p] : f.m.column(s)) c.set_d(ns + t, s, p);
  for (int s = 0; s < T.size(); ++s)
    for (auto& [t, p] : T.d.column(s)) c.set_d(ns + t, ns + s, neg ? -p : p);
  return c;
}

FreeComplex shift(const FreeComplex& c, int n) {
  FreeComplex r = c;
  for (auto& g : r.gens) g.h += n;
  if (n % 2 != 0) r.d = -r.d;
  return r;
}

FreeComplex tensor_field(const FreeComplex& a, const FreeComplex& b) {
  if (a.field != b.field) throw std::invalid_argument("tensor_field: field mismatch");
  int ar = a.arity + b.arity;
  std::vector<int> ma(a.arity), mb(b.arity);
  std::iota(ma.begin(), ma.end(), 0);
  std::iota(mb.begin(), mb.end(), a.arity);
  std::vector<Generator> g;
  for (auto& x : a.gens)
    for (auto& y : b.gens) {
      Generator z{x.name + "|" + y.name, x.h + y.h, x.alex};
      z.alex.insert(z.alex.end(), y.alex.begin(), y.alex.end());
      g.push_back(z);
    }
  FreeComplex c(a.field, ar, g);
  c.z2 = a.z2 || b.z2;
  int nb = b.size();
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < nb; ++j) {
      for (auto& [t, p] : a.d.column(i)) c.d.add(t * nb + j, i * nb + j, p.remap(ma, ar));
      bool neg = a.gens[i].h % 2 != 0;
      for (auto& [t, p] : b.d.column(j)) {
        Poly q = p.remap(mb, ar);
        c.d.add(i * nb + t, i * nb + j, neg ? -q : q);
      }
    }
  return c;
}

FreeComplex tensor_ring(const FreeComplex& a, const FreeComplex& b) {
  if (a.field != b.field) throw std::invalid_argument("tensor_ring: field mismatch");
  if (a.arity != 1 || b.arity != 1) throw std::invalid_argument("tensor_ring needs single-variable complexes");
  std::vector<Generator> g;
  for (auto& x : a.gens)
    for (auto& y : b.gens) g.push_back({x.name + "|" + y.name, x.h + y.h, {x.total_alex() + y.total_alex()}});
  FreeComplex c(a.field, 1, g);
  c.z2 = a.z2 || b.z2;
  int nb = b.size();
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < nb; ++j) {
      for (auto& [t, p] : a.d.column(i)) c.d.add(t * nb + j, i * nb + j, p);
      bool neg = a.gens[i].h % 2 != 0;
      for (auto& [t, p] : b.d.column(j)) c.d.add(i * nb + t, i * nb + j, neg ? -p : p);
    }
  return c;
}

FreeComplex truncate_above(const FreeComplex& c, int q) {
  std::vector<int> keep;
  for (int k = 0; k < c.size(); ++k)
    if (c.gens[k].total_alex() > q) keep.push_back(k);
  std::vector<Generator> g;
  for (int k : keep) g.push_back(c.gens[k]);
  FreeComplex r(c.field, c.arity, g);
  r.z2 = c.z2;
  r.d = c.d.block(keep, keep);
  return r;
}

FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b) {
  std::vector<Generator> g = a.gens;
  g.insert(g.end(), b.gens.begin(), b.gens.end());
  FreeComplex c(a.field, a.arity, g);
  c.z2 = a.z2 || b.z2;
  for (int s = 0; s < a.size(); ++s)
    for (auto& [t, p] : a.d.column(s)) c.set_d(t, s, p);
  for (int s = 0; s < b.size(); ++s)
    for (auto& [t, p] : b.d.column(s)) c.set_d(a.size() + t, a.size() + s, p);
  return c;
}

FreeComplex specialize_zero(const FreeComplex& c) {
  std::vector<Generator> g = c.gens;
  for (auto& x : g) x.alex = {x.total_alex()};
  FreeComplex r(c.field, 0, g);
  r.z2 = c.z2;
  for (int s = 0; s < c.size(); ++s)
    for (auto& [t, p] : c.d.column(s)) {
      Scalar k = p.constant_term();
      if (!k.is_zero()) r.set_d(t, s, Poly::constant(c.field, 0, k));
    }
  return r;
}

FreeComplex with_field(const FreeComplex& c, Field f) {
  FreeComplex r(f, c.arity, c.gens);
  r.z2 = c.z2;
  for (int s = 0; s < c.size(); ++s)
    for (auto& [t, p] : c.d.column(s)) r.set_d(t, s, p.with_field(f));
  return r;
}

ChainMap identity_map(const FreeComplex& c) {
  ChainMap m{c, c, PolyMatrix::identity(c.field, c.arity, c.size()), 0, {}};
  return m;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  ChainMap r{f.source, g.target, g.m * f.m, g.hshift + f.hshift, {}};
  if (!f.ashift.empty() || !g.ashift.empty()) {
    if (f.ashift.size() == g.ashift.size()) {
      r.ashift = f.ashift;
      for (size_t i = 0; i < g.ashift.size(); ++i) r.ashift[i] += g.ashift[i];
    } else {
      r.ashift = {std::accumulate(f.ashift.begin(), f.ashift.end(), 0) +
                  std::accumulate(g.ashift.begin(), g.ashift.end(), 0)};
    }
  }
  return r;
}

// ---------------------------------------------------------------- reduction

SDR sdr(const FreeComplex& c) {
  int n = c.size();
  Field f = c.field;
  int ar = c.arity;
  // D by columns and rows; I columns (I[:,z] for alive z); P rows; H full
  std::vector<std::map<int, Poly>> dcol(n), drow(n);
  for (int s = 0; s < n; ++s)
    for (auto& [t, p] : c.d.column(s)) {
      dcol[s][t] = p;
      drow[t][s] = p;
    }
  std::vector<std::map<int, Poly>> icol(n), prow(n);
  for (int k = 0; k < n; ++k) {
    icol[k][k] = Poly::constant(f, ar, Scalar::one(f));
    prow[k][k] = Poly::constant(f, ar, Scalar::one(f));
  }
  PolyMatrix H(f, ar, n, n);
  std::vector<bool> alive(n, true);
  auto addto = [](std::map<int, Poly>& m, int k, const Poly& p) {
    if (p.is_zero()) return;
    auto it = m.find(k);
    if (it == m.end()) {
      m.emplace(k, p);
      return;
    }
    it->second += p;
    if (it->second.is_zero()) m.erase(it);
  };
  auto setD = [&](int t, int s, const Poly& p) {
    if (p.is_zero()) {
      dcol[s].erase(t);
      drow[t].erase(s);
    } else {
      dcol[s][t] = p;
      drow[t][s] = p;
    }
  };
  while (true) {
    int x = -1, y = -1;
    for (int s = 0; s < n && x < 0; ++s) {
      if (!alive[s]) continue;
      for (auto& [t, p] : dcol[s])
        if (p.is_unit()) {
          x = s;
          y = t;
          break;
        }
    }
    if (x < 0) break;
    Scalar ci = dcol[x].at(y).constant_term().inv();
    std::map<int, Poly> dx = dcol[x];  // column of x (targets)
    std::map<int, Poly> dy = drow[y];  // row of y (sources)
    dx.erase(y);
    dy.erase(x);
    // H += -c^{-1} I[:,x] P[y,:]
    for (auto& [v, pv] : prow[y])
      for (auto& [u, iu] : icol[x]) H.add(u, v, (iu * pv).scaled(-ci));
    // I[:,z] -= c^{-1} D(y,z) I[:,x]
    for (auto& [z, dyz] : dy)
      for (auto& [u, iu] : icol[x]) addto(icol[z], u, (dyz * iu).scaled(-ci));
    // P[z,:] -= c^{-1} D(z,x) P[y,:]
    for (auto& [z, dzx] : dx)
      for (auto& [v, pv] : prow[y]) addto(prow[z], v, (dzx * pv).scaled(-ci));
    // D(z',z) -= D(z',x) c^{-1} D(y,z)
    for (auto& [z, dyz] : dy)
      for (auto& [zp, dzx] : dx) {
        Poly cur = dcol[z].count(zp) ? dcol[z][zp] : Poly(f, ar);
        setD(zp, z, cur - (dzx * dyz).scaled(ci));
      }
    for (int k : {x, y}) {
      for (auto& [t, p] : std::map<int, Poly>(dcol[k])) setD(t, k, Poly(f, ar));
      for (auto& [s, p] : std::map<int, Poly>(drow[k])) setD(k, s, Poly(f, ar));
      alive[k] = false;
      icol[k].clear();
      prow[k].clear();
    }
  }
  std::vector<int> keep;
  for (int k = 0; k < n; ++k)
    if (alive[k]) keep.push_back(k);
  std::map<int, int> pos;
  for (size_t k = 0; k < keep.size(); ++k) pos[keep[k]] = int(k);
  std::vector<Generator> g;
  for (int k : keep) g.push_back(c.gens[k]);
  SDR r;
  r.H = FreeComplex(f, ar, g);
  r.H.z2 = c.z2;
  int m = int(keep.size());
  r.i = PolyMatrix(f, ar, n, m);
  r.pi = PolyMatrix(f, ar, m, n);
  for (int k : keep) {
    for (auto& [t, p] : dcol[k]) r.H.set_d(pos.at(t), pos[k], p);
    for (auto& [u, p] : icol[k]) r.i.set(u, pos[k], p);
    for (auto& [v, p] : prow[k]) r.pi.set(pos[k], v, p);
  }
  r.h = H;
  return r;
}

bool check_sdr(const FreeComplex& c, const SDR& s, std::string* why) {
  auto fail = [&](const char* w) {
    if (why) *why = w;
    return false;
  };
  int n = c.size(), m = s.H.size();
  PolyMatrix idn = PolyMatrix::identity(c.field, c.arity, n);
  PolyMatrix idm = PolyMatrix::identity(c.field, c.arity, m);
  if (c.d * s.i != s.i * s.H.d) return fail("i is not a chain map");
  if (s.pi * c.d != s.H.d * s.pi) return fail("pi is not a chain map");
  if (s.pi * s.i != idm) return fail("pi i != id");
  if (s.i * s.pi != idn + c.d * s.h + s.h * c.d) return fail("i pi != id + [d,h]");
  if (!(s.h * s.h).is_zero()) return fail("hh != 0");
  if (!(s.h * s.i).is_zero()) return fail("hi != 0");
  if (!(s.pi * s.h).is_zero()) return fail("pi h != 0");
  return true;
}

// ---------------------------------------------------------------- graded pieces

GradedView::GradedView(const FreeComplex& c) : c_(c) {
  if (!c_.gens.empty()) {
    amin_ = amax_ = c_.gens[0].total_alex();
    for (auto& g : c_.gens) {
      amin_ = std::min(amin_, g.total_alex());
      amax_ = std::max(amax_, g.total_alex());
    }
  }
}

std::set<int> GradedView::h_values() const {
  std::set<int> s;
  for (auto& g : c_.gens) s.insert(c_.z2 ? ((g.h % 2) + 2) % 2 : g.h);
  return s;
}

namespace {
void compositions(int total, int parts, Exp& cur, int k, std::vector<Exp>& out) {
  if (k == parts - 1) {
    cur[k] = total;
    out.push_back(cur);
    return;
  }
  for (int v = total; v >= 0; --v) {
    cur[k] = v;
    compositions(total - v, parts, cur, k + 1, out);
  }
}
}  // namespace

const std::vector<std::pair<int, Exp>>& GradedView::basis(int h, int a) const {
  if (c_.z2) h = ((h % 2) + 2) % 2;
  auto key = std::make_pair(h, a);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  std::vector<std::pair<int, Exp>> b;
  for (int g = 0; g < c_.size(); ++g) {
    if (!c_.same_h(c_.gens[g].h, h)) continue;
    int ag = c_.gens[g].total_alex();
    if (c_.arity == 0) {
      if (ag == a) b.push_back({g, {}});
      continue;
    }
    if (ag < a) continue;
    std::vector<Exp> es;
    Exp cur(c_.arity, 0);
    compositions(ag - a, c_.arity, cur, 0, es);
    for (auto& e : es) b.push_back({g, e});
  }
  auto& idx = index_[key];
  for (size_t k = 0; k < b.size(); ++k) idx[b[k]] = int(k);
  return cache_[key] = b;
}

int GradedView::locate(int h, int a, int g, const Exp& e) const {
  if (c_.z2) h = ((h % 2) + 2) % 2;
  basis(h, a);
  auto& idx = index_.at({h, a});
  auto it = idx.find({g, e});
  return it == idx.end() ? -1 : it->second;
}

Mat GradedView::pmat(const Poly& p, int h, int a) const {
  auto deg = p.alex_degree();
  int k = deg ? -*deg : 0;
  const auto& src = basis(h, a);
  const auto& tgt = basis(h, a - k);
  Mat m(c_.field, int(tgt.size()), int(src.size()));
  for (size_t j = 0; j < src.size(); ++j)
    for (auto& [e, cf] : p.terms()) {
      Exp ne = src[j].second;
      for (int i = 0; i < c_.arity; ++i) ne[i] += e[i];
      int r = locate(h, a - k, src[j].first, ne);
      if (r < 0) throw std::logic_error("pmat: polynomial is not homogeneous");
      m(r, int(j)) += cf;
    }
  return m;
}

Mat GradedView::umat(int var, int j, int h, int a) const {
  Exp e(c_.arity, 0);
  e.at(var) = j;
  return pmat(Poly::monomial(c_.field, e, Scalar::one(c_.field)), h, a);
}

Mat GradedView::dmat(int h, int a) const {
  const auto& src = basis(h, a);
  int hd = c_.hdown(h);
  const auto& tgt = basis(hd, a);
  Mat m(c_.field, int(tgt.size()), int(src.size()));
  for (size_t j = 0; j < src.size(); ++j) {
    auto [g, e] = src[j];
    for (auto& [t, p] : c_.d.column(g))
      for (auto& [pe, cf] : p.terms()) {
        Exp ne = e;
        for (int i = 0; i < c_.arity; ++i) ne[i] += pe[i];
        int r = locate(hd, a, t, ne);
        if (r < 0) throw std::logic_error("dmat: differential is not homogeneous");
        m(r, int(j)) += cf;
      }
  }
  return m;
}

Mat GradedView::cycles(int h, int a) const {
  auto key = std::make_pair(h, a);
  auto it = zc_.find(key);
  if (it != zc_.end()) return it->second;
  return zc_[key] = kernel(dmat(h, a));
}

Mat GradedView::boundaries(int h, int a) const {
  auto key = std::make_pair(h, a);
  auto it = bc_.find(key);
  if (it != bc_.end()) return it->second;
  int hu = c_.z2 ? (h + 1) % 2 : h + 1;
  return bc_[key] = image(dmat(hu, a));
}

int GradedView::hom_dim(int h, int a) const { return cycles(h, a).cols() - boundaries(h, a).cols(); }

int GradedView::induced_rank(const Mat& m, int h, int a, int a2) const {
  Mat z = cycles(h, a);
  Mat b = boundaries(h, a2);
  if (z.cols() == 0) return 0;
  Mat img = m * z;
  return rank(b.hcat(img)) - b.cols();
}

bool GradedView::induced_equal(const Mat& m, const Mat& m2, int h, int a, int a2) const {
  return induced_rank(m - m2, h, a, a2) == 0;
}

Mat GradedView::hom_basis(int h, int a) const {
  auto key = std::make_pair(h, a);
  auto it = hb_.find(key);
  if (it != hb_.end()) return it->second;
  Mat b = boundaries(h, a), z = cycles(h, a);
  Mat t = b.hcat(z);
  auto piv = rref(t);
  std::vector<int> pick;
  for (int p : piv)
    if (p >= b.cols()) pick.push_back(p - b.cols());
  return hb_[key] = z.col_block(pick);
}

Mat GradedView::hom_coords(const Mat& cyc, int h, int a) const {
  Mat b = boundaries(h, a), r = hom_basis(h, a);
  auto x = solve(b.hcat(r), cyc);
  if (!x) throw std::logic_error("hom_coords: vector is not a cycle");
  std::vector<int> rows;
  for (int k = 0; k < r.cols(); ++k) rows.push_back(b.cols() + k);
  return x->row_block(rows);
}

DimTable homology_table(const GradedView& v, int alo, int ahi) {
  DimTable t;
  for (int h : v.h_values())
    for (int a = alo; a <= ahi; ++a) {
      int d = v.hom_dim(h, a);
      if (d) t[{h, a}] = d;
    }
  return t;
}

RankTable rank_table(const GradedView& v, int var, int jmax, int alo, int ahi) {
  RankTable t;
  for (int h : v.h_values())
    for (int a = alo; a <= ahi; ++a)
      for (int j = 0; j <= jmax && a - j >= alo; ++j) {
        if (v.hom_dim(h, a) == 0) break;
        int r = v.induced_rank(v.umat(var, j, h, a), h, a, a - j);
        if (r) t[{h, a, j}] = r;
      }
  return t;
}

DimTable homology_table(const FreeComplex& c, int alo, int ahi) {
  GradedView v(c);
  return homology_table(v, alo, ahi);
}

RankTable rank_table(const FreeComplex& c, int var, int jmax, int alo, int ahi) {
  GradedView v(c);
  return rank_table(v, var, jmax, alo, ahi);
}

DimTable homology_over_field(const FreeComplex& c) {
  FreeComplex z = specialize_zero(c);
  GradedView v(z);
  std::set<int> as;
  for (auto& g : z.gens) as.insert(g.total_alex());
  DimTable t;
  for (int h : v.h_values())
    for (int a : as) {
      int d = v.hom_dim(h, a);
      if (d) t[{h, a}] = d;
    }
  return t;
}

GradedModule module_from_ranks(const DimTable& dims, const RankTable& ranks, int alo, int ahi) {
  std::set<int> hs;
  for (auto& [k, v] : dims) hs.insert(k.first);
  auto R = [&](int h, int a, int j) -> int {
    if (a > ahi || a - j < alo || j < 0) return 0;
    if (j == 0) {
      auto it = dims.find({h, a});
      return it == dims.end() ? 0 : it->second;
    }
    auto it = ranks.find({h, a, j});
    return it == ranks.end() ? 0 : it->second;
  };
  GradedModule m;
  for (int h : hs)
    for (int a = ahi; a >= alo; --a)
      for (int b = a; b >= alo; --b) {
        // bars with top exactly a and bottom exactly b
        int j = a - b;
        int reach = R(h, a, j) - R(h, a + 1, j + 1);
        int further = (b == alo) ? 0 : R(h, a, j + 1) - R(h, a + 1, j + 2);
        int cnt = reach - further;
        if (cnt < 0) throw std::logic_error("module_from_ranks: inconsistent rank data");
        for (int k = 0; k < cnt; ++k) m.summands.push_back({b == alo, h, a, b == alo ? 0 : j + 1});
      }
  m.canonicalize();
  return m;
}

}  // namespace fk
