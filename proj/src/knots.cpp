#include "floerkit/knots.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace fk {

namespace {

using Key = std::pair<int, int>;  // (h, total A)

PolyMatrix lift(const Mat& m, int arity, const Exp& e, const Scalar& c) {
  PolyMatrix p(m.field(), arity, m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int k = 0; k < m.cols(); ++k)
      if (!m(r, k).is_zero()) p.add(r, k, Poly::monomial(m.field(), e, m(r, k) * c));
  return p;
}

std::vector<int> piece(const std::vector<Generator>& g, const Key& k) {
  std::vector<int> out;
  for (size_t i = 0; i < g.size(); ++i)
    if (g[i].h == k.first && g[i].total_alex() == k.second) out.push_back(int(i));
  return out;
}

Mat sub(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Mat r(m.field(), int(rows.size()), int(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) r(int(i), int(j)) = m(rows[i], cols[j]);
  return r;
}

std::vector<Generator> load_space(const json& j, const std::string& path, int shift, int comps) {
  if (!j.is_array()) throw InputError(path, "expected a list of generators");
  std::vector<Generator> out;
  std::set<std::string> seen;
  for (size_t i = 0; i < j.size(); ++i) {
    std::string p = join_path(path, i);
    const json& g = j[i];
    if (!g.is_object()) throw InputError(p, "expected a generator object");
    Generator x;
    x.name = as_str(need(g, "name", p), join_path(p, "name"));
    if (!seen.insert(x.name).second) throw InputError(join_path(p, "name"), "duplicate generator " + x.name);
    x.h = g.contains("h") ? as_int(g["h"], join_path(p, "h")) : 0;
    const json& a = need(g, "alex", p);
    std::string ap = join_path(p, "alex");
    if (comps == 1) {
      x.alex = {as_int(a.is_array() && a.size() == 1 ? a[0] : a, ap) + shift};
    } else {
      if (!a.is_array() || int(a.size()) != comps) throw InputError(ap, "expected one grading per component");
      for (int c = 0; c < comps; ++c) x.alex.push_back(as_int(a[size_t(c)], join_path(ap, size_t(c))));
    }
    out.push_back(x);
  }
  return out;
}

std::pair<int, int> window_pair(const json& w, const std::string& path) {
  if (!w.is_array() || w.size() != 2) throw InputError(path, "expected [lo, hi]");
  int lo = as_int(w[0], join_path(path, 0)), hi = as_int(w[1], join_path(path, 1));
  if (lo > hi) throw InputError(path, "empty window");
  return {lo, hi};
}

int max_alex(const std::vector<Generator>& g) {
  int m = g.empty() ? 0 : g[0].total_alex();
  for (auto& x : g) m = std::max(m, x.total_alex());
  return m;
}

// graded pieces of a direct system step are isomorphisms in every grading >= q
bool stable_at(const KnotModel& k, int n, int q) {
  std::set<int> hs;
  for (int i = n; i <= k.hi; ++i)
    for (auto& g : k.space(i)) hs.insert(g.h);
  for (int i = n; i < k.hi; ++i)
    for (int h : hs) {
      auto c = piece(k.space(i), {h, q}), r = piece(k.space(i + 1), {h, q});
      if (c.size() != r.size()) return false;
      if (!c.empty() && rank(sub(k.plus.at(i), r, c)) != int(c.size())) return false;
    }
  return true;
}

std::vector<Generator> tensor_gens(const std::vector<Generator>& a, const std::vector<Generator>& b,
                                   const std::string& prefix, int hshift, int ashift) {
  std::vector<Generator> out;
  for (auto& x : a)
    for (auto& y : b) out.push_back({prefix + x.name + "|" + y.name, x.h + y.h + hshift, {x.total_alex() + y.total_alex() + ashift}});
  return out;
}

void place(FreeComplex& c, const Mat& m, int r0, int c0, const Scalar& s) {
  for (int r = 0; r < m.rows(); ++r)
    for (int k = 0; k < m.cols(); ++k)
      if (!m(r, k).is_zero()) c.d.add(r0 + r, c0 + k, Poly::constant(c.field, c.arity, m(r, k) * s));
}

}  // namespace

Shift knot_shift(int n) { return link_shift({n}); }

Shift link_shift(const std::vector<int>& n) {
  int r = int(n.size()), s = 0;
  for (int x : n) s += x;
  Shift out;
  out.tau = ((s + r - 1) % 2 + 2) % 2 == 1 ? 0 : 1;
  out.sigma = out.tau == 0 ? -(s + r - 2) / 2 + r - 1 : -(s + r - 1) / 2 + r - 1;
  return out;
}

KnotModel knot_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path.empty() ? "<root>" : path, "expected an object");
  std::string kp = join_path(path, "kind");
  if (as_str(need(j, "kind", path), kp) != "knot") throw InputError(kp, "expected \"knot\"");
  KnotModel k;
  k.name = j.contains("name") ? as_str(j["name"], join_path(path, "name")) : "";
  k.field = as_field(need(j, "field", path), join_path(path, "field"));
  k.genus = j.contains("genus") ? as_int(j["genus"], join_path(path, "genus")) : 0;
  std::tie(k.lo, k.hi) = window_pair(need(j, "window", path), join_path(path, "window"));
  std::string gp = join_path(path, "gradings");
  std::string gr = j.contains("gradings") ? as_str(j["gradings"], gp) : "raw";
  if (gr != "raw" && gr != "shifted") throw InputError(gp, "expected \"raw\" or \"shifted\"");
  const json& sp = need(j, "spaces", path);
  std::string spp = join_path(path, "spaces");
  for (int n = k.lo; n <= k.hi; ++n) {
    std::string key = std::to_string(n);
    int sh = gr == "raw" ? knot_shift(n).sigma : 0;
    k.spaces.push_back(load_space(need(sp, key, spp), join_path(spp, key), sh, 1));
  }
  for (const char* which : {"phi_plus", "phi_minus"}) {
    const json& mj = need(j, which, path);
    std::string mp = join_path(path, which);
    auto& dst = std::string(which) == "phi_plus" ? k.plus : k.minus;
    for (int n = k.lo; n < k.hi; ++n) {
      std::string key = std::to_string(n);
      dst[n] = sparse_map(k.field, k.space(n), k.space(n + 1), need(mj, key, mp), join_path(mp, key)).to_dense();
    }
  }
  return k;
}

KnotModel load_knot(const std::string& file) { return knot_from_json(read_json(file), ""); }

bool check_model(const KnotModel& k, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  for (int n = k.lo; n < k.hi; ++n)
    for (int pass = 0; pass < 2; ++pass) {
      const Mat& m = pass == 0 ? k.plus.at(n) : k.minus.at(n);
      int drop = pass;
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
          if (m(r, c).is_zero()) continue;
          const Generator &s = k.space(n)[c], &t = k.space(n + 1)[r];
          if (s.h != t.h || t.total_alex() != s.total_alex() - drop)
            return fail(std::string(pass == 0 ? "phi+" : "phi-") + "_" + std::to_string(n) + ": " + s.name + " -> " + t.name +
                        " is not homogeneous");
        }
    }
  for (int n = k.lo; n + 1 < k.hi; ++n)
    if (k.plus.at(n + 1) * k.minus.at(n) != k.minus.at(n + 1) * k.plus.at(n))
      return fail("phi+ and phi- do not commute at " + std::to_string(n));
  return true;
}

System plus_system(const KnotModel& k) {
  System s;
  s.field = k.field;
  s.lo = k.lo;
  s.hi = k.hi;
  s.spaces = k.spaces;
  for (int n = k.lo; n < k.hi; ++n) s.maps[{n, n + 1}] = k.plus.at(n);
  return s;
}

FreeComplex cki_minus(const KnotModel& k, int n) {
  if (n < k.lo || n >= k.hi) throw std::invalid_argument("cki_minus: n outside the window");
  std::vector<Generator> g;
  for (auto x : k.space(n)) {
    x.name = "s." + x.name;
    x.h += 1;
    x.alex = {x.total_alex() - 1};
    g.push_back(x);
  }
  for (auto x : k.space(n + 1)) {
    x.name = "t." + x.name;
    g.push_back(x);
  }
  FreeComplex c(k.field, 1, g);
  int ns = k.dim(n);
  Scalar one = Scalar::one(k.field);
  PolyMatrix m = lift(k.minus.at(n), 1, {0}, one) + lift(k.plus.at(n), 1, {1}, -one);
  for (int s = 0; s < m.cols(); ++s)
    for (auto& [t, p] : m.column(s)) c.set_d(ns + t, s, p);
  return c;
}

int stable_floor(const KnotModel& k, int n) {
  if (n >= k.hi) throw Unstable(max_alex(k.space(k.hi)));
  int top = std::numeric_limits<int>::min(), bot = std::numeric_limits<int>::max();
  for (int i = n; i <= k.hi; ++i)
    for (auto& g : k.space(i)) {
      top = std::max(top, g.total_alex());
      bot = std::min(bot, g.total_alex());
    }
  if (k.space(n).empty() && k.space(k.hi).empty()) return 0;
  int q = top;
  while (q >= bot - 1 && stable_at(k, n, q)) --q;
  return q + 1;
}

LimitModule khi_minus_limit(const KnotModel& k) {
  LimitModule out;
  int last = k.hi - 1;
  out.qlo = stable_floor(k, last);
  out.qhi = max_alex(k.space(k.hi));
  if (out.qlo > out.qhi) out.qlo = out.qhi;
  Limit l = direct_limit(plus_system(k), out.qlo, out.qhi);
  out.dims = l.dims;
  out.stable_from = l.stable_from;
  const auto& top = k.space(k.hi);
  const auto& prev = k.space(last);
  std::set<int> hs;
  for (auto& g : top) hs.insert(g.h);
  // U on grading q: phi-_{hi-1} o (phi+_{hi-1} on grading q)^{-1}
  std::map<Key, Mat> u;
  for (int h : hs)
    for (int q = out.qlo + 1; q <= out.qhi; ++q) {
      auto c = piece(prev, {h, q}), r = piece(top, {h, q}), r2 = piece(top, {h, q - 1});
      auto inv = inverse(sub(k.plus.at(last), r, c));
      if (!inv) throw Unstable(q);
      u[{h, q}] = sub(k.minus.at(last), r2, c) * *inv;
    }
  for (auto& [key, d] : out.dims) {
    auto [h, q] = key;
    out.ranks[{h, q, 0}] = d;
    Mat m = Mat::identity(k.field, d);
    for (int j = 1; q - j >= out.qlo; ++j) {
      m = u.at({h, q - j + 1}) * m;
      int r = rank(m);
      if (r == 0) break;
      out.ranks[{h, q, j}] = r;
    }
  }
  out.module = module_from_ranks(out.dims, out.ranks, out.qlo, out.qhi);
  return out;
}

FreeComplex expanded_square(const KnotModel& k1, const KnotModel& k2, int n, int m) {
  if (k1.field != k2.field) throw std::invalid_argument("expanded_square: field mismatch");
  if (n - 1 < k1.lo || n > k1.hi || m - 1 < k2.lo || m > k2.hi) throw std::invalid_argument("expanded_square: index outside the window");
  Field f = k1.field;
  const auto &c0 = k1.space(n - 1), &c1 = k1.space(n), &d0 = k2.space(m - 1), &d1 = k2.space(m);
  // left column: a, b one degree up, l = C_n (x) D_m at A - 1; right column: r = C_n (x) D_m
  std::vector<Generator> g = tensor_gens(c0, d1, "a.", 1, -1);
  auto b = tensor_gens(c1, d0, "b.", 1, -1);
  auto r = tensor_gens(c1, d1, "r.", 0, 0);
  auto l = tensor_gens(c1, d1, "l.", 0, -1);
  int na = int(g.size()), nb = int(b.size()), nr = int(r.size());
  g.insert(g.end(), b.begin(), b.end());
  g.insert(g.end(), r.begin(), r.end());
  g.insert(g.end(), l.begin(), l.end());
  FreeComplex c(f, 0, g);
  Scalar one = Scalar::one(f);
  Mat ic = Mat::identity(f, int(c1.size())), id = Mat::identity(f, int(d1.size()));
  int ro = na + nb, lo = ro + nr;
  place(c, kron(k1.minus.at(n - 1), id), ro, 0, one);
  place(c, kron(k1.plus.at(n - 1), id), lo, 0, one);
  place(c, kron(ic, k2.minus.at(m - 1)), ro, na, -one);
  place(c, kron(ic, k2.plus.at(m - 1)), lo, na, -one);
  return c;
}

FreeComplex single_arrow(const KnotModel& k1, const KnotModel& k2, int n, int m) {
  if (k1.field != k2.field) throw std::invalid_argument("single_arrow: field mismatch");
  if (n < k1.lo || n >= k1.hi || m < k2.lo || m >= k2.hi) throw std::invalid_argument("single_arrow: index outside the window");
  Field f = k1.field;
  std::vector<Generator> g = tensor_gens(k1.space(n), k2.space(m), "s.", 1, -1);
  auto t = tensor_gens(k1.space(n + 1), k2.space(m + 1), "t.", 0, 0);
  int ns = int(g.size());
  g.insert(g.end(), t.begin(), t.end());
  FreeComplex c(f, 0, g);
  Mat map = kron(k1.minus.at(n), k2.plus.at(m)) + kron(k1.plus.at(n), k2.minus.at(m));
  place(c, map, ns, 0, Scalar::one(f));
  return c;
}

ConnectedSum connected_sum(const KnotModel& k1, const KnotModel& k2) {
  ConnectedSum r;
  FreeComplex a1 = cki_minus(k1, k1.lo), a2 = cki_minus(k2, k2.lo);
  r.a = derived_tensor(a1, a2);
  r.module = derived_module(r.a);
  r.c = three_way_check(a1, a2);
  auto [alo, ahi] = alex_window(r.a.cx, 2);
  r.u_agree = u_actions_agree(sdr(r.a.cx).H, alo, ahi);
  r.n = k1.hi - 1;
  r.m = k2.hi - 1;
  int s1 = stable_floor(k1, r.n - 1), s2 = stable_floor(k2, r.m - 1);
  int t1 = max_alex(k1.space(k1.hi)), t2 = max_alex(k2.space(k2.hi));
  r.q = std::max(s1 + t2, s2 + t1);
  FreeComplex b = expanded_square(k1, k2, r.n, r.m);
  FreeComplex s = single_arrow(k1, k2, r.n - 1, r.m - 1);
  r.homogeneous = validate(b).ok() && validate(s).ok() && validate(r.a.cx).ok();
  int top = t1 + t2;
  r.dims_a = homology_table(r.a.cx, r.q, top);
  r.dims_b = homology_table(b, r.q, top);
  r.dims_single = homology_table(s, r.q, top);
  return r;
}

LinkModel link_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path.empty() ? "<root>" : path, "expected an object");
  std::string kp = join_path(path, "kind");
  if (as_str(need(j, "kind", path), kp) != "link") throw InputError(kp, "expected \"link\"");
  std::string cp = join_path(path, "components");
  if (as_int(need(j, "components", path), cp) != 2) throw InputError(cp, "only two component links are supported");
  LinkModel l;
  l.name = j.contains("name") ? as_str(j["name"], join_path(path, "name")) : "";
  l.field = as_field(need(j, "field", path), join_path(path, "field"));
  std::string gp = join_path(path, "gradings");
  if (!j.contains("gradings") || as_str(j["gradings"], gp) != "shifted")
    throw InputError(gp, "link gradings must be stored shifted");
  const json& w = need(j, "window", path);
  std::string wp = join_path(path, "window");
  if (!w.is_array() || w.size() != 2) throw InputError(wp, "expected one window per component");
  for (int c = 0; c < 2; ++c) std::tie(l.lo[c], l.hi[c]) = window_pair(w[size_t(c)], join_path(wp, size_t(c)));
  const json& sp = need(j, "spaces", path);
  std::string spp = join_path(path, "spaces");
  auto key = [](int a, int b) { return std::to_string(a) + "," + std::to_string(b); };
  for (int a = l.lo[0]; a <= l.hi[0]; ++a)
    for (int b = l.lo[1]; b <= l.hi[1]; ++b)
      l.spaces[{a, b}] = load_space(need(sp, key(a, b), spp), join_path(spp, key(a, b)), 0, 2);
  for (const char* which : {"phi_plus", "phi_minus"}) {
    const json& mj = need(j, which, path);
    std::string mp = join_path(path, which);
    if (!mj.is_array() || mj.size() != 2) throw InputError(mp, "expected one map table per direction");
    for (int d = 0; d < 2; ++d) {
      auto& dst = std::string(which) == "phi_plus" ? l.plus[d] : l.minus[d];
      std::string dp = join_path(mp, size_t(d));
      for (int a = l.lo[0]; a <= l.hi[0]; ++a)
        for (int b = l.lo[1]; b <= l.hi[1]; ++b) {
          int ta = a + (d == 0), tb = b + (d == 1);
          if (ta > l.hi[0] || tb > l.hi[1]) continue;
          dst[{a, b}] = sparse_map(l.field, l.spaces.at({a, b}), l.spaces.at({ta, tb}), need(mj[size_t(d)], key(a, b), dp),
                                   join_path(dp, key(a, b)))
                            .to_dense();
        }
    }
  }
  return l;
}

LinkModel load_link(const std::string& file) { return link_from_json(read_json(file), ""); }

Hypercube cli_minus_link(const LinkModel& l, int n1, int n2) {
  if (n1 < l.lo[0] || n1 + 1 > l.hi[0] || n2 < l.lo[1] || n2 + 1 > l.hi[1])
    throw std::invalid_argument("cli_minus_link: square leaves the window");
  Hypercube c(l.field, 2, 2);
  for (int e = 0; e < 4; ++e) {
    int e1 = e & 1, e2 = (e >> 1) & 1;
    for (auto x : l.spaces.at({n1 + e1, n2 + e2})) {
      x.h += 2;
      x.alex[0] -= 1 - e1;
      x.alex[1] -= 1 - e2;
      c.verts[size_t(e)].push_back(x);
    }
  }
  Scalar one = Scalar::one(l.field);
  for (int d = 0; d < 2; ++d)
    for (int e = 0; e < 4; ++e) {
      if (e & (1 << d)) continue;
      int e1 = e & 1, e2 = (e >> 1) & 1;
      std::pair<int, int> key{n1 + e1, n2 + e2};
      Scalar sign = (d == 1 && e1 == 1) ? -one : one;
      Exp u{d == 0 ? 1 : 0, d == 1 ? 1 : 0};
      c.set(e, e | (1 << d), lift(l.minus[d].at(key), 2, {0, 0}, sign) + lift(l.plus[d].at(key), 2, u, -sign));
    }
  return c;
}

FreeComplex skein_different(const FreeComplex& total) {
  if (total.arity != 2) throw std::invalid_argument("skein_different needs a complex over k[U1, U2]");
  Field f = total.field;
  Poly p = Poly::var(f, 2, 0) - Poly::var(f, 2, 1);
  PolyMatrix m = PolyMatrix::identity(f, 2, total.size()).mul_poly(p);
  std::vector<int> ash(total.gens.empty() ? 1 : total.gens[0].alex.size(), 0);
  ash[0] = -1;
  return cone({shift(total, 1), total, m, -1, ash});
}

FreeComplex skein_same(const FreeComplex& c, const Scalar& alpha) {
  if (c.arity != 1) throw std::invalid_argument("skein_same needs a complex over k[U]");
  Field f = c.field;
  Poly p = Poly::var(f, 1, 0).scaled(Scalar::one(f) - alpha);
  PolyMatrix m = PolyMatrix::identity(f, 1, c.size()).mul_poly(p);
  return cone({shift(c, 1), c, m, -1, {-1}});
}

GradedModule tensor_w(const GradedModule& m) {
  GradedModule out;
  for (auto s : m.summands) {
    out.summands.push_back(s);
    s.h += 1;
    s.alex -= 1;
    out.summands.push_back(s);
  }
  out.canonicalize();
  return out;
}

RescaleVerdict unit_rescale_iso(const FreeComplex& c, const std::vector<Scalar>& alpha, int alo, int ahi) {
  int r = c.arity;
  if (int(alpha.size()) != r) throw std::invalid_argument("unit_rescale_iso: one unit per variable");
  for (auto& a : alpha)
    if (a.is_zero()) throw std::invalid_argument("unit_rescale_iso: alpha must be a unit");
  for (auto& g : c.gens)
    if (int(g.alex.size()) != r) throw std::invalid_argument("unit_rescale_iso: module is not graded by each variable");
  for (int s = 0; s < c.size(); ++s)
    for (auto& [t, p] : c.d.column(s))
      for (auto& [e, v] : p.terms())
        for (int i = 0; i < r; ++i)
          if (c.gens[t].alex[i] - e[i] != c.gens[s].alex[i])
            throw std::invalid_argument("unit_rescale_iso: module is not graded: " + c.gens[s].name + " -> " + c.gens[t].name);
  GradedView v(c);
  auto phi = [&](int h, int a) {
    const auto& b = v.basis(h, a);
    Mat m(c.field, int(b.size()), int(b.size()));
    for (size_t k = 0; k < b.size(); ++k) {
      Scalar s = Scalar::one(c.field);
      for (int i = 0; i < r; ++i) s = s * alpha[i].pow(-(c.gens[b[k].first].alex[i] - b[k].second[i]));
      m(int(k), int(k)) = s;
    }
    return m;
  };
  RescaleVerdict out{true, true};
  for (int h : v.h_values())
    for (int a = alo; a <= ahi; ++a) {
      if (v.dim(h, a) == 0) continue;
      Mat d = v.dmat(h, a);
      if (d.rows() > 0 && d * phi(h, a) != phi(c.hdown(h), a) * d) out.chain = false;
      for (int i = 0; i < r; ++i) {
        Mat u = v.umat(i, 1, h, a);
        if (u.rows() > 0 && phi(h, a - 1) * u != u.scaled(alpha[i]) * phi(h, a)) out.intertwines = false;
      }
    }
  return out;
}

FreeComplex derived_with(const FreeComplex& c1, const FreeComplex& c2, const Scalar& k) {
  FreeComplex t = tensor_field(c1, c2);
  Field f = t.field;
  Poly p = Poly::var(f, 2, 0) + Poly::var(f, 2, 1).scaled(k);
  PolyMatrix m = PolyMatrix::identity(f, 2, t.size()).mul_poly(p);
  return cone({shift(t, 1), t, m, -1, {-1}});
}

FreeComplex collapse_variables(const FreeComplex& c) {
  std::vector<int> map(size_t(c.arity), 0);
  std::vector<Generator> g = c.gens;
  for (auto& x : g) x.alex = {x.total_alex()};
  FreeComplex out(c.field, 1, g);
  out.z2 = c.z2;
  out.d = c.d.remap(map, 1);
  return out;
}

}  // namespace fk
