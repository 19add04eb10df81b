#include "floerkit/limits.hpp"

#include <set>

namespace fk {

namespace {

using Key = std::pair<int, int>;  // (h, total A)

Key key(const Generator& g) { return {g.h, g.total_alex()}; }

std::vector<int> piece(const std::vector<Generator>& g, const Key& k) {
  std::vector<int> out;
  for (size_t i = 0; i < g.size(); ++i)
    if (key(g[i]) == k) out.push_back(int(i));
  return out;
}

std::set<Key> keys(const std::vector<Generator>& g) {
  std::set<Key> out;
  for (auto& x : g) out.insert(key(x));
  return out;
}

Mat sub(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Mat r(m.field(), int(rows.size()), int(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) r(int(i), int(j)) = m(rows[i], cols[j]);
  return r;
}

bool is_iso(const Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

std::string pair_str(int i, int j) { return "phi_{" + std::to_string(i) + "->" + std::to_string(j) + "}"; }

// some alpha with alpha m = t, both nonzero
std::optional<Scalar> ratio(const Mat& m, const Mat& t) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) {
        Scalar a = t(i, j) / m(i, j);
        if (a.is_zero() || m.scaled(a) != t) return std::nullopt;
        return a;
      }
  return std::nullopt;
}

}  // namespace

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

Mat System::map(int i, int j) const {
  if (i > j || i < lo || j > hi) throw std::out_of_range("no map " + pair_str(i, j) + " in this system");
  auto it = maps.find({i, j});
  if (it != maps.end()) return it->second;
  if (i == j) return Mat::identity(field, dim(i));
  if (!maps.count({j - 1, j})) throw std::out_of_range("missing step " + pair_str(j - 1, j));
  return maps.at({j - 1, j}) * map(i, j - 1);
}

System system_from_json(const json& j, const std::string& path) {
  System s;
  s.field = as_field(need(j, "field", path), join_path(path, "field"));
  const json& w = need(j, "window", path);
  std::string wp = join_path(path, "window");
  if (!w.is_array() || w.size() != 2) throw InputError(wp, "expected [lo, hi]");
  s.lo = as_int(w[0], join_path(wp, 0));
  s.hi = as_int(w[1], join_path(wp, 1));
  if (s.hi < s.lo) throw InputError(wp, "empty window");
  s.projective = j.contains("projective") && j["projective"].is_boolean() && j["projective"].get<bool>();
  const json& sp = need(j, "spaces", path);
  std::string spp = join_path(path, "spaces");
  for (int i = s.lo; i <= s.hi; ++i) {
    std::string k = std::to_string(i);
    const json& g = need(sp, k, spp);
    std::string gp = join_path(spp, k);
    if (!g.is_array()) throw InputError(gp, "expected a list of generators");
    std::vector<Generator> gens;
    for (size_t x = 0; x < g.size(); ++x) gens.push_back(generator_from_json(g[x], join_path(gp, x)));
    s.spaces.push_back(gens);
  }
  const json& m = need(j, "maps", path);
  std::string mp = join_path(path, "maps");
  if (!m.is_object()) throw InputError(mp, "expected an object keyed by \"i,j\"");
  for (auto it = m.begin(); it != m.end(); ++it) {
    std::string kp = join_path(mp, it.key());
    int a, b;
    char comma;
    std::istringstream in(it.key());
    if (!(in >> a >> comma >> b) || comma != ',') throw InputError(kp, "key must be \"i,j\"");
    if (a > b || a < s.lo || b > s.hi) throw InputError(kp, "index outside the window");
    s.maps[{a, b}] = sparse_map(s.field, s.space(a), s.space(b), it.value(), kp).to_dense();
  }
  return s;
}

json to_json(const System& s) {
  json sp = json::object(), mp = json::object();
  for (int i = s.lo; i <= s.hi; ++i) {
    json g = json::array();
    for (auto& x : s.space(i)) g.push_back(to_json(x));
    sp[std::to_string(i)] = g;
  }
  for (auto& [k, m] : s.maps) {
    json e = json::array();
    for (int c = 0; c < m.cols(); ++c)
      for (int r = 0; r < m.rows(); ++r)
        if (!m(r, c).is_zero())
          e.push_back(json::array({s.space(k.first)[c].name, s.space(k.second)[r].name, m(r, c).str()}));
    mp[std::to_string(k.first) + "," + std::to_string(k.second)] = e;
  }
  return json{{"field", field_name(s.field)}, {"window", {s.lo, s.hi}}, {"projective", s.projective},
              {"spaces", sp},                 {"maps", mp}};
}

bool check_graded(const System& s, std::string* why) {
  for (auto& [k, m] : s.maps) {
    const auto& src = s.space(k.first);
    const auto& tgt = s.space(k.second);
    for (int c = 0; c < m.cols(); ++c)
      for (int r = 0; r < m.rows(); ++r)
        if (!m(r, c).is_zero() && key(src[c]) != key(tgt[r])) {
          if (why) *why = pair_str(k.first, k.second) + " moves " + src[c].name + " to " + tgt[r].name;
          return false;
        }
  }
  return true;
}

bool check_transitive(const System& s, std::string* why) {
  if (!check_graded(s, why)) return false;
  for (int i = s.lo; i <= s.hi; ++i) {
    if (s.map(i, i) != Mat::identity(s.field, s.dim(i))) {
      if (why) *why = pair_str(i, i) + " is not the identity";
      return false;
    }
    for (int j = i; j <= s.hi; ++j)
      for (int k = j; k <= s.hi; ++k)
        if (s.map(j, k) * s.map(i, j) != s.map(i, k)) {
          if (why) *why = pair_str(j, k) + " o " + pair_str(i, j) + " != " + pair_str(i, k);
          return false;
        }
  }
  return true;
}

Limit direct_limit(const System& s, int qlo, int qhi) {
  Limit r;
  std::set<Key> ks;
  for (auto& g : s.spaces)
    for (auto& k : keys(g)) ks.insert(k);
  for (int q = qlo; q <= qhi; ++q) {
    // N(q): the earliest index after which every step is an isomorphism in grading q
    int N = s.hi;
    for (int n = s.hi - 1; n >= s.lo; --n) {
      bool iso = true;
      for (auto& k : ks) {
        if (k.second != q) continue;
        Mat m = sub(s.map(n, n + 1), piece(s.space(n + 1), k), piece(s.space(n), k));
        if (!is_iso(m)) iso = false;
      }
      if (!iso) break;
      N = n;
    }
    if (N == s.hi) throw Unstable(q);
    r.stable_from[q] = N;
  }
  for (auto& g : s.space(s.hi)) {
    int a = g.total_alex();
    if (a < qlo || a > qhi) continue;
    r.basis.push_back(g);
    r.dims[key(g)] += 1;
  }
  return r;
}

DimTable limit_quotient_dims(const System& s) {
  DimTable out;
  std::set<Key> ks;
  for (auto& g : s.spaces)
    for (auto& k : keys(g)) ks.insert(k);
  for (auto& k : ks) {
    std::vector<std::vector<int>> idx;
    std::vector<int> off;
    int total = 0;
    for (int i = s.lo; i <= s.hi; ++i) {
      idx.push_back(piece(s.space(i), k));
      off.push_back(total);
      total += int(idx.back().size());
    }
    // relations x - phi_{i->j} x for all i < j
    std::vector<std::vector<Scalar>> rel;
    for (int i = s.lo; i <= s.hi; ++i)
      for (int j = i + 1; j <= s.hi; ++j) {
        Mat m = sub(s.map(i, j), idx[size_t(j - s.lo)], idx[size_t(i - s.lo)]);
        for (int c = 0; c < m.cols(); ++c) {
          std::vector<Scalar> v(size_t(total), Scalar(s.field));
          v[size_t(off[size_t(i - s.lo)] + c)] = Scalar::one(s.field);
          for (int r = 0; r < m.rows(); ++r) v[size_t(off[size_t(j - s.lo)] + r)] -= m(r, c);
          rel.push_back(v);
        }
      }
    Mat rm(s.field, total, int(rel.size()));
    for (size_t c = 0; c < rel.size(); ++c)
      for (int r = 0; r < total; ++r) rm(r, int(c)) = rel[c][size_t(r)];
    int d = total - (rel.empty() ? 0 : rank(rm));
    if (d) out[k] = d;
  }
  return out;
}

Calibrated calibrate(const System& p, int i0) {
  if (i0 < p.lo || i0 > p.hi) throw std::out_of_range("base point outside the window");
  Calibrated c;
  c.sys.field = p.field;
  c.sys.lo = i0;
  c.sys.hi = p.hi;
  for (int i = i0; i <= p.hi; ++i) c.sys.spaces.push_back(p.space(i));
  for (int j = i0; j <= p.hi; ++j) {
    Mat base = p.map(i0, j);
    if (base.is_zero() && p.dim(i0) > 0) throw CalibrationError("map is zero", pair_str(i0, j));
    for (int k = j; k <= p.hi; ++k) {
      Mat phi = p.map(j, k);
      Scalar a = Scalar::one(p.field);
      if (p.dim(i0) > 0) {
        auto r = ratio(phi * base, p.map(i0, k));
        if (!r) throw CalibrationError("compositions are not proportional", pair_str(j, k) + " o " + pair_str(i0, j));
        a = *r;
      }
      c.alpha[{j, k}] = a;
      c.sys.maps[{j, k}] = phi.scaled(a);
    }
  }
  std::string why;
  if (!check_transitive(c.sys, &why)) throw CalibrationError("calibrated system is not transitive", why);
  return c;
}

Transporter limit_transporter(const System& p, int i0, int j0) {
  if (j0 < i0) {
    Transporter t = limit_transporter(p, j0, i0);
    return {t.tau, t.theta};
  }
  Calibrated a = calibrate(p, i0), b = calibrate(p, j0);
  // theta psi^{i0}_{j0->hi} = psi^{j0}_{j0->hi}, tau the other way; at later j the two calibrations
  // may differ by the rescaling of G_j, which must still be a unit
  Mat x = a.sys.map(j0, p.hi), y = b.sys.map(j0, p.hi);
  auto theta = ratio(x, y), tau = ratio(y, x);
  if (!theta || !tau) throw CalibrationError("limits are not related by a unit", pair_str(j0, p.hi));
  for (int j = j0 + 1; j <= p.hi; ++j) {
    Mat xj = a.sys.map(j, p.hi).scaled(*theta), yj = b.sys.map(j, p.hi);
    if (!xj.is_zero() && !ratio(xj, yj)) throw CalibrationError("limits are not related by a unit", pair_str(j, p.hi));
  }
  return {*theta, *tau};
}

bool commutes(const SystemMorphism& f, std::string* why) {
  for (auto& [i, fi] : f.comp)
    for (auto& [j, fj] : f.comp) {
      if (j < i) continue;
      if (f.target.map(i + f.shift, j + f.shift) * fi != fj * f.source.map(i, j)) {
        if (why) *why = "square " + std::to_string(i) + " -> " + std::to_string(j) + " does not commute";
        return false;
      }
    }
  return true;
}

SystemMorphism calibrate_morphism(const SystemMorphism& f, int i0) {
  Calibrated cs = calibrate(f.source, i0);
  Calibrated ct = calibrate(f.target, i0 + f.shift);
  SystemMorphism r{cs.sys, ct.sys, f.shift, {}};
  if (!f.comp.count(i0)) throw CalibrationError("missing component", "F_" + std::to_string(i0));
  const Mat& f0 = f.comp.at(i0);
  for (auto& [j, fj] : f.comp) {
    if (j < i0) continue;
    if (fj.is_zero()) throw CalibrationError("zero component", "F_" + std::to_string(j));
    Mat lhs = ct.sys.map(i0 + f.shift, j + f.shift) * f0;
    Mat rhs = fj * cs.sys.map(i0, j);
    auto a = ratio(rhs, lhs);
    if (!a) throw CalibrationError("square is not commutative up to a unit", "F_" + std::to_string(j));
    r.comp[j] = fj.scaled(*a);
  }
  std::string why;
  if (!commutes(r, &why)) throw CalibrationError("calibrated morphism does not commute", why);
  return r;
}

Mat limit_map(const SystemMorphism& f) {
  if (f.comp.empty()) throw std::out_of_range("morphism has no components");
  int top = f.comp.rbegin()->first;
  return f.target.map(top + f.shift, f.target.hi) * f.comp.at(top);
}

SystemMorphism compose(const SystemMorphism& g, const SystemMorphism& f) {
  SystemMorphism r{f.source, g.target, f.shift + g.shift, {}};
  for (auto& [i, fi] : f.comp) {
    auto it = g.comp.find(i + f.shift);
    if (it != g.comp.end()) r.comp[i] = it->second * fi;
  }
  return r;
}

// ---------------------------------------------------------------- staircase

std::vector<Generator> Staircase::tensor_gens(int n, int m, int hshift) const {
  std::vector<Generator> out;
  for (auto& x : g.space(n))
    for (auto& y : h.space(m)) out.push_back({x.name + "|" + y.name, x.h + y.h + hshift, {x.total_alex() + y.total_alex()}});
  return out;
}

namespace {

void place(Mat& big, const Mat& blk, int r0, int c0) {
  for (int i = 0; i < blk.rows(); ++i)
    for (int j = 0; j < blk.cols(); ++j) big(r0 + i, c0 + j) = blk(i, j);
}

Mat id(const System& s, int i) { return Mat::identity(s.field, s.dim(i)); }

}  // namespace

FreeComplex Staircase::complex(int n, int m) const {
  std::vector<Generator> gens;
  for (auto x : tensor_gens(n - 1, m, 1)) gens.push_back({"a:" + x.name, x.h, x.alex});
  for (auto x : tensor_gens(n, m - 1, 1)) gens.push_back({"b:" + x.name, x.h, x.alex});
  for (auto x : tensor_gens(n, m, 0)) gens.push_back({"c:" + x.name, x.h, x.alex});
  int na = g.dim(n - 1) * h.dim(m), nb = g.dim(n) * h.dim(m - 1);
  Mat d(g.field, int(gens.size()), int(gens.size()));
  place(d, kron(g.map(n - 1, n), id(h, m)), na + nb, 0);
  place(d, kron(id(g, n), h.map(m - 1, m)).scaled(-Scalar::one(g.field)), na + nb, na);
  FreeComplex c(g.field, 0, gens);
  c.d = PolyMatrix::from_dense(d);
  return c;
}

Mat Staircase::psi(int n, int m) const {
  int na = g.dim(n) * h.dim(m + 1), nb = g.dim(n + 1) * h.dim(m), nc = g.dim(n + 1) * h.dim(m + 1);
  Mat r(g.field, na + nb + nc, g.dim(n) * h.dim(m));
  place(r, kron(id(g, n), h.map(m, m + 1)), 0, 0);
  place(r, kron(g.map(n, n + 1), id(h, m)), na, 0);
  return r;
}

Mat Staircase::phi(int n, int m) const {
  int na = g.dim(n - 1) * h.dim(m), nb = g.dim(n) * h.dim(m - 1), nc = g.dim(n) * h.dim(m);
  Mat r(g.field, nc, na + nb + nc);
  place(r, kron(g.map(n - 1, n), id(h, m)), 0, 0);
  return r;
}

Mat Staircase::j(int n, int m) const {
  int na = g.dim(n - 1) * h.dim(m), nb = g.dim(n) * h.dim(m - 1), nc = g.dim(n) * h.dim(m);
  int ma = g.dim(n) * h.dim(m + 1), mb = g.dim(n + 1) * h.dim(m), mc = g.dim(n + 1) * h.dim(m + 1);
  Mat r(g.field, ma + mb + mc, na + nb + nc);
  place(r, kron(g.map(n, n + 1), id(h, m)), ma, na + nb);
  return r;
}

Mat Staircase::phipsi(int n, int m) const {
  int na = g.dim(n - 1) * h.dim(m), nb = g.dim(n) * h.dim(m - 1), nc = g.dim(n) * h.dim(m);
  int ma = g.dim(n) * h.dim(m + 1), mb = g.dim(n + 1) * h.dim(m), mc = g.dim(n + 1) * h.dim(m + 1);
  Mat r(g.field, ma + mb + mc, na + nb + nc);
  place(r, kron(g.map(n - 1, n), h.map(m, m + 1)), 0, 0);
  place(r, kron(g.map(n, n + 1), h.map(m - 1, m)), ma, na);
  place(r, kron(g.map(n, n + 1), h.map(m, m + 1)), ma + mb, na + nb);
  return r;
}

bool staircase_relations(const Staircase& s, int n, int m, std::string* why) {
  Mat d0 = s.complex(n, m).d.to_dense(), d1 = s.complex(n + 1, m + 1).d.to_dense();
  if (s.phi(n + 1, m + 1) * s.psi(n, m) != kron(s.g.map(n, n + 1), s.h.map(m, m + 1))) {
    if (why) *why = "Phi_{n+1,m+1} Psi_{n,m} != phi|psi";
    return false;
  }
  Mat jm = s.j(n, m);
  if (s.psi(n, m) * s.phi(n, m) != s.phipsi(n, m) + d1 * jm + jm * d0) {
    if (why) *why = "Psi_{n,m} Phi_{n,m} != phi|psi + dJ + Jd";
    return false;
  }
  if (s.phi(n, m) * d0 != Mat(s.g.field, s.phi(n, m).rows(), d0.cols()) || !(d1 * s.psi(n, m)).is_zero()) {
    if (why) *why = "Phi or Psi is not a chain map";
    return false;
  }
  return true;
}

TruncatedVerdict staircase_truncated(const Staircase& s, int n, int m, int delta) {
  TruncatedVerdict v;
  auto ga = s.tensor_gens(n - 1, m, 0), gb = s.tensor_gens(n, m - 1, 0), gc = s.tensor_gens(n, m, 0);
  Mat fa = kron(s.g.map(n - 1, n), id(s.h, m)), fb = kron(id(s.g, n), s.h.map(m - 1, m));
  v.hypothesis = true;
  std::set<Key> ks = keys(ga);
  for (auto& k : keys(gb)) ks.insert(k);
  for (auto& k : keys(gc)) ks.insert(k);
  for (auto& k : ks) {
    if (k.second <= delta) continue;
    if (!is_iso(sub(fa, piece(gc, k), piece(ga, k))) || !is_iso(sub(fb, piece(gc, k), piece(gb, k)))) v.hypothesis = false;
  }
  for (auto& [k, d] : homology_over_field(s.complex(n, m)))
    if (k.second > delta) v.left[k] = d;
  for (auto& x : s.tensor_gens(n, m, 1))
    if (x.total_alex() > delta) v.right[key(x)] += 1;
  return v;
}

}  // namespace fk
