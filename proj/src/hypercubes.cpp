#include "floerkit/hypercubes.hpp"

#include <stdexcept>

namespace fk {

std::string bits(int eps, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += (eps >> i & 1) ? '1' : '0';
  return s;
}

int parse_bits(const std::string& s) {
  int e = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      e |= 1 << i;
    else if (s[i] != '0')
      throw std::invalid_argument("bad vertex label '" + s + "'");
  }
  return e;
}

Hypercube::Hypercube(Field f, int r, int dim) : field(f), arity(r), n(dim), verts(size_t(1) << dim) {}

int Hypercube::offset(int e) const {
  int o = 0;
  for (int k = 0; k < e; ++k) o += vsize(k);
  return o;
}

PolyMatrix Hypercube::get(int e, int e2) const {
  auto it = maps.find({e, e2});
  if (it != maps.end()) return it->second;
  return PolyMatrix(field, arity, vsize(e2), vsize(e));
}

void Hypercube::set(int e, int e2, const PolyMatrix& m) {
  if (!below(e, e2)) throw std::invalid_argument("cube map must go up: " + bits(e, n) + " -> " + bits(e2, n));
  if (m.rows() != vsize(e2) || m.cols() != vsize(e)) throw std::invalid_argument("cube map has wrong shape");
  if (m.is_zero())
    maps.erase({e, e2});
  else
    maps[{e, e2}] = m;
}

namespace {

void place(PolyMatrix& big, const PolyMatrix& blk, int r0, int c0) {
  for (int c = 0; c < blk.cols(); ++c)
    for (auto& [r, p] : blk.column(c)) big.add(r0 + r, c0 + c, p);
}

PolyMatrix cut(const PolyMatrix& big, int r0, int nr, int c0, int nc) {
  std::vector<int> rs(nr), cs(nc);
  for (int k = 0; k < nr; ++k) rs[k] = r0 + k;
  for (int k = 0; k < nc; ++k) cs[k] = c0 + k;
  return big.block(rs, cs);
}

std::vector<int> vertex_of(const Hypercube& h) {
  std::vector<int> v;
  for (int e = 0; e < h.vertices(); ++e)
    for (int k = 0; k < h.vsize(e); ++k) v.push_back(e);
  return v;
}

}  // namespace

Hypercube cube_from_total(const Hypercube& shape, const PolyMatrix& d) {
  Hypercube r = shape;
  r.maps.clear();
  for (int e = 0; e < shape.vertices(); ++e)
    for (int e2 = 0; e2 < shape.vertices(); ++e2) {
      PolyMatrix b = cut(d, shape.offset(e2), shape.vsize(e2), shape.offset(e), shape.vsize(e));
      if (b.is_zero()) continue;
      if (!below(e, e2)) throw std::logic_error("matrix is not filtered");
      r.set(e, e2, b);
    }
  return r;
}

Hypercube cube_from_complex(const FreeComplex& c) {
  Hypercube h(c.field, c.arity, 0);
  h.z2 = c.z2;
  h.verts[0] = c.gens;
  h.set(0, 0, c.d);
  return h;
}

FreeComplex total(const Hypercube& h) {
  std::vector<Generator> g;
  for (int e = 0; e < h.vertices(); ++e)
    for (auto x : h.verts[e]) {
      if (h.n > 0) x.name = bits(e, h.n) + ":" + x.name;
      x.h -= weight(e);
      g.push_back(x);
    }
  FreeComplex c(h.field, h.arity, g);
  c.z2 = h.z2;
  for (auto& [k, m] : h.maps) place(c.d, m, h.offset(k.second), h.offset(k.first));
  return c;
}

ValidationReport validate_cube(const Hypercube& h) {
  ValidationReport r;
  auto nm = [&](int e, int k) { return bits(e, h.n) + ":" + h.verts[e][k].name; };
  for (auto& [k, m] : h.maps) {
    auto [e, e2] = k;
    int want = weight(e2) - weight(e) - 1;
    for (int s = 0; s < m.cols(); ++s)
      for (auto& [t, p] : m.column(s)) {
        const auto& gs = h.verts[e][s];
        const auto& gt = h.verts[e2][t];
        if (p.arity() != h.arity || p.field() != h.field) {
          r.violations.push_back({"ring", nm(e, s), nm(e2, t), "entry ring differs from cube ring"});
          continue;
        }
        int dh = gt.h - gs.h;
        if (h.z2 ? ((dh - want) % 2 != 0) : dh != want)
          r.violations.push_back({"hgrading", nm(e, s), nm(e2, t),
                                  "D_{" + bits(e, h.n) + "," + bits(e2, h.n) + "} must have degree " +
                                      std::to_string(want)});
        for (auto& [ex, c] : p.terms()) {
          int deg = 0;
          for (int v : ex) deg += v;
          if (gt.total_alex() - deg != gs.total_alex()) {
            r.violations.push_back({"alex", nm(e, s), nm(e2, t), "entry does not preserve Alexander grading"});
            break;
          }
        }
      }
  }
  for (int e = 0; e < h.vertices(); ++e)
    for (int e3 = 0; e3 < h.vertices(); ++e3) {
      if (!below(e, e3)) continue;
      PolyMatrix sum(h.field, h.arity, h.vsize(e3), h.vsize(e));
      for (int e2 = 0; e2 < h.vertices(); ++e2)
        if (below(e, e2) && below(e2, e3)) sum = sum + h.get(e2, e3) * h.get(e, e2);
      for (int s = 0; s < sum.cols(); ++s)
        for (auto& [t, p] : sum.column(s))
          r.violations.push_back({"cube", nm(e, s), nm(e3, t), "cube relation coefficient " + p.str()});
    }
  return r;
}

PolyMatrix CubeMorphism::get(int e, int e2) const {
  auto it = comp.find({e, e2});
  if (it != comp.end()) return it->second;
  return PolyMatrix(source.field, source.arity, target.vsize(e2), source.vsize(e));
}

PolyMatrix total_map(const CubeMorphism& f) {
  PolyMatrix m(f.source.field, f.source.arity, f.target.total_size(), f.source.total_size());
  for (auto& [k, b] : f.comp) place(m, b, f.target.offset(k.second), f.source.offset(k.first));
  return m;
}

CubeMorphism morphism_from_total(const Hypercube& s, const Hypercube& t, const PolyMatrix& m, int grading) {
  if (s.n != t.n) throw std::invalid_argument("cube dimensions differ");
  CubeMorphism f{s, t, {}, grading};
  for (int e = 0; e < s.vertices(); ++e)
    for (int e2 = 0; e2 < t.vertices(); ++e2) {
      PolyMatrix b = cut(m, t.offset(e2), t.vsize(e2), s.offset(e), s.vsize(e));
      if (b.is_zero()) continue;
      if (!below(e, e2)) throw std::invalid_argument("morphism is not filtered");
      f.comp[{e, e2}] = b;
    }
  return f;
}

PolyMatrix boundary(const CubeMorphism& f) {
  PolyMatrix F = total_map(f);
  PolyMatrix a = F * total(f.source).d;
  PolyMatrix b = total(f.target).d * F;
  return (f.grading % 2 == 0) ? a - b : a + b;
}

bool is_cycle(const CubeMorphism& f) { return boundary(f).is_zero(); }

CubeMorphism compose(const CubeMorphism& g, const CubeMorphism& f) {
  return morphism_from_total(f.source, g.target, total_map(g) * total_map(f), f.grading + g.grading);
}

CubeMorphism identity_morphism(const Hypercube& h) {
  CubeMorphism f{h, h, {}, 0};
  for (int e = 0; e < h.vertices(); ++e)
    if (h.vsize(e)) f.comp[{e, e}] = PolyMatrix::identity(h.field, h.arity, h.vsize(e));
  return f;
}

Hypercube cone_cube(const CubeMorphism& f) {
  if (!is_cycle(f)) throw std::invalid_argument("cone_cube: morphism is not a cycle");
  const auto& S = f.source;
  const auto& T = f.target;
  int n = S.n;
  int top = 1 << n;
  Hypercube c(S.field, S.arity, n + 1);
  c.z2 = S.z2 || T.z2;
  for (int e = 0; e < top; ++e) {
    for (auto g : S.verts[e]) {
      g.h += f.grading + 1;
      c.verts[e].push_back(g);
    }
    for (auto g : T.verts[e]) {
      g.h += 1;
      c.verts[e | top].push_back(g);
    }
  }
  bool neg = (f.grading + 1) % 2 != 0;
  for (auto& [k, m] : S.maps) c.set(k.first, k.second, m);
  for (auto& [k, m] : T.maps) c.set(k.first | top, k.second | top, neg ? -m : m);
  for (auto& [k, m] : f.comp) c.set(k.first, k.second | top, m);
  return c;
}

Hypercube restrict_cube(const Hypercube& h, const std::string& pattern) {
  if (int(pattern.size()) != h.n) throw std::invalid_argument("subcube pattern has wrong length");
  std::vector<int> free_dirs;
  int base = 0;
  for (int i = 0; i < h.n; ++i) {
    if (pattern[i] == '*')
      free_dirs.push_back(i);
    else if (pattern[i] == '1')
      base |= 1 << i;
    else if (pattern[i] != '0')
      throw std::invalid_argument("subcube pattern uses 0, 1 and *");
  }
  int m = int(free_dirs.size());
  auto lift = [&](int v) {
    int e = base;
    for (int k = 0; k < m; ++k)
      if (v >> k & 1) e |= 1 << free_dirs[k];
    return e;
  };
  Hypercube r(h.field, h.arity, m);
  r.z2 = h.z2;
  for (int v = 0; v < (1 << m); ++v) r.verts[v] = h.verts[lift(v)];
  for (int v = 0; v < (1 << m); ++v)
    for (int v2 = 0; v2 < (1 << m); ++v2)
      if (below(v, v2)) r.set(v, v2, h.get(lift(v), lift(v2)));
  return r;
}

// ---------------------------------------------------------------- quasi-inverse

namespace {

struct Unknowns {
  std::map<std::pair<int, int>, int> var;  // (row, col) -> variable
};

using Eqs = std::map<std::pair<int, int>, std::map<int, Scalar>>;

void acc(std::map<int, Scalar>& row, int v, const Scalar& c) {
  auto it = row.find(v);
  if (it == row.end())
    row.emplace(v, c);
  else
    it->second += c;
}

// A * X
void add_ax(Eqs& eq, const Mat& a, const Unknowns& x, const Scalar& sign) {
  for (auto& [rc, v] : x.var)
    for (int i = 0; i < a.rows(); ++i)
      if (!a(i, rc.first).is_zero()) acc(eq[{i, rc.second}], v, sign * a(i, rc.first));
}

// X * B
void add_xb(Eqs& eq, const Unknowns& x, const Mat& b, const Scalar& sign) {
  for (auto& [rc, v] : x.var)
    for (int j = 0; j < b.cols(); ++j)
      if (!b(rc.second, j).is_zero()) acc(eq[{rc.first, j}], v, sign * b(rc.second, j));
}

Unknowns graded_unknowns(LinearSystem& sys, const FreeComplex& src, const std::vector<int>& vs, const FreeComplex& tgt,
                         const std::vector<int>& vt, int deg) {
  Unknowns u;
  for (int c = 0; c < src.size(); ++c)
    for (int r = 0; r < tgt.size(); ++r) {
      if (!below(vs[c], vt[r])) continue;
      if (!tgt.same_h(tgt.gens[r].h, src.gens[c].h + deg)) continue;
      if (tgt.gens[r].total_alex() != src.gens[c].total_alex()) continue;
      u.var[{r, c}] = sys.add_unknown();
    }
  return u;
}

bool emit(LinearSystem& sys, Eqs& eq, const Mat& rhs) {
  for (int i = 0; i < rhs.rows(); ++i)
    for (int j = 0; j < rhs.cols(); ++j)
      if (!rhs(i, j).is_zero() && !eq.count({i, j})) return false;
  for (auto& [ij, row] : eq) sys.add_equation(row, rhs(ij.first, ij.second));
  return true;
}

Mat read(const Unknowns& u, const std::vector<Scalar>& sol, Field f, int rows, int cols) {
  Mat m(f, rows, cols);
  for (auto& [rc, v] : u.var) m(rc.first, rc.second) = sol[v];
  return m;
}

}  // namespace

QuasiInverse invert_quasi_iso(const CubeMorphism& f) {
  const auto& S = f.source;
  const auto& T = f.target;
  if (S.arity != 0) throw std::invalid_argument("invert_quasi_iso needs field coefficients");
  Field fld = S.field;
  for (int e = 0; e < S.vertices(); ++e) {
    FreeComplex a(fld, 0, S.verts[e]), b(fld, 0, T.verts[e]);
    a.z2 = S.z2;
    b.z2 = T.z2;
    a.d = S.get(e, e);
    b.d = T.get(e, e);
    ChainMap m{a, b, f.get(e, e), f.grading, {}};
    if (!homology_over_field(cone(m)).empty())
      throw std::invalid_argument("component at vertex " + bits(e, S.n) + " is not a quasi-isomorphism");
  }
  FreeComplex ts = total(S), tt = total(T);
  auto vs = vertex_of(S), vt = vertex_of(T);
  Mat F = total_map(f).to_dense();
  Mat Ds = ts.d.to_dense(), Dt = tt.d.to_dense();
  int ns = ts.size(), nt = tt.size();
  LinearSystem sys(fld);
  Unknowns G = graded_unknowns(sys, tt, vt, ts, vs, -f.grading);
  Unknowns K = graded_unknowns(sys, tt, vt, tt, vt, 1);
  Unknowns L = graded_unknowns(sys, ts, vs, ts, vs, 1);
  Scalar one = Scalar::one(fld);
  Scalar sg = ((-f.grading + 1) % 2 == 0) ? one : -one;
  bool ok = true;
  {  // G Dt + (-1)^{|G|+1} Ds G = 0
    Eqs eq;
    add_xb(eq, G, Dt, one);
    add_ax(eq, Ds, G, sg);
    ok &= emit(sys, eq, Mat(fld, ns, nt));
  }
  {  // F G - K Dt - Dt K = id
    Eqs eq;
    add_ax(eq, F, G, one);
    add_xb(eq, K, Dt, -one);
    add_ax(eq, Dt, K, -one);
    ok &= emit(sys, eq, Mat::identity(fld, nt));
  }
  {  // G F - L Ds - Ds L = id
    Eqs eq;
    add_xb(eq, G, F, one);
    add_xb(eq, L, Ds, -one);
    add_ax(eq, Ds, L, -one);
    ok &= emit(sys, eq, Mat::identity(fld, ns));
  }
  auto sol = ok ? sys.solve() : std::nullopt;
  if (!sol) throw std::logic_error("invert_quasi_iso: no filtered inverse found");
  QuasiInverse q;
  q.g = morphism_from_total(T, S, PolyMatrix::from_dense(read(G, *sol, fld, ns, nt)), -f.grading);
  q.k = PolyMatrix::from_dense(read(K, *sol, fld, nt, nt));
  q.l = PolyMatrix::from_dense(read(L, *sol, fld, ns, ns));
  return q;
}

bool check_quasi_inverse(const CubeMorphism& f, const QuasiInverse& q, std::string* why) {
  auto fail = [&](const char* w) {
    if (why) *why = w;
    return false;
  };
  PolyMatrix F = total_map(f), G = total_map(q.g);
  PolyMatrix Ds = total(f.source).d, Dt = total(f.target).d;
  if (!is_cycle(q.g)) return fail("G is not a cycle");
  PolyMatrix It = PolyMatrix::identity(f.source.field, f.source.arity, Dt.rows());
  PolyMatrix Is = PolyMatrix::identity(f.source.field, f.source.arity, Ds.rows());
  if (F * G - It != q.k * Dt + Dt * q.k) return fail("FG - id != dK + Kd");
  if (G * F - Is != q.l * Ds + Ds * q.l) return fail("GF - id != dL + Ld");
  try {
    morphism_from_total(f.target, f.target, q.k, 1);
    morphism_from_total(f.source, f.source, q.l, 1);
  } catch (const std::exception&) {
    return fail("homotopy is not filtered");
  }
  return true;
}

// ---------------------------------------------------------------- perturbation

Perturbed perturb(const Hypercube& hc) {
  Field f = hc.field;
  int ar = hc.arity;
  std::vector<SDR> red;
  Hypercube out(f, ar, hc.n);
  out.z2 = hc.z2;
  for (int e = 0; e < hc.vertices(); ++e) {
    FreeComplex v(f, ar, hc.verts[e]);
    v.z2 = hc.z2;
    v.d = hc.get(e, e);
    red.push_back(sdr(v));
    out.verts[e] = red.back().H.gens;
  }
  int N = hc.total_size(), M = out.total_size();
  PolyMatrix i(f, ar, N, M), pi(f, ar, M, N), h(f, ar, N, N), dd(f, ar, M, M);
  for (int e = 0; e < hc.vertices(); ++e) {
    place(i, red[e].i, hc.offset(e), out.offset(e));
    place(pi, red[e].pi, out.offset(e), hc.offset(e));
    place(h, red[e].h, hc.offset(e), hc.offset(e));
    place(dd, red[e].H.d, out.offset(e), out.offset(e));
  }
  PolyMatrix D = total(hc).d;
  PolyMatrix delta = D;
  for (int e = 0; e < hc.vertices(); ++e) {
    PolyMatrix neg(f, ar, N, N);
    place(neg, -hc.get(e, e), hc.offset(e), hc.offset(e));
    delta = delta + neg;
  }
  // sum_k (h delta)^k and sum_k (delta h)^k; both nilpotent since delta raises the filtration
  auto series = [&](const PolyMatrix& step) {
    PolyMatrix s = PolyMatrix::identity(f, ar, N), term = s;
    for (int k = 0; k <= hc.n + 1; ++k) {
      term = term * step;
      if (term.is_zero()) break;
      s = s + term;
    }
    return s;
  };
  PolyMatrix A = series(h * delta);
  PolyMatrix B = series(delta * h);
  Perturbed r;
  r.i = A * i;
  r.pi = pi * B;
  r.h = h * B;
  PolyMatrix dnew = dd + pi * delta * A * i;
  r.cube = cube_from_total(out, dnew);
  return r;
}

}  // namespace fk
