#include "floerkit/eigenspaces.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <tuple>
#include <random>
#include <sstream>

namespace fk {

Mat gen_eigenspace(const Mat& m, const Scalar& lambda) {
  int n = m.rows();
  if (n == 0) return Mat(m.field(), 0, 0);
  Mat a = m - Mat::identity(m.field(), n).scaled(lambda);
  return kernel(power(a, n));
}

Scalar det(Mat m) {
  int n = m.rows();
  Field f = m.field();
  Scalar d = Scalar::one(f);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (!m(r, c).is_zero()) {
        p = r;
        break;
      }
    if (p < 0) return Scalar::zero(f);
    if (p != c) {
      for (int k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
      d = -d;
    }
    d *= m(c, c);
    Scalar inv = m(c, c).inv();
    for (int r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      Scalar t = m(r, c) * inv;
      for (int k = c; k < n; ++k) m(r, k) -= t * m(c, k);
    }
  }
  return d;
}

// ---------------------------------------------------------------- univariate helpers

namespace {

using UPoly = std::vector<Scalar>;  // constant term first

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly udiv(UPoly a, const UPoly& b, UPoly* rem) {
  Field f = b.back().field();
  UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Scalar(f));
  Scalar lb = b.back().inv();
  for (int k = int(a.size()) - int(b.size()); k >= 0; --k) {
    Scalar c = a[k + b.size() - 1] * lb;
    q[k] = c;
    for (size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  trim(a);
  if (rem) *rem = a;
  trim(q);
  return q;
}

UPoly deriv(const UPoly& p) {
  UPoly d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Scalar(p[k].field(), long(k)));
  trim(d);
  return d;
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r;
    udiv(a, b, &r);
    a = b;
    b = r;
  }
  if (a.empty()) return a;
  Scalar l = a.back().inv();
  for (auto& c : a) c *= l;
  return a;
}

Scalar ueval(const UPoly& p, const Scalar& x) {
  Scalar r(x.field());
  for (int k = int(p.size()) - 1; k >= 0; --k) r = r * x + p[k];
  return r;
}

std::complex<long double> to_c(const Scalar& s) {
  return {static_cast<long double>(s.re().get_d()), static_cast<long double>(s.im().get_d())};
}

std::vector<std::complex<long double>> numeric_roots(const UPoly& p) {
  int n = int(p.size()) - 1;
  std::vector<std::complex<long double>> c(n + 1), z(n);
  std::complex<long double> lead = to_c(p.back());
  for (int k = 0; k <= n; ++k) c[k] = to_c(p[k]) / lead;
  for (int k = 0; k < n; ++k) z[k] = std::pow(std::complex<long double>(0.4L, 0.9L), k);
  for (int it = 0; it < 2000; ++it) {
    long double moved = 0;
    for (int k = 0; k < n; ++k) {
      std::complex<long double> v = 1;
      for (int j = n; j >= 0; --j) v = (j == n ? c[n] : v * z[k] + c[j]);
      std::complex<long double> den = 1;
      for (int j = 0; j < n; ++j)
        if (j != k) den *= (z[k] - z[j]);
      if (std::abs(den) == 0) den = 1e-30L;
      std::complex<long double> step = v / den;
      z[k] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-18L) break;
  }
  return z;
}

// best rational with denominator up to 10^4 via continued fractions
mpq_class approx(long double v) {
  long double x = v;
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int it = 0; it < 40; ++it) {
    long double a = std::floor(x);
    mpz_class ai(static_cast<long>(a));
    mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > 10000) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    long double frac = x - a;
    if (std::fabs(frac) < 1e-12L) break;
    x = 1 / frac;
  }
  mpq_class q(h1, k1);
  q.canonicalize();
  return q;
}

}  // namespace

std::vector<Scalar> charpoly(const Mat& m) {
  int n = m.rows();
  Field f = m.field();
  // Hessenberg form by similarity, then the usual recurrence; valid over any field
  Mat a = m;
  for (int k = 1; k + 1 < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (!a(i, k - 1).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      for (int i = 0; i < n; ++i) std::swap(a(i, p), a(i, k));
    }
    Scalar inv = a(k, k - 1).inv();
    for (int i = k + 1; i < n; ++i) {
      if (a(i, k - 1).is_zero()) continue;
      Scalar t = a(i, k - 1) * inv;
      for (int j = 0; j < n; ++j) a(i, j) -= t * a(k, j);
      for (int j = 0; j < n; ++j) a(j, k) += t * a(j, i);
    }
  }
  std::vector<UPoly> p(n + 1);
  p[0] = {Scalar::one(f)};
  for (int k = 1; k <= n; ++k) {
    UPoly cur(k + 1, Scalar(f));
    for (size_t j = 0; j < p[k - 1].size(); ++j) {
      cur[j + 1] += p[k - 1][j];
      cur[j] -= a(k - 1, k - 1) * p[k - 1][j];
    }
    Scalar t = Scalar::one(f);
    for (int i = 1; i < k; ++i) {
      t *= a(k - i, k - i - 1);
      Scalar c = t * a(k - i - 1, k - 1);
      for (size_t j = 0; j < p[k - i - 1].size(); ++j) cur[j] -= c * p[k - i - 1][j];
    }
    p[k] = cur;
  }
  p[n].resize(n + 1, Scalar(f));
  return p[n];
}

std::string upoly_str(const std::vector<Scalar>& c) {
  std::ostringstream os;
  bool first = true;
  for (int k = int(c.size()) - 1; k >= 0; --k) {
    if (c[k].is_zero()) continue;
    std::string s = c[k].str();
    bool neg = !s.empty() && s[0] == '-' && c[k].im() == 0;
    if (neg) s = s.substr(1);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool unit = s == "1";
    if (k == 0) {
      os << s;
      continue;
    }
    if (!unit) os << (s.find_first_of("/+-i") != std::string::npos ? "(" + s + ")" : s);
    os << "x";
    if (k > 1) os << "^" << k;
  }
  return first ? "0" : os.str();
}

std::vector<Scalar> eigenvalues(const Mat& m) {
  Field f = m.field();
  UPoly p = charpoly(m);
  trim(p);
  std::vector<Scalar> roots;
  auto peel = [&](const Scalar& r) {
    while (p.size() > 1 && ueval(p, r).is_zero()) {
      p = udiv(p, {-r, Scalar::one(f)}, nullptr);
      roots.push_back(r);
    }
  };
  if (f == Field::F2) {
    peel(Scalar::zero(f));
    peel(Scalar::one(f));
  } else {
    UPoly sq = p;
    UPoly g = ugcd(p, deriv(p));
    if (g.size() > 1) sq = udiv(p, g, nullptr);
    if (sq.size() > 1)
      for (auto z : numeric_roots(sq)) {
        mpq_class re = approx(z.real()), im = approx(z.imag());
        if (f == Field::Q && im != 0) continue;
        peel(Scalar(f, re, f == Field::Qi ? im : mpq_class(0)));
      }
  }
  if (p.size() > 1) throw NonSplit(upoly_str(p));
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---------------------------------------------------------------- splittings

namespace {

std::vector<int> vertex_list(const Hypercube& h) {
  std::vector<int> v;
  for (int e = 0; e < h.vertices(); ++e)
    for (int k = 0; k < h.vsize(e); ++k) v.push_back(e);
  return v;
}

Mat sub(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  return m.row_block(rows).col_block(cols);
}

Mat embed_col(const Mat& v, const std::vector<int>& at, int n) {
  Mat r(v.field(), n, 1);
  for (size_t k = 0; k < at.size(); ++k) r(at[k], 0) = v(int(k), 0);
  return r;
}

struct Ctx {
  FreeComplex tot;
  std::vector<int> vs;
  Mat mu;
  Mat d;
};

Ctx context(const Hypercube& h, const CubeMorphism& mu) {
  if (h.arity != 0) throw std::invalid_argument("eigenspaces need field coefficients");
  if (mu.grading != 0) throw std::invalid_argument("operator must have grading 0");
  Ctx c{total(h), vertex_list(h), total_map(mu).to_dense(), Mat()};
  c.d = c.tot.d.to_dense();
  return c;
}

// indices of total generators in grading (th, a) lying over vertices in `ok`
template <class Pred>
std::vector<int> pick(const Ctx& c, int th, int a, Pred ok) {
  std::vector<int> r;
  for (int i = 0; i < c.tot.size(); ++i)
    if (c.tot.same_h(c.tot.gens[i].h, th) && c.tot.gens[i].total_alex() == a && ok(c.vs[i])) r.push_back(i);
  return r;
}

Mat shifted_power(const Ctx& c, const std::vector<int>& idx, const Scalar& lambda) {
  Mat m = sub(c.mu, idx, idx);
  return power(m - Mat::identity(m.field(), m.rows()).scaled(lambda), std::max(1, m.rows()));
}

std::set<std::pair<int, int>> gradings(const std::vector<Generator>& g, bool z2) {
  std::set<std::pair<int, int>> s;
  for (auto& x : g) s.insert({z2 ? ((x.h % 2) + 2) % 2 : x.h, x.total_alex()});
  return s;
}

void vertex_eigen(const Hypercube& h, const CubeMorphism& mu, const Scalar& lambda, int e, std::vector<Generator>& gens,
                  Mat& basis) {
  const auto& vg = h.verts[e];
  Mat m = mu.get(e, e).to_dense();
  std::vector<Mat> cols;
  for (auto [hh, a] : gradings(vg, h.z2)) {
    std::vector<int> idx;
    for (int k = 0; k < int(vg.size()); ++k)
      if ((h.z2 ? (((vg[k].h - hh) % 2) == 0) : vg[k].h == hh) && vg[k].total_alex() == a) idx.push_back(k);
    Mat b = gen_eigenspace(sub(m, idx, idx), lambda);
    for (int j = 0; j < b.cols(); ++j) {
      gens.push_back({"e" + std::to_string(gens.size()), hh, {a}});
      cols.push_back(embed_col(b.col_block({j}), idx, int(vg.size())));
    }
  }
  basis = Mat(h.field, int(vg.size()), int(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < basis.rows(); ++i) basis(i, int(j)) = cols[j](i, 0);
}

Mat random_combo(const Mat& k, std::mt19937& rng) {
  Mat v(k.field(), k.rows(), 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int j = 0; j < k.cols(); ++j) {
    Scalar c(k.field(), long(coef(rng)));
    for (int i = 0; i < k.rows(); ++i) v(i, 0) += c * k(i, j);
  }
  return v;
}

// Splitting with prescribed faces: for a cube of dimension n+1, face0 and face1 are splittings
// of the faces with last coordinate 0 and 1.
Splitting build_impl(const Hypercube& h, const CubeMorphism& mu, const Scalar& lambda, unsigned seed,
                     const Splitting* face0, const Splitting* face1) {
  Ctx c = context(h, mu);
  Field f = h.field;
  int top = (face0 || face1) ? 1 << (h.n - 1) : 0;
  Splitting s{h, mu, lambda, Hypercube(f, 0, h.n), {}, Mat()};
  s.shape.z2 = h.z2;
  s.basis.resize(h.vertices());
  for (int e = 0; e < h.vertices(); ++e) {
    const Splitting* pre = top ? ((e & top) ? face1 : face0) : nullptr;
    if (pre) {
      s.shape.verts[e] = pre->shape.verts[e & ~top];
      s.basis[e] = pre->basis[e & ~top];
      // the cone moves vertex gradings; carry the offset over to the face's eigen generators
      if (h.vsize(e) > 0) {
        int dh = h.verts[e][0].h - pre->cube.verts[e & ~top][0].h;
        for (auto& g : s.shape.verts[e]) g.h += dh;
      }
    } else {
      vertex_eigen(h, mu, lambda, e, s.shape.verts[e], s.basis[e]);
    }
  }
  int N = c.tot.size(), M = s.shape.total_size();
  s.phi = Mat(f, N, M);
  std::mt19937 rng(seed);
  std::map<std::tuple<int, int, int>, std::pair<std::vector<int>, Mat>> cache;
  for (int e = 0; e < h.vertices(); ++e) {
    const Splitting* pre = top ? ((e & top) ? face1 : face0) : nullptr;
    int fe = e & ~top;
    for (int j = 0; j < s.shape.vsize(e); ++j) {
      int col = s.shape.offset(e) + j;
      if (pre) {
        // copy the face splitting, shifting generator positions into the big cube
        int fcol = pre->shape.offset(fe) + j;
        int shift = (e & top) ? h.offset(top) : 0;
        for (int i = 0; i < pre->phi.rows(); ++i) s.phi(i + shift, col) = pre->phi(i, fcol);
        if (e & top) continue;
      }
      const auto& g = s.shape.verts[e][j];
      int th = g.h - weight(e), a = g.total_alex();
      auto key = std::make_tuple(e, th, a);
      if (!cache.count(key)) {
        auto S = pick(c, th, a, [&](int v) { return below(e, v); });
        cache[key] = {S, shifted_power(c, S, lambda)};
      }
      auto& [S, P] = cache[key];
      std::vector<int> known, unknown;
      for (size_t k = 0; k < S.size(); ++k) {
        bool free_part = pre ? bool(c.vs[S[k]] & top) : c.vs[S[k]] != e;
        (free_part ? unknown : known).push_back(int(k));
      }
      Mat v(f, int(S.size()), 1);
      if (pre) {
        for (size_t k = 0; k < S.size(); ++k) v(int(k), 0) = s.phi(S[k], col);
      } else {
        for (int k = 0; k < h.vsize(e); ++k) s.phi(h.offset(e) + k, col) = s.basis[e](k, j);
        for (size_t k = 0; k < S.size(); ++k) v(int(k), 0) = s.phi(S[k], col);
      }
      Mat pk = P.col_block(known);
      Mat vk = v.row_block(known);
      Mat pu = P.col_block(unknown);
      auto y = solve(pu, (pk * vk).scaled(-Scalar::one(f)));
      if (!y) throw std::logic_error("build_splitting: no lift into the generalized eigenspace");
      Mat yy = *y;
      if (seed && !unknown.empty()) {
        Mat kk = kernel(sub(P, unknown, unknown));
        yy = yy + random_combo(kk, rng);
      }
      for (size_t k = 0; k < unknown.size(); ++k) s.phi(S[unknown[k]], col) = yy(int(k), 0);
    }
  }
  return s;
}

}  // namespace

Splitting build_splitting(const Hypercube& h, const CubeMorphism& mu, const Scalar& lambda, unsigned seed) {
  return build_impl(h, mu, lambda, seed, nullptr, nullptr);
}

Mat total_dense(const CubeMorphism& m) { return total_map(m).to_dense(); }

FreeComplex eigen_subcomplex(const Hypercube& h, const CubeMorphism& mu, const Scalar& lambda) {
  Ctx c = context(h, mu);
  std::vector<Generator> g;
  std::vector<Mat> cols;
  for (auto [th, a] : gradings(c.tot.gens, h.z2)) {
    auto idx = pick(c, th, a, [](int) { return true; });
    Mat b = gen_eigenspace(sub(c.mu, idx, idx), lambda);
    for (int j = 0; j < b.cols(); ++j) {
      g.push_back({"v" + std::to_string(g.size()), th, {a}});
      cols.push_back(embed_col(b.col_block({j}), idx, c.tot.size()));
    }
  }
  Mat k(h.field, c.tot.size(), int(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < k.rows(); ++i) k(i, int(j)) = cols[j](i, 0);
  FreeComplex r(h.field, 0, g);
  r.z2 = h.z2;
  if (!g.empty()) {
    auto x = solve(k, c.d * k);
    if (!x) throw std::logic_error("eigen_subcomplex: not a subcomplex");
    r.d = PolyMatrix::from_dense(*x);
  }
  return r;
}

std::vector<int> gr_dims(const Hypercube& h, const CubeMorphism& mu, const Scalar& lambda) {
  Ctx c = context(h, mu);
  std::vector<int> out(h.vertices(), 0);
  for (auto [th, a] : gradings(c.tot.gens, h.z2))
    for (int e = 0; e < h.vertices(); ++e) {
      auto ge = pick(c, th, a, [&](int v) { return below(e, v); });
      auto gt = pick(c, th, a, [&](int v) { return below(e, v) && v != e; });
      int d1 = ge.empty() ? 0 : kernel(shifted_power(c, ge, lambda)).cols();
      int d2 = gt.empty() ? 0 : kernel(shifted_power(c, gt, lambda)).cols();
      out[e] += d1 - d2;
    }
  return out;
}

std::vector<Scalar> total_eigenvalues(const Hypercube& h, const CubeMorphism& mu) {
  Ctx c = context(h, mu);
  std::vector<Scalar> all;
  for (auto [th, a] : gradings(c.tot.gens, h.z2)) {
    auto idx = pick(c, th, a, [](int) { return true; });
    auto ev = eigenvalues(sub(c.mu, idx, idx));
    all.insert(all.end(), ev.begin(), ev.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

bool check_splitting(const Splitting& s, std::string* why) {
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  const auto& h = s.cube;
  Ctx c = context(h, s.mu);
  for (int e = 0; e < h.vertices(); ++e)
    for (int e2 = 0; e2 < h.vertices(); ++e2)
      for (int j = 0; j < s.shape.vsize(e); ++j)
        for (int k = 0; k < h.vsize(e2); ++k) {
          const Scalar& v = s.phi(h.offset(e2) + k, s.shape.offset(e) + j);
          if (e2 == e && v != s.basis[e](k, j)) return fail("Phi_{e,e} is not the inclusion at " + bits(e, h.n));
          if (!below(e, e2) && !v.is_zero()) return fail("Phi is not filtered");
        }
  int N = c.tot.size();
  if (N && !(power(c.mu - Mat::identity(h.field, N).scaled(s.lambda), N) * s.phi).is_zero())
    return fail("image of Phi leaves the generalized eigenspace");
  if (rank(s.phi) != s.phi.cols()) return fail("Phi is not injective");
  if (eigen_subcomplex(h, s.mu, s.lambda).size() != s.phi.cols()) return fail("Phi is not onto e^lambda");
  return true;
}

Hypercube eigen_cube(const Splitting& s) {
  Mat d = total(s.cube).d.to_dense();
  if (s.phi.cols() == 0) return s.shape;
  auto x = solve(s.phi, d * s.phi);
  if (!x) throw std::logic_error("eigen_cube: D does not preserve the image of Phi");
  return cube_from_total(s.shape, PolyMatrix::from_dense(*x));
}

bool check_closed_forms(const Splitting& s, const Hypercube& ec, std::string* why) {
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  const auto& h = s.cube;
  auto phi_block = [&](int e, int e2) {
    std::vector<int> r, cl;
    for (int k = 0; k < h.vsize(e2); ++k) r.push_back(h.offset(e2) + k);
    for (int k = 0; k < s.shape.vsize(e); ++k) cl.push_back(s.shape.offset(e) + k);
    return sub(s.phi, r, cl);
  };
  for (int e = 0; e < h.vertices(); ++e) {
    Mat B = s.basis[e];
    Mat dee = ec.get(e, e).to_dense();
    if (B * dee != h.get(e, e).to_dense() * B) return fail("length 0 component differs at " + bits(e, h.n));
    for (int i = 0; i < h.n; ++i) {
      if (e >> i & 1) continue;
      int e2 = e | (1 << i);
      Mat p = phi_block(e, e2);
      Mat rhs = h.get(e, e2).to_dense() * B + h.get(e2, e2).to_dense() * p - p * dee;
      if (s.basis[e2] * ec.get(e, e2).to_dense() != rhs)
        return fail("length 1 component differs on " + bits(e, h.n) + " -> " + bits(e2, h.n));
    }
  }
  return true;
}

// ---------------------------------------------------------------- functoriality

CubeMorphism eigen_morphism(const CubeMorphism& f, const CubeMorphism& hmt, const Splitting& s0, const Splitting& s1,
                            unsigned seed) {
  if (f.grading != 0) throw std::invalid_argument("eigen_morphism needs a grading 0 map");
  Hypercube cc = cone_cube(f);
  int N0 = f.source.total_size(), N1 = f.target.total_size();
  PolyMatrix op(cc.field, 0, N0 + N1, N0 + N1);
  auto put = [&](const PolyMatrix& m, int r0, int c0) {
    for (int cidx = 0; cidx < m.cols(); ++cidx)
      for (auto& [r, p] : m.column(cidx)) op.add(r0 + r, c0 + cidx, p);
  };
  put(total_map(s0.mu), 0, 0);
  put(total_map(s1.mu), N0, N0);
  put(total_map(hmt), N0, 0);
  CubeMorphism mu = morphism_from_total(cc, cc, op, 0);
  if (!is_cycle(mu)) throw std::invalid_argument("(f, h) is not a cycle: f mu0 - mu1 f != D'h + hD");
  Splitting sc = build_impl(cc, mu, s0.lambda, seed, &s0, &s1);
  Hypercube ec = eigen_cube(sc);
  Hypercube e0 = eigen_cube(s0), e1 = eigen_cube(s1);
  int top = 1 << f.source.n;
  CubeMorphism out{e0, e1, {}, 0};
  for (int e = 0; e < top; ++e)
    for (int e2 = 0; e2 < top; ++e2)
      if (below(e, e2)) {
        PolyMatrix m = ec.get(e, e2 | top);
        if (!m.is_zero()) out.comp[{e, e2}] = m;
      }
  return out;
}

std::optional<Mat> find_homotopy(const Hypercube& s, const Hypercube& t, const Mat& a, const Mat& b) {
  FreeComplex ts = total(s), tt = total(t);
  auto vs = vertex_list(s), vt = vertex_list(t);
  Mat Ds = ts.d.to_dense(), Dt = tt.d.to_dense();
  Field f = s.field;
  LinearSystem sys(f);
  std::map<std::pair<int, int>, int> var;
  for (int c = 0; c < ts.size(); ++c)
    for (int r = 0; r < tt.size(); ++r)
      if (below(vs[c], vt[r]) && tt.same_h(tt.gens[r].h, ts.gens[c].h + 1) &&
          tt.gens[r].total_alex() == ts.gens[c].total_alex())
        var[{r, c}] = sys.add_unknown();
  std::map<std::pair<int, int>, std::map<int, Scalar>> eq;
  auto acc = [&](int i, int j, int v, const Scalar& x) {
    auto& row = eq[{i, j}];
    auto it = row.find(v);
    if (it == row.end())
      row.emplace(v, x);
    else
      it->second += x;
  };
  for (auto& [rc, v] : var) {
    auto [r, c] = rc;
    for (int i = 0; i < Dt.rows(); ++i)
      if (!Dt(i, r).is_zero()) acc(i, c, v, Dt(i, r));
    for (int j = 0; j < Ds.cols(); ++j)
      if (!Ds(c, j).is_zero()) acc(r, j, v, Ds(c, j));
  }
  Mat rhs = a - b;
  for (int i = 0; i < rhs.rows(); ++i)
    for (int j = 0; j < rhs.cols(); ++j)
      if (!rhs(i, j).is_zero() && !eq.count({i, j})) return std::nullopt;
  for (auto& [ij, row] : eq) sys.add_equation(row, rhs(ij.first, ij.second));
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  Mat k(f, tt.size(), ts.size());
  for (auto& [rc, v] : var) k(rc.first, rc.second) = (*sol)[v];
  return k;
}

SimultaneousResult simultaneous(const Hypercube& h, const CubeMorphism& mu, const CubeMorphism& mu2,
                                const CubeMorphism& k, const Scalar& lambda, const Scalar& lambda2) {
  PolyMatrix lhs = total_map(mu2) * total_map(mu) - total_map(mu) * total_map(mu2);
  PolyMatrix D = total(h).d, K = total_map(k);
  if (lhs != D * K + K * D) throw std::invalid_argument("commutator identity fails");
  auto run = [&](const CubeMorphism& a, const CubeMorphism& b, const CubeMorphism& hb, const Scalar& la,
                 const Scalar& lb) {
    Splitting s = build_splitting(h, a, la);
    Hypercube e = eigen_cube(s);
    CubeMorphism eb = eigen_morphism(b, hb, s, s);
    Splitting s2 = build_splitting(e, eb, lb);
    return homology_over_field(total(eigen_cube(s2)));
  };
  CubeMorphism negk = k;
  for (auto& [key, m] : negk.comp) m = -m;
  SimultaneousResult r;
  r.first = run(mu, mu2, k, lambda, lambda2);
  r.second = run(mu2, mu, negk, lambda2, lambda);
  return r;
}

ShiftVerdict shift_compare(const Hypercube& h, const CubeMorphism& mu, const CubeMorphism& mu2, const Scalar& alpha,
                           const Scalar& lambda) {
  ShiftVerdict v;
  Scalar l2 = lambda + alpha;
  for (int e = 0; e < h.vertices(); ++e) {
    FreeComplex c(h.field, 0, h.verts[e]);
    c.z2 = h.z2;
    c.d = h.get(e, e);
    Hypercube v0 = cube_from_complex(c);
    CubeMorphism m1{v0, v0, {{{0, 0}, mu.get(e, e)}}, 0};
    CubeMorphism m2{v0, v0, {{{0, 0}, mu2.get(e, e)}}, 0};
    auto t1 = homology_over_field(total(eigen_cube(build_splitting(v0, m1, lambda))));
    auto t2 = homology_over_field(total(eigen_cube(build_splitting(v0, m2, l2))));
    if (t1 != t2) {
      v.hypothesis = false;
      v.failed_vertex = bits(e, h.n);
      return v;
    }
  }
  v.left = homology_over_field(total(eigen_cube(build_splitting(h, mu, lambda))));
  v.right = homology_over_field(total(eigen_cube(build_splitting(h, mu2, l2))));
  return v;
}

}  // namespace fk
