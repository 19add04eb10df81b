#include "floerkit/tensors.hpp"

#include <algorithm>

namespace fk {

namespace {

void need_single(const FreeComplex& a, const FreeComplex& b) {
  if (a.arity != 1 || b.arity != 1) throw std::invalid_argument("derived tensor needs single-variable complexes");
  if (a.field != b.field) throw std::invalid_argument("derived tensor: field mismatch");
}

Poly u1_minus_u2(Field f) {
  Poly p = Poly::var(f, 2, 0) - Poly::var(f, 2, 1);
  return p;
}

int hup(const FreeComplex& c, int h) { return c.z2 ? ((h + 1) % 2) : h + 1; }

}  // namespace

std::pair<int, int> alex_window(const FreeComplex& c, int pad) {
  if (c.gens.empty()) return {0, 0};
  int lo = c.gens[0].total_alex(), hi = lo;
  for (auto& g : c.gens) {
    lo = std::min(lo, g.total_alex());
    hi = std::max(hi, g.total_alex());
  }
  return {lo - pad, hi};
}

DerivedTensor derived_tensor(const FreeComplex& c1, const FreeComplex& c2) {
  need_single(c1, c2);
  FreeComplex t = tensor_field(c1, c2);
  PolyMatrix f = PolyMatrix::identity(t.field, 2, t.size()).mul_poly(u1_minus_u2(t.field));
  ChainMap m{shift(t, 1), t, f, -1, {-1}};
  return {cone(m), t};
}

GradedModule derived_module(const DerivedTensor& d) {
  auto [lo, hi] = alex_window(d.cx, 0);
  int pad = hi - lo + 1;
  int alo = lo - pad;
  // cancelling unit entries is a homotopy equivalence over k[U1, U2] and shrinks the pieces
  GradedView v(sdr(d.cx).H);
  return module_from_ranks(homology_table(v, alo, hi), rank_table(v, 0, hi - alo, alo, hi), alo, hi);
}

bool u_actions_agree(const FreeComplex& t, int alo, int ahi) {
  GradedView v(t);
  for (int h : v.h_values())
    for (int a = alo; a <= ahi; ++a) {
      if (v.dim(h, a) == 0) continue;
      if (!v.induced_equal(v.umat(0, 1, h, a), v.umat(1, 1, h, a), h, a, a - 1)) return false;
    }
  return true;
}

// ---------------------------------------------------------------- three-way check

namespace {

// Matrices of the explicit maps between the derived tensor (cone) and C1 (x)_k[U] C2, per piece.
struct Explicit {
  const DerivedTensor& dt;
  const FreeComplex& t;  // arity 2
  GradedView& vc;        // cone
  GradedView& vr;        // ring tensor
  int n;                 // generators of t

  // Pi on the target copy
  Mat phi(int h, int a) const {
    const auto& bc = vc.basis(h, a);
    Mat m(t.field, vr.dim(h, a), int(bc.size()));
    for (size_t c = 0; c < bc.size(); ++c) {
      auto [g, e] = bc[c];
      if (g < n) continue;
      int r = vr.locate(h, a, g - n, {e[0] + e[1]});
      m(r, int(c)) = Scalar::one(t.field);
    }
    return m;
  }

  // -p applied to the monomial U1^i U2^j t_k, accumulated into column `col` of m (cone piece h, a)
  void minus_p(Mat& m, int col, int h, int a, int k, int i, int j, const Scalar& c) const {
    for (int x = 0; x < j; ++x) {
      int r = vc.locate(h, a, k, {i + x, j - 1 - x});
      m(r, col) += c;
    }
  }

  // Psi(z) = (-p dT s z, s z)
  Mat psi(int h, int a) const {
    const auto& br = vr.basis(h, a);
    Mat m(t.field, vc.dim(h, a), int(br.size()));
    for (size_t c = 0; c < br.size(); ++c) {
      auto [k, e] = br[c];
      int u = e[0];
      m(vc.locate(h, a, n + k, {u, 0}), int(c)) += Scalar::one(t.field);
      for (auto& [tg, p] : t.d.column(k))
        for (auto& [ex, co] : p.terms()) minus_p(m, int(c), h, a, tg, ex[0] + u, ex[1], co);
    }
    return m;
  }

  // H(a, b) = (-p b, 0): piece (h, a) -> (h+1, a)
  Mat hmap(int h, int a) const {
    int h2 = hup(dt.cx, h);
    const auto& bc = vc.basis(h, a);
    Mat m(t.field, vc.dim(h2, a), int(bc.size()));
    for (size_t c = 0; c < bc.size(); ++c) {
      auto [g, e] = bc[c];
      if (g < n) continue;
      minus_p(m, int(c), h2, a, g - n, e[0], e[1], Scalar::one(t.field));
    }
    return m;
  }
};

bool verify_explicit(const DerivedTensor& dt, const FreeComplex& ring, int alo, int ahi, std::string* why) {
  GradedView vc(dt.cx), vr(ring);
  Explicit ex{dt, dt.t, vc, vr, dt.t.size()};
  std::set<int> hs = vc.h_values();
  for (int h : vr.h_values()) hs.insert(h);
  auto fail = [&](const std::string& w, int h, int a) {
    if (why) *why = w + " at (h=" + std::to_string(h) + ", A=" + std::to_string(a) + ")";
    return false;
  };
  for (int h : hs)
    for (int a = alo; a <= ahi; ++a) {
      int hd = dt.cx.hdown(h);
      Mat phi = ex.phi(h, a), psi = ex.psi(h, a);
      Mat dc = vc.dmat(h, a), dr = vr.dmat(h, a);
      if (phi * psi != Mat::identity(dt.t.field, vr.dim(h, a))) return fail("Phi Psi != id", h, a);
      if (dr * phi != ex.phi(hd, a) * dc) return fail("Phi is not a chain map", h, a);
      if (dc * psi != ex.psi(hd, a) * dr) return fail("Psi is not a chain map", h, a);
      Mat lhs = psi * phi - Mat::identity(dt.t.field, vc.dim(h, a));
      Mat rhs = vc.dmat(hup(dt.cx, h), a) * ex.hmap(h, a) + ex.hmap(hd, a) * dc;
      if (lhs != rhs) return fail("Psi Phi - id != dH + Hd", h, a);
    }
  return true;
}

FreeComplex homology_resolution(const FreeComplex& c) { return module_complex(homology_over_ring(c), c.field); }

}  // namespace

ThreeWay three_way_check(const FreeComplex& c1, const FreeComplex& c2, int jmax) {
  need_single(c1, c2);
  FreeComplex ring = tensor_ring(c1, c2);
  auto [lo, hi] = alex_window(ring, 2);
  return three_way_check(c1, c2, jmax, lo, hi);
}

ThreeWay three_way_check(const FreeComplex& c1, const FreeComplex& c2, int jmax, int alo, int ahi) {
  need_single(c1, c2);
  ThreeWay r;
  r.alo = alo;
  r.ahi = ahi;
  FreeComplex ring = tensor_ring(c1, c2);
  DerivedTensor dt = derived_tensor(c1, c2);
  DerivedTensor dh = derived_tensor(homology_resolution(c1), homology_resolution(c2));
  // tables on the reduced complexes; the explicit maps below use dt itself
  FreeComplex rt = sdr(dt.cx).H, rh = sdr(dh.cx).H;
  const FreeComplex* cs[3] = {&ring, &rt, &rh};
  for (int k = 0; k < 3; ++k) {
    GradedView v(*cs[k]);
    r.dims[k] = homology_table(v, alo, ahi);
    r.ranks[k] = rank_table(v, 0, jmax, alo, ahi);
  }
  r.u_agree = u_actions_agree(rt, alo, ahi) && u_actions_agree(rh, alo, ahi);
  if (!r.u_agree) r.why = "U1 and U2 differ on homology";
  std::string why;
  r.identities = verify_explicit(dt, ring, alo, ahi, &why);
  if (!r.identities) r.why = why;
  return r;
}

// ---------------------------------------------------------------- Lambda

FreeComplex lambda_box(const FreeComplex& m, const FreeComplex& n) {
  need_single(m, n);
  Field f = m.field;
  std::vector<Generator> g;
  int nn = n.size(), nm = m.size(), N = nm * nn;
  for (int row = 0; row < 2; ++row)
    for (auto& x : m.gens)
      for (auto& y : n.gens) {
        int a = x.total_alex() + y.total_alex();
        g.push_back({x.name + (row == 0 ? "|1|" : "|th|") + y.name, x.h + y.h + (row == 0 ? 1 : 0), {row == 0 ? a - 1 : a}});
      }
  FreeComplex c(f, 2, g);
  c.z2 = m.z2 || n.z2;
  std::vector<int> m1{0}, m2{1};
  Poly u1 = Poly::var(f, 2, 0), u2 = Poly::var(f, 2, 1);
  for (int row = 0; row < 2; ++row) {
    int off = row == 0 ? 0 : N;
    int lam = row == 0 ? 1 : 0;  // degree of the Lambda generator
    for (int i = 0; i < nm; ++i)
      for (int j = 0; j < nn; ++j) {
        int src = off + i * nn + j;
        for (auto& [t, p] : m.d.column(i)) c.d.add(off + t * nn + j, src, p.remap(m1, 2));
        bool neg = (m.gens[i].h + lam) % 2 != 0;
        for (auto& [t, p] : n.d.column(j)) {
          Poly q = p.remap(m2, 2);
          c.d.add(off + i * nn + t, src, neg ? -q : q);
        }
        if (row == 0) {
          Poly q = u1 - u2;
          c.d.add(N + i * nn + j, src, m.gens[i].h % 2 != 0 ? -q : q);
        }
      }
  }
  return c;
}

bool lambda_dd_ok(Field f) {
  // basis (1, theta); delta^{1,1}(1) = (U_L - U_R) theta, delta(theta) = 0
  PolyMatrix d(f, 2, 2, 2);
  d.set(1, 0, Poly::var(f, 2, 0) - Poly::var(f, 2, 1));
  return (d * d).is_zero();
}

bool lambda_box_matches(const FreeComplex& m, const FreeComplex& n, std::string* why) {
  FreeComplex l = lambda_box(m, n);
  DerivedTensor dt = derived_tensor(m, n);
  int N = m.size() * n.size();
  const FreeComplex& c = dt.cx;
  if (l.size() != c.size()) {
    if (why) *why = "sizes differ";
    return false;
  }
  // P: lambda_box -> cone
  PolyMatrix p(l.field, 2, c.size(), l.size());
  Poly one = Poly::constant(l.field, 2, Scalar::one(l.field));
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < n.size(); ++j) {
      int k = i * n.size() + j;
      p.set(k, k, m.gens[i].h % 2 != 0 ? -one : one);
      p.set(N + k, N + k, one);
    }
  for (int k = 0; k < l.size(); ++k)
    if (l.gens[k].h != c.gens[k].h || l.gens[k].total_alex() != c.gens[k].total_alex()) {
      if (why) *why = "grading differs at " + l.gens[k].name;
      return false;
    }
  if (p * l.d != c.d * p) {
    if (why) *why = "relabeling does not intertwine the differentials";
    return false;
  }
  return true;
}

}  // namespace fk
