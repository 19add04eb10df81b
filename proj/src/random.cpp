#include "floerkit/random.hpp"

namespace fk {

namespace {

Scalar rand_scalar(Field f, std::mt19937& rng, bool nonzero) {
  for (;;) {
    Scalar s(f);
    if (f == Field::F2) {
      s = Scalar(f, long(rng() % 2));
    } else {
      long a = long(rng() % 5) - 2;
      long b = f == Field::Qi ? long(rng() % 3) - 1 : 0;
      s = Scalar(f, mpq_class(a), mpq_class(b));
    }
    if (!nonzero || !s.is_zero()) return s;
  }
}

int rint(std::mt19937& rng, int lo, int hi) { return lo + int(rng() % unsigned(hi - lo + 1)); }

// P = I + N with N strictly lower triangular and graded; entries c U^k between generators of equal h
// with A(t) - k = A(s).  `allowed(s, t)` filters further.
template <class Ok>
PolyMatrix unitriangular(const FreeComplex& c, std::mt19937& rng, Ok allowed) {
  int n = c.size();
  PolyMatrix p = PolyMatrix::identity(c.field, c.arity, n);
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      const auto& gs = c.gens[s];
      const auto& gt = c.gens[t];
      if (gs.h != gt.h || !allowed(s, t)) continue;
      int k = gt.total_alex() - gs.total_alex();
      if (c.arity == 0 ? k != 0 : k < 0) continue;
      if (rng() % 3 == 0) continue;
      Scalar v = rand_scalar(c.field, rng, false);
      if (v.is_zero()) continue;
      Exp e(size_t(c.arity), 0);
      if (c.arity) e[0] = k;
      p.set(t, s, Poly::monomial(c.field, e, v));
    }
  return p;
}

FreeComplex pieces(Field f, int arity, int n, std::mt19937& rng, bool exact_size) {
  std::vector<Generator> g;
  std::vector<std::tuple<int, int, int>> pairs;  // source, target, U power
  int budget = exact_size ? n : rint(rng, 1, n);
  while (int(g.size()) < budget) {
    int h = rint(rng, -1, 1);
    int a = rint(rng, -2, 2);
    bool pair = int(g.size()) + 2 <= budget && rng() % 2 == 0;
    std::string base = "g" + std::to_string(g.size());
    if (!pair) {
      g.push_back({base, h, {a}});
      continue;
    }
    int k = arity ? rint(rng, 0, 2) : 0;
    int s = int(g.size());
    g.push_back({base, h, {a}});
    g.push_back({"g" + std::to_string(g.size()), h - 1, {a + k}});
    pairs.emplace_back(s, s + 1, k);
  }
  std::shuffle(g.begin(), g.end(), rng);
  // shuffle breaks indices; recompute by name
  FreeComplex c(f, arity, g);
  for (auto [s, t, k] : pairs) {
    Exp e(size_t(arity), 0);
    if (arity) e[0] = k;
    c.set_d(c.index("g" + std::to_string(t)), c.index("g" + std::to_string(s)), Poly::monomial(f, e, Scalar::one(f)));
  }
  return c;
}

FreeComplex conjugate(const FreeComplex& c0, const PolyMatrix& p) {
  FreeComplex c = c0;
  c.d = p * c0.d * unitriangular_inverse(p);
  return c;
}

}  // namespace

PolyMatrix unitriangular_inverse(const PolyMatrix& p) {
  int n = p.rows();
  PolyMatrix id = PolyMatrix::identity(p.field(), p.arity(), n);
  PolyMatrix nil = p - id;
  PolyMatrix acc = id, term = id;
  for (int k = 1; k <= n; ++k) {
    term = -(term * nil);
    if (term.is_zero()) break;
    acc = acc + term;
  }
  return acc;
}

FreeComplex random_complex(Field f, int n, std::mt19937& rng) {
  FreeComplex c = pieces(f, 1, n, rng, false);
  return conjugate(c, unitriangular(c, rng, [](int, int) { return true; }));
}

FreeComplex random_field_complex(Field f, int n, std::mt19937& rng) {
  FreeComplex c = pieces(f, 0, n, rng, true);
  return conjugate(c, unitriangular(c, rng, [](int, int) { return true; }));
}

PolyMatrix random_filtered_iso(const Hypercube& h, std::mt19937& rng, bool allow_same_vertex) {
  FreeComplex t = total(h);
  std::vector<int> vert;
  for (int e = 0; e < h.vertices(); ++e)
    for (int k = 0; k < h.vsize(e); ++k) vert.push_back(e);
  return unitriangular(t, rng, [&](int s, int u) {
    if (!below(vert[s], vert[u])) return false;
    return allow_same_vertex || vert[s] != vert[u];
  });
}

OperatorInstance random_operator_cube(Field f, int dim, int npieces, const std::vector<Scalar>& menu,
                                      std::mt19937& rng) {
  Hypercube h(f, 0, dim);
  int top = (1 << dim) - 1;
  // generators sorted by vertex so that the total order is the cube order
  struct Gen {
    int e, th, a;
    std::string name;
  };
  std::vector<Gen> gens;
  std::vector<std::pair<int, int>> pairs;       // (source, target) generator ids
  std::vector<std::vector<int>> blocks;         // generator ids of each copy of a piece
  std::vector<std::pair<Scalar, int>> blockop;  // (lambda, jordan partner block or -1)
  std::vector<Scalar> used;
  for (int p = 0; p < npieces; ++p) {
    Scalar lam = menu[rng() % menu.size()];
    used.push_back(lam);
    int e = rint(rng, 0, top);
    int th = rint(rng, -1, 1), a = rint(rng, -1, 1);
    bool pair = rng() % 2 == 0;
    int e2 = e;
    if (pair) {
      // any vertex above e; a same-vertex pair needs nothing extra
      e2 = e | int(rng() % unsigned(top + 1));
    }
    int copies = rng() % 3 == 0 ? 2 : 1;
    int first_block = int(blocks.size());
    for (int c = 0; c < copies; ++c) {
      std::vector<int> ids;
      int id = int(gens.size());
      gens.push_back({e, th, a, "p" + std::to_string(p) + "c" + std::to_string(c) + "x"});
      ids.push_back(id);
      if (pair) {
        gens.push_back({e2, th - 1, a, "p" + std::to_string(p) + "c" + std::to_string(c) + "y"});
        ids.push_back(id + 1);
        pairs.emplace_back(id, id + 1);
      }
      blocks.push_back(ids);
      blockop.emplace_back(lam, c == 1 ? first_block : -1);
    }
  }
  std::vector<int> order(gens.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = int(k);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return gens[x].e < gens[y].e; });
  std::vector<int> pos(gens.size());
  for (size_t k = 0; k < order.size(); ++k) {
    const Gen& g = gens[order[k]];
    pos[order[k]] = int(k);
    h.verts[g.e].push_back({g.name, g.th + weight(g.e), {g.a}});
  }
  int n = int(gens.size());
  PolyMatrix d(f, 0, n, n), mu(f, 0, n, n);
  Poly one = Poly::constant(f, 0, Scalar::one(f));
  for (auto [s, t] : pairs) d.set(pos[t], pos[s], one);
  for (size_t b = 0; b < blocks.size(); ++b) {
    auto [lam, partner] = blockop[b];
    for (int id : blocks[b]) {
      if (!lam.is_zero()) mu.set(pos[id], pos[id], Poly::constant(f, 0, lam));
    }
    if (partner >= 0)  // this copy maps onto the first copy
      for (size_t k = 0; k < blocks[b].size(); ++k) mu.set(pos[blocks[partner][k]], pos[blocks[b][k]], one);
  }
  Hypercube shape = h;
  PolyMatrix p = random_filtered_iso(shape, rng, true);
  PolyMatrix pinv = unitriangular_inverse(p);
  Hypercube cube = cube_from_total(shape, p * d * pinv);
  CubeMorphism m = morphism_from_total(cube, cube, p * mu * pinv, 0);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  return {cube, m, used};
}

Mat random_filtered_k(const Hypercube& h, std::mt19937& rng) {
  FreeComplex t = total(h);
  std::vector<int> vert;
  for (int e = 0; e < h.vertices(); ++e)
    for (int k = 0; k < h.vsize(e); ++k) vert.push_back(e);
  Mat k(h.field, t.size(), t.size());
  std::uniform_int_distribution<int> c(-2, 2);
  for (int s = 0; s < t.size(); ++s)
    for (int r = 0; r < t.size(); ++r)
      if (below(vert[s], vert[r]) && t.gens[r].h == t.gens[s].h + 1 && t.gens[r].total_alex() == t.gens[s].total_alex())
        k(r, s) = Scalar(h.field, c(rng));
  return k;
}

namespace {

Scalar random_unit(Field f, std::mt19937& rng) {
  if (f == Field::F2) return Scalar::one(f);
  std::uniform_int_distribution<int> d(1, 5);
  Scalar s(f, mpq_class(d(rng), d(rng)));
  return rng() % 2 ? s : -s;
}

}  // namespace

System random_projective(Field f, std::mt19937& rng, System* exact) {
  System s;
  s.field = f;
  s.lo = 0;
  s.hi = 3;
  std::uniform_int_distribution<int> n(1, 3), a(-1, 1), c(-2, 2);
  for (int i = 0; i <= 3; ++i) {
    std::vector<Generator> g;
    int k = n(rng);
    for (int x = 0; x < k; ++x) g.push_back({"g" + std::to_string(x), 0, {a(rng)}});
    s.spaces.push_back(g);
  }
  for (int i = 0; i < 3; ++i) {
    Mat m(f, s.dim(i + 1), s.dim(i));
    for (int r = 0; r < m.rows(); ++r)
      for (int k = 0; k < m.cols(); ++k)
        if (s.space(i + 1)[r].total_alex() == s.space(i)[k].total_alex()) m(r, k) = Scalar(f, c(rng));
    s.maps[{i, i + 1}] = m;
  }
  *exact = s;
  for (int i = 0; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) s.maps[{i, j}] = exact->map(i, j).scaled(random_unit(f, rng));
  s.projective = true;
  return s;
}

}  // namespace fk
