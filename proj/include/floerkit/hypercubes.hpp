#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "floerkit/complexes.hpp"

namespace fk {

// Vertex eps is a bitmask; bit i is coordinate i.  bits(eps, n) spells it with coordinate 0 first.
std::string bits(int eps, int n);
int parse_bits(const std::string& s);
inline int weight(int eps) { return __builtin_popcount(unsigned(eps)); }
inline bool below(int e, int e2) { return (e & e2) == e; }

// Vertex generators carry the vertex-local h.  D_{e,e'} raises it by |e'-e| - 1, so the total
// complex uses h - |e| and has a degree -1 differential.
struct Hypercube {
  Field field = Field::Q;
  int arity = 0;
  int n = 0;
  bool z2 = false;
  std::vector<std::vector<Generator>> verts;
  std::map<std::pair<int, int>, PolyMatrix> maps;  // (e, e') with e <= e', including D_{e,e}

  Hypercube() = default;
  Hypercube(Field f, int arity, int n);
  int vertices() const { return 1 << n; }
  int vsize(int e) const { return int(verts[e].size()); }
  int offset(int e) const;
  int total_size() const { return offset(vertices()); }
  PolyMatrix get(int e, int e2) const;
  void set(int e, int e2, const PolyMatrix& m);
};

Hypercube cube_from_complex(const FreeComplex& c);
// Cube with the vertices of shape and maps cut out of a filtered total matrix.
Hypercube cube_from_total(const Hypercube& shape, const PolyMatrix& d);
FreeComplex total(const Hypercube& h);
// Component-wise check of the cube relation and degrees; kinds: cube | hgrading | alex | ring
ValidationReport validate_cube(const Hypercube& h);

// Filtered map between totals, with components F_{e,e'} for e <= e'.
struct CubeMorphism {
  Hypercube source, target;
  std::map<std::pair<int, int>, PolyMatrix> comp;
  int grading = 0;
  PolyMatrix get(int e, int e2) const;
};

PolyMatrix total_map(const CubeMorphism& f);
// Split a total-level matrix into components; throws if it is not filtered.
CubeMorphism morphism_from_total(const Hypercube& s, const Hypercube& t, const PolyMatrix& m, int grading);
// F D + (-1)^{|F|+1} D' F at the total level
PolyMatrix boundary(const CubeMorphism& f);
bool is_cycle(const CubeMorphism& f);
CubeMorphism compose(const CubeMorphism& g, const CubeMorphism& f);
CubeMorphism identity_morphism(const Hypercube& h);

// (n+1)-cube with the source on the last coordinate 0 and the target on 1.
Hypercube cone_cube(const CubeMorphism& f);
// pattern over {0,1,*}, one character per coordinate
Hypercube restrict_cube(const Hypercube& h, const std::string& pattern);

struct QuasiInverse {
  CubeMorphism g;  // target -> source
  PolyMatrix k;    // on target total: F G - id = dK + Kd
  PolyMatrix l;    // on source total: G F - id = dL + Ld
};
// Field coefficients only.  Throws if some F_{e,e} is not a quasi-isomorphism.
QuasiInverse invert_quasi_iso(const CubeMorphism& f);
bool check_quasi_inverse(const CubeMorphism& f, const QuasiInverse& q, std::string* why = nullptr);

// Vertex-wise reduction transferred to the whole cube.  i, pi, h are total-level maps satisfying
// the same identities as an SDR between total(cube) and total(input).
struct Perturbed {
  Hypercube cube;
  PolyMatrix i, pi, h;
};
Perturbed perturb(const Hypercube& h);

}  // namespace fk
