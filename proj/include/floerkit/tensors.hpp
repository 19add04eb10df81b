#pragma once

#include <string>

#include "floerkit/complexes.hpp"

namespace fk {

// Cone(U1|1 - 1|U2 : (C1 (x)_k C2)[1] -> C1 (x)_k C2) over k[U1, U2].  Generators "s.x|y" (the
// shifted copy, at h+1 and A-1) come first, then "t.x|y"; Alexander gradings are totals.
struct DerivedTensor {
  FreeComplex cx;
  FreeComplex t;  // C1 (x)_k C2
};
DerivedTensor derived_tensor(const FreeComplex& c1, const FreeComplex& c2);

struct ThreeWay {
  int alo = 0, ahi = 0;
  DimTable dims[3];
  RankTable ranks[3];
  bool identities = true;  // Phi Psi = id, Psi Phi = id + [d, H], chain maps
  bool u_agree = true;
  std::string why;
  bool ok() const {
    return identities && u_agree && dims[0] == dims[1] && dims[1] == dims[2] && ranks[0] == ranks[1] &&
           ranks[1] == ranks[2];
  }
};
// Compares H(C1 (x)_k[U] C2), H(C1 ~(x) C2) and H(H(C1) ~(x) H(C2)) on the Alexander window
// [alo, ahi] (defaults from the generators), with U^0..U^jmax ranks, and verifies the explicit maps
// Phi = Pi, Psi = (-p d s, s), H = (-p, 0) piece by piece.  H(Ci) enters through a free resolution.
ThreeWay three_way_check(const FreeComplex& c1, const FreeComplex& c2, int jmax = 3);
ThreeWay three_way_check(const FreeComplex& c1, const FreeComplex& c2, int jmax, int alo, int ahi);

// M box Lambda box N with delta(1) = U (x) theta (x) 1 - 1 (x) theta (x) U; rows "x|1|y" then "x|th|y".
FreeComplex lambda_box(const FreeComplex& m, const FreeComplex& n);
// delta o delta = 0 on the two generator DD bimodule, over k[U_L, U_R]
bool lambda_dd_ok(Field f);
// explicit relabeling x|1|y -> (-1)^{h(x)} s.x|y, x|th|y -> t.x|y is a chain isomorphism
bool lambda_box_matches(const FreeComplex& m, const FreeComplex& n, std::string* why = nullptr);

// U1 and U2 induce the same maps on homology in every (h, A) of the window
bool u_actions_agree(const FreeComplex& t, int alo, int ahi);

// homology of a derived tensor as a k[U] module, U acting by U1
GradedModule derived_module(const DerivedTensor& d);
// default Alexander window for a complex: [min A - pad, max A]
std::pair<int, int> alex_window(const FreeComplex& c, int pad);

}  // namespace fk
