#pragma once

#include <string>
#include <vector>

#include "floerkit/hypercubes.hpp"
#include "floerkit/limits.hpp"
#include "floerkit/tensors.hpp"

namespace fk {

// tau(n) = 1 for n even, 0 for n odd; sigma(n) = -(n - 1 + tau(n)) / 2
struct Shift {
  int tau = 0, sigma = 0;
};
Shift knot_shift(int n);
// r components with framings n: tau = 0 if sum n + r - 1 is odd, else 1;
// sigma = -(sum n + r - 2) / 2 + r - 1 for tau = 0 and -(sum n + r - 1) / 2 + r - 1 for tau = 1
Shift link_shift(const std::vector<int>& n);

// Sutured groups C_n, n in [lo, hi], with phi+ and phi- : C_n -> C_{n+1}.  Gradings are held
// shifted: a raw file grading has sigma(n) added on load.
struct KnotModel {
  std::string name;
  Field field = Field::Q;
  int genus = 0;
  int lo = 0, hi = 0;
  std::vector<std::vector<Generator>> spaces;
  std::map<int, Mat> plus, minus;
  const std::vector<Generator>& space(int n) const { return spaces.at(size_t(n - lo)); }
  int dim(int n) const { return int(space(n).size()); }
};
KnotModel knot_from_json(const json& j, const std::string& path = "");
KnotModel load_knot(const std::string& file);
// phi+ preserves gradings, phi- lowers A by one, and they commute
bool check_model(const KnotModel& k, std::string* why = nullptr);
System plus_system(const KnotModel& k);

// Cone(phi- - U phi+ : C_n[U] -> C_{n+1}[U]), source at h+1 and A-1
FreeComplex cki_minus(const KnotModel& k, int n);

// direct limit of the phi+ system with U induced by phi-, on the stable window
struct LimitModule {
  GradedModule module;
  int qlo = 0, qhi = 0;
  DimTable dims;
  RankTable ranks;
  std::map<int, int> stable_from;
};
LimitModule khi_minus_limit(const KnotModel& k);
// lowest grading q such that every grading >= q is stable by index n
int stable_floor(const KnotModel& k, int n);

// connected sum three ways; (b) the expanded square at (n, m) and the single arrow cone at (n, m),
// compared with (a) above the grading q where the finite stages are exact
struct ConnectedSum {
  DerivedTensor a;
  GradedModule module;
  ThreeWay c;
  int n = 0, m = 0, q = 0;
  DimTable dims_a, dims_b, dims_single;  // gradings >= q
  bool u_agree = false;
  bool homogeneous = false;
  bool ok() const { return c.ok() && u_agree && homogeneous && dims_a == dims_b && dims_a == dims_single; }
};
ConnectedSum connected_sum(const KnotModel& k1, const KnotModel& k2);
FreeComplex expanded_square(const KnotModel& k1, const KnotModel& k2, int n, int m);
FreeComplex single_arrow(const KnotModel& k1, const KnotModel& k2, int n, int m);

// two component link: spaces on the box [lo1, hi1] x [lo2, hi2], gradings stored shifted
struct LinkModel {
  std::string name;
  Field field = Field::Q;
  int lo[2] = {0, 0}, hi[2] = {0, 0};
  std::map<std::pair<int, int>, std::vector<Generator>> spaces;
  std::map<std::pair<int, int>, Mat> plus[2], minus[2];
};
LinkModel link_from_json(const json& j, const std::string& path = "");
LinkModel load_link(const std::string& file);
// square with vertex eps at (n1 + eps1, n2 + eps2), generators at A - (1 - eps) and vertex h + 2,
// edges phi-_i - U_i phi+_i, direction 2 edges signed (-1)^{eps1}, no diagonal
Hypercube cli_minus_link(const LinkModel& l, int n1, int n2);

// different components: Cone(U1 - U2) on the free model over k[U1, U2]
FreeComplex skein_different(const FreeComplex& total);
// same component: Cone((1 - alpha) U) on a free model over k[U]
FreeComplex skein_same(const FreeComplex& c, const Scalar& alpha);
// M (x) W with W spanned by (h, A) = (0, 0) and (1, -1)
GradedModule tensor_w(const GradedModule& m);

// phi(U^e x) = prod alpha_i^{-A_i(U^e x)} U^e x on the graded pieces; checks phi d = d phi and
// phi U_i = alpha_i U_i phi.  Throws std::invalid_argument for ungraded input.
struct RescaleVerdict {
  bool chain = false, intertwines = false;
  bool ok() const { return chain && intertwines; }
};
RescaleVerdict unit_rescale_iso(const FreeComplex& c, const std::vector<Scalar>& alpha, int alo, int ahi);
// Cone(U1 + c U2) on C1 (x) C2
FreeComplex derived_with(const FreeComplex& c1, const FreeComplex& c2, const Scalar& c);

// U_1 = ... = U_r -> U
FreeComplex collapse_variables(const FreeComplex& c);

}  // namespace fk
