#pragma once

#include <set>
#include <string>
#include <vector>

#include "floerkit/io.hpp"

namespace fk {

// Torus algebra over F2: iota1, iota2, rho1 = i1 rho1 i2, rho2 = i2 rho2 i1, rho3 = i1 rho3 i2 and
// the products rho12, rho23, rho123; rho2 rho1 = rho3 rho2 = 0.
namespace torus {
enum Basis { I1, I2, R1, R2, R3, R12, R23, R123 };
constexpr int kBasis = 8;
int left_idem(int b);   // 1 or 2
int right_idem(int b);
bool is_idem(int b);
int idem_elt(int idem);  // I1 or I2
int mul(int a, int b);   // basis product, -1 for zero
std::string name(int b);
int parse(const std::string& s);  // throws std::invalid_argument
// associativity on all triples, the two relations, orthogonal idempotents, unit laws
bool check_algebra(std::string* why = nullptr);
}  // namespace torus

// element of A (x) F2[U]: the set of (basis, U power) terms present
using Coef = std::set<std::pair<int, int>>;
Coef operator+(const Coef& a, const Coef& b);
Coef operator*(const Coef& a, const Coef& b);
std::string coef_str(const Coef& c);

// Type D structure over A with F2[U] coefficients; delta is indexed (target, source).
struct TypeD {
  std::vector<std::string> names;
  std::vector<int> idem;
  std::map<std::pair<int, int>, Coef> delta;
  int size() const { return int(names.size()); }
  int index(const std::string& n) const;
};
// f : X -> A (x) Y, indexed (target, source)
using DMap = std::map<std::pair<int, int>, Coef>;

DMap dcompose(const DMap& f, const DMap& g);  // (g o f)(x) = sum a b (x) z, a from f, b from g
DMap dadd(const DMap& f, const DMap& g);
DMap did(const TypeD& x);
DMap dboundary(const TypeD& x, const TypeD& y, const DMap& f);
bool structure_ok(const TypeD& x, std::string* why = nullptr);
// every term a of f(x) = a (x) y has a = iota(x) a iota(y)
bool idempotents_ok(const TypeD& x, const TypeD& y, const DMap& f, std::string* why = nullptr);
// generators x then y, named by suffixing 0 and 1
TypeD dcone(const TypeD& x, const TypeD& y, const DMap& f);

TypeD typed_from_json(const json& j, const std::string& path = "");
json to_json(const TypeD& d);

// Type A structure: m_{k+1}(x, a1..ak) for non-idempotent inputs; m2(x, iota) is the unit law.
// `unbounded` marks a truncation of an infinite action table at kmax inputs.
struct TypeA {
  std::vector<std::string> names;
  std::vector<int> idem;
  int kmax = 1;
  bool unbounded = false;
  std::map<std::pair<int, std::vector<int>>, std::set<std::pair<int, int>>> m;  // (x, inputs) -> (y, U power)
  int size() const { return int(names.size()); }
};
TypeA typea_from_json(const json& j, const std::string& path = "");
// right A-module x.A for an idempotent: m2(a, b) = ab
TypeA free_a_module(int idem);
// m_{3+i}(n, rho3, rho23 .. rho23, rho2) = n, truncated at kmax inputs
TypeA solid_torus_module(int kmax);
// A-infinity relations with up to kmax inputs
bool ainf_ok(const TypeA& a, std::string* why = nullptr);

struct Divergent : std::invalid_argument {
  std::string witness;
  explicit Divergent(const std::string& w)
      : std::invalid_argument("pairing is not bounded: " + w), witness(w) {}
};
// A box D over F2[U]; generators "x|y", ungraded
FreeComplex box(const TypeA& a, const TypeD& d);

// the modules of the surgery cone
struct ConeData {
  TypeD m0, m1, k;
  DMap phi_plus, phi_minus;  // M0 -> M1
};
ConeData cone_data(const TypeD& m0, const TypeD& m1, const TypeD& k);

struct Transcription {
  std::string name;
  TypeD cone;
  bool idempotents = false, dd = false, pi_cycle = false;
  std::vector<Coef> solutions;  // coefficients c with d(I) = 0, I(x) = b1 + rho2 (x) a0 (x) c
  bool pi_i = false, i_pi = false;
  bool pairing = false;  // trivial A-modules and free modules pair like K
  std::string witness;
  bool consistent() const { return idempotents && dd && pi_cycle && solutions.size() == 1 && pi_i && i_pi && pairing; }
};
struct BorderedReport {
  bool algebra = false;
  bool phi_cycles = false;
  Transcription displayed, naive;
  std::vector<std::string> pairing_lines;  // "module: cone | K"
  bool ok() const { return algebra && phi_cycles && displayed.consistent() != naive.consistent(); }
  std::string chosen() const { return displayed.consistent() ? displayed.name : naive.consistent() ? naive.name : "none"; }
};
// displayed: delta(a0) = rho3 (x) b1 (x) U + a1, naive: delta(a0) = a1 (x) U + rho2 (x) b1
// probes: A-modules paired with both the cone and K
BorderedReport bordered_verify(const ConeData& c, const std::vector<std::pair<std::string, TypeA>>& probes);

// f2(U^i, 1) = U^{i-1} for i > 0 and 0 for i = 0; -1 encodes zero
int f2_bypass(int i);
// Cone(f_*) over k[U] from the resolution of k[U]/U
FreeComplex bypass_cone(Field f);

// 0 -> C -U-> C -pi-> C/UC -> 0 and its long exact sequence on homology per (h, A)
// rank_u: C_{h,A+1} -> C_{h,A}, rank_pi: C_{h,A} -> Q_{h,A}, rank_conn: Q_{h,A} -> C_{h-1,A+1}
struct TriangleNode {
  int h = 0, a = 0;
  int dim_c = 0, dim_q = 0;
  int rank_u = 0, rank_pi = 0, rank_conn = 0;
  bool exact = false;  // at C_{h,A}, at Q_{h,A} and at C_{h-1,A+1}
};
struct TriangleReport {
  std::vector<TriangleNode> nodes;
  bool compositions_zero = true;
  std::string why;
  bool ok() const;
};
TriangleReport bypass_triangle(const FreeComplex& c);

}  // namespace fk
