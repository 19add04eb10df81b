#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "floerkit/scalars.hpp"

namespace fk {

struct Generator {
  std::string name;
  int h = 0;
  std::vector<int> alex;  // one entry per U variable, or a single total
  int total_alex() const {
    int s = 0;
    for (int a : alex) s += a;
    return s;
  }
};

// Free complex over k[U_1..U_r]; d is indexed (target, source).
struct FreeComplex {
  Field field = Field::Q;
  int arity = 0;
  bool z2 = false;
  std::vector<Generator> gens;
  PolyMatrix d;

  FreeComplex() = default;
  FreeComplex(Field f, int r, std::vector<Generator> g);
  int size() const { return int(gens.size()); }
  int index(const std::string& name) const;
  Poly zero() const { return Poly(field, arity); }
  Poly one() const { return Poly::constant(field, arity, Scalar::one(field)); }
  Poly mono(const Exp& e, const Scalar& c) const { return Poly::monomial(field, e, c); }
  void set_d(int target, int source, const Poly& p) { d.set(target, source, p); }
  // h of d(x) for x in degree h
  int hdown(int h) const { return z2 ? ((h + 1) % 2) : h - 1; }
  bool same_h(int a, int b) const { return z2 ? ((a - b) % 2 == 0) : a == b; }
};

struct ChainMap {
  FreeComplex source, target;
  PolyMatrix m;  // (target gen, source gen)
  int hshift = 0;
  // Alexander shift; one entry per component, or a single total shift
  std::vector<int> ashift;
};

struct Violation {
  std::string kind;  // d2 | hgrading | alex | ring
  std::string a, b;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& kind, const std::string& a, const std::string& b) const;
  std::string str() const;
};

ValidationReport validate(const FreeComplex& c);
// d_target f - (-1)^hshift f d_source, and homogeneity of f
ValidationReport validate_map(const ChainMap& f);
bool is_cycle(const ChainMap& f);

struct Summand {
  bool free = true;
  int h = 0;
  int alex = 0;
  int order = 0;  // torsion k[U]/U^order; 0 for free summands
  bool operator==(const Summand& o) const {
    return free == o.free && h == o.h && alex == o.alex && order == o.order;
  }
  bool operator<(const Summand& o) const {
    return std::tie(alex, h, free, order) < std::tie(o.alex, o.h, o.free, o.order);
  }
};

// Finitely generated graded k[U]-module.
struct GradedModule {
  std::vector<Summand> summands;
  void canonicalize();
  bool operator==(const GradedModule& o) const { return summands == o.summands; }
  bool operator!=(const GradedModule& o) const { return !(*this == o); }
  int free_rank() const;
  int torsion_count() const;
  std::string str() const;     // Free(h=0, A=0) + Torsion(h=0, A=1, order=1)
  std::string pretty() const;  // k[U]_{(0,0)} + (k[U]/U)_{(0,1)}
};

// (h, A) -> dimension, zero entries omitted
using DimTable = std::map<std::pair<int, int>, int>;
// (h, A, j) -> rank of U^j : H_{h,A} -> H_{h,A-j}
using RankTable = std::map<std::tuple<int, int, int>, int>;

std::string table_str(const DimTable& t);

DimTable homology_over_field(const FreeComplex& c);
GradedModule homology_over_ring(const FreeComplex& c);
// free resolution of a graded module as a complex over k[U]
FreeComplex module_complex(const GradedModule& m, Field f);
// Ungraded invariants over k[U] by Euclidean Smith form: free rank and monic invariant factors of
// positive degree.
struct RingInvariants {
  int free_rank = 0;
  std::vector<Poly> torsion;
  bool operator==(const RingInvariants& o) const;
  std::string str() const;
};
RingInvariants ring_invariants(const FreeComplex& c);

FreeComplex cone(const ChainMap& f);
FreeComplex shift(const FreeComplex& c, int n);
FreeComplex tensor_field(const FreeComplex& a, const FreeComplex& b);
FreeComplex tensor_ring(const FreeComplex& a, const FreeComplex& b);
FreeComplex truncate_above(const FreeComplex& c, int q);
FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b);
// same generators, U_i -> 0 (arity becomes 0)
FreeComplex specialize_zero(const FreeComplex& c);
FreeComplex with_field(const FreeComplex& c, Field f);
ChainMap identity_map(const FreeComplex& c);
ChainMap compose(const ChainMap& g, const ChainMap& f);

// i: H -> C, pi: C -> H, h: C -> C with pi i = id, i pi = id + dh + hd, hh = hi = pi h = 0.
struct SDR {
  FreeComplex H;
  PolyMatrix i, pi, h;
};
// Cancels unit entries until none remain; over a field H has zero differential.
SDR sdr(const FreeComplex& c);
bool check_sdr(const FreeComplex& c, const SDR& s, std::string* why = nullptr);

// Finite dimensional pieces of C in fixed (h, total A).  Arity 0 complexes have a single piece
// per generator grading; otherwise U^e g sits at A(g) - |e|.
class GradedView {
 public:
  explicit GradedView(const FreeComplex& c);
  const FreeComplex& complex() const { return c_; }
  std::set<int> h_values() const;
  int min_alex() const { return amin_; }
  int max_alex() const { return amax_; }
  const std::vector<std::pair<int, Exp>>& basis(int h, int a) const;
  int dim(int h, int a) const { return int(basis(h, a).size()); }
  int locate(int h, int a, int g, const Exp& e) const;
  Mat dmat(int h, int a) const;                     // C_{h,a} -> C_{hdown(h),a}
  Mat umat(int var, int j, int h, int a) const;     // U_var^j : C_{h,a} -> C_{h,a-j}
  Mat pmat(const Poly& p, int h, int a) const;      // p homogeneous of degree -k: C_{h,a} -> C_{h,a-k}
  Mat cycles(int h, int a) const;
  Mat boundaries(int h, int a) const;
  int hom_dim(int h, int a) const;
  // rank of the map induced by m : C_{h,a} -> C_{h,a2} on homology
  int induced_rank(const Mat& m, int h, int a, int a2) const;
  // m and m2 induce the same map on homology
  bool induced_equal(const Mat& m, const Mat& m2, int h, int a, int a2) const;
  // chosen homology basis (cycles) and coordinates of cycles in it
  Mat hom_basis(int h, int a) const;
  Mat hom_coords(const Mat& cyc, int h, int a) const;

 private:
  FreeComplex c_;
  int amin_ = 0, amax_ = 0;
  mutable std::map<std::pair<int, int>, std::vector<std::pair<int, Exp>>> cache_;
  mutable std::map<std::pair<int, int>, std::map<std::pair<int, Exp>, int>> index_;
  mutable std::map<std::pair<int, int>, Mat> zc_, bc_, hb_;
};

DimTable homology_table(const GradedView& v, int alo, int ahi);
RankTable rank_table(const GradedView& v, int var, int jmax, int alo, int ahi);
DimTable homology_table(const FreeComplex& c, int alo, int ahi);
RankTable rank_table(const FreeComplex& c, int var, int jmax, int alo, int ahi);

// Build a module from dimensions and U-ranks on a window [alo, ahi]; a summand reaching alo is
// free.  Callers pick alo at or below every generator grading and jmax >= ahi - alo.
GradedModule module_from_ranks(const DimTable& dims, const RankTable& ranks, int alo, int ahi);

}  // namespace fk
