#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "floerkit/io.hpp"

namespace fk {

// Graded vector spaces G_i for i in [lo, hi] with maps phi_{i->j}.  Maps not stored explicitly are
// composites of the stored steps (i, i+1); phi_{i->i} defaults to the identity.
struct System {
  Field field = Field::Q;
  int lo = 0, hi = 0;
  bool projective = false;
  std::vector<std::vector<Generator>> spaces;
  std::map<std::pair<int, int>, Mat> maps;

  const std::vector<Generator>& space(int i) const { return spaces.at(size_t(i - lo)); }
  int dim(int i) const { return int(space(i).size()); }
  Mat map(int i, int j) const;
};

System system_from_json(const json& j, const std::string& path = "");
json to_json(const System& s);

// Identity, composition and grading laws, exactly.
bool check_transitive(const System& s, std::string* why = nullptr);
// phi is grading preserving (h, total A)
bool check_graded(const System& s, std::string* why = nullptr);

struct Unstable : std::runtime_error {
  int q;
  explicit Unstable(int q_) : std::runtime_error("unstable at grading " + std::to_string(q_)), q(q_) {}
};

// The window's limit is G_hi; grading q is stable once every step from N(q) on is an isomorphism in
// grading q, which needs at least one observed step.
struct Limit {
  std::vector<Generator> basis;  // generators of G_hi in the requested range
  std::map<int, int> stable_from;
  DimTable dims;
};
Limit direct_limit(const System& s, int qlo, int qhi);
// dim of (sum G_i) / span(x - phi_{i->j} x) per (h, A), by brute force
DimTable limit_quotient_dims(const System& s);

struct CalibrationError : std::invalid_argument {
  std::string witness;
  CalibrationError(const std::string& msg, const std::string& w) : std::invalid_argument(msg + ": " + w), witness(w) {}
};
struct Calibrated {
  System sys;  // on [i0, hi], genuinely transitive
  std::map<std::pair<int, int>, Scalar> alpha;
};
// psi_{j->k} = alpha phi_{j->k} with alpha phi_{j->k} phi_{i0->j} = phi_{i0->k}
Calibrated calibrate(const System& p, int i0);

// theta_{i0->j0} between the calibrated limits, both realized on G_hi; a scalar here.
struct Transporter {
  Scalar theta, tau;
};
Transporter limit_transporter(const System& p, int i0, int j0);

// F_i : S_i -> T_{i + shift}
struct SystemMorphism {
  System source, target;
  int shift = 0;
  std::map<int, Mat> comp;
};
bool commutes(const SystemMorphism& f, std::string* why = nullptr);
// F^{(i0)}_j = alpha F_j, against the calibrations at i0 and i0 + shift
SystemMorphism calibrate_morphism(const SystemMorphism& f, int i0);
// induced map on the limits, through the last component
Mat limit_map(const SystemMorphism& f);
SystemMorphism compose(const SystemMorphism& g, const SystemMorphism& f);

// Staircase S_{n,m}: a in G_{n-1} (x) H_m and b in G_n (x) H_{m-1} one degree up, c in G_n (x) H_m;
// d a = (phi|id) a, d b = -(id|psi) b.  G and H are transitive systems with zero differential.
struct Staircase {
  const System& g;
  const System& h;
  FreeComplex complex(int n, int m) const;
  Mat psi(int n, int m) const;     // G_n (x) H_m -> S_{n+1,m+1}
  Mat phi(int n, int m) const;     // S_{n,m} -> G_n (x) H_m
  Mat j(int n, int m) const;       // S_{n,m} -> S_{n+1,m+1}, degree +1
  Mat phipsi(int n, int m) const;  // S_{n,m} -> S_{n+1,m+1}
  std::vector<Generator> tensor_gens(int n, int m, int hshift) const;
};
// Phi_{n+1,m+1} Psi_{n,m} = phi_n|psi_m and Psi_{n,m} Phi_{n,m} = phi|psi + dJ + Jd
bool staircase_relations(const Staircase& s, int n, int m, std::string* why = nullptr);
struct TruncatedVerdict {
  bool hypothesis = false;
  DimTable left, right;  // H(S_{n,m}) and G_n (x) H_m one degree up, gradings > delta
  bool ok() const { return hypothesis && left == right; }
};
TruncatedVerdict staircase_truncated(const Staircase& s, int n, int m, int delta);

Mat kron(const Mat& a, const Mat& b);

}  // namespace fk
