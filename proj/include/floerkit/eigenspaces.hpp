#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "floerkit/hypercubes.hpp"

namespace fk {

// Columns span ker (m - lambda)^dim.
Mat gen_eigenspace(const Mat& m, const Scalar& lambda);

Scalar det(Mat m);
// Coefficients of det(x - m), constant term first.
std::vector<Scalar> charpoly(const Mat& m);
std::string upoly_str(const std::vector<Scalar>& c);

struct NonSplit : std::domain_error {
  std::string factor;
  explicit NonSplit(const std::string& f)
      : std::domain_error("characteristic polynomial does not split; factor " + f), factor(f) {}
};
// Roots with multiplicity, sorted.  Throws NonSplit with the leftover factor.
std::vector<Scalar> eigenvalues(const Mat& m);

// Eigen data for a cube with field coefficients and an operator mu (grading 0 cycle).
struct Splitting {
  Hypercube cube;
  CubeMorphism mu;
  Scalar lambda;
  Hypercube shape;           // vertex generators of E^lambda, no maps
  std::vector<Mat> basis;    // per vertex, E_e inside C_e
  Mat phi;                   // total(C) <- total(E), filtered, Phi_{e,e} = inclusion
};

// seed != 0 adds a random element of e^lambda above each vertex, giving another valid splitting.
Splitting build_splitting(const Hypercube& h, const CubeMorphism& mu, const Scalar& lambda, unsigned seed = 0);
bool check_splitting(const Splitting& s, std::string* why = nullptr);
// delta = Phi^{-1} D Phi
Hypercube eigen_cube(const Splitting& s);
// length 0 and length 1 components against the closed forms
bool check_closed_forms(const Splitting& s, const Hypercube& e, std::string* why = nullptr);

Mat total_dense(const CubeMorphism& m);
// e^lambda of the total complex as a complex in its own right
FreeComplex eigen_subcomplex(const Hypercube& h, const CubeMorphism& mu, const Scalar& lambda);
// dim of the associated graded of e^lambda(total) at each vertex
std::vector<int> gr_dims(const Hypercube& h, const CubeMorphism& mu, const Scalar& lambda);
// all eigenvalues of the total operator, graded piece by graded piece
std::vector<Scalar> total_eigenvalues(const Hypercube& h, const CubeMorphism& mu);

// E^lambda(f, hmt) for f mu0 - mu1 f = D' hmt + hmt D.  s0, s1 are splittings of the source and
// target; the result runs between eigen_cube(s0) and eigen_cube(s1).
CubeMorphism eigen_morphism(const CubeMorphism& f, const CubeMorphism& hmt, const Splitting& s0,
                            const Splitting& s1, unsigned seed = 0);

// Some K with a - b = D K + K D between the totals of two cubes, a and b of grading 0.
std::optional<Mat> find_homotopy(const Hypercube& s, const Hypercube& t, const Mat& a, const Mat& b);

struct SimultaneousResult {
  DimTable first, second;
  bool equal() const { return first == second; }
};
// mu' mu - mu mu' = D K + K D
SimultaneousResult simultaneous(const Hypercube& h, const CubeMorphism& mu, const CubeMorphism& mu2,
                                const CubeMorphism& k, const Scalar& lambda, const Scalar& lambda2);

struct ShiftVerdict {
  bool hypothesis = true;
  std::string failed_vertex;
  DimTable left, right;
  bool ok() const { return hypothesis && left == right; }
};
ShiftVerdict shift_compare(const Hypercube& h, const CubeMorphism& mu, const CubeMorphism& mu2, const Scalar& alpha,
                           const Scalar& lambda);

}  // namespace fk
