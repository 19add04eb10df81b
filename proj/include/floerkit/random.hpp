#pragma once

#include <random>

#include "floerkit/eigenspaces.hpp"
#include "floerkit/limits.hpp"

namespace fk {

// Random valid complex over k[U] with at most `n` generators: a sum of free generators and
// U^k-pairs, conjugated by a random graded unitriangular change of basis.
FreeComplex random_complex(Field f, int n, std::mt19937& rng);

// Random field-coefficient complex (arity 0) of exactly n generators, same recipe.
FreeComplex random_field_complex(Field f, int n, std::mt19937& rng);

// Random graded filtered automorphism of a cube's total, unitriangular.
PolyMatrix random_filtered_iso(const Hypercube& h, std::mt19937& rng, bool allow_same_vertex = true);

struct OperatorInstance {
  Hypercube cube;
  CubeMorphism mu;
  std::vector<Scalar> lambdas;  // eigenvalues used
};
// Random cube of dimension dim with a filtered operator whose eigenvalues come from `menu`.
OperatorInstance random_operator_cube(Field f, int dim, int pieces, const std::vector<Scalar>& menu, std::mt19937& rng);

// random filtered map of total degree +1 on the total of h, Alexander preserving
Mat random_filtered_k(const Hypercube& h, std::mt19937& rng);

// Systems on [0, 3] with 1-3 generators per stage and graded steps.  `exact` gets the transitive
// system; the result stores every pair as a random unit multiple of the composite.
System random_projective(Field f, std::mt19937& rng, System* exact);

// conj(P, M) = P M P^{-1} for unitriangular P
PolyMatrix unitriangular_inverse(const PolyMatrix& p);

}  // namespace fk
