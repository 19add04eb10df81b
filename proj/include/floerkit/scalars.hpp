#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fk {

enum class Field { F2, Q, Qi };

std::string field_name(Field f);
Field parse_field(const std::string& s);

struct FieldMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DivisionByZero : std::domain_error {
  using std::domain_error::domain_error;
};

// Exact element of F2, Q or Q(i).  For F2 only `re` is used and it is 0 or 1.
class Scalar {
 public:
  Scalar() : f_(Field::Q) {}
  explicit Scalar(Field f) : f_(f) {}
  Scalar(Field f, long v);
  Scalar(Field f, const mpq_class& re, const mpq_class& im = 0);

  static Scalar zero(Field f) { return Scalar(f); }
  static Scalar one(Field f) { return Scalar(f, 1); }
  static Scalar i_unit();
  // "1/2", "-3", "1+1i", "2i", "-1/2-3/4i"
  static Scalar parse(Field f, const std::string& s);

  Field field() const { return f_; }
  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const { return *this * o.inv(); }
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inv() const;
  Scalar pow(long e) const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  bool operator<(const Scalar& o) const;

  std::string str() const;

 private:
  void check(const Scalar& o) const;
  void norm();
  Field f_;
  mpq_class re_, im_;
};

using Exp = std::vector<int>;

// Polynomial in U_1..U_r.  Zero coefficients are never stored.
class Poly {
 public:
  Poly() : arity_(0), f_(Field::Q) {}
  Poly(Field f, int arity) : arity_(arity), f_(f) {}
  static Poly constant(Field f, int arity, const Scalar& c);
  static Poly monomial(Field f, const Exp& e, const Scalar& c);
  static Poly var(Field f, int arity, int i);

  int arity() const { return arity_; }
  Field field() const { return f_; }
  const std::map<Exp, Scalar>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_monomial() const { return t_.size() == 1; }
  bool is_unit() const;  // nonzero constant
  Scalar coeff(const Exp& e) const;
  void add_term(const Exp& e, const Scalar& c);
  // Alexander degree of a monomial is -|e|; for homogeneous p this is well defined.
  std::optional<int> alex_degree() const;
  Scalar constant_term() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const Scalar& c) const;
  Poly& operator+=(const Poly& o);
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // U_i -> alpha_i U_i
  Poly rescale(const std::vector<Scalar>& alpha) const;
  // substitute U_i -> U_{map[i]} in a ring of arity new_arity
  Poly remap(const std::vector<int>& map, int new_arity) const;
  Poly with_field(Field f) const;

  std::string str() const;

 private:
  void check(const Poly& o) const;
  int arity_;
  Field f_;
  std::map<Exp, Scalar> t_;
};

// Dense matrix over a field.
class Mat {
 public:
  Mat() : f_(Field::Q), r_(0), c_(0) {}
  Mat(Field f, int r, int c) : f_(f), r_(r), c_(c), a_(size_t(r) * c, Scalar(f)) {}
  static Mat identity(Field f, int n);

  Field field() const { return f_; }
  int rows() const { return r_; }
  int cols() const { return c_; }
  Scalar& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
  const Scalar& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const Scalar& s) const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool is_zero() const;
  Mat transpose() const;
  Mat col_block(const std::vector<int>& cols) const;
  Mat row_block(const std::vector<int>& rows) const;
  Mat hcat(const Mat& o) const;
  Mat vcat(const Mat& o) const;
  std::vector<Scalar> col(int j) const;
  std::string str() const;

 private:
  Field f_;
  int r_, c_;
  std::vector<Scalar> a_;
};

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& m);
int rank(const Mat& m);
// Columns form a basis of the kernel (free variables set to 1 one at a time).
Mat kernel(const Mat& m);
// Columns form a basis of the column space (pivot columns of m).
Mat image(const Mat& m);
// Some x with m x = b (free variables zero), or nothing.
std::optional<Mat> solve(const Mat& m, const Mat& b);
std::optional<Mat> inverse(const Mat& m);
Mat power(const Mat& m, int e);

// Sparse system of linear equations, for unknowns that are matrix entries.
class LinearSystem {
 public:
  explicit LinearSystem(Field f) : f_(f) {}
  int add_unknown() { return n_++; }
  int unknowns() const { return n_; }
  // sum coeff*x_var = rhs
  void add_equation(std::map<int, Scalar> lhs, const Scalar& rhs);
  std::optional<std::vector<Scalar>> solve() const;

 private:
  Field f_;
  int n_ = 0;
  std::vector<std::pair<std::map<int, Scalar>, Scalar>> eqs_;
};

// Sparse matrix with polynomial entries, stored by columns.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(Field f, int arity, int rows, int cols)
      : f_(f), arity_(arity), rows_(rows), col_(cols) {}
  static PolyMatrix identity(Field f, int arity, int n);
  static PolyMatrix zero(Field f, int arity, int rows, int cols) { return PolyMatrix(f, arity, rows, cols); }

  Field field() const { return f_; }
  int arity() const { return arity_; }
  int rows() const { return rows_; }
  int cols() const { return int(col_.size()); }
  const std::map<int, Poly>& column(int j) const { return col_[j]; }
  Poly at(int i, int j) const;
  void set(int i, int j, const Poly& p);
  void add(int i, int j, const Poly& p);
  bool is_zero() const;
  size_t nnz() const;

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix operator-() const;
  PolyMatrix scaled(const Scalar& c) const;
  PolyMatrix mul_poly(const Poly& p) const;
  bool operator==(const PolyMatrix& o) const;
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }
  PolyMatrix rescale(const std::vector<Scalar>& alpha) const;
  PolyMatrix remap(const std::vector<int>& map, int new_arity) const;
  // Arity 0 matrices convert to dense form.
  Mat to_dense() const;
  static PolyMatrix from_dense(const Mat& m);
  // Restrict to given rows/cols.
  PolyMatrix block(const std::vector<int>& rows, const std::vector<int>& cols) const;

 private:
  Field f_ = Field::Q;
  int arity_ = 0;
  int rows_ = 0;
  std::vector<std::map<int, Poly>> col_;
};

}  // namespace fk
