#include "floerkit/scalars.hpp"

#include <algorithm>
#include <sstream>

namespace fk {

std::string field_name(Field f) {
  switch (f) {
    case Field::F2: return "F2";
    case Field::Q: return "Q";
    case Field::Qi: return "Qi";
  }
  return "?";
}

Field parse_field(const std::string& s) {
  if (s == "F2") return Field::F2;
  if (s == "Q") return Field::Q;
  if (s == "Qi") return Field::Qi;
  throw std::invalid_argument("unknown field '" + s + "'");
}

Scalar::Scalar(Field f, long v) : f_(f), re_(v), im_(0) { norm(); }

Scalar::Scalar(Field f, const mpq_class& re, const mpq_class& im) : f_(f), re_(re), im_(im) {
  re_.canonicalize();
  im_.canonicalize();
  if (f_ != Field::Qi && sgn(im_) != 0) throw FieldMismatch("imaginary part outside Q(i)");
  norm();
}

Scalar Scalar::i_unit() { return Scalar(Field::Qi, 0, 1); }

void Scalar::norm() {
  if (f_ != Field::F2) return;
  if (re_.get_den() != 1) {
    // a/b in F2 needs b odd
    mpz_class d = re_.get_den();
    if (d % 2 == 0) throw DivisionByZero("even denominator in F2");
  }
  mpz_class n = re_.get_num();
  re_ = (mpz_class(n % 2) != 0) ? 1 : 0;
}

void Scalar::check(const Scalar& o) const {
  if (f_ != o.f_) throw FieldMismatch("field mismatch: " + field_name(f_) + " vs " + field_name(o.f_));
}

Scalar Scalar::operator+(const Scalar& o) const {
  check(o);
  if (f_ == Field::F2) return Scalar(f_, (re_ == o.re_) ? 0 : 1);
  Scalar r(f_);
  r.re_ = re_ + o.re_;
  if (f_ == Field::Qi) r.im_ = im_ + o.im_;
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  check(o);
  if (f_ == Field::F2) return *this + o;
  Scalar r(f_);
  r.re_ = re_ - o.re_;
  if (f_ == Field::Qi) r.im_ = im_ - o.im_;
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check(o);
  Scalar r(f_);
  if (f_ == Field::F2) {
    r.re_ = (re_ == 1 && o.re_ == 1) ? 1 : 0;
    return r;
  }
  if (f_ == Field::Q) {
    r.re_ = re_ * o.re_;
    return r;
  }
  r.re_ = re_ * o.re_ - im_ * o.im_;
  r.im_ = re_ * o.im_ + im_ * o.re_;
  return r;
}

Scalar Scalar::operator-() const {
  if (f_ == Field::F2) return *this;
  Scalar r(f_);
  r.re_ = -re_;
  r.im_ = -im_;
  return r;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (f_ == Field::F2) return *this;
  Scalar r(f_);
  if (f_ == Field::Q) {
    r.re_ = 1 / re_;
    return r;
  }
  mpq_class n = re_ * re_ + im_ * im_;
  r.re_ = re_ / n;
  r.im_ = -im_ / n;
  return r;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Scalar r = one(f_), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  check(o);
  return re_ == o.re_ && im_ == o.im_;
}

bool Scalar::operator<(const Scalar& o) const {
  if (re_ != o.re_) return re_ < o.re_;
  return im_ < o.im_;
}

std::string Scalar::str() const {
  if (f_ != Field::Qi || sgn(im_) == 0) return re_.get_str();
  std::string s;
  if (sgn(re_) != 0) s = re_.get_str();
  std::string ims = im_.get_str();
  if (sgn(re_) != 0 && sgn(im_) > 0) s += "+";
  return s + ims + "i";
}

namespace {
mpq_class parse_rat(const std::string& s) {
  if (s.empty() || s == "+") return 1;
  if (s == "-") return -1;
  mpq_class q;
  if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) throw std::invalid_argument("bad scalar '" + s + "'");
  if (q.get_den() == 0) throw DivisionByZero("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}
}  // namespace

Scalar Scalar::parse(Field f, const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty scalar");
  if (s.back() != 'i') return Scalar(f, parse_rat(s), 0);
  if (f != Field::Qi) throw FieldMismatch("imaginary scalar '" + raw + "' outside Q(i)");
  std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not at position 0 and not after '/'
  size_t cut = std::string::npos;
  for (size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/') {
      cut = k;
      break;
    }
  if (cut == std::string::npos) return Scalar(f, 0, parse_rat(body));
  return Scalar(f, parse_rat(body.substr(0, cut)), parse_rat(body.substr(cut)));
}

// ---------------------------------------------------------------- Poly

Poly Poly::constant(Field f, int arity, const Scalar& c) {
  Poly p(f, arity);
  p.add_term(Exp(arity, 0), c);
  return p;
}

Poly Poly::monomial(Field f, const Exp& e, const Scalar& c) {
  Poly p(f, int(e.size()));
  p.add_term(e, c);
  return p;
}

Poly Poly::var(Field f, int arity, int i) {
  Exp e(arity, 0);
  e.at(i) = 1;
  return monomial(f, e, Scalar::one(f));
}

bool Poly::is_unit() const {
  return t_.size() == 1 && std::all_of(t_.begin()->first.begin(), t_.begin()->first.end(), [](int x) { return x == 0; });
}

Scalar Poly::coeff(const Exp& e) const {
  auto it = t_.find(e);
  return it == t_.end() ? Scalar(f_) : it->second;
}

Scalar Poly::constant_term() const { return coeff(Exp(arity_, 0)); }

void Poly::add_term(const Exp& e, const Scalar& c) {
  if (int(e.size()) != arity_) throw std::invalid_argument("exponent arity mismatch");
  if (c.field() != f_) throw FieldMismatch("poly field mismatch");
  if (c.is_zero()) return;
  auto it = t_.find(e);
  if (it == t_.end()) {
    t_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

std::optional<int> Poly::alex_degree() const {
  std::optional<int> d;
  for (auto& [e, c] : t_) {
    int s = 0;
    for (int x : e) s += x;
    if (d && *d != -s) return std::nullopt;
    d = -s;
  }
  return d;
}

void Poly::check(const Poly& o) const {
  if (arity_ != o.arity_) throw std::invalid_argument("arity mismatch");
  if (f_ != o.f_) throw FieldMismatch("poly field mismatch");
}

Poly Poly::operator+(const Poly& o) const {
  check(o);
  Poly r = *this;
  for (auto& [e, c] : o.t_) r.add_term(e, c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  check(o);
  for (auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

Poly Poly::operator-(const Poly& o) const {
  check(o);
  Poly r = *this;
  for (auto& [e, c] : o.t_) r.add_term(e, -c);
  return r;
}

Poly Poly::operator-() const {
  Poly r(f_, arity_);
  for (auto& [e, c] : t_) r.t_.emplace(e, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check(o);
  Poly r(f_, arity_);
  Exp e(arity_);
  for (auto& [e1, c1] : t_)
    for (auto& [e2, c2] : o.t_) {
      for (int k = 0; k < arity_; ++k) e[k] = e1[k] + e2[k];
      r.add_term(e, c1 * c2);
    }
  return r;
}

Poly Poly::scaled(const Scalar& c) const {
  Poly r(f_, arity_);
  if (c.is_zero()) return r;
  for (auto& [e, x] : t_) r.t_.emplace(e, x * c);
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (arity_ != o.arity_ || f_ != o.f_ || t_.size() != o.t_.size()) return false;
  auto a = t_.begin();
  for (auto b = o.t_.begin(); b != o.t_.end(); ++a, ++b)
    if (a->first != b->first || a->second != b->second) return false;
  return true;
}

Poly Poly::rescale(const std::vector<Scalar>& alpha) const {
  if (int(alpha.size()) != arity_) throw std::invalid_argument("rescale arity mismatch");
  Poly r(f_, arity_);
  for (auto& [e, c] : t_) {
    Scalar k = c;
    for (int i = 0; i < arity_; ++i) k *= alpha[i].pow(e[i]);
    r.add_term(e, k);
  }
  return r;
}

Poly Poly::remap(const std::vector<int>& map, int new_arity) const {
  Poly r(f_, new_arity);
  for (auto& [e, c] : t_) {
    Exp n(new_arity, 0);
    for (int i = 0; i < arity_; ++i)
      if (e[i]) n.at(map.at(i)) += e[i];
    r.add_term(n, c);
  }
  return r;
}

Poly Poly::with_field(Field f) const {
  Poly r(f, arity_);
  for (auto& [e, c] : t_) r.add_term(e, Scalar(f, c.re(), c.im()));
  return r;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : t_) {
    bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    std::string cs = c.str();
    if (!first) os << (cs[0] == '-' ? " - " : " + ");
    if (!first && cs[0] == '-') cs = cs.substr(1);
    first = false;
    bool unit = cs == "1" || cs == "-1";
    if (constant || !unit) {
      bool paren = c.field() == Field::Qi && c.re() != 0 && c.im() != 0;
      os << (paren ? "(" + cs + ")" : cs);
    } else if (cs == "-1") {
      os << "-";
    }
    for (int i = 0; i < arity_; ++i) {
      if (!e[i]) continue;
      os << "U" << (arity_ > 1 ? std::to_string(i + 1) : "");
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- Mat

Mat Mat::identity(Field f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw std::invalid_argument("matrix shape mismatch in product");
  Mat r(f_, r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.c_; ++j) {
        const Scalar& b = o(k, j);
        if (!b.is_zero()) r(i, j) += a * b;
      }
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch in sum");
  Mat r = *this;
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch in difference");
  Mat r = *this;
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
  return r;
}

Mat Mat::scaled(const Scalar& s) const {
  Mat r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

bool Mat::operator==(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) return false;
  for (size_t k = 0; k < a_.size(); ++k)
    if (a_[k] != o.a_[k]) return false;
  return true;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& x) { return x.is_zero(); });
}

Mat Mat::transpose() const {
  Mat r(f_, c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Mat Mat::col_block(const std::vector<int>& cols) const {
  Mat r(f_, r_, int(cols.size()));
  for (int i = 0; i < r_; ++i)
    for (size_t j = 0; j < cols.size(); ++j) r(i, int(j)) = (*this)(i, cols[j]);
  return r;
}

Mat Mat::row_block(const std::vector<int>& rows) const {
  Mat r(f_, int(rows.size()), c_);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < c_; ++j) r(int(i), j) = (*this)(rows[i], j);
  return r;
}

Mat Mat::hcat(const Mat& o) const {
  if (r_ != o.r_) throw std::invalid_argument("hcat row mismatch");
  Mat r(f_, r_, c_ + o.c_);
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j) r(i, j) = (*this)(i, j);
    for (int j = 0; j < o.c_; ++j) r(i, c_ + j) = o(i, j);
  }
  return r;
}

Mat Mat::vcat(const Mat& o) const {
  if (c_ != o.c_) throw std::invalid_argument("vcat column mismatch");
  Mat r(f_, r_ + o.r_, c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) r(i, j) = (*this)(i, j);
  for (int i = 0; i < o.r_; ++i)
    for (int j = 0; j < c_; ++j) r(r_ + i, j) = o(i, j);
  return r;
}

std::vector<Scalar> Mat::col(int j) const {
  std::vector<Scalar> v;
  for (int i = 0; i < r_; ++i) v.push_back((*this)(i, j));
  return v;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (int i = 0; i < r_; ++i) {
    os << "[";
    for (int j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j).str();
    os << "]\n";
  }
  return os.str();
}

std::vector<int> rref(Mat& m) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Scalar inv = m(r, c).inv();
    for (int j = c; j < m.cols(); ++j)
      if (!m(r, j).is_zero()) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar k = m(i, c);
      for (int j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= k * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

int rank(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Mat t = m;
  return int(rref(t).size());
}

Mat kernel(const Mat& m) {
  Mat t = m;
  auto piv = rref(t);
  std::vector<bool> is_piv(m.cols(), false);
  for (int p : piv) is_piv[p] = true;
  std::vector<int> fr;
  for (int j = 0; j < m.cols(); ++j)
    if (!is_piv[j]) fr.push_back(j);
  Mat k(m.field(), m.cols(), int(fr.size()));
  for (size_t a = 0; a < fr.size(); ++a) {
    k(fr[a], int(a)) = Scalar::one(m.field());
    for (size_t r = 0; r < piv.size(); ++r) k(piv[r], int(a)) = -t(int(r), fr[a]);
  }
  return k;
}

Mat image(const Mat& m) {
  Mat t = m;
  auto piv = rref(t);
  return m.col_block(piv);
}

std::optional<Mat> solve(const Mat& m, const Mat& b) {
  if (m.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
  Mat aug = m.hcat(b);
  auto piv = rref(aug);
  Mat x(m.field(), m.cols(), b.cols());
  for (size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] >= m.cols()) return std::nullopt;
    for (int j = 0; j < b.cols(); ++j) x(piv[r], j) = aug(int(r), m.cols() + j);
  }
  return x;
}

std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto x = solve(m, Mat::identity(m.field(), m.rows()));
  if (!x || rank(m) != m.rows()) return std::nullopt;
  return x;
}

Mat power(const Mat& m, int e) {
  Mat r = Mat::identity(m.field(), m.rows()), b = m;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------- LinearSystem

void LinearSystem::add_equation(std::map<int, Scalar> lhs, const Scalar& rhs) {
  for (auto it = lhs.begin(); it != lhs.end();)
    it = it->second.is_zero() ? lhs.erase(it) : std::next(it);
  if (lhs.empty() && rhs.is_zero()) return;
  eqs_.emplace_back(std::move(lhs), rhs);
}

std::optional<std::vector<Scalar>> LinearSystem::solve() const {
  // sparse Gaussian elimination; each pivot row is stored keyed by its pivot variable
  std::map<int, std::pair<std::map<int, Scalar>, Scalar>> piv;
  for (auto eq : eqs_) {
    auto& [row, rhs] = eq;
    while (!row.empty()) {
      auto it = piv.find(row.begin()->first);
      if (it == piv.end()) break;
      Scalar k = row.begin()->second;
      for (auto& [v, c] : it->second.first) {
        Scalar& x = row.try_emplace(v, Scalar(f_)).first->second;
        x -= k * c;
        if (x.is_zero()) row.erase(v);
      }
      rhs -= k * it->second.second;
    }
    if (row.empty()) {
      if (!rhs.is_zero()) return std::nullopt;
      continue;
    }
    Scalar inv = row.begin()->second.inv();
    for (auto& [v, c] : row) c *= inv;
    rhs *= inv;
    int pv = row.begin()->first;
    piv.emplace(pv, std::make_pair(std::move(row), rhs));
  }
  // back substitution, highest pivot first; free variables are zero
  std::vector<Scalar> x(n_, Scalar(f_));
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    Scalar v = it->second.second;
    for (auto& [var, c] : it->second.first)
      if (var != it->first) v -= c * x[var];
    x[it->first] = v;
  }
  return x;
}

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix PolyMatrix::identity(Field f, int arity, int n) {
  PolyMatrix m(f, arity, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, Poly::constant(f, arity, Scalar::one(f)));
  return m;
}

Poly PolyMatrix::at(int i, int j) const {
  auto it = col_.at(j).find(i);
  return it == col_[j].end() ? Poly(f_, arity_) : it->second;
}

void PolyMatrix::set(int i, int j, const Poly& p) {
  if (i < 0 || i >= rows_) throw std::out_of_range("row index");
  if (p.is_zero())
    col_.at(j).erase(i);
  else
    col_.at(j)[i] = p;
}

void PolyMatrix::add(int i, int j, const Poly& p) {
  if (p.is_zero()) return;
  if (i < 0 || i >= rows_) throw std::out_of_range("row index");
  auto& c = col_.at(j);
  auto it = c.find(i);
  if (it == c.end()) {
    c.emplace(i, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) c.erase(it);
}

bool PolyMatrix::is_zero() const {
  for (auto& c : col_)
    if (!c.empty()) return false;
  return true;
}

size_t PolyMatrix::nnz() const {
  size_t n = 0;
  for (auto& c : col_) n += c.size();
  return n;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols() != o.rows()) throw std::invalid_argument("poly matrix shape mismatch in product");
  PolyMatrix r(f_, arity_, rows_, o.cols());
  for (int j = 0; j < o.cols(); ++j)
    for (auto& [k, b] : o.col_[j])
      for (auto& [i, a] : col_[k]) r.add(i, j, a * b);
  return r;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols() != o.cols()) throw std::invalid_argument("poly matrix shape mismatch");
  PolyMatrix r = *this;
  for (int j = 0; j < o.cols(); ++j)
    for (auto& [i, p] : o.col_[j]) r.add(i, j, p);
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const { return *this + (-o); }

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix r = *this;
  for (auto& c : r.col_)
    for (auto& [i, p] : c) p = -p;
  return r;
}

PolyMatrix PolyMatrix::scaled(const Scalar& s) const {
  PolyMatrix r(f_, arity_, rows_, cols());
  for (int j = 0; j < cols(); ++j)
    for (auto& [i, p] : col_[j]) r.set(i, j, p.scaled(s));
  return r;
}

PolyMatrix PolyMatrix::mul_poly(const Poly& q) const {
  PolyMatrix r(f_, arity_, rows_, cols());
  for (int j = 0; j < cols(); ++j)
    for (auto& [i, p] : col_[j]) r.set(i, j, p * q);
  return r;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols() != o.cols()) return false;
  for (int j = 0; j < cols(); ++j) {
    if (col_[j].size() != o.col_[j].size()) return false;
    for (auto& [i, p] : col_[j]) {
      auto it = o.col_[j].find(i);
      if (it == o.col_[j].end() || it->second != p) return false;
    }
  }
  return true;
}

PolyMatrix PolyMatrix::rescale(const std::vector<Scalar>& alpha) const {
  PolyMatrix r(f_, arity_, rows_, cols());
  for (int j = 0; j < cols(); ++j)
    for (auto& [i, p] : col_[j]) r.set(i, j, p.rescale(alpha));
  return r;
}

PolyMatrix PolyMatrix::remap(const std::vector<int>& map, int new_arity) const {
  PolyMatrix r(f_, new_arity, rows_, cols());
  for (int j = 0; j < cols(); ++j)
    for (auto& [i, p] : col_[j]) r.set(i, j, p.remap(map, new_arity));
  return r;
}

Mat PolyMatrix::to_dense() const {
  Mat m(f_, rows_, cols());
  for (int j = 0; j < cols(); ++j)
    for (auto& [i, p] : col_[j]) {
      if (!p.is_unit()) throw std::invalid_argument("to_dense needs constant entries");
      m(i, j) = p.constant_term();
    }
  return m;
}

PolyMatrix PolyMatrix::from_dense(const Mat& m) {
  PolyMatrix r(m.field(), 0, m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) r.set(i, j, Poly::constant(m.field(), 0, m(i, j)));
  return r;
}

PolyMatrix PolyMatrix::block(const std::vector<int>& rows, const std::vector<int>& cols) const {
  std::map<int, int> rix;
  for (size_t k = 0; k < rows.size(); ++k) rix[rows[k]] = int(k);
  PolyMatrix r(f_, arity_, int(rows.size()), int(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (auto& [i, p] : col_.at(cols[j])) {
      auto it = rix.find(i);
      if (it != rix.end()) r.set(it->second, int(j), p);
    }
  return r;
}

}  // namespace fk
