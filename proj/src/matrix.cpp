#include "modinv/matrix.hpp"

#include <algorithm>

namespace modinv {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
: field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0)
{}

Matrix Matrix::identity(const Field& field, std::size_t n)
{
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(const Field& field, const std::vector<std::vector<std::uint32_t>>& rows)
{
  std::size_t nc = rows.empty() ? 0 : rows[0].size();
  Matrix m(field, rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc)
      fail(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < nc; ++j) {
      if (rows[i][j] >= field.q())
        fail(ErrorKind::InvalidArgument, "matrix entry out of range");
      m.set(i, j, rows[i][j]);
    }
  }
  return m;
}

Matrix Matrix::anti_identity(const Field& field, std::size_t n)
{
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.set(i, n - 1 - i, 1);
  return m;
}

std::vector<std::uint32_t> Matrix::row(std::size_t i) const
{
  return std::vector<std::uint32_t>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                    a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void Matrix::check_shape(const Matrix& b, const char* op) const
{
  if (field_ != b.field_)
    fail(ErrorKind::FieldMismatch, std::string("matrix ") + op + " across fields");
  if (rows_ != b.rows_ || cols_ != b.cols_)
    fail(ErrorKind::DimensionMismatch, std::string("matrix ") + op + " of different shapes");
}

Matrix Matrix::operator*(const Matrix& b) const
{
  if (field_ != b.field_)
    fail(ErrorKind::FieldMismatch, "matrix product across fields");
  if (cols_ != b.rows_)
    fail(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  Matrix c(field_, rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint32_t x = (*this)(i, k);
      if (x == 0)
        continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        std::uint32_t y = b(k, j);
        if (y != 0)
          c.a_[i * c.cols_ + j] = field_.add(c.a_[i * c.cols_ + j], field_.mul(x, y));
      }
    }
  return c;
}

Matrix Matrix::operator+(const Matrix& b) const
{
  check_shape(b, "sum");
  Matrix c = *this;
  for (std::size_t i = 0; i < a_.size(); ++i)
    c.a_[i] = field_.add(a_[i], b.a_[i]);
  return c;
}

Matrix Matrix::operator-(const Matrix& b) const
{
  check_shape(b, "difference");
  Matrix c = *this;
  for (std::size_t i = 0; i < a_.size(); ++i)
    c.a_[i] = field_.sub(a_[i], b.a_[i]);
  return c;
}

Matrix Matrix::operator-() const
{
  Matrix c = *this;
  for (auto& x : c.a_)
    x = field_.neg(x);
  return c;
}

Matrix Matrix::scaled(std::uint32_t s) const
{
  Matrix c = *this;
  for (auto& x : c.a_)
    x = field_.mul(x, s);
  return c;
}

Matrix Matrix::transpose() const
{
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t.set(j, i, (*this)(i, j));
  return t;
}

Matrix Matrix::frobenius(std::uint64_t k) const
{
  Matrix c = *this;
  for (auto& x : c.a_)
    x = field_.frob(x, k);
  return c;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
  if (r0 + nr > rows_ || c0 + nc > cols_)
    fail(ErrorKind::DimensionMismatch, "block out of range");
  Matrix b(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      b.set(i, j, (*this)(r0 + i, c0 + j));
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b)
{
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
    fail(ErrorKind::DimensionMismatch, "block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j)
      set(r0 + i, c0 + j, b(i, j));
}

bool Matrix::is_identity() const
{
  if (!is_square())
    return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u))
        return false;
  return true;
}

bool Matrix::is_zero() const
{
  return std::all_of(a_.begin(), a_.end(), [](std::uint32_t x) { return x == 0; });
}

bool Matrix::operator==(const Matrix& b) const
{
  return rows_ == b.rows_ && cols_ == b.cols_ && a_ == b.a_ && field_ == b.field_;
}

std::string Matrix::key() const
{
  std::string k;
  k.reserve(a_.size() * 2);
  for (auto x : a_) {
    k.push_back(static_cast<char>(x & 0xff));
    k.push_back(static_cast<char>(x >> 8));
  }
  return k;
}

std::string Matrix::to_string() const
{
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i > 0)
      out += ";";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j > 0)
        out += ",";
      out += field_.format((*this)(i, j));
    }
  }
  return out;
}

Matrix Matrix::parse(const Field& field, std::string_view text)
{
  std::vector<std::vector<std::uint32_t>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view row = text.substr(start, end - start);
    std::vector<std::uint32_t> entries;
    std::size_t s = 0;
    while (s <= row.size()) {
      std::size_t e = row.find(',', s);
      if (e == std::string_view::npos)
        e = row.size();
      entries.push_back(field.parse(row.substr(s, e - s)));
      s = e + 1;
    }
    rows.push_back(std::move(entries));
    start = end + 1;
  }
  return from_rows(field, rows);
}

RowEchelon row_reduce(Matrix m)
{
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0)
      ++piv;
    if (piv == m.rows())
      continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        std::uint32_t t = m(r, j);
        m.set(r, j, m(piv, j));
        m.set(piv, j, t);
      }
    std::uint32_t inv = f.inv(m(r, c));
    for (std::size_t j = 0; j < m.cols(); ++j)
      m.set(r, j, f.mul(m(r, j), inv));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0)
        continue;
      std::uint32_t factor = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j)
        m.set(i, j, f.sub(m(i, j), f.mul(factor, m(r, j))));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

std::uint32_t determinant(const Matrix& m)
{
  if (!m.is_square())
    fail(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  const Field& f = m.field();
  Matrix a = m;
  std::uint32_t det = 1;
  std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0)
      ++piv;
    if (piv == n)
      return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t t = a(c, j);
        a.set(c, j, a(piv, j));
        a.set(piv, j, t);
      }
      det = f.neg(det);
    }
    det = f.mul(det, a(c, c));
    std::uint32_t inv = f.inv(a(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0)
        continue;
      std::uint32_t factor = f.mul(a(i, c), inv);
      for (std::size_t j = c; j < n; ++j)
        a.set(i, j, f.sub(a(i, j), f.mul(factor, a(c, j))));
    }
  }
  return det;
}

bool is_invertible(const Matrix& m) { return m.is_square() && determinant(m) != 0; }

Matrix inverse(const Matrix& m)
{
  if (!m.is_square())
    fail(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix::identity(m.field(), n));
  RowEchelon e = row_reduce(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
    fail(ErrorKind::InvalidArgument, "matrix is singular");
  return e.reduced.block(0, n, n, n);
}

Matrix nullspace(const Matrix& m)
{
  RowEchelon e = row_reduce(m);
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots)
    is_pivot[c] = true;
  std::size_t dim = m.cols() - e.pivots.size();
  Matrix basis(f, dim, m.cols());
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free])
      continue;
    basis.set(k, free, 1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      basis.set(k, e.pivots[r], f.neg(e.reduced(r, free)));
    ++k;
  }
  return basis;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b)
{
  Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

Matrix block_upper(const Matrix& a, const Matrix& phi, const Matrix& b)
{
  if (phi.rows() != a.rows() || phi.cols() != b.cols())
    fail(ErrorKind::DimensionMismatch, "off-diagonal block has the wrong shape");
  Matrix m = block_diagonal(a, b);
  m.set_block(0, a.cols(), phi);
  return m;
}

std::uint64_t element_order(const Matrix& g, std::uint64_t cap)
{
  Matrix x = g;
  std::uint64_t order = 1;
  while (!x.is_identity()) {
    if (++order > cap)
      fail(ErrorKind::CapExceeded, "element order exceeds cap");
    x = x * g;
  }
  return order;
}

Matrix elementary_matrix(const Field& field, std::size_t n, const ElementaryOp& op)
{
  Matrix e = Matrix::identity(field, n);
  switch (op.kind) {
  case ElementaryOp::Kind::Swap:
    e.set(op.a, op.a, 0);
    e.set(op.b, op.b, 0);
    e.set(op.a, op.b, 1);
    e.set(op.b, op.a, 1);
    break;
  case ElementaryOp::Kind::Scale:
    e.set(op.a, op.a, op.c);
    break;
  case ElementaryOp::Kind::AddMultiple:
    e.set(op.a, op.b, op.c);
    break;
  }
  return e;
}

std::vector<ElementaryOp> elementary_factors(const Matrix& g)
{
  if (!g.is_square())
    fail(ErrorKind::DimensionMismatch, "elementary factors of a non-square matrix");
  const Field& f = g.field();
  std::size_t n = g.rows();
  Matrix a = g;
  // Row operations R_1, ..., R_s with R_s ... R_1 g = I; then
  // g = R_1^{-1} ... R_s^{-1}, and we record the inverses in order.
  std::vector<ElementaryOp> ops;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0)
      ++piv;
    if (piv == n)
      fail(ErrorKind::InvalidArgument, "matrix is singular");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t t = a(c, j);
        a.set(c, j, a(piv, j));
        a.set(piv, j, t);
      }
      ops.push_back({ElementaryOp::Kind::Swap, c, piv, 0});
    }
    std::uint32_t d = a(c, c);
    if (d != 1) {
      std::uint32_t inv = f.inv(d);
      for (std::size_t j = 0; j < n; ++j)
        a.set(c, j, f.mul(a(c, j), inv));
      ops.push_back({ElementaryOp::Kind::Scale, c, c, d});
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0)
        continue;
      std::uint32_t factor = a(i, c);
      for (std::size_t j = 0; j < n; ++j)
        a.set(i, j, f.sub(a(i, j), f.mul(factor, a(c, j))));
      ops.push_back({ElementaryOp::Kind::AddMultiple, i, c, factor});
    }
  }
  return ops;
}

FpSpan::FpSpan(Field field, std::size_t length)
: field_(std::move(field)), len_(length)
{}

std::vector<std::uint32_t> FpSpan::flatten(const std::vector<std::uint32_t>& v) const
{
  if (v.size() != len_)
    fail(ErrorKind::DimensionMismatch, "vector length does not match span");
  std::uint32_t r = field_.r();
  std::vector<std::uint32_t> w(len_ * r);
  for (std::size_t i = 0; i < len_; ++i) {
    auto c = field_.coords(v[i]);
    for (std::uint32_t k = 0; k < r; ++k)
      w[i * r + k] = c[k];
  }
  return w;
}

void FpSpan::reduce(std::vector<std::uint32_t>& w) const
{
  std::uint32_t p = field_.p();
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    std::uint32_t c = w[pivots_[k]];
    if (c == 0)
      continue;
    const auto& row = rows_[k];
    for (std::size_t j = 0; j < w.size(); ++j)
      w[j] = (w[j] + (p - c) * row[j]) % p;
  }
}

bool FpSpan::insert(const std::vector<std::uint32_t>& v)
{
  auto w = flatten(v);
  reduce(w);
  std::size_t piv = 0;
  while (piv < w.size() && w[piv] == 0)
    ++piv;
  if (piv == w.size())
    return false;
  std::uint32_t p = field_.p();
  std::uint32_t inv = 1;
  while ((inv * w[piv]) % p != 1)
    ++inv;
  for (auto& x : w)
    x = (x * inv) % p;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    std::uint32_t c = rows_[k][piv];
    if (c == 0)
      continue;
    for (std::size_t j = 0; j < w.size(); ++j)
      rows_[k][j] = (rows_[k][j] + (p - c) * w[j]) % p;
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(piv);
  return true;
}

bool FpSpan::contains(const std::vector<std::uint32_t>& v) const
{
  auto w = flatten(v);
  reduce(w);
  return std::all_of(w.begin(), w.end(), [](std::uint32_t x) { return x == 0; });
}

} // namespace modinv
