#ifndef MODINV_MATRIX_HPP
#define MODINV_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "modinv/gfq.hpp"

namespace modinv {

/// Dense matrix over a Field; entries are field indices, stored row-major.
class Matrix {
public:
  Matrix(Field field, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& field, std::size_t n);
  static Matrix from_rows(const Field& field, const std::vector<std::vector<std::uint32_t>>& rows);
  /// Q_n: ones on the anti-diagonal.
  static Matrix anti_identity(const Field& field, std::size_t n);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  std::uint32_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint32_t v) { a_[i * cols_ + j] = v; }
  const std::vector<std::uint32_t>& data() const { return a_; }
  std::vector<std::uint32_t> row(std::size_t i) const;

  Matrix operator*(const Matrix& b) const;
  Matrix operator+(const Matrix& b) const;
  Matrix operator-(const Matrix& b) const;
  Matrix operator-() const;
  Matrix scaled(std::uint32_t c) const;
  Matrix transpose() const;
  /// Entrywise a -> a^(p^k).
  Matrix frobenius(std::uint64_t k = 1) const;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  bool is_identity() const;
  bool is_zero() const;

  bool operator==(const Matrix& b) const;
  bool operator!=(const Matrix& b) const { return !(*this == b); }

  /// Compact byte encoding, used as a hash key.
  std::string key() const;

  /// Rows separated by ";", entries by ",".
  std::string to_string() const;
  static Matrix parse(const Field& field, std::string_view text);

private:
  void check_shape(const Matrix& b, const char* op) const;
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> a_;
};

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form; pivots are chosen as the first nonzero entry
/// in each column scanning rows top to bottom.
RowEchelon row_reduce(Matrix m);
std::size_t rank(const Matrix& m);
std::uint32_t determinant(const Matrix& m);
bool is_invertible(const Matrix& m);
/// Throws InvalidArgument for singular input.
Matrix inverse(const Matrix& m);
/// Rows form a basis of {v : m v = 0}.
Matrix nullspace(const Matrix& m);

Matrix block_diagonal(const Matrix& a, const Matrix& b);
/// [[a, phi], [0, b]]
Matrix block_upper(const Matrix& a, const Matrix& phi, const Matrix& b);

/// Multiplicative order of an invertible matrix; throws CapExceeded past `cap`.
std::uint64_t element_order(const Matrix& g, std::uint64_t cap = 1u << 20);

struct ElementaryOp {
  enum class Kind { Swap, Scale, AddMultiple };
  Kind kind;
  std::size_t a;
  std::size_t b;
  /// Scale: row a times c.  AddMultiple: row a gains c times row b.
  std::uint32_t c;
};

Matrix elementary_matrix(const Field& field, std::size_t n, const ElementaryOp& op);

/// Factors an invertible g as E_1 E_2 ... E_s with each E_i elementary.
std::vector<ElementaryOp> elementary_factors(const Matrix& g);

/// An F_p-subspace of GF(q)^len, kept as an echelon basis of the
/// flattened F_p coordinate vectors.
class FpSpan {
public:
  FpSpan(Field field, std::size_t length);

  const Field& field() const { return field_; }
  std::size_t length() const { return len_; }
  std::size_t dimension() const { return rows_.size(); }

  /// Returns false (and leaves the span unchanged) if v already lies in it.
  bool insert(const std::vector<std::uint32_t>& v);
  bool contains(const std::vector<std::uint32_t>& v) const;

private:
  std::vector<std::uint32_t> flatten(const std::vector<std::uint32_t>& v) const;
  void reduce(std::vector<std::uint32_t>& w) const;
  Field field_;
  std::size_t len_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::size_t> pivots_;
};

} // namespace modinv

#endif // MODINV_MATRIX_HPP
