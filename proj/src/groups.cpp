#include "modinv/groups.hpp"

#include <algorithm>

#include <absl/container/flat_hash_set.h>

namespace modinv {

struct MatrixGroup::Enumeration {
  std::vector<Matrix> elements;
  absl::flat_hash_set<std::string> keys;
};

MatrixGroup::MatrixGroup(Field field, std::size_t dim, std::vector<Matrix> generators, std::string name)
: field_(std::move(field)), dim_(dim), gens_(std::move(generators)), name_(std::move(name))
{
  for (const auto& g : gens_) {
    if (g.field() != field_)
      fail(ErrorKind::FieldMismatch, name_ + ": generator over a different field");
    if (g.rows() != dim_ || g.cols() != dim_)
      fail(ErrorKind::DimensionMismatch, name_ + ": generator of the wrong size");
    if (!is_invertible(g))
      fail(ErrorKind::InvalidArgument, name_ + ": singular generator " + g.to_string());
  }
}

MatrixGroup MatrixGroup::trivial(const Field& field, std::size_t dim)
{
  MatrixGroup g(field, dim, {}, "trivial");
  g.set_claimed_order(1, "1");
  return g;
}

void MatrixGroup::set_claimed_order(BigInt order, std::string formula)
{
  claimed_ = std::move(order);
  formula_ = std::move(formula);
}

MatrixGroup MatrixGroup::enumerated(std::uint64_t cap) const
{
  if (enum_)
    return *this;
  if (cap < 1)
    fail(ErrorKind::InvalidArgument, "enumeration cap must be positive");
  auto e = std::make_shared<Enumeration>();
  Matrix id = Matrix::identity(field_, dim_);
  e->keys.insert(id.key());
  e->elements.push_back(id);
  for (std::size_t i = 0; i < e->elements.size(); ++i) {
    for (const auto& g : gens_) {
      Matrix h = e->elements[i] * g;
      if (e->keys.insert(h.key()).second) {
        if (e->elements.size() >= cap)
          fail(ErrorKind::CapExceeded,
               name_ + " has more than " + std::to_string(cap) + " elements");
        e->elements.push_back(std::move(h));
      }
    }
  }
  std::sort(e->elements.begin(), e->elements.end(),
            [](const Matrix& a, const Matrix& b) { return a.key() < b.key(); });
  MatrixGroup out = *this;
  out.enum_ = std::move(e);
  return out;
}

const std::vector<Matrix>& MatrixGroup::elements() const
{
  if (!enum_)
    fail(ErrorKind::InvalidArgument, name_ + " is not enumerated");
  return enum_->elements;
}

std::uint64_t MatrixGroup::order() const { return elements().size(); }

bool MatrixGroup::contains(const Matrix& g) const
{
  if (!enum_)
    fail(ErrorKind::InvalidArgument, name_ + " is not enumerated");
  if (g.field() != field_ || g.rows() != dim_ || g.cols() != dim_)
    return false;
  return enum_->keys.contains(g.key());
}

BigInt big_pow(std::uint64_t base, std::uint64_t e)
{
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i)
    r *= base;
  return r;
}

BigInt gl_order(std::uint64_t n, std::uint64_t q)
{
  BigInt r = 1;
  BigInt qn = big_pow(q, n);
  for (std::uint64_t i = 0; i < n; ++i)
    r *= qn - big_pow(q, i);
  return r;
}

BigInt sp_order(std::uint64_t m, std::uint64_t q)
{
  BigInt r = big_pow(q, m * m);
  for (std::uint64_t i = 1; i <= m; ++i)
    r *= big_pow(q, 2 * i) - 1;
  return r;
}

BigInt usp_order(std::uint64_t m, std::uint64_t q) { return big_pow(q, m * m); }

BigInt unipotent_order(std::uint64_t n, std::uint64_t q) { return big_pow(q, n * (n - 1) / 2); }

BigInt pk_order(std::uint64_t m, std::uint64_t k, std::uint64_t q)
{
  return big_pow(q, 2 * k * (m - k) + k * (k + 1) / 2);
}

BigInt gk_order(std::uint64_t m, std::uint64_t k, std::uint64_t q)
{
  return gl_order(k, q) * sp_order(m - k, q) * pk_order(m, k, q);
}

BigInt spstab_order(std::uint64_t m, std::uint64_t k, std::uint64_t q)
{
  return sp_order(m - k, q) * pk_order(m, k, q);
}

Matrix symplectic_gram(const Field& field, std::size_t m)
{
  Matrix j(field, 2 * m, 2 * m);
  Matrix q = Matrix::anti_identity(field, m);
  j.set_block(0, m, q);
  j.set_block(m, 0, -q);
  return j;
}

bool is_symplectic(const Matrix& g)
{
  if (!g.is_square() || g.rows() % 2 != 0)
    return false;
  Matrix j = symplectic_gram(g.field(), g.rows() / 2);
  return g.transpose() * j * g == j;
}

namespace {

std::size_t ie(std::size_t /*m*/, std::size_t i) { return i - 1; }
std::size_t if_(std::size_t m, std::size_t i) { return 2 * m - i; }

enum class Root { Diff, Sum, Long };

Matrix sp_root(const Field& F, std::size_t m, Root kind, std::size_t i, std::size_t j, std::uint32_t c)
{
  Matrix g = Matrix::identity(F, 2 * m);
  switch (kind) {
  case Root::Diff:
    g.set(ie(m, i), ie(m, j), c);
    g.set(if_(m, j), if_(m, i), F.neg(c));
    break;
  case Root::Sum:
    g.set(ie(m, i), if_(m, j), c);
    g.set(ie(m, j), if_(m, i), c);
    break;
  case Root::Long:
    g.set(ie(m, i), if_(m, i), c);
    break;
  }
  return g;
}

void require_symplectic(const std::vector<Matrix>& gens, const std::string& name)
{
  for (const auto& g : gens)
    if (!is_symplectic(g))
      fail(ErrorKind::InvarianceFailure, name + ": generator is not symplectic: " + g.to_string());
}

std::vector<Matrix> sp_generators(std::size_t m, const Field& F)
{
  std::vector<Matrix> gens;
  auto basis = F.fp_basis();
  for (std::size_t i = 1; i < m; ++i)
    for (auto c : basis)
      gens.push_back(sp_root(F, m, Root::Diff, i, i + 1, c));
  for (auto c : basis)
    gens.push_back(sp_root(F, m, Root::Long, m, m, c));
  std::uint32_t minus = F.neg(1);
  for (std::size_t i = 1; i < m; ++i) {
    Matrix n = Matrix::identity(F, 2 * m);
    for (std::size_t a : {ie(m, i), ie(m, i + 1), if_(m, i), if_(m, i + 1)})
      n.set(a, a, 0);
    n.set(ie(m, i + 1), ie(m, i), minus);
    n.set(ie(m, i), ie(m, i + 1), 1);
    n.set(if_(m, i + 1), if_(m, i), minus);
    n.set(if_(m, i), if_(m, i + 1), 1);
    gens.push_back(n);
  }
  Matrix n = Matrix::identity(F, 2 * m);
  n.set(ie(m, m), ie(m, m), 0);
  n.set(if_(m, m), if_(m, m), 0);
  n.set(if_(m, m), ie(m, m), minus);
  n.set(ie(m, m), if_(m, m), 1);
  gens.push_back(n);
  return gens;
}

std::vector<Matrix> gl_generators(std::size_t n, const Field& F)
{
  std::vector<Matrix> gens;
  if (F.q() > 2) {
    Matrix d = Matrix::identity(F, n);
    d.set(0, 0, F.primitive());
    gens.push_back(d);
  }
  if (n >= 2) {
    Matrix t = Matrix::identity(F, n);
    t.set(0, 1, 1);
    gens.push_back(t);
    Matrix c(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
      c.set((i + 1) % n, i, 1);
    gens.push_back(c);
  }
  return gens;
}

std::vector<Matrix> pk_generators(std::size_t m, std::size_t k, const Field& F)
{
  std::vector<Matrix> gens;
  for (auto c : F.fp_basis()) {
    for (std::size_t i = 1; i <= k; ++i) {
      for (std::size_t j = k + 1; j <= m; ++j) {
        gens.push_back(sp_root(F, m, Root::Diff, i, j, c));
        gens.push_back(sp_root(F, m, Root::Sum, i, j, c));
      }
      for (std::size_t j = i + 1; j <= k; ++j)
        gens.push_back(sp_root(F, m, Root::Sum, i, j, c));
      gens.push_back(sp_root(F, m, Root::Long, i, i, c));
    }
  }
  return gens;
}

Matrix embed_middle(const Matrix& h, std::size_t m, std::size_t k)
{
  Matrix g = Matrix::identity(h.field(), 2 * m);
  g.set_block(k, k, h);
  return g;
}

void check_mk(std::size_t m, std::size_t k)
{
  if (m < 1 || k < 1 || k > m)
    fail(ErrorKind::InvalidArgument, "need 1 <= k <= m, got m=" + std::to_string(m) + " k=" + std::to_string(k));
}

} // namespace

MatrixGroup gl_group(std::size_t n, const Field& field)
{
  if (n < 1)
    fail(ErrorKind::InvalidArgument, "gl_group needs n >= 1");
  MatrixGroup g(field, n, gl_generators(n, field), "GL" + std::to_string(n));
  g.set_claimed_order(gl_order(n, field.q()), "prod_{i<n} (q^n - q^i)");
  return g;
}

MatrixGroup unipotent_upper(std::size_t n, const Field& field)
{
  if (n < 1)
    fail(ErrorKind::InvalidArgument, "unipotent_upper needs n >= 1");
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (auto c : field.fp_basis()) {
      Matrix t = Matrix::identity(field, n);
      t.set(i, i + 1, c);
      gens.push_back(t);
    }
  MatrixGroup g(field, n, std::move(gens), "U" + std::to_string(n));
  g.set_claimed_order(unipotent_order(n, field.q()), "q^(n(n-1)/2)");
  return g;
}

MatrixGroup sp_group(std::size_t m, const Field& field)
{
  if (m < 1)
    fail(ErrorKind::InvalidArgument, "sp_group needs m >= 1");
  auto gens = sp_generators(m, field);
  require_symplectic(gens, "Sp");
  MatrixGroup g(field, 2 * m, std::move(gens), "Sp" + std::to_string(2 * m));
  g.set_claimed_order(sp_order(m, field.q()), "q^(m^2) prod_{i<=m} (q^(2i) - 1)");
  return g;
}

MatrixGroup usp_group(std::size_t m, const Field& field)
{
  if (m < 1)
    fail(ErrorKind::InvalidArgument, "usp_group needs m >= 1");
  std::vector<Matrix> gens;
  for (auto c : field.fp_basis())
    for (std::size_t i = 1; i <= m; ++i) {
      for (std::size_t j = i + 1; j <= m; ++j) {
        gens.push_back(sp_root(field, m, Root::Diff, i, j, c));
        gens.push_back(sp_root(field, m, Root::Sum, i, j, c));
      }
      gens.push_back(sp_root(field, m, Root::Long, i, i, c));
    }
  require_symplectic(gens, "USp");
  MatrixGroup g(field, 2 * m, std::move(gens), "USp" + std::to_string(2 * m));
  g.set_claimed_order(usp_order(m, field.q()), "q^(m^2)");
  return g;
}

MatrixGroup p_k_subgroup(std::size_t m, std::size_t k, const Field& field)
{
  check_mk(m, k);
  auto gens = pk_generators(m, k, field);
  require_symplectic(gens, "P_k");
  MatrixGroup g(field, 2 * m, std::move(gens), "P" + std::to_string(k));
  g.set_claimed_order(pk_order(m, k, field.q()), "q^(2k(m-k) + k(k+1)/2)");
  return g;
}

std::vector<Matrix> p_k_elements(std::size_t m, std::size_t k, const Field& F)
{
  check_mk(m, k);
  const std::size_t mid = 2 * m - 2 * k;
  const std::size_t nfree = k * mid + k * (k + 1) / 2;
  const std::uint64_t total = ipow(F.q(), nfree);
  if (total > kDefaultCap)
    fail(ErrorKind::CapExceeded, "P_k has more than " + std::to_string(kDefaultCap) + " elements");
  Matrix Q = Matrix::anti_identity(F, k);
  Matrix Jm = mid > 0 ? symplectic_gram(F, m - k) : Matrix(F, 0, 0);
  std::vector<Matrix> out;
  out.reserve(total);
  std::vector<std::uint32_t> digits(nfree, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t x = idx;
    for (auto& d : digits) {
      d = static_cast<std::uint32_t>(x % F.q());
      x /= F.q();
    }
    std::size_t pos = 0;
    Matrix B(F, k, mid);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < mid; ++j)
        B.set(i, j, digits[pos++]);
    Matrix T(F, k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j) {
        T.set(i, j, digits[pos]);
        T.set(j, i, digits[pos]);
        ++pos;
      }
    Matrix C = mid > 0 ? Jm * B.transpose() * Q : Matrix(F, 0, k);
    // S = Q A must satisfy S^T - S = R with R = -C^T J' C (alternating).
    Matrix R = mid > 0 ? -(C.transpose() * Jm * C) : Matrix(F, k, k);
    Matrix S = T;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        S.set(i, j, F.sub(S(i, j), R(i, j)));
    Matrix A = Q * S;
    Matrix g = Matrix::identity(F, 2 * m);
    if (mid > 0) {
      g.set_block(0, k, B);
      g.set_block(k, k + mid, C);
    }
    g.set_block(0, k + mid, A);
    if (!is_symplectic(g))
      fail(ErrorKind::InvarianceFailure, "P_k parametrization produced a non-symplectic matrix");
    out.push_back(std::move(g));
  }
  return out;
}

MatrixGroup parabolic_g_k(std::size_t m, std::size_t k, const Field& field)
{
  check_mk(m, k);
  std::vector<Matrix> gens;
  Matrix Q = Matrix::anti_identity(field, k);
  for (const auto& a : gl_generators(k, field)) {
    Matrix g = Matrix::identity(field, 2 * m);
    g.set_block(0, 0, a);
    g.set_block(2 * m - k, 2 * m - k, Q * inverse(a).transpose() * Q);
    gens.push_back(g);
  }
  if (m > k)
    for (const auto& h : sp_generators(m - k, field))
      gens.push_back(embed_middle(h, m, k));
  for (auto& g : pk_generators(m, k, field))
    gens.push_back(std::move(g));
  require_symplectic(gens, "G_k");
  MatrixGroup g(field, 2 * m, std::move(gens), "G" + std::to_string(k));
  g.set_claimed_order(gk_order(m, k, field.q()), "|GL_k| |Sp_(2m-2k)| |P_k|");
  return g;
}

MatrixGroup stabilizer_sp(std::size_t m, std::size_t k, const Field& field)
{
  check_mk(m, k);
  std::vector<Matrix> gens;
  if (m > k)
    for (const auto& h : sp_generators(m - k, field))
      gens.push_back(embed_middle(h, m, k));
  for (auto& g : pk_generators(m, k, field))
    gens.push_back(std::move(g));
  require_symplectic(gens, "Sp_U");
  MatrixGroup g(field, 2 * m, std::move(gens), "SpStab" + std::to_string(k));
  g.set_claimed_order(spstab_order(m, k, field.q()), "|Sp_(2m-2k)| |P_k|");
  return g;
}

Matrix o3_element(const Field& F, std::uint32_t c)
{
  Matrix g = Matrix::identity(F, 3);
  g.set(0, 1, F.add(c, c));
  g.set(0, 2, F.mul(c, c));
  g.set(1, 2, c);
  return g;
}

Matrix o4_element(const Field& F, std::uint32_t c1, std::uint32_t c2)
{
  Matrix g = Matrix::identity(F, 4);
  g.set(0, 1, c1);
  g.set(0, 2, c2);
  g.set(0, 3, F.mul(c1, c2));
  g.set(1, 3, c2);
  g.set(2, 3, c1);
  return g;
}

MatrixGroup o3_example(const Field& field)
{
  std::vector<Matrix> gens;
  for (auto c : field.fp_basis())
    gens.push_back(o3_element(field, c));
  MatrixGroup g(field, 3, std::move(gens), "O3E");
  g.set_claimed_order(field.q(), "q");
  return g;
}

MatrixGroup o4_example(const Field& field)
{
  std::vector<Matrix> gens;
  for (auto c : field.fp_basis()) {
    gens.push_back(o4_element(field, c, 0));
    gens.push_back(o4_element(field, 0, c));
  }
  MatrixGroup g(field, 4, std::move(gens), "O4E");
  g.set_claimed_order(big_pow(field.q(), 2), "q^2");
  return g;
}

MatrixGroup stabilizer_of_polynomial(const MatrixGroup& group, const Polynomial& f)
{
  const auto& elems = group.elements();
  std::vector<Matrix> fixed;
  for (const auto& g : elems)
    if (act(f, g) == f)
      fixed.push_back(g);
  std::vector<Matrix> gens;
  MatrixGroup sub = MatrixGroup::trivial(group.field(), group.dim()).enumerated();
  for (const auto& g : fixed) {
    if (sub.contains(g))
      continue;
    gens.push_back(g);
    sub = MatrixGroup(group.field(), group.dim(), gens, "stab").enumerated(fixed.size());
  }
  MatrixGroup out(group.field(), group.dim(), gens, "Stab(" + group.name() + ")");
  out = out.enumerated(fixed.size());
  if (out.order() != fixed.size())
    fail(ErrorKind::ClosureViolation, "stabilizer is not closed under products");
  return out;
}

FormSpec FormSpec::alternating(Matrix gram)
{
  if (!gram.is_square())
    fail(ErrorKind::DimensionMismatch, "Gram matrix must be square");
  const Field& F = gram.field();
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    if (gram(i, i) != 0)
      fail(ErrorKind::InvalidArgument, "alternating Gram matrix needs a zero diagonal");
    for (std::size_t j = 0; j < gram.cols(); ++j)
      if (gram(i, j) != F.neg(gram(j, i)))
        fail(ErrorKind::InvalidArgument, "alternating Gram matrix must be skew");
  }
  return FormSpec{FormKind::Alternating, std::move(gram), std::nullopt};
}

FormSpec FormSpec::symmetric(Matrix gram)
{
  if (!gram.is_square() || gram.transpose() != gram)
    fail(ErrorKind::InvalidArgument, "symmetric Gram matrix must be square and symmetric");
  return FormSpec{FormKind::Symmetric, std::move(gram), std::nullopt};
}

FormSpec FormSpec::hermitian(Matrix gram)
{
  const Field& F = gram.field();
  if (F.r() % 2 != 0)
    fail(ErrorKind::InvalidArgument, "hermitian forms need a field of square order");
  if (!gram.is_square() || gram.transpose() != gram.frobenius(F.r() / 2))
    fail(ErrorKind::InvalidArgument, "hermitian Gram matrix must equal its conjugate transpose");
  return FormSpec{FormKind::Hermitian, std::move(gram), std::nullopt};
}

FormSpec FormSpec::quadratic_form(Polynomial q)
{
  for (const auto& t : q.terms())
    if (t.m.deg != 2)
      fail(ErrorKind::InvalidArgument, "quadratic form must be homogeneous of degree 2");
  return FormSpec{FormKind::Quadratic, std::nullopt, std::move(q)};
}

std::size_t FormSpec::dim() const { return gram ? gram->rows() : quadratic->space().size(); }
const Field& FormSpec::field() const { return gram ? gram->field() : quadratic->field(); }

bool form_preserved(const Matrix& g, const FormSpec& form)
{
  if (!g.is_square() || g.rows() != form.dim())
    fail(ErrorKind::DimensionMismatch, "matrix size does not match the form");
  if (g.field() != form.field())
    fail(ErrorKind::FieldMismatch, "matrix and form over different fields");
  switch (form.kind) {
  case FormKind::Alternating:
  case FormKind::Symmetric:
    return g.transpose() * *form.gram * g == *form.gram;
  case FormKind::Hermitian:
    return g.transpose() * *form.gram * g.frobenius(g.field().r() / 2) == *form.gram;
  case FormKind::Quadratic:
    return act(*form.quadratic, g) == *form.quadratic;
  }
  return false;
}

const char* to_string(FormKind kind)
{
  switch (kind) {
  case FormKind::Alternating:
    return "alternating";
  case FormKind::Symmetric:
    return "symmetric";
  case FormKind::Hermitian:
    return "hermitian";
  case FormKind::Quadratic:
    return "quadratic";
  }
  return "?";
}

} // namespace modinv
