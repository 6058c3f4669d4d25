#include "modinv/gluing.hpp"

#include <numeric>

namespace modinv {

namespace {

std::vector<std::uint32_t> flat(const Matrix& a) { return a.data(); }

Matrix unit(const Field& F, std::size_t m, std::size_t n, std::size_t i, std::size_t j, std::uint32_t c)
{
  Matrix e(F, m, n);
  e.set(i, j, c);
  return e;
}

} // namespace

BimoduleBasis::BimoduleBasis(Field field, std::size_t m, std::size_t n, std::vector<Matrix> mats)
: field_(std::move(field)), m_(m), n_(n), mats_(std::move(mats)), span_(field_, m * n)
{
  for (std::size_t i = 0; i < mats_.size(); ++i) {
    const auto& a = mats_[i];
    if (a.field() != field_)
      fail(ErrorKind::FieldMismatch, "bimodule basis element over a different field");
    if (a.rows() != m_ || a.cols() != n_)
      fail(ErrorKind::DimensionMismatch, "bimodule basis element has the wrong shape");
    if (!span_.insert(flat(a)))
      fail(ErrorKind::InvalidArgument, "bimodule basis element " + std::to_string(i) + " is F_p-dependent");
  }
}

BigInt BimoduleBasis::order() const { return big_pow(field_.p(), mats_.size()); }

bool BimoduleBasis::contains(const Matrix& phi) const
{
  if (phi.rows() != m_ || phi.cols() != n_ || phi.field() != field_)
    return false;
  return span_.contains(flat(phi));
}

std::vector<Matrix> BimoduleBasis::elements(std::uint64_t cap) const
{
  if (order() > cap)
    fail(ErrorKind::CapExceeded, "module has more than " + std::to_string(cap) + " elements");
  std::vector<Matrix> out{Matrix(field_, m_, n_)};
  for (const auto& b : mats_) {
    std::vector<Matrix> next;
    next.reserve(out.size() * field_.p());
    for (const auto& a : out) {
      Matrix x = a;
      for (std::uint32_t c = 0; c < field_.p(); ++c) {
        next.push_back(x);
        x = x + b;
      }
    }
    out = std::move(next);
  }
  return out;
}

void BimoduleBasis::check_closure(const MatrixGroup& g1, const MatrixGroup& g2) const
{
  if (g1.dim() != m_ || g2.dim() != n_)
    fail(ErrorKind::DimensionMismatch, "factor groups do not match the module shape");
  for (std::size_t gi = 0; gi < g1.generators().size(); ++gi)
    for (std::size_t bi = 0; bi < mats_.size(); ++bi)
      if (!contains(g1.generators()[gi] * mats_[bi]))
        fail(ErrorKind::ClosureViolation, "G1 generator " + std::to_string(gi) + " times basis element " +
                                              std::to_string(bi) + " leaves M");
  for (std::size_t gi = 0; gi < g2.generators().size(); ++gi)
    for (std::size_t bi = 0; bi < mats_.size(); ++bi)
      if (!contains(mats_[bi] * g2.generators()[gi]))
        fail(ErrorKind::ClosureViolation, "basis element " + std::to_string(bi) + " times G2 generator " +
                                              std::to_string(gi) + " leaves M");
}

void BimoduleBasis::check_conjugation_closure(const MatrixGroup& g) const
{
  if (g.dim() != m_ || m_ != n_)
    fail(ErrorKind::DimensionMismatch, "diagonal gluing needs a square module matching the group");
  for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
    const Matrix& h = g.generators()[gi];
    Matrix hinv = inverse(h);
    for (std::size_t bi = 0; bi < mats_.size(); ++bi)
      if (!contains(h * mats_[bi] * hinv))
        fail(ErrorKind::ClosureViolation, "generator " + std::to_string(gi) + " conjugates basis element " +
                                              std::to_string(bi) + " out of M");
  }
}

BimoduleBasis zero_module(std::size_t m, std::size_t n, const Field& field)
{
  return BimoduleBasis(field, m, n, {});
}

BimoduleBasis full_hom_module(std::size_t m, std::size_t n, const Field& field)
{
  std::vector<Matrix> mats;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (auto c : field.fp_basis())
        mats.push_back(unit(field, m, n, i, j, c));
  return BimoduleBasis(field, m, n, std::move(mats));
}

BimoduleBasis subfield_hom_module(std::size_t m, std::size_t n, std::uint64_t q_sub, const Field& field)
{
  auto [p, r_sub] = prime_power(q_sub);
  if (p != field.p() || field.r() % r_sub != 0)
    fail(ErrorKind::InvalidArgument,
         "GF(" + std::to_string(q_sub) + ") is not a subfield of GF(" + std::to_string(field.q()) + ")");
  FpSpan sub(field, 1);
  std::vector<std::uint32_t> basis;
  for (std::uint32_t a = 1; a < field.q() && basis.size() < r_sub; ++a)
    if (field.frob(a, r_sub) == a && sub.insert({a}))
      basis.push_back(a);
  std::vector<Matrix> mats;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (auto c : basis)
        mats.push_back(unit(field, m, n, i, j, c));
  return BimoduleBasis(field, m, n, std::move(mats));
}

namespace {

std::vector<std::size_t> block_index(const std::vector<std::size_t>& partition)
{
  if (partition.empty())
    fail(ErrorKind::InvalidArgument, "empty partition");
  std::vector<std::size_t> idx;
  for (std::size_t b = 0; b < partition.size(); ++b) {
    if (partition[b] == 0)
      fail(ErrorKind::InvalidArgument, "partition parts must be positive");
    for (std::size_t k = 0; k < partition[b]; ++k)
      idx.push_back(b);
  }
  return idx;
}

} // namespace

BimoduleBasis parabolic_module(const std::vector<std::size_t>& partition, const Field& field)
{
  auto idx = block_index(partition);
  std::size_t n = idx.size();
  std::vector<Matrix> mats;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (idx[i] <= idx[j])
        for (auto c : field.fp_basis())
          mats.push_back(unit(field, n, n, i, j, c));
  return BimoduleBasis(field, n, n, std::move(mats));
}

BimoduleBasis scalar_identity_module(std::size_t n, const Field& field)
{
  std::vector<Matrix> mats;
  for (auto c : field.fp_basis())
    mats.push_back(Matrix::identity(field, n).scaled(c));
  return BimoduleBasis(field, n, n, std::move(mats));
}

MatrixGroup parabolic_gl_group(const std::vector<std::size_t>& partition, const Field& field)
{
  auto idx = block_index(partition);
  std::size_t n = idx.size();
  std::vector<Matrix> gens;
  std::size_t offset = 0;
  for (std::size_t part : partition) {
    MatrixGroup gl = gl_group(part, field);
    for (const auto& a : gl.generators()) {
      Matrix g = Matrix::identity(field, n);
      g.set_block(offset, offset, a);
      gens.push_back(g);
    }
    offset += part;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (idx[i] < idx[j])
        for (auto c : field.fp_basis()) {
          Matrix g = Matrix::identity(field, n);
          g.set(i, j, c);
          gens.push_back(g);
        }
  MatrixGroup g(field, n, std::move(gens), "P_F");
  BigInt order = 1;
  for (std::size_t part : partition)
    order *= gl_order(part, field.q());
  std::uint64_t above = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (idx[i] < idx[j])
        ++above;
  order *= big_pow(field.q(), above);
  g.set_claimed_order(order, "prod |GL_(n_i)| q^(sum_{i<j} n_i n_j)");
  return g;
}

const char* to_string(Flavor f)
{
  switch (f) {
  case Flavor::Generic:
    return "generic";
  case Flavor::Subfield:
    return "subfield";
  case Flavor::Thin:
    return "thin";
  case Flavor::Parabolic:
    return "parabolic";
  case Flavor::Diagonal:
    return "diagonal";
  case Flavor::Singular:
    return "singular";
  }
  return "?";
}

Triple semidirect_mul(const Triple& a, const Triple& b)
{
  if (a.g1.rows() != b.g1.rows() || a.g2.rows() != b.g2.rows())
    fail(ErrorKind::DimensionMismatch, "triples of different shapes");
  return {a.g1 * b.g1, a.g1 * b.phi + a.phi * b.g2, a.g2 * b.g2};
}

Matrix realize(const Triple& t) { return block_upper(t.g1, t.phi, t.g2); }

Triple split(const Matrix& g, std::size_t m)
{
  if (!g.is_square() || m > g.rows())
    fail(ErrorKind::DimensionMismatch, "cannot split matrix into blocks");
  std::size_t n = g.rows() - m;
  for (std::size_t i = m; i < g.rows(); ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (g(i, j) != 0)
        fail(ErrorKind::InvalidArgument, "matrix is not block upper triangular");
  return {g.block(0, 0, m, m), g.block(0, m, m, n), g.block(m, m, n, n)};
}

BigInt GluingGroup::expected_order() const
{
  if (flavor == Flavor::Diagonal)
    return BigInt(g1.enumerated().order()) * module.order();
  return BigInt(g1.enumerated().order()) * module.order() * BigInt(g2.enumerated().order());
}

bool GluingGroup::m_is_normal() const
{
  const Field& F = module.field();
  Matrix im = Matrix::identity(F, m());
  Matrix in = Matrix::identity(F, n());
  for (const auto& h : realized.generators()) {
    Matrix hinv = inverse(h);
    for (const auto& phi : module.mats()) {
      Matrix c = h * realize({im, phi, in}) * hinv;
      Triple t = split(c, m());
      if (!t.g1.is_identity() || !t.g2.is_identity() || !module.contains(t.phi))
        return false;
    }
  }
  return true;
}

std::vector<Matrix> GluingGroup::generators_in_original_basis() const
{
  if (!basis_change)
    return realized.generators();
  Matrix pinv = inverse(*basis_change);
  std::vector<Matrix> out;
  for (const auto& g : realized.generators())
    out.push_back(*basis_change * g * pinv);
  return out;
}

GluingGroup glue(const MatrixGroup& g1, const MatrixGroup& g2, const BimoduleBasis& module, Flavor flavor)
{
  if (g1.field() != module.field() || g2.field() != module.field())
    fail(ErrorKind::FieldMismatch, "gluing data over different fields");
  module.check_closure(g1, g2);
  const Field& F = module.field();
  std::size_t m = module.m();
  std::size_t n = module.n();
  Matrix im = Matrix::identity(F, m);
  Matrix in = Matrix::identity(F, n);
  Matrix zero(F, m, n);
  std::vector<Matrix> gens;
  for (const auto& a : g1.generators())
    gens.push_back(realize({a, zero, in}));
  for (const auto& b : g2.generators())
    gens.push_back(realize({im, zero, b}));
  for (const auto& phi : module.mats())
    gens.push_back(realize({im, phi, in}));
  GluingGroup out{g1, g2, module, MatrixGroup(F, m + n, std::move(gens), g1.name() + " x_M " + g2.name()),
                  flavor, std::nullopt, std::nullopt, std::nullopt, {}};
  if (g1.claimed_order() && g2.claimed_order())
    out.realized.set_claimed_order(*g1.claimed_order() * module.order() * *g2.claimed_order(), "|G1| |M| |G2|");
  return out;
}

GluingGroup diagonal_glue(const MatrixGroup& g, const BimoduleBasis& module)
{
  module.check_conjugation_closure(g);
  const Field& F = module.field();
  std::size_t n = g.dim();
  Matrix id = Matrix::identity(F, n);
  Matrix zero(F, n, n);
  std::vector<Matrix> gens;
  for (const auto& a : g.generators())
    gens.push_back(realize({a, zero, a}));
  for (const auto& phi : module.mats())
    gens.push_back(realize({id, phi, id}));
  GluingGroup out{g, g, module, MatrixGroup(F, 2 * n, std::move(gens), "diag " + g.name() + " x M"),
                  Flavor::Diagonal, std::nullopt, std::nullopt, std::nullopt, {}};
  if (g.claimed_order())
    out.realized.set_claimed_order(*g.claimed_order() * module.order(), "|G| |M|");
  return out;
}

GluingGroup thin_glue_regular(std::uint32_t p, std::uint32_t r, const Field& field)
{
  if (field.p() != p)
    fail(ErrorKind::InvalidArgument, "field characteristic must be " + std::to_string(p));
  if (r < 1)
    fail(ErrorKind::InvalidArgument, "thin gluing needs r >= 1");
  std::uint64_t size = ipow(p, r);
  if (size > 64)
    fail(ErrorKind::Budget, "regular module of dimension " + std::to_string(size) + " is too large");
  std::size_t n1 = static_cast<std::size_t>(size);
  Matrix shift(field, n1, n1);
  for (std::size_t i = 0; i < n1; ++i)
    shift.set((i + 1) % n1, i, 1);
  MatrixGroup g1(field, n1, {shift}, "C" + std::to_string(size));
  g1.set_claimed_order(size, "p^r");
  MatrixGroup g2 = MatrixGroup::trivial(field, 1);
  // The F_p G-span of the first basis vector is every F_p column vector.
  std::vector<Matrix> mats;
  Matrix v(field, n1, 1);
  v.set(0, 0, 1);
  for (std::size_t k = 0; k < n1; ++k) {
    mats.push_back(v);
    v = shift * v;
  }
  GluingGroup out = glue(g1, g2, BimoduleBasis(field, n1, 1, std::move(mats)), Flavor::Thin);
  out.realized = MatrixGroup(field, n1 + 1, out.realized.generators(), "thin C" + std::to_string(size));
  out.realized.set_claimed_order(BigInt(size) * big_pow(p, size), "p^r p^(p^r)");
  return out;
}

GluingGroup parabolic_glue(const std::vector<std::size_t>& partition, const Field& field)
{
  MatrixGroup pf = parabolic_gl_group(partition, field);
  GluingGroup out = glue(pf, pf, parabolic_module(partition, field), Flavor::Parabolic);
  out.partition = partition;
  return out;
}

namespace {

// beta(u, w) = u^T B w, or u^T B conj(w) for hermitian forms.
std::uint32_t pair(const FormSpec& form, const std::vector<std::uint32_t>& u, const std::vector<std::uint32_t>& w)
{
  const Field& F = form.field();
  const Matrix& B = *form.gram;
  std::uint64_t conj = form.kind == FormKind::Hermitian ? F.r() / 2 : 0;
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0)
      continue;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (w[j] != 0 && B(i, j) != 0)
        s = F.add(s, F.mul(F.mul(u[i], B(i, j)), conj ? F.frob(w[j], conj) : w[j]));
  }
  return s;
}

std::vector<std::uint32_t> axpy(const Field& F, std::vector<std::uint32_t> u, std::uint32_t a,
                                const std::vector<std::uint32_t>& v)
{
  for (std::size_t i = 0; i < u.size(); ++i)
    u[i] = F.add(u[i], F.mul(a, v[i]));
  return u;
}

// Columns e_1..e_k, f_k..f_1 spanning the given nondegenerate alternating subspace.
std::vector<std::vector<std::uint32_t>> symplectic_basis(const FormSpec& form,
                                                         std::vector<std::vector<std::uint32_t>> pool)
{
  const Field& F = form.field();
  std::vector<std::vector<std::uint32_t>> es;
  std::vector<std::vector<std::uint32_t>> fs;
  auto nonzero = [](const std::vector<std::uint32_t>& v) {
    return std::any_of(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; });
  };
  while (true) {
    pool.erase(std::remove_if(pool.begin(), pool.end(), [&](const auto& v) { return !nonzero(v); }), pool.end());
    if (pool.empty())
      break;
    auto v = pool.front();
    pool.erase(pool.begin());
    std::size_t wi = 0;
    while (wi < pool.size() && pair(form, v, pool[wi]) == 0)
      ++wi;
    if (wi == pool.size())
      fail(ErrorKind::InvalidArgument, "form is degenerate on the chosen complement");
    auto w = pool[wi];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(wi));
    std::uint32_t s = F.inv(pair(form, v, w));
    for (auto& x : w)
      x = F.mul(x, s);
    for (auto& u : pool) {
      std::uint32_t bw = pair(form, u, w);
      std::uint32_t bv = pair(form, u, v);
      u = axpy(F, axpy(F, u, F.neg(bw), v), bv, w);
    }
    es.push_back(v);
    fs.push_back(w);
  }
  std::vector<std::vector<std::uint32_t>> out = es;
  for (std::size_t i = fs.size(); i-- > 0;)
    out.push_back(fs[i]);
  return out;
}

} // namespace

GluingGroup singular_form_group(const FormSpec& form, std::uint64_t cap)
{
  if (form.kind == FormKind::Quadratic)
    fail(ErrorKind::Unsupported, "singular gluing is implemented for Gram-matrix forms");
  const Field& F = form.field();
  const Matrix& B = *form.gram;
  const std::size_t N = B.rows();
  Matrix rad = nullspace(B);
  if (form.kind == FormKind::Hermitian)
    rad = rad.frobenius(F.r() / 2);
  const std::size_t m = rad.rows();
  if (m == 0)
    fail(ErrorKind::InvalidArgument, "form is nondegenerate; use the classical group directly");
  const std::size_t n = N - m;

  std::vector<std::vector<std::uint32_t>> cols;
  for (std::size_t i = 0; i < m; ++i)
    cols.push_back(rad.row(i));
  std::vector<std::vector<std::uint32_t>> complement;
  for (std::size_t i = 0; i < N && cols.size() + complement.size() < N; ++i) {
    std::vector<std::uint32_t> e(N, 0);
    e[i] = 1;
    std::vector<std::vector<std::uint32_t>> rows = cols;
    rows.insert(rows.end(), complement.begin(), complement.end());
    rows.push_back(e);
    Matrix trial = Matrix::from_rows(F, rows);
    if (rank(trial) == trial.rows())
      complement.push_back(e);
  }
  if (form.kind == FormKind::Alternating)
    complement = symplectic_basis(form, complement);
  for (auto& c : complement)
    cols.push_back(c);
  Matrix P(F, N, N);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t i = 0; i < N; ++i)
      P.set(i, j, cols[j][i]);

  Matrix adapted = form.kind == FormKind::Hermitian ? P.transpose() * B * P.frobenius(F.r() / 2)
                                                    : P.transpose() * B * P;
  Matrix inner = adapted.block(m, m, n, n);
  FormSpec adapted_form = form.kind == FormKind::Alternating ? FormSpec::alternating(adapted)
                          : form.kind == FormKind::Symmetric ? FormSpec::symmetric(adapted)
                                                             : FormSpec::hermitian(adapted);

  MatrixGroup g1 = gl_group(m, F);
  MatrixGroup g2 = MatrixGroup::trivial(F, n);
  if (n > 0) {
    if (form.kind == FormKind::Alternating) {
      g2 = sp_group(n / 2, F);
    } else {
      FormSpec inner_form =
          form.kind == FormKind::Symmetric ? FormSpec::symmetric(inner) : FormSpec::hermitian(inner);
      MatrixGroup gl = gl_group(n, F).enumerated(cap);
      std::vector<Matrix> fixed;
      for (const auto& h : gl.elements())
        if (form_preserved(h, inner_form))
          fixed.push_back(h);
      g2 = MatrixGroup(F, n, fixed, std::string(to_string(form.kind)) + " isometries");
      g2.set_claimed_order(fixed.size(), "enumerated");
    }
  }
  GluingGroup out = glue(g1, g2, full_hom_module(m, n, F), Flavor::Singular);
  out.basis_change = P;
  out.form = form;
  out.adapted_form = adapted_form;
  for (const auto& g : out.realized.generators())
    if (!form_preserved(g, adapted_form))
      fail(ErrorKind::InvarianceFailure, "singular gluing generator does not preserve the form");
  return out;
}

} // namespace modinv
