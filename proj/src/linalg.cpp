#include "circ/linalg.hpp"

#include <utility>

#include "circ/errors.hpp"

namespace circ {

namespace {

// Bareiss step with deferred division check: the quotient must be exact, and a
// nonzero remainder would mean the fraction-free invariant was broken.
mpz_class divexact_checked(const mpz_class& num, const mpz_class& den) {
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (sgn(r) != 0) throw Error("internal: fraction-free elimination step was inexact");
  return q;
}

int rank_integer(std::vector<std::vector<mpz_class>> m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  mpz_class prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (sgn(m[i][c]) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j)
        m[i][j] = divexact_checked(m[i][j] * m[r][c] - m[i][c] * m[r][j], prev);
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

int rank_field(Matrix m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  Scalar prev(1);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!m[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j)
        m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) / prev;
      m[i][c] = Scalar(0);
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

}  // namespace

int exact_rank(Matrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  bool all_real = true;
  for (const auto& row : m) {
    if (row.size() != cols) throw PreconditionError("ragged matrix");
    for (const auto& v : row) all_real = all_real && v.is_real();
  }
  if (rows == 0 || cols == 0) return 0;
  if (!all_real) return rank_field(std::move(m));

  std::vector<std::vector<mpz_class>> zm(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class scale = 1;
    for (const auto& v : m[i]) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(),
                                       v.re().get_den().get_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      mpq_class q = m[i][j].re() * scale;
      q.canonicalize();
      zm[i][j] = q.get_num();
    }
  }
  return rank_integer(std::move(zm));
}

}  // namespace circ
