#include "yangeval/linalg.hpp"

namespace yangeval {

std::pair<QMatrix, std::vector<Eigen::Index>> rref_fraction_free(const QMatrix& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  std::vector<std::vector<mpz_class>> a(static_cast<std::size_t>(rows), std::vector<mpz_class>(static_cast<std::size_t>(cols)));
  for (Eigen::Index r = 0; r < rows; ++r) {
    mpz_class scale = 1;
    for (Eigen::Index c = 0; c < cols; ++c)
      if (!m(r, c).is_integer()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(r, c).denominator().get_mpz_t());
    for (Eigen::Index c = 0; c < cols; ++c) {
      const mpq_class q = m(r, c).to_mpq() * scale;
      a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = q.get_num();
    }
  }

  std::vector<Eigen::Index> pivots;
  mpz_class prev = 1;
  mpz_class t;
  std::size_t row = 0;
  const auto R = static_cast<std::size_t>(rows);
  const auto C = static_cast<std::size_t>(cols);
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t pr = row;
    while (pr < R && a[pr][col] == 0) ++pr;
    if (pr == R) continue;
    std::swap(a[pr], a[row]);
    const mpz_class piv = a[row][col];
    const auto& prow = a[row];
    for (std::size_t r = 0; r < R; ++r) {
      if (r == row) continue;
      auto& cur = a[r];
      const mpz_class f = cur[col];
      // Rows below the pivot vanish left of col; earlier pivot rows need every column rescaled.
      const std::size_t from = r < row ? 0 : col;
      for (std::size_t c = from; c < C; ++c) {
        mpz_mul(t.get_mpz_t(), piv.get_mpz_t(), cur[c].get_mpz_t());
        if (f != 0 && prow[c] != 0) mpz_submul(t.get_mpz_t(), f.get_mpz_t(), prow[c].get_mpz_t());
        mpz_divexact(cur[c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = piv;
    pivots.push_back(static_cast<Eigen::Index>(col));
    ++row;
  }

  // Every pivot entry now equals prev; divide it out.
  QMatrix out = QMatrix::Zero(rows, cols);
  for (std::size_t r = 0; r < row; ++r)
    for (std::size_t c = 0; c < C; ++c)
      if (a[r][c] != 0) {
        mpq_class q(a[r][c], prev);
        q.canonicalize();
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Rational(q);
      }
  return {std::move(out), std::move(pivots)};
}

}  // namespace yangeval
