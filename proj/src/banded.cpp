#include "lagrange1d/banded.hpp"

#include <lapacke.h>

#include <algorithm>
#include <stdexcept>

namespace lagrange1d {

BandedMatrix::BandedMatrix(std::size_t size, std::size_t lower, std::size_t upper)
    : n_(size), kl_(lower), ku_(upper), ldab_(2 * lower + upper + 1), ab_(ldab_ * size, 0.0),
      pivots_(size, 0) {
  if (size == 0) throw std::invalid_argument("banded matrix must be nonempty");
}

double& BandedMatrix::at(std::size_t row, std::size_t col) {
  if (!in_band(row, col) || row >= n_ || col >= n_) {
    throw std::out_of_range("banded matrix entry outside band");
  }
  return ab_[(kl_ + ku_ + row - col) + col * ldab_];
}

double BandedMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= n_ || col >= n_) throw std::out_of_range("banded matrix index");
  if (!in_band(row, col)) return 0.0;
  return ab_[(kl_ + ku_ + row - col) + col * ldab_];
}

void BandedMatrix::set_zero() { std::fill(ab_.begin(), ab_.end(), 0.0); }

bool BandedMatrix::solve_in_place(std::span<double> rhs) {
  if (rhs.size() != n_) throw std::invalid_argument("rhs size mismatch");
  const lapack_int info = LAPACKE_dgbsv(
      LAPACK_COL_MAJOR, static_cast<lapack_int>(n_), static_cast<lapack_int>(kl_),
      static_cast<lapack_int>(ku_), 1, ab_.data(), static_cast<lapack_int>(ldab_), pivots_.data(),
      rhs.data(), static_cast<lapack_int>(n_));
  if (info < 0) throw std::logic_error("dgbsv rejected its arguments");
  return info == 0;
}

}  // namespace lagrange1d
