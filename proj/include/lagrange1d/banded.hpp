#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lagrange1d {

/// Square banded matrix in LAPACK general-band storage, with the extra
/// sub-diagonals needed for an in-place LU factorization.
class BandedMatrix {
 public:
  BandedMatrix(std::size_t size, std::size_t lower, std::size_t upper);

  std::size_t size() const { return n_; }
  std::size_t lower() const { return kl_; }
  std::size_t upper() const { return ku_; }

  bool in_band(std::size_t row, std::size_t col) const {
    return row <= col + kl_ && col <= row + ku_;
  }
  double& at(std::size_t row, std::size_t col);
  double at(std::size_t row, std::size_t col) const;

  void set_zero();

  /// Solves A x = rhs in place (rhs becomes x). Destroys the matrix.
  /// Returns false if the factorization hits an exactly zero pivot.
  bool solve_in_place(std::span<double> rhs);

 private:
  std::size_t n_, kl_, ku_, ldab_;
  std::vector<double> ab_;
  std::vector<int> pivots_;
};

}  // namespace lagrange1d
