#pragma once

#include <memory>
#include <vector>

#include "t3ns/errors.hpp"
#include "t3ns/lattice.hpp"

namespace t3ns {

/// A real-valued scalar density on the torus stored as the full complex
/// coefficient cube in lattice order. Real-valuedness is the audited
/// Hermitian-symmetry invariant coeff(-k) == conj(coeff(k)).
class ScalarField {
 public:
  explicit ScalarField(std::shared_ptr<const Lattice> lattice);

  const Lattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const Lattice>& lattice_ptr() const { return lattice_; }

  std::vector<cplx>& coeffs() { return coeffs_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx coeff(std::size_t flat) const { return coeffs_[flat]; }
  cplx coeff(const std::array<int, 3>& k) const { return coeffs_[lattice_->index_of(k)]; }
  void set_coeff(const std::array<int, 3>& k, cplx value) {
    coeffs_[lattice_->index_of(k)] = value;
  }
  /// Sets coeff(k) = value and coeff(-k) = conj(value). At k = 0 the
  /// imaginary part is discarded (a real field has a real mean).
  void set_mode_pair(const std::array<int, 3>& k, cplx value);

  double max_abs_coeff() const;
  /// max_k |coeff(k) - conj(coeff(-k))|
  double hermitian_error() const;
  /// Throws DataCorruptionError when the Hermitian-symmetry defect exceeds
  /// rel_tol * max|coeff|.
  void require_real(double rel_tol) const;
  void enforce_hermitian();

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);

 private:
  std::shared_ptr<const Lattice> lattice_;
  std::vector<cplx> coeffs_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Inverse transform onto the collocation grid (2K+1 points per axis),
/// row-major in the sample index. Validates the Hermitian invariant first.
std::vector<double> transform_to_grid(const ScalarField& field,
                                      double hermitian_rel_tol = 1e-10);

/// Inverse transform onto the (finer) grid of an explicit plan.
std::vector<double> transform_to_grid(const ScalarField& field,
                                      const kernels::DftPlan& plan,
                                      double hermitian_rel_tol = 1e-10);

/// Forward transform of collocation-grid samples; output is exactly
/// Hermitian-symmetric.
ScalarField field_from_grid(std::shared_ptr<const Lattice> lattice,
                            const std::vector<double>& samples);

/// Dealiased spectral coefficients of the pointwise product a*b. When the
/// lattice's 2/3 rule is active, modes above the dealias bound are zeroed.
ScalarField pointwise_product(const ScalarField& a, const ScalarField& b);

}  // namespace t3ns
