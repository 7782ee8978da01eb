#include "t3ns/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace t3ns {

namespace {
constexpr kernels::Exec kExec = kernels::Exec::Parallel;
}

ScalarField::ScalarField(std::shared_ptr<const Lattice> lattice)
    : lattice_(std::move(lattice)), coeffs_(lattice_->size(), cplx{0.0, 0.0}) {}

void ScalarField::set_mode_pair(const std::array<int, 3>& k, cplx value) {
  if (k[0] == 0 && k[1] == 0 && k[2] == 0) {
    coeffs_[lattice_->index_of(k)] = cplx{value.real(), 0.0};
    return;
  }
  coeffs_[lattice_->index_of(k)] = value;
  coeffs_[lattice_->index_of({-k[0], -k[1], -k[2]})] = std::conj(value);
}

double ScalarField::max_abs_coeff() const {
  double m = 0.0;
  for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double ScalarField::hermitian_error() const {
  double err = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const std::size_t j = lattice_->index_of_negated(i);
    err = std::max(err, std::abs(coeffs_[i] - std::conj(coeffs_[j])));
  }
  return err;
}

void ScalarField::require_real(double rel_tol) const {
  const double scale = max_abs_coeff();
  if (scale == 0.0) return;
  const double err = hermitian_error();
  if (err > rel_tol * scale) {
    std::ostringstream msg;
    msg << "scalar field data corruption: Hermitian-symmetry defect " << err
        << " exceeds " << rel_tol << " * max|coeff| = " << rel_tol * scale;
    throw DataCorruptionError(msg.str());
  }
}

void ScalarField::enforce_hermitian() {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const std::size_t j = lattice_->index_of_negated(i);
    if (j < i) continue;
    const cplx sym = 0.5 * (coeffs_[i] + std::conj(coeffs_[j]));
    coeffs_[i] = sym;
    coeffs_[j] = std::conj(sym);
  }
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (cplx& c : coeffs_) c *= s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

std::vector<double> transform_to_grid(const ScalarField& field, double tol) {
  return transform_to_grid(field, field.lattice().plan(), tol);
}

std::vector<double> transform_to_grid(const ScalarField& field,
                                      const kernels::DftPlan& plan, double tol) {
  field.require_real(tol);
  const std::size_t n = static_cast<std::size_t>(plan.n_grid) * plan.n_grid * plan.n_grid;
  std::vector<cplx> grid(n);
  kernels::inverse_dft3(plan, field.coeffs().data(), grid.data(), kExec);
  std::vector<double> samples(n);
  for (std::size_t i = 0; i < n; ++i) samples[i] = grid[i].real();
  return samples;
}

ScalarField field_from_grid(std::shared_ptr<const Lattice> lattice,
                            const std::vector<double>& samples) {
  const auto& plan = lattice->plan();
  const std::size_t n = static_cast<std::size_t>(plan.n_grid) * plan.n_grid * plan.n_grid;
  if (samples.size() != n)
    throw std::invalid_argument("field_from_grid: sample count does not match grid");
  std::vector<cplx> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = cplx{samples[i], 0.0};
  ScalarField out(std::move(lattice));
  kernels::forward_dft3(plan, grid.data(), out.coeffs().data(), kExec);
  out.enforce_hermitian();
  return out;
}

ScalarField pointwise_product(const ScalarField& a, const ScalarField& b) {
  if (!a.lattice().same_as(b.lattice()))
    throw std::invalid_argument("pointwise product: lattice mismatch");
  const auto grid_a = transform_to_grid(a);
  const auto grid_b = transform_to_grid(b);
  std::vector<double> grid(grid_a.size());
  kernels::multiply(grid_a.data(), grid_b.data(), grid.data(), grid.size(), kExec);
  ScalarField out = field_from_grid(a.lattice_ptr(), grid);
  if (a.lattice().dealias_active()) {
    const int bound = a.lattice().dealias_bound();
    auto& c = out.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (a.lattice().mode(i).max_norm() > bound) c[i] = cplx{0.0, 0.0};
  }
  return out;
}

}  // namespace t3ns
