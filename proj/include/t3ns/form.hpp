#pragma once

#include <functional>
#include <optional>

#include "t3ns/scalar_field.hpp"

namespace t3ns {

/// Differential form on the torus. Degrees 0 and 3 carry one scalar
/// component; degrees 1 and 2 carry three, under the standard
/// identifications with vector fields in dimension three.
class Form {
 public:
  Form(std::shared_ptr<const Lattice> lattice, int degree);

  static int component_count(int degree);

  int degree() const { return degree_; }
  int components() const { return static_cast<int>(comps_.size()); }
  ScalarField& component(int i) { return comps_[static_cast<std::size_t>(i)]; }
  const ScalarField& component(int i) const { return comps_[static_cast<std::size_t>(i)]; }
  const Lattice& lattice() const { return comps_.front().lattice(); }
  const std::shared_ptr<const Lattice>& lattice_ptr() const {
    return comps_.front().lattice_ptr();
  }

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  Form& operator*=(double s);

 private:
  int degree_;
  std::vector<ScalarField> comps_;
};

Form operator+(Form a, const Form& b);
Form operator-(Form a, const Form& b);
Form operator*(double s, Form a);

// The realized identification of the de Rham differentials for n = 3:
//   d0 = grad, d1 = rot, d2 = div,   d0* = -div, d1* = rot, d2* = -grad.
// Signs of the adjoints are fixed here; every derived operator (Laplacians,
// parametrix compositions, fractional gradients) takes its sign from these
// by composition.

/// Exterior derivative d_q; rejects degree-3 input.
Form apply_d(const Form& u);

/// Formal adjoint d_{q-1}^*; rejects degree-0 input.
Form apply_d_star(const Form& u);

/// Hodge Laplacian d_q^* d_q + d_{q-1} d_{q-1}^*, assembled by composition.
/// On the flat torus it acts as |k|^2 on every component of every degree.
Form laplacian(const Form& u);

/// Diagonal Fourier multiplier acting componentwise: coeff(k) *= symbol(|k|^2).
Form apply_symbol(const Form& u, const std::function<double(int)>& symbol);
ScalarField apply_symbol(const ScalarField& u, const std::function<double(int)>& symbol);

/// Spectral partial derivative along one axis (multiplier i*k_axis).
ScalarField partial_derivative(const ScalarField& u, int axis);

/// Fractional gradient of order m. Even m collapses to a Laplacian power;
/// odd m is the direct sum (d_q, d_{q-1}^*) applied to the even part of
/// order m-1, with absent boundary summands dropped.
struct FracGradient {
  int order = 0;
  std::optional<Form> even_part;  // m even
  std::optional<Form> up;         // m odd, degree q+1 (absent at q = 3)
  std::optional<Form> down;       // m odd, degree q-1 (absent at q = 0)
};

FracGradient frac_gradient(const Form& u, int m);

}  // namespace t3ns
