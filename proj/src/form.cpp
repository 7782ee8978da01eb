#include "t3ns/form.hpp"

#include <stdexcept>

namespace t3ns {

namespace {

constexpr cplx kImag{0.0, 1.0};

void check_shared_lattice(const Form& a, const Form& b) {
  if (!a.lattice().same_as(b.lattice()))
    throw std::invalid_argument("form arithmetic: lattice mismatch");
}

}  // namespace

Form::Form(std::shared_ptr<const Lattice> lattice, int degree) : degree_(degree) {
  const int n = component_count(degree);
  comps_.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) comps_.emplace_back(lattice);
}

int Form::component_count(int degree) {
  switch (degree) {
    case 0:
    case 3:
      return 1;
    case 1:
    case 2:
      return 3;
    default:
      throw std::invalid_argument("form degree must be in {0,1,2,3}");
  }
}

Form& Form::operator+=(const Form& other) {
  check_shared_lattice(*this, other);
  if (degree_ != other.degree_) throw std::invalid_argument("form sum: degree mismatch");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += other.comps_[i];
  return *this;
}

Form& Form::operator-=(const Form& other) {
  check_shared_lattice(*this, other);
  if (degree_ != other.degree_) throw std::invalid_argument("form sum: degree mismatch");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= other.comps_[i];
  return *this;
}

Form& Form::operator*=(double s) {
  for (auto& c : comps_) c *= s;
  return *this;
}

Form operator+(Form a, const Form& b) { return a += b; }
Form operator-(Form a, const Form& b) { return a -= b; }
Form operator*(double s, Form a) { return a *= s; }

Form apply_d(const Form& u) {
  const auto& lat = u.lattice();
  const auto& modes = lat.modes();
  switch (u.degree()) {
    case 0: {  // grad
      Form out(u.lattice_ptr(), 1);
      const auto& s = u.component(0).coeffs();
      for (int a = 0; a < 3; ++a) {
        auto& c = out.component(a).coeffs();
        for (std::size_t i = 0; i < s.size(); ++i)
          c[i] = kImag * static_cast<double>(modes[i].k[a]) * s[i];
      }
      return out;
    }
    case 1: {  // rot
      Form out(u.lattice_ptr(), 2);
      const auto& v0 = u.component(0).coeffs();
      const auto& v1 = u.component(1).coeffs();
      const auto& v2 = u.component(2).coeffs();
      auto& c0 = out.component(0).coeffs();
      auto& c1 = out.component(1).coeffs();
      auto& c2 = out.component(2).coeffs();
      for (std::size_t i = 0; i < v0.size(); ++i) {
        const auto& k = modes[i].k;
        c0[i] = kImag * (static_cast<double>(k[1]) * v2[i] - static_cast<double>(k[2]) * v1[i]);
        c1[i] = kImag * (static_cast<double>(k[2]) * v0[i] - static_cast<double>(k[0]) * v2[i]);
        c2[i] = kImag * (static_cast<double>(k[0]) * v1[i] - static_cast<double>(k[1]) * v0[i]);
      }
      return out;
    }
    case 2: {  // div
      Form out(u.lattice_ptr(), 3);
      auto& c = out.component(0).coeffs();
      const auto& v0 = u.component(0).coeffs();
      const auto& v1 = u.component(1).coeffs();
      const auto& v2 = u.component(2).coeffs();
      for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& k = modes[i].k;
        c[i] = kImag * (static_cast<double>(k[0]) * v0[i] +
                        static_cast<double>(k[1]) * v1[i] +
                        static_cast<double>(k[2]) * v2[i]);
      }
      return out;
    }
    default:
      throw std::invalid_argument("apply_d: degree-3 forms have no exterior derivative");
  }
}

Form apply_d_star(const Form& u) {
  const auto& lat = u.lattice();
  const auto& modes = lat.modes();
  switch (u.degree()) {
    case 1: {  // -div
      Form out(u.lattice_ptr(), 0);
      auto& c = out.component(0).coeffs();
      const auto& v0 = u.component(0).coeffs();
      const auto& v1 = u.component(1).coeffs();
      const auto& v2 = u.component(2).coeffs();
      for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& k = modes[i].k;
        c[i] = -kImag * (static_cast<double>(k[0]) * v0[i] +
                         static_cast<double>(k[1]) * v1[i] +
                         static_cast<double>(k[2]) * v2[i]);
      }
      return out;
    }
    case 2: {  // rot
      Form out(u.lattice_ptr(), 1);
      const auto& v0 = u.component(0).coeffs();
      const auto& v1 = u.component(1).coeffs();
      const auto& v2 = u.component(2).coeffs();
      auto& c0 = out.component(0).coeffs();
      auto& c1 = out.component(1).coeffs();
      auto& c2 = out.component(2).coeffs();
      for (std::size_t i = 0; i < v0.size(); ++i) {
        const auto& k = modes[i].k;
        c0[i] = kImag * (static_cast<double>(k[1]) * v2[i] - static_cast<double>(k[2]) * v1[i]);
        c1[i] = kImag * (static_cast<double>(k[2]) * v0[i] - static_cast<double>(k[0]) * v2[i]);
        c2[i] = kImag * (static_cast<double>(k[0]) * v1[i] - static_cast<double>(k[1]) * v0[i]);
      }
      return out;
    }
    case 3: {  // -grad
      Form out(u.lattice_ptr(), 2);
      const auto& s = u.component(0).coeffs();
      for (int a = 0; a < 3; ++a) {
        auto& c = out.component(a).coeffs();
        for (std::size_t i = 0; i < s.size(); ++i)
          c[i] = -kImag * static_cast<double>(modes[i].k[a]) * s[i];
      }
      return out;
    }
    default:
      throw std::invalid_argument("apply_d_star: degree-0 forms have no adjoint derivative");
  }
}

Form laplacian(const Form& u) {
  Form out(u.lattice_ptr(), u.degree());
  if (u.degree() < 3) out += apply_d_star(apply_d(u));
  if (u.degree() > 0) out += apply_d(apply_d_star(u));
  return out;
}

Form apply_symbol(const Form& u, const std::function<double(int)>& symbol) {
  Form out = u;
  const auto& modes = u.lattice().modes();
  for (int a = 0; a < out.components(); ++a) {
    auto& c = out.component(a).coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= symbol(modes[i].ksq);
  }
  return out;
}

ScalarField apply_symbol(const ScalarField& u, const std::function<double(int)>& symbol) {
  ScalarField out = u;
  const auto& modes = u.lattice().modes();
  auto& c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= symbol(modes[i].ksq);
  return out;
}

ScalarField partial_derivative(const ScalarField& u, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("partial_derivative: bad axis");
  ScalarField out = u;
  const auto& modes = u.lattice().modes();
  auto& c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] *= kImag * static_cast<double>(modes[i].k[axis]);
  return out;
}

FracGradient frac_gradient(const Form& u, int m) {
  if (m < 0) throw std::invalid_argument("frac_gradient: order must be non-negative");
  FracGradient out;
  out.order = m;
  const int half = m / 2;
  Form even = apply_symbol(u, [half](int ksq) {
    double s = 1.0;
    for (int i = 0; i < half; ++i) s *= ksq;
    return s;
  });
  if (m % 2 == 0) {
    out.even_part = std::move(even);
    return out;
  }
  if (u.degree() < 3) out.up = apply_d(even);
  if (u.degree() > 0) out.down = apply_d_star(even);
  return out;
}

}  // namespace t3ns
