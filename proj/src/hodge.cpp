#include "t3ns/hodge.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace t3ns {

namespace {

constexpr cplx kImag{0.0, 1.0};

double coeff_l2_sq(const Form& u) {
  double s = 0.0;
  for (int a = 0; a < u.components(); ++a)
    for (const cplx& c : u.component(a).coeffs()) s += std::norm(c);
  return s;
}

}  // namespace

Form project_harmonic(const Form& u) {
  Form out(u.lattice_ptr(), u.degree());
  const std::size_t zero = u.lattice().index_of({0, 0, 0});
  for (int a = 0; a < u.components(); ++a)
    out.component(a).coeffs()[zero] = u.component(a).coeffs()[zero];
  return out;
}

Form parametrix(const Form& u) {
  return apply_symbol(u, [](int ksq) { return ksq == 0 ? 0.0 : 1.0 / ksq; });
}

Form helmholtz_project(const Form& w) {
  if (w.degree() != 2)
    throw std::invalid_argument("helmholtz_project: expected a degree-2 form");
  return apply_d_star(apply_d(parametrix(w))) + project_harmonic(w);
}

Form solve_pressure(const Form& F, double rel_tol) {
  if (F.degree() != 2)
    throw std::invalid_argument("solve_pressure: expected a degree-2 form");
  const double f_norm = std::sqrt(coeff_l2_sq(F));
  const double residual = std::sqrt(coeff_l2_sq(helmholtz_project(F)));
  if (residual > rel_tol * f_norm) {
    std::ostringstream msg;
    msg << "solve_pressure: input is not solenoidal, |P2 F| = " << residual
        << " exceeds " << rel_tol << " * |F| = " << rel_tol * f_norm;
    throw PreconditionError(msg.str());
  }
  Form p(F.lattice_ptr(), 1);
  const auto& modes = F.lattice().modes();
  const auto& f0 = F.component(0).coeffs();
  const auto& f1 = F.component(1).coeffs();
  const auto& f2 = F.component(2).coeffs();
  auto& p0 = p.component(0).coeffs();
  auto& p1 = p.component(1).coeffs();
  auto& p2 = p.component(2).coeffs();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const int ksq = modes[i].ksq;
    if (ksq == 0) continue;
    const auto& k = modes[i].k;
    const double inv = 1.0 / ksq;
    p0[i] = kImag * inv * (static_cast<double>(k[1]) * f2[i] - static_cast<double>(k[2]) * f1[i]);
    p1[i] = kImag * inv * (static_cast<double>(k[2]) * f0[i] - static_cast<double>(k[0]) * f2[i]);
    p2[i] = kImag * inv * (static_cast<double>(k[0]) * f1[i] - static_cast<double>(k[1]) * f0[i]);
  }
  return p;
}

HarmonicSpace harmonic_space(std::shared_ptr<const Lattice> lattice, int degree) {
  HarmonicSpace space;
  space.degree = degree;
  space.dimension = Form::component_count(degree);
  for (int a = 0; a < space.dimension; ++a) {
    Form h(lattice, degree);
    h.component(a).set_mode_pair({0, 0, 0}, cplx{1.0, 0.0});
    space.basis.push_back(std::move(h));
  }
  return space;
}

}  // namespace t3ns
