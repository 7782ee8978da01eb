#include "t3ns/nonlinear.hpp"

#include <cmath>
#include <stdexcept>

#include "t3ns/norms.hpp"

namespace t3ns {

Form m21(const Form& dqu, const Form& u) {
  if (dqu.degree() != 3 || u.degree() != 2)
    throw std::invalid_argument("m21: expected a (degree-3, degree-2) pair");
  if (!dqu.lattice().same_as(u.lattice()))
    throw std::invalid_argument("m21: lattice mismatch");
  Form out(u.lattice_ptr(), 2);
  for (int a = 0; a < 3; ++a)
    out.component(a) = pointwise_product(dqu.component(0), u.component(a));
  return out;
}

Form m22(const Form& u, const Form& v, const NonlinearityConfig& config) {
  if (u.degree() != 2 || v.degree() != 2)
    throw std::invalid_argument("m22: expected two degree-2 forms");
  if (!u.lattice().same_as(v.lattice()))
    throw std::invalid_argument("m22: lattice mismatch");
  Form out(u.lattice_ptr(), 1);
  if (config.m22_kind == M22Kind::Zero) return out;
  // u x v / 2 under the vector-field identification
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    out.component(a) = 0.5 * (pointwise_product(u.component(b), v.component(c)) -
                              pointwise_product(u.component(c), v.component(b)));
  }
  return out;
}

Form n2(const Form& u, const NonlinearityConfig& config) {
  if (u.degree() != 2) throw std::invalid_argument("n2: expected a degree-2 form");
  Form out(u.lattice_ptr(), 2);
  if (config.m21_enabled) out += m21(apply_d(u), u);
  if (config.m22_kind != M22Kind::Zero) out += apply_d(m22(u, u, config));
  return out;
}

Form bilinearize(const Form& w, const Form& v, const NonlinearityConfig& config) {
  if (w.degree() != 2 || v.degree() != 2)
    throw std::invalid_argument("bilinearize: expected two degree-2 forms");
  Form out(w.lattice_ptr(), 2);
  if (config.m21_enabled) out += m21(apply_d(w), v) + m21(apply_d(v), w);
  if (config.m22_kind != M22Kind::Zero)
    out += apply_d(m22(w, v, config) + m22(v, w, config));
  return out;
}

double audit_continuity_bound(const Form& w, const Form& v,
                              const NonlinearityConfig& config, int sobolev_k) {
  const double nw = sobolev_norm(w, sobolev_k + 2);
  const double nv = sobolev_norm(v, sobolev_k + 2);
  if (nw == 0.0 || nv == 0.0) return 0.0;
  return sobolev_norm(bilinearize(w, v, config), sobolev_k) / (nw * nv);
}

PointwiseBoundAudit audit_pointwise_bounds(const Form& u, const Form& v,
                                           const NonlinearityConfig& config) {
  const Form du = apply_d(u);
  const Form m1 = m21(du, v);
  const Form m2 = m22(u, v, config);
  const auto g_du = transform_to_grid(du.component(0));
  std::vector<std::vector<double>> g_u(3), g_v(3), g_m1(3), g_m2(3);
  for (int a = 0; a < 3; ++a) {
    g_u[a] = transform_to_grid(u.component(a));
    g_v[a] = transform_to_grid(v.component(a));
    g_m1[a] = transform_to_grid(m1.component(a));
    g_m2[a] = transform_to_grid(m2.component(a));
  }
  PointwiseBoundAudit audit;
  // The grid values of the operators are dealiased while |u||v| is sampled
  // exactly, so measure on a lattice with dealiasing off for sharp audits.
  for (std::size_t i = 0; i < g_du.size(); ++i) {
    const double uu = std::hypot(g_u[0][i], g_u[1][i], g_u[2][i]);
    const double vv = std::hypot(g_v[0][i], g_v[1][i], g_v[2][i]);
    const double mm1 = std::hypot(g_m1[0][i], g_m1[1][i], g_m1[2][i]);
    const double mm2 = std::hypot(g_m2[0][i], g_m2[1][i], g_m2[2][i]);
    audit.m21_excess = std::max(audit.m21_excess,
                                mm1 - config.c21 * std::abs(g_du[i]) * vv);
    audit.m22_excess = std::max(audit.m22_excess, mm2 - config.c22 * uu * vv);
  }
  return audit;
}

}  // namespace t3ns
