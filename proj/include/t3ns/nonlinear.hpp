#pragma once

#include "t3ns/form.hpp"

namespace t3ns {

/// Choice of the zero-order bilinear operator mapping pairs of 2-forms to
/// 1-forms. HalfCross is u x v / 2 under the vector-field identification
/// (pointwise bound constant 1/2, and it annihilates the diagonal, so the
/// quadratic term it contributes to the full operator vanishes); Zero
/// switches it off for ablation.
enum class M22Kind { HalfCross, Zero };

struct NonlinearityConfig {
  M22Kind m22_kind = M22Kind::HalfCross;
  /// Switch for the (div u) u term. Off together with M22Kind::Zero gives
  /// the linear heat limit used by the exactness tests.
  bool m21_enabled = true;
  /// Pointwise bound constants |M(u,v)| <= c |u||v| used by the audits.
  double c21 = 1.0;
  double c22 = 0.5;
};

/// (div u) u: pointwise scalar-times-vector product, dealiased.
Form m21(const Form& dqu, const Form& u);

/// The configured degree-lowering bilinear operator on pairs of 2-forms.
Form m22(const Form& u, const Form& v, const NonlinearityConfig& config);

/// The quadratic operator of the evolution: m21(d2 u, u) + d1 m22(u, u).
Form n2(const Form& u, const NonlinearityConfig& config);

/// Symmetrized bilinear form: m21(d2 w, v) + m21(d2 v, w)
/// + d1(m22(w,v) + m22(v,w)). Its diagonal equals twice n2.
Form bilinearize(const Form& w, const Form& v, const NonlinearityConfig& config);

/// Empirical continuity ratio |B(w,v)|_{H^k} / (|w|_{H^{k+2}} |v|_{H^{k+2}}),
/// reported over random ensembles; returns 0 when either norm vanishes.
double audit_continuity_bound(const Form& w, const Form& v,
                              const NonlinearityConfig& config, int sobolev_k = 0);

/// Max over grid samples of |M(u,v)| - c |u||v| for both bilinear operators
/// (positive values violate the configured pointwise bounds).
struct PointwiseBoundAudit {
  double m21_excess = 0.0;
  double m22_excess = 0.0;
};
PointwiseBoundAudit audit_pointwise_bounds(const Form& u, const Form& v,
                                           const NonlinearityConfig& config);

}  // namespace t3ns
