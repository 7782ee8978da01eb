#include "t3ns/generators.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "t3ns/norms.hpp"
#include "t3ns/serialize.hpp"

namespace t3ns {

namespace {

constexpr cplx kImag{0.0, 1.0};

bool is_representative(const std::array<int, 3>& k) {
  for (int a = 0; a < 3; ++a) {
    if (k[a] > 0) return true;
    if (k[a] < 0) return false;
  }
  return false;
}

Form load_form(const std::string& path, const Lattice& expected) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open form file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError("config: malformed form file " + path + ": " + err.what());
  }
  Form form = form_from_json(doc);
  if (form.degree() != 2)
    throw ConfigError("config: form file " + path + " must hold a degree-2 form");
  if (!form.lattice().same_as(expected))
    throw ConfigError("config: form file " + path +
                      " disagrees with the configured lattice (K, dealias)");
  return form;
}

Form constant_form(std::shared_ptr<const Lattice> lattice,
                   const std::array<double, 3>& value) {
  Form u(std::move(lattice), 2);
  for (int a = 0; a < 3; ++a)
    u.component(a).set_mode_pair({0, 0, 0}, cplx{value[a], 0.0});
  return u;
}

}  // namespace

Form gradient_mode(std::shared_ptr<const Lattice> lattice, const std::array<int, 3>& k,
                   double amplitude, bool sine) {
  if (k[0] == 0 && k[1] == 0 && k[2] == 0)
    throw std::invalid_argument("gradient_mode: wavevector must be nonzero");
  const double ksq = static_cast<double>(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  const double knorm = std::sqrt(ksq);
  const double tau = std::sqrt(0.5 * torus_volume());
  Form u(lattice, 2);
  const cplx weight = sine ? cplx{amplitude / (2.0 * knorm * tau), 0.0}
                           : kImag * (amplitude / (2.0 * knorm * tau));
  for (int a = 0; a < 3; ++a)
    u.component(a).set_mode_pair(k, weight * static_cast<double>(k[a]));
  return u;
}

Form random_form(std::shared_ptr<const Lattice> lattice, int degree,
                 std::mt19937_64& rng, double decay) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Form u(lattice, degree);
  const auto& modes = lattice->modes();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& w = modes[i];
    if (w.ksq == 0) {
      for (int a = 0; a < u.components(); ++a)
        u.component(a).set_mode_pair(w.k, cplx{gauss(rng), 0.0});
      continue;
    }
    if (!is_representative(w.k)) continue;
    const double scale =
        decay > 0.0 ? std::pow(std::sqrt(static_cast<double>(w.ksq)), -decay) : 1.0;
    for (int a = 0; a < u.components(); ++a) {
      const double re = gauss(rng), im = gauss(rng);
      u.component(a).set_mode_pair(w.k, scale * cplx{re, im});
    }
  }
  return u;
}

Form random_rotfree_form(std::shared_ptr<const Lattice> lattice, std::uint64_t seed,
                         double decay, double amplitude) {
  std::mt19937_64 rng(seed);
  Form u = random_form(std::move(lattice), 2, rng, decay);
  u = helmholtz_project(u);
  u *= amplitude;
  return u;
}

ManufacturedCase manufactured_case(const std::string& name,
                                   std::shared_ptr<const Lattice> lattice,
                                   const SolverConfig& config) {
  ManufacturedCase out;
  out.name = name;
  const double mu = config.mu;
  const NonlinearityConfig nonlinearity = config.nonlinearity;

  if (name == "static") {
    const std::array<double, 3> drift{0.4, -0.2, 0.1};
    out.u_exact = [lattice, drift](double) { return constant_form(lattice, drift); };
    out.p_exact = [lattice](double) { return Form(lattice, 1); };
    out.forcing = [lattice](double) { return Form(lattice, 2); };
    return out;
  }

  if (name == "heat") {
    // One decaying gradient mode; exact solution of the linear limit, so f = 0.
    const std::array<int, 3> k0{1, 0, 0};
    out.u_exact = [lattice, k0, mu](double t) {
      return gradient_mode(lattice, k0, std::exp(-mu * t));
    };
    out.p_exact = [lattice](double) { return Form(lattice, 1); };
    out.forcing = [lattice](double) { return Form(lattice, 2); };
    return out;
  }

  if (name == "nonlinear") {
    // Time-modulated gradient mode plus a rotating constant drift, with a
    // nonzero exact pressure to exercise the recovery path.
    const std::array<int, 3> k0{1, 0, 0};
    const double amp = 0.8, nu = 0.4, omega = 2.0;
    const double drift_amp = 0.3;
    auto a_of = [=](double t) { return amp * std::exp(-nu * t) * std::cos(omega * t); };
    auto da_of = [=](double t) {
      return amp * std::exp(-nu * t) * (-nu * std::cos(omega * t) - omega * std::sin(omega * t));
    };
    auto h_of = [=](double t) {
      return std::array<double, 3>{drift_amp * std::cos(t), drift_amp * std::sin(t), 0.5 * drift_amp};
    };
    auto dh_of = [=](double t) {
      return std::array<double, 3>{-drift_amp * std::sin(t), drift_amp * std::cos(t), 0.0};
    };
    auto p_amp = [](double t) { return 0.25 * std::sin(1.3 * t); };
    auto p_form = [lattice, p_amp](double t) {
      Form p(lattice, 1);
      // (0, 0, cos(x2)): divergence-free, mean-free
      p.component(2).set_mode_pair({0, 1, 0}, cplx{0.5 * p_amp(t), 0.0});
      return p;
    };

    auto u_of = [lattice, k0, a_of, h_of](double t) {
      Form u = gradient_mode(lattice, k0, a_of(t));
      const auto h = h_of(t);
      for (int a = 0; a < 3; ++a) {
        ScalarField& comp = u.component(a);
        comp.set_mode_pair({0, 0, 0}, comp.coeff({0, 0, 0}) + cplx{h[a], 0.0});
      }
      return u;
    };

    out.u_exact = u_of;
    out.p_exact = p_form;
    out.forcing = [lattice, k0, mu, nonlinearity, u_of, da_of, dh_of, p_form](double t) {
      Form f = gradient_mode(lattice, k0, da_of(t));
      const auto dh = dh_of(t);
      for (int a = 0; a < 3; ++a) {
        ScalarField& comp = f.component(a);
        comp.set_mode_pair({0, 0, 0}, comp.coeff({0, 0, 0}) + cplx{dh[a], 0.0});
      }
      const Form u = u_of(t);
      f += mu * laplacian(u);
      f += n2(u, nonlinearity);
      f += apply_d(p_form(t));
      return f;
    };
    return out;
  }

  throw ConfigError("config: manufactured: unknown case \"" + name +
                    "\" (expected \"static\", \"heat\" or \"nonlinear\")");
}

Form make_initial(const RunSpec& spec, std::shared_ptr<const Lattice> lattice) {
  switch (spec.initial.kind) {
    case InitialSpec::Kind::Constant:
      return constant_form(lattice, spec.initial.value);
    case InitialSpec::Kind::GradientMode:
      return gradient_mode(lattice, spec.initial.mode, spec.initial.amplitude);
    case InitialSpec::Kind::RandomSmooth:
      return random_rotfree_form(lattice, spec.seed, spec.initial.decay,
                                 spec.initial.amplitude);
    case InitialSpec::Kind::File:
      return load_form(spec.initial.file, *lattice);
    case InitialSpec::Kind::Manufactured:
      return manufactured_case(spec.manufactured, lattice, spec.solver).u_exact(0.0);
  }
  throw ConfigError("config: initial: unhandled generator");
}

ForcingProvider make_forcing(const RunSpec& spec, std::shared_ptr<const Lattice> lattice) {
  switch (spec.forcing.kind) {
    case ForcingSpec::Kind::Zero:
      return [lattice](double) { return Form(lattice, 2); };
    case ForcingSpec::Kind::Constant: {
      const Form f = constant_form(lattice, spec.forcing.value);
      return [f](double) { return f; };
    }
    case ForcingSpec::Kind::Manufactured:
      return manufactured_case(spec.manufactured, lattice, spec.solver).forcing;
    case ForcingSpec::Kind::File: {
      const Form f = load_form(spec.forcing.file, *lattice);
      return [f](double) { return f; };
    }
  }
  throw ConfigError("config: forcing: unhandled generator");
}

}  // namespace t3ns
