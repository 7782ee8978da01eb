#include "t3ns/config.hpp"

#include <set>

namespace t3ns {

namespace {

const std::set<std::string> kKnownKeys = {
    "mu", "T", "dt", "K", "M", "scheme", "dealias", "nonlinearity", "c21", "c22",
    "initial", "initial_value", "initial_mode", "initial_amplitude", "initial_decay",
    "initial_file", "forcing", "forcing_value", "forcing_file", "manufactured",
    "seed", "out_dir", "snapshot_stride", "basis_permutation_seed", "blowup_factor",
    "pressure_tol", "hermitian_tol"};

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config: " + field + ": " + what);
}

double get_number(const nlohmann::json& doc, const std::string& key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number()) fail(key, "expected a number");
  return doc.at(key).get<double>();
}

double require_number(const nlohmann::json& doc, const std::string& key) {
  if (!doc.contains(key)) fail(key, "required key is missing");
  if (!doc.at(key).is_number()) fail(key, "expected a number");
  return doc.at(key).get<double>();
}

int require_int(const nlohmann::json& doc, const std::string& key) {
  if (!doc.contains(key)) fail(key, "required key is missing");
  if (!doc.at(key).is_number_integer()) fail(key, "expected an integer");
  return doc.at(key).get<int>();
}

int get_int(const nlohmann::json& doc, const std::string& key, int fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number_integer()) fail(key, "expected an integer");
  return doc.at(key).get<int>();
}

std::uint64_t get_u64(const nlohmann::json& doc, const std::string& key,
                      std::uint64_t fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number_integer()) fail(key, "expected an integer");
  return doc.at(key).get<std::uint64_t>();
}

bool get_bool(const nlohmann::json& doc, const std::string& key, bool fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_boolean()) fail(key, "expected a boolean");
  return doc.at(key).get<bool>();
}

std::string get_string(const nlohmann::json& doc, const std::string& key,
                       const std::string& fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_string()) fail(key, "expected a string");
  return doc.at(key).get<std::string>();
}

template <typename T, std::size_t N>
std::array<T, N> get_vector(const nlohmann::json& doc, const std::string& key,
                            std::array<T, N> fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (!v.is_array() || v.size() != N) fail(key, "expected an array of 3 numbers");
  std::array<T, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if constexpr (std::is_same_v<T, int>) {
      if (!v[i].is_number_integer()) fail(key, "expected integer entries");
    } else {
      if (!v[i].is_number()) fail(key, "expected numeric entries");
    }
    out[i] = v[i].get<T>();
  }
  return out;
}

}  // namespace

RunSpec parse_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError(std::string("config: malformed JSON: ") + err.what());
  }
  return parse_config_doc(doc);
}

RunSpec parse_config_doc(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!kKnownKeys.contains(key)) fail(key, "unknown key");
  }

  RunSpec spec;
  spec.solver.mu = require_number(doc, "mu");
  spec.solver.horizon = require_number(doc, "T");
  spec.solver.dt = require_number(doc, "dt");
  spec.solver.truncation = require_int(doc, "K");
  spec.solver.basis_size = require_int(doc, "M");
  spec.solver.dealias = get_bool(doc, "dealias", true);
  spec.solver.snapshot_stride = get_int(doc, "snapshot_stride", 10);
  spec.solver.basis_permutation_seed = get_u64(doc, "basis_permutation_seed", 0);
  spec.solver.tol.blowup_factor = get_number(doc, "blowup_factor", 1e6);
  spec.solver.tol.pressure_rel = get_number(doc, "pressure_tol", 1e-8);
  spec.solver.tol.hermitian = get_number(doc, "hermitian_tol", 1e-10);

  const std::string scheme = get_string(doc, "scheme", "imex-heun");
  if (scheme == "imex-heun") {
    spec.solver.scheme = Scheme::ImexHeun;
  } else if (scheme == "imex-euler") {
    spec.solver.scheme = Scheme::ImexEuler;
  } else {
    fail("scheme", "expected \"imex-heun\" or \"imex-euler\"");
  }

  const std::string nl = get_string(doc, "nonlinearity", "half-cross");
  if (nl == "half-cross") {
    spec.solver.nonlinearity.m22_kind = M22Kind::HalfCross;
    spec.solver.nonlinearity.m21_enabled = true;
  } else if (nl == "m22-zero") {
    spec.solver.nonlinearity.m22_kind = M22Kind::Zero;
    spec.solver.nonlinearity.m21_enabled = true;
  } else if (nl == "zero") {
    spec.solver.nonlinearity.m22_kind = M22Kind::Zero;
    spec.solver.nonlinearity.m21_enabled = false;
  } else {
    fail("nonlinearity", "expected \"half-cross\", \"m22-zero\" or \"zero\"");
  }
  spec.solver.nonlinearity.c21 = get_number(doc, "c21", 1.0);
  spec.solver.nonlinearity.c22 = get_number(doc, "c22", 0.5);

  const std::string initial = get_string(doc, "initial", "constant");
  if (initial == "constant") {
    spec.initial.kind = InitialSpec::Kind::Constant;
  } else if (initial == "gradient-mode") {
    spec.initial.kind = InitialSpec::Kind::GradientMode;
  } else if (initial == "random-smooth") {
    spec.initial.kind = InitialSpec::Kind::RandomSmooth;
  } else if (initial == "file") {
    spec.initial.kind = InitialSpec::Kind::File;
  } else if (initial == "manufactured") {
    spec.initial.kind = InitialSpec::Kind::Manufactured;
  } else {
    fail("initial",
         "expected \"constant\", \"gradient-mode\", \"random-smooth\", \"file\" or "
         "\"manufactured\"");
  }
  spec.initial.value = get_vector<double, 3>(doc, "initial_value", {0.0, 0.0, 0.0});
  spec.initial.mode = get_vector<int, 3>(doc, "initial_mode", {1, 0, 0});
  spec.initial.amplitude = get_number(doc, "initial_amplitude", 1.0);
  spec.initial.decay = get_number(doc, "initial_decay", 4.0);
  spec.initial.file = get_string(doc, "initial_file", "");

  const std::string forcing = get_string(doc, "forcing", "zero");
  if (forcing == "zero") {
    spec.forcing.kind = ForcingSpec::Kind::Zero;
  } else if (forcing == "constant") {
    spec.forcing.kind = ForcingSpec::Kind::Constant;
  } else if (forcing == "manufactured") {
    spec.forcing.kind = ForcingSpec::Kind::Manufactured;
  } else if (forcing == "file") {
    spec.forcing.kind = ForcingSpec::Kind::File;
  } else {
    fail("forcing", "expected \"zero\", \"constant\", \"manufactured\" or \"file\"");
  }
  spec.forcing.value = get_vector<double, 3>(doc, "forcing_value", {0.0, 0.0, 0.0});
  spec.forcing.file = get_string(doc, "forcing_file", "");

  spec.manufactured = get_string(doc, "manufactured", "");
  spec.seed = get_u64(doc, "seed", 0);
  spec.out_dir = get_string(doc, "out_dir", "out");

  // cross-field checks
  try {
    spec.solver.validate();
  } catch (const ConfigError& err) {
    throw ConfigError(std::string("config: ") + err.what());
  }
  const bool wants_case = spec.initial.kind == InitialSpec::Kind::Manufactured ||
                          spec.forcing.kind == ForcingSpec::Kind::Manufactured;
  if (wants_case && spec.manufactured.empty())
    fail("manufactured", "a generator references a manufactured case but none is named");
  if (spec.initial.kind == InitialSpec::Kind::File && spec.initial.file.empty())
    fail("initial_file", "required for initial = \"file\"");
  if (spec.forcing.kind == ForcingSpec::Kind::File && spec.forcing.file.empty())
    fail("forcing_file", "required for forcing = \"file\"");
  if (spec.initial.kind == InitialSpec::Kind::GradientMode) {
    const auto& m = spec.initial.mode;
    if (m[0] == 0 && m[1] == 0 && m[2] == 0)
      fail("initial_mode", "gradient mode requires a nonzero wavevector");
    for (int a = 0; a < 3; ++a)
      if (std::abs(m[a]) > spec.solver.truncation)
        fail("initial_mode", "wavevector exceeds the truncation K");
  }
  return spec;
}

nlohmann::json canonical_config(const RunSpec& spec) {
  nlohmann::json doc;  // std::map storage keeps keys sorted
  doc["mu"] = spec.solver.mu;
  doc["T"] = spec.solver.horizon;
  doc["dt"] = spec.solver.dt;
  doc["K"] = spec.solver.truncation;
  doc["M"] = spec.solver.basis_size;
  doc["scheme"] = spec.solver.scheme == Scheme::ImexHeun ? "imex-heun" : "imex-euler";
  doc["dealias"] = spec.solver.dealias;
  if (!spec.solver.nonlinearity.m21_enabled) {
    doc["nonlinearity"] = "zero";
  } else if (spec.solver.nonlinearity.m22_kind == M22Kind::HalfCross) {
    doc["nonlinearity"] = "half-cross";
  } else {
    doc["nonlinearity"] = "m22-zero";
  }
  doc["c21"] = spec.solver.nonlinearity.c21;
  doc["c22"] = spec.solver.nonlinearity.c22;
  switch (spec.initial.kind) {
    case InitialSpec::Kind::Constant: doc["initial"] = "constant"; break;
    case InitialSpec::Kind::GradientMode: doc["initial"] = "gradient-mode"; break;
    case InitialSpec::Kind::RandomSmooth: doc["initial"] = "random-smooth"; break;
    case InitialSpec::Kind::File: doc["initial"] = "file"; break;
    case InitialSpec::Kind::Manufactured: doc["initial"] = "manufactured"; break;
  }
  doc["initial_value"] = spec.initial.value;
  doc["initial_mode"] = spec.initial.mode;
  doc["initial_amplitude"] = spec.initial.amplitude;
  doc["initial_decay"] = spec.initial.decay;
  doc["initial_file"] = spec.initial.file;
  switch (spec.forcing.kind) {
    case ForcingSpec::Kind::Zero: doc["forcing"] = "zero"; break;
    case ForcingSpec::Kind::Constant: doc["forcing"] = "constant"; break;
    case ForcingSpec::Kind::Manufactured: doc["forcing"] = "manufactured"; break;
    case ForcingSpec::Kind::File: doc["forcing"] = "file"; break;
  }
  doc["forcing_value"] = spec.forcing.value;
  doc["forcing_file"] = spec.forcing.file;
  doc["manufactured"] = spec.manufactured;
  doc["seed"] = spec.seed;
  doc["out_dir"] = spec.out_dir;
  doc["snapshot_stride"] = spec.solver.snapshot_stride;
  doc["basis_permutation_seed"] = spec.solver.basis_permutation_seed;
  doc["blowup_factor"] = spec.solver.tol.blowup_factor;
  doc["pressure_tol"] = spec.solver.tol.pressure_rel;
  doc["hermitian_tol"] = spec.solver.tol.hermitian;
  return doc;
}

}  // namespace t3ns
