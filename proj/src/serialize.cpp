#include "t3ns/serialize.hpp"

#include <stdexcept>

namespace t3ns {

namespace {

bool half_lattice_representative(const std::array<int, 3>& k) {
  for (int a = 0; a < 3; ++a) {
    if (k[a] > 0) return true;
    if (k[a] < 0) return false;
  }
  return true;  // k = 0 belongs to the stored half
}

}  // namespace

nlohmann::ordered_json to_json(const ScalarField& field) {
  nlohmann::ordered_json doc;
  doc["K"] = field.lattice().truncation();
  doc["dealias"] = field.lattice().dealias_active();
  nlohmann::ordered_json modes = nlohmann::ordered_json::array();
  const auto& lattice = field.lattice();
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const auto& w = lattice.mode(i);
    if (!half_lattice_representative(w.k)) continue;
    const cplx c = field.coeff(i);
    if (c == cplx{0.0, 0.0}) continue;
    nlohmann::ordered_json entry;
    entry["k"] = {w.k[0], w.k[1], w.k[2]};
    entry["re"] = c.real();
    entry["im"] = c.imag();
    modes.push_back(std::move(entry));
  }
  doc["modes"] = std::move(modes);
  return doc;
}

ScalarField scalar_field_from_json(const nlohmann::json& doc) {
  if (!doc.contains("K") || !doc.contains("dealias") || !doc.contains("modes"))
    throw std::invalid_argument("scalar field document: missing K, dealias or modes");
  auto lattice = build_lattice(doc.at("K").get<int>(), doc.at("dealias").get<bool>());
  ScalarField field(lattice);
  for (const auto& entry : doc.at("modes")) {
    const auto kv = entry.at("k").get<std::vector<int>>();
    if (kv.size() != 3)
      throw std::invalid_argument("scalar field document: wavevector must have 3 entries");
    const std::array<int, 3> k{kv[0], kv[1], kv[2]};
    if (!half_lattice_representative(k))
      throw std::invalid_argument(
          "scalar field document: expected a half-lattice representative wavevector");
    field.set_mode_pair(k, cplx{entry.at("re").get<double>(), entry.at("im").get<double>()});
  }
  return field;
}

nlohmann::ordered_json to_json(const Form& form) {
  nlohmann::ordered_json doc;
  doc["degree"] = form.degree();
  nlohmann::ordered_json comps = nlohmann::ordered_json::array();
  for (int a = 0; a < form.components(); ++a) comps.push_back(to_json(form.component(a)));
  doc["components"] = std::move(comps);
  return doc;
}

Form form_from_json(const nlohmann::json& doc) {
  if (!doc.contains("degree") || !doc.contains("components"))
    throw std::invalid_argument("form document: missing degree or components");
  const int degree = doc.at("degree").get<int>();
  const auto& comps = doc.at("components");
  if (static_cast<int>(comps.size()) != Form::component_count(degree))
    throw std::invalid_argument("form document: component count does not match degree");
  std::vector<ScalarField> fields;
  for (const auto& comp : comps) fields.push_back(scalar_field_from_json(comp));
  for (const auto& f : fields)
    if (!f.lattice().same_as(fields.front().lattice()))
      throw std::invalid_argument("form document: components disagree on the lattice");
  Form form(fields.front().lattice_ptr(), degree);
  for (int a = 0; a < form.components(); ++a) form.component(a) = fields[static_cast<std::size_t>(a)];
  return form;
}

}  // namespace t3ns
