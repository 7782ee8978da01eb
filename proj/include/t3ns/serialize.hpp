#pragma once

#include <json.hpp>

#include "t3ns/form.hpp"

namespace t3ns {

/// Fields serialize as the lattice parameters plus (k, re, im) triples for
/// the nonzero modes of the non-redundant half-lattice (k = 0 and the
/// representatives whose first nonzero component is positive).
nlohmann::ordered_json to_json(const ScalarField& field);
ScalarField scalar_field_from_json(const nlohmann::json& doc);

nlohmann::ordered_json to_json(const Form& form);
Form form_from_json(const nlohmann::json& doc);

}  // namespace t3ns
