#ifndef HAWKESLAB_MODEL_JSON_HPP
#define HAWKESLAB_MODEL_JSON_HPP

#include <string>

#include "hawkeslab/model.hpp"

namespace hawkeslab {

/// Parse a model from JSON text (schema in the README); diagnostics name
/// the offending field. The parsed model passes validate_network.
NetworkModel parse_model(const std::string& json_text);
NetworkModel parse_model_file(const std::string& path);

/// Serialize back to JSON; parse(serialize(m)) round-trips byte-identically
/// modulo key order.
std::string serialize_model(const NetworkModel& model);

}  // namespace hawkeslab

#endif
