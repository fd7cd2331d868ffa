#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "mqlearn/distrib.hpp"
#include "mqlearn/oracle.hpp"
#include "mqlearn/protocol.hpp"
#include "mqlearn/touchstone.hpp"

namespace mqlearn {

// Distribution config: {"n": int, "t": int, "sigma": [..] (optional,
// identity default), "blocks": [[mass...] | "uniform", ...]}.
ProductDistribution distribution_from_json(const nlohmann::json& j);
nlohmann::json distribution_to_json(const ProductDistribution& rho);
ProductDistribution load_distribution(const std::string& path);

// Concept config: {"table": path} or {"probabilistic": [p...]}, plus
// "dist": <distribution config> (uniform default), or {"fn": name, "n": int}.
Concept concept_from_json(const nlohmann::json& j);
Concept load_concept(const std::string& path);

// Class-instance files are JSON discriminated by a "class" tag.
ClassInstance class_instance_from_json(const nlohmann::json& j);
nlohmann::json class_instance_to_json(const ClassInstance& instance);
ClassInstance load_class_instance(const std::string& path);
void save_class_instance(const std::string& path, const ClassInstance& instance);

// Protocol files: {"n", "parties", "owner": [..], "tree": <node>} where a
// node is {"speaker", "message": "bits...", "on0": node-or-leaf, "on1": ...}
// and a leaf is {"label": +1|-1}.
NOFProtocol protocol_from_json(const nlohmann::json& j);
nlohmann::json protocol_to_json(const NOFProtocol& pi);
NOFProtocol load_protocol(const std::string& path);
void save_protocol(const std::string& path, const NOFProtocol& pi);

// Stable hash of a canonicalized config for self-describing run records.
uint64_t config_hash(const nlohmann::json& j);

}  // namespace mqlearn
