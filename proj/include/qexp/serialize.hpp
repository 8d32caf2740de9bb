#pragma once

// JSON forms of the library's results. Rationals are written as exact "p/q"
// strings so that output can be read back without loss.

#include <json.hpp>

#include "qexp/plateaus.hpp"

namespace qexp {

nlohmann::json to_json(const BaseEnclosure& q);
nlohmann::json to_json(const EntropyEnclosure& h);
nlohmann::json to_json(const RationalInterval& x);
nlohmann::json to_json(const Decomposition& d);
nlohmann::json to_json(const SubshiftAutomaton& aut);
nlohmann::json to_json(const PlateauRecord& r);
nlohmann::json to_json(const StaircaseRow& row);
nlohmann::json to_json(const BridgeReport& report);

/// Inverse of to_json(BaseEnclosure); throws InvalidArgument on malformed input.
BaseEnclosure base_from_json(const nlohmann::json& j, Alphabet alphabet);

}  // namespace qexp
