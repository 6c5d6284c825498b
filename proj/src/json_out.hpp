#pragma once

#include <string>

#include "json.hpp"

namespace exciton::detail {

using Json = nlohmann::ordered_json;

// Like Json::dump(2) but floats are written with 17 significant digits and
// non-finite floats as null.
std::string dump_json(const Json& j);

}  // namespace exciton::detail
