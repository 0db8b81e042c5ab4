#pragma once

#include "laxscatter/field.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace laxscatter::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "laxscatter/1";

inline Json cjson(cplx z) { return Json::array({z.real(), z.imag()}); }

Json cjson(const std::vector<cplx>& v);

// Two-space indented JSON with every float printed as %.17g; non-finite values become null.
std::string dump(const Json& j);

void write_text(const std::string& path, const std::string& text);

}  // namespace laxscatter::cli
