#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qspeed/cmatrix.hpp"

namespace qspeed {

// Matrix interchange schema: {"dim": n, "re": [[...]], "im": [[...]]},
// row-major, both parts always present.
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

void save_matrix(const std::string& path, const CMatrix& m);
CMatrix load_matrix(const std::string& path);

}  // namespace qspeed
