#pragma once

#include <string>

#include "iradic/model_io.h"

namespace iradic::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(IRADIC_FIXTURE_DIR) + "/" + name;
}

inline Model load_fixture(const std::string& name) { return load_model(fixture_path(name)); }

}  // namespace iradic::testing
