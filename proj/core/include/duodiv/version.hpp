#pragma once

#define DUODIV_VERSION_MAJOR 0
#define DUODIV_VERSION_MINOR 1
#define DUODIV_VERSION_PATCH 0

namespace duodiv {

inline constexpr const char* version_string = "0.1.0";

}  // namespace duodiv
