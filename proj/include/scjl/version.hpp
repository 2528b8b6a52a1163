#pragma once

namespace scjl {

inline constexpr const char* kVersion = "0.1.0";

}
