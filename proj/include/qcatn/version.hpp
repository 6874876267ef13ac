#pragma once

namespace qcatn {
inline constexpr const char* kVersion = "0.1.0";
}
