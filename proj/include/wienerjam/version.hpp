#pragma once

namespace wienerjam {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace wienerjam
