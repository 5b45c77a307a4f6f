#pragma once

#include <span>
#include <utility>

namespace nialg {

// (file name, contents) of the variety definitions compiled into the library.
std::span<const std::pair<const char*, const char*>> builtin_variety_files();

}  // namespace nialg
