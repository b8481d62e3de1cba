#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "laxfact/ordcat.hpp"

namespace laxfact {

// Parses the category description format:
//   {"objects":[names], "morphisms":[{"name","dom","cod"}], "identities":{obj:name},
//    "compose":[[g,f,gf]...], "leq":[[f,g]...]}
// Syntax and name-resolution errors throw FormatError with the offending line.
// Law violations and table gaps are left for validate_category.
CategoryData parse_category(std::string_view text);
CategoryData read_category_file(const std::filesystem::path& path);

// Loads and builds with order closure.
FinOrdCategory load_category(const std::filesystem::path& path);

// Emits the same format, morphisms in canonical (dom, cod, index) order, with
// two-space indentation and one array entry per line.
std::string export_category(const FinOrdCategory& cat);

}  // namespace laxfact
