#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "infsup/qo/hierarchy.hpp"

namespace infsup {

/// Plain-text matrix bundle.
///
/// Sections (one keyword line each, followed by a dense matrix written as
/// "rows cols" and then rows*cols whitespace-separated row-major values):
///   GRAM_X, GRAM_Y, FORM, RHS (a column, n x 1),
///   SPACE k      level k of both X and Y,
///   SPACE_X k / SPACE_Y k   level k of X or Y separately.
/// Lines starting with '#' are comments. Levels must be numbered 0..L-1.
/// Malformed text throws InvalidInput, inconsistent shapes InvalidArgument.
SpaceHierarchy parse_bundle(std::string_view text);
SpaceHierarchy read_bundle(const std::filesystem::path& path);

/// Writes SPACE k when X and Y levels coincide, SPACE_X/SPACE_Y otherwise.
std::string format_bundle(const SpaceHierarchy& h);

}  // namespace infsup
