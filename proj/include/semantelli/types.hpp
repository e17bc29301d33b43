#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace semantelli {

enum class Vertical { Web, Image, News };

std::string_view to_string(Vertical v) noexcept;
/// Accepts "web", "image"/"images", "news". Throws Error{InvalidArgument}.
Vertical parse_vertical(std::string_view text);

using Timestamp = std::chrono::sys_seconds;

/// Parses "YYYY-MM-DDTHH:MM:SS" with an optional fractional part and a
/// trailing "Z" or "+HH:MM"/"-HH:MM" offset. Returns nullopt on malformed
/// input.
std::optional<Timestamp> parse_timestamp(std::string_view text);
/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(Timestamp t);

}  // namespace semantelli
