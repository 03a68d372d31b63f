#pragma once

#include <string>
#include <string_view>

namespace quarkonia {

/// Fixed 12-significant-digit rendering used by every exported document.
/// NaN renders as an empty field.
std::string format_number(double value);

/// `value` rounded to the 12 significant digits that format_number() emits.
double round_to_exported(double value);

/// Writes `contents` to `path`, replacing it. Throws InputError on I/O failure.
void write_text_file(const std::string& path, std::string_view contents);
std::string read_text_file(const std::string& path);

}  // namespace quarkonia
