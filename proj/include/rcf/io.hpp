#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rcf {

// %.17g, with non-finite values spelled `nan`, `inf`, `-inf`.
std::string format_double(double value);

double parse_double(std::string_view text);

std::vector<std::string_view> split_csv_line(std::string_view line);

void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace rcf
