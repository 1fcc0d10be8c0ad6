#include "ddmag/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ddmag/errors.hpp"

namespace ddmag {

namespace {

void append_value(std::string& out, double value) {
    char buffer[64];
    const auto [end, ec] =
        std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
    out.append(buffer, end);
}

} // namespace

std::string to_csv(const SweepResult& result) {
    std::string out;
    for (const auto& [key, value] : result.metadata()) {
        out += "# " + key + ": " + value + "\n";
    }
    const auto& columns = result.columns();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += columns[i].label + "[" + columns[i].unit + "]";
    }
    out += '\n';
    for (const auto& row : result.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i != 0) {
                out += ',';
            }
            append_value(out, row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const SweepResult& result, const std::string& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError(path, std::string("cannot open for writing: ") + std::strerror(errno));
    }
    const std::string text = to_csv(result);
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    file.close();
    if (!file) {
        throw IoError(path, "write failed");
    }
}

std::vector<std::pair<std::string, std::string>> read_csv_config(const std::string& csv_text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(csv_text);
    std::string line;
    while (std::getline(in, line) && line.starts_with("# ")) {
        const auto colon = line.find(": ");
        if (colon == std::string::npos) {
            continue;
        }
        std::string key = line.substr(2, colon - 2);
        if (key == "revision" || key == "timestamp") {
            continue;
        }
        out.emplace_back(std::move(key), line.substr(colon + 2));
    }
    return out;
}

} // namespace ddmag
