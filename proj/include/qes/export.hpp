#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qes::io {

enum class Format { Csv, Json };

// Throws InvalidArgument for anything other than "csv" or "json".
Format parse_format(std::string_view text);

// Column-oriented grid with a flat metadata header.
struct GridExport {
    std::map<std::string, std::string> text;     // e.g. tool, version, command, generator
    std::map<std::string, double> numbers;       // e.g. eps0, eps1, period
    std::vector<double> energies;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;       // data[column][row]

    std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
    const std::vector<double>& column(std::string_view name) const;
    void add_column(std::string name, std::vector<double> values);
};

extern const std::vector<std::string> construct_columns;

std::string to_csv(const GridExport& g);
std::string to_json(const GridExport& g);
GridExport from_csv(std::string_view text);
GridExport from_json(std::string_view text);

// Writes through a temporary file in the target directory and renames it into place.
void write_atomic(const std::filesystem::path& path, std::string_view contents);
void write_export(const std::filesystem::path& path, const GridExport& g, Format f);
GridExport read_export(const std::filesystem::path& path);

}  // namespace qes::io
