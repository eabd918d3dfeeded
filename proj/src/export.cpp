#include "qes/export.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <unistd.h>

#include "json.hpp"
#include "qes/errors.hpp"

namespace qes::io {

namespace {

using nlohmann::json;

std::string number_text(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_number(std::string_view s) {
    std::string tmp(s);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size()) throw InvalidArgument("not a number: '" + tmp + "'");
    return v;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

const std::vector<std::string> construct_columns = {"x",      "V_minus", "V_plus", "W0",     "W1",    "W2",
                                                     "psi0_m", "psi1_m",  "psi2_m", "psi1_p", "psi2_p"};

Format parse_format(std::string_view text) {
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    throw InvalidArgument("unknown format '" + std::string(text) + "' (expected csv or json)");
}

const std::vector<double>& GridExport::column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return data[i];
    throw InvalidArgument("export has no column '" + std::string(name) + "'");
}

void GridExport::add_column(std::string name, std::vector<double> values) {
    if (!data.empty() && values.size() != rows()) throw InvalidArgument("column length mismatch for " + name);
    columns.push_back(std::move(name));
    data.push_back(std::move(values));
}

std::string to_csv(const GridExport& g) {
    std::ostringstream os;
    for (const auto& [k, v] : g.text) os << "# " << k << '=' << quote(v) << "\r\n";
    for (const auto& [k, v] : g.numbers) os << "# " << k << '=' << number_text(v) << "\r\n";
    os << "# energies=";
    for (std::size_t i = 0; i < g.energies.size(); ++i) os << (i ? ";" : "") << number_text(g.energies[i]);
    os << "\r\n";
    for (std::size_t c = 0; c < g.columns.size(); ++c) os << (c ? "," : "") << g.columns[c];
    os << "\r\n";
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.columns.size(); ++c) os << (c ? "," : "") << number_text(g.data[c][r]);
        os << "\r\n";
    }
    return os.str();
}

GridExport from_csv(std::string_view text) {
    GridExport g;
    std::istringstream is{std::string(text)};
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(1, eq - 1);
            key.erase(0, key.find_first_not_of(' '));
            const std::string value = line.substr(eq + 1);
            if (key == "energies") {
                for (const auto& part : split(value, ';'))
                    if (!part.empty()) g.energies.push_back(parse_number(part));
            } else if (!value.empty() && value[0] == '"') {
                g.text[key] = split(value, ',').front();
            } else {
                g.numbers[key] = parse_number(value);
            }
            continue;
        }
        const auto cells = split(line, ',');
        if (!header) {
            g.columns = cells;
            g.data.assign(cells.size(), {});
            header = true;
            continue;
        }
        if (cells.size() != g.columns.size()) throw InvalidArgument("ragged CSV row: " + line);
        for (std::size_t c = 0; c < cells.size(); ++c) g.data[c].push_back(parse_number(cells[c]));
    }
    if (!header) throw InvalidArgument("CSV export has no header row");
    return g;
}

std::string to_json(const GridExport& g) {
    json meta = json::object();
    for (const auto& [k, v] : g.text) meta[k] = v;
    for (const auto& [k, v] : g.numbers) meta[k] = v;
    meta["energies"] = g.energies;
    json data = json::object();
    for (std::size_t c = 0; c < g.columns.size(); ++c) {
        json arr = json::array();
        for (double v : g.data[c]) arr.push_back(std::isfinite(v) ? json(v) : json(nullptr));
        data[g.columns[c]] = std::move(arr);
    }
    json doc = {{"metadata", meta}, {"columns", g.columns}, {"data", data}};
    return doc.dump(1) + "\n";
}

GridExport from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed JSON export: ") + e.what());
    }
    GridExport g;
    for (const auto& [k, v] : doc.at("metadata").items()) {
        if (k == "energies") {
            g.energies = v.get<std::vector<double>>();
        } else if (v.is_string()) {
            g.text[k] = v.get<std::string>();
        } else if (v.is_number()) {
            g.numbers[k] = v.get<double>();
        }
    }
    for (const auto& name : doc.at("columns")) {
        std::vector<double> col;
        for (const auto& v : doc.at("data").at(name.get<std::string>()))
            col.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
        g.add_column(name.get<std::string>(), std::move(col));
    }
    return g;
}

void write_atomic(const std::filesystem::path& path, std::string_view contents) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    const fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        os.flush();
        if (!os) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error("cannot move export into " + path.string());
    }
}

void write_export(const std::filesystem::path& path, const GridExport& g, Format f) {
    write_atomic(path, f == Format::Csv ? to_csv(g) : to_json(g));
}

GridExport read_export(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InvalidArgument("cannot read " + path.string());
    std::stringstream ss;
    ss << is.rdbuf();
    const std::string text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return from_json(text);
    return from_csv(text);
}

}  // namespace qes::io
