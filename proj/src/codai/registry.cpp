#include "codai/registry.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "codai/csv.hpp"
#include "codai/errors.hpp"
#include "codai/url.hpp"

namespace codai::registry {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

std::optional<long long> parse_integer(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) return std::nullopt;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
    return value;
}

std::optional<double> parse_real(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) return std::nullopt;
    try {
        std::size_t consumed = 0;
        double value = std::stod(t, &consumed);
        if (consumed != t.size()) return std::nullopt;
        return value;
    } catch (...) {
        return std::nullopt;
    }
}

void require_columns(const csv::Table& table, const ColumnSchema& schema) {
    for (const std::string& name :
         {schema.firm_id, schema.url, schema.nace, schema.employees, schema.founding_year,
          schema.nuts3, schema.municipality, schema.macro_region, schema.urban_pole}) {
        if (!table.has_column(name)) {
            throw ConfigError("registry file is missing required column: " + name);
        }
    }
}

}  // namespace

const char* macro_region_name(MacroRegion region) {
    switch (region) {
        case MacroRegion::North: return "North";
        case MacroRegion::Centre: return "Centre";
        case MacroRegion::South: return "South";
    }
    return "?";
}

std::optional<MacroRegion> parse_macro_region(const std::string& text) {
    std::string t = trim(text);
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (t == "north") return MacroRegion::North;
    if (t == "centre" || t == "center") return MacroRegion::Centre;
    if (t == "south") return MacroRegion::South;
    return std::nullopt;
}

const char* size_class_name(SizeClass size_class) {
    switch (size_class) {
        case SizeClass::Micro: return "Micro";
        case SizeClass::Small: return "Small";
        case SizeClass::Medium: return "Medium";
        case SizeClass::Large: return "Large";
    }
    return "?";
}

SizeClass classify_size(long long employees) {
    if (employees < 10) return SizeClass::Micro;
    if (employees < 50) return SizeClass::Small;
    if (employees < 250) return SizeClass::Medium;
    return SizeClass::Large;
}

LoadResult load_firms_text(const std::string& text, const ColumnSchema& schema, char delimiter) {
    csv::Table table = csv::read_string(text, delimiter);
    require_columns(table, schema);

    LoadResult out;
    for (const csv::Row& row : table.rows()) {
        FirmRecord firm;
        firm.firm_id = trim(row.at(schema.firm_id));
        if (firm.firm_id.empty()) {
            out.rejects.push_back({row.line_number(), "", "empty firm_id"});
            continue;
        }

        std::string raw_url = trim(row.at(schema.url));
        if (raw_url.empty()) {
            out.rejects.push_back({row.line_number(), firm.firm_id, "empty url"});
            continue;
        }
        std::string scheme = url::scheme_of(raw_url);
        if (scheme.empty()) {
            raw_url = "http://" + raw_url;
            out.notes.push_back(firm.firm_id + ": url had no scheme, defaulted to http://");
        } else if (scheme != "http" && scheme != "https") {
            out.rejects.push_back({row.line_number(), firm.firm_id,
                                   "unsupported url scheme: " + scheme});
            continue;
        }
        if (!url::parse(raw_url)) {
            out.rejects.push_back({row.line_number(), firm.firm_id, "unparsable url"});
            continue;
        }
        firm.homepage_url = raw_url;

        firm.nace_section = trim(row.at(schema.nace));
        if (firm.nace_section.size() != 1 || firm.nace_section[0] < 'A' ||
            firm.nace_section[0] > 'U') {
            out.rejects.push_back({row.line_number(), firm.firm_id,
                                   "nace section not a letter A-U: " + firm.nace_section});
            continue;
        }

        std::string employees_cell = trim(row.at(schema.employees));
        if (!employees_cell.empty()) {
            auto employees = parse_integer(employees_cell);
            if (!employees || *employees < 0) {
                out.rejects.push_back({row.line_number(), firm.firm_id, "non-numeric employees"});
                continue;
            }
            firm.employees = employees;
        }

        std::string year_cell = trim(row.at(schema.founding_year));
        if (!year_cell.empty()) {
            auto year = parse_integer(year_cell);
            if (!year || *year < 1000 || *year > 3000) {
                out.rejects.push_back({row.line_number(), firm.firm_id, "invalid founding_year"});
                continue;
            }
            firm.founding_year = static_cast<int>(*year);
        }

        firm.nuts3_code = trim(row.at(schema.nuts3));
        firm.municipality_code = trim(row.at(schema.municipality));

        auto region = parse_macro_region(row.at(schema.macro_region));
        if (!region) {
            out.rejects.push_back({row.line_number(), firm.firm_id,
                                   "unknown macro_region: " + row.at(schema.macro_region)});
            continue;
        }
        firm.macro_region = *region;

        std::string pole = trim(row.at(schema.urban_pole));
        if (pole == "1") {
            firm.urban_pole = true;
        } else if (pole == "0" || pole.empty()) {
            firm.urban_pole = false;
        } else {
            out.rejects.push_back({row.line_number(), firm.firm_id,
                                   "urban_pole must be 0 or 1: " + pole});
            continue;
        }

        out.firms.push_back(std::move(firm));
    }
    return out;
}

LoadResult load_firms(const std::string& path, const ColumnSchema& schema, char delimiter) {
    std::string contents;
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw IoError("cannot open file: " + path);
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) contents.append(buf, got);
    std::fclose(f);
    return load_firms_text(contents, schema, delimiter);
}

std::vector<std::string> serialize_header(const ColumnSchema& schema) {
    return {schema.firm_id, schema.url, schema.nace, schema.employees, schema.founding_year,
            schema.nuts3, schema.municipality, schema.macro_region, schema.urban_pole};
}

std::vector<std::string> serialize_firm(const FirmRecord& firm) {
    return {
        firm.firm_id,
        firm.homepage_url,
        firm.nace_section,
        firm.employees ? std::to_string(*firm.employees) : "",
        firm.founding_year ? std::to_string(*firm.founding_year) : "",
        firm.nuts3_code,
        firm.municipality_code,
        macro_region_name(firm.macro_region),
        firm.urban_pole ? "1" : "0",
    };
}

JoinReport join_wideband(std::vector<FirmRecord>& firms,
                         const std::map<std::string, double>& coverage) {
    for (const auto& [municipality, share] : coverage) {
        if (share < 0.0 || share > 1.0) {
            throw DataError("wide-band share outside [0,1] for municipality " + municipality +
                            ": " + std::to_string(share));
        }
    }
    JoinReport report;
    for (FirmRecord& firm : firms) {
        auto it = coverage.find(firm.municipality_code);
        if (it == coverage.end()) {
            ++report.unmatched;
        } else {
            firm.wideband_share = it->second;
            ++report.matched;
        }
    }
    return report;
}

std::map<std::string, double> load_wideband(const std::string& path, char delimiter) {
    csv::Table table = csv::read_file(path, delimiter);
    if (!table.has_column("municipality") || !table.has_column("share")) {
        throw ConfigError("wide-band file needs columns: municipality, share");
    }
    std::map<std::string, double> coverage;
    for (const csv::Row& row : table.rows()) {
        auto share = parse_real(row.at("share"));
        if (!share) {
            throw DataError("non-numeric wide-band share at line " +
                            std::to_string(row.line_number()));
        }
        coverage[trim(row.at("municipality"))] = *share;
    }
    return coverage;
}

}  // namespace codai::registry
