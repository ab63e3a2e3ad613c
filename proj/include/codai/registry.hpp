#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace codai::registry {

enum class MacroRegion { North, Centre, South };

const char* macro_region_name(MacroRegion region);
std::optional<MacroRegion> parse_macro_region(const std::string& text);

enum class SizeClass { Micro, Small, Medium, Large };

const char* size_class_name(SizeClass size_class);

// Micro < 10, Small 10-49, Medium 50-249, Large >= 250.
SizeClass classify_size(long long employees);

struct FirmRecord {
    std::string firm_id;
    std::string homepage_url;        // absolute, scheme http or https
    std::string nace_section;        // single letter A-U
    std::optional<long long> employees;
    std::optional<int> founding_year;
    std::string nuts3_code;
    std::string municipality_code;
    MacroRegion macro_region = MacroRegion::Centre;
    bool urban_pole = false;
    std::optional<double> wideband_share;  // in [0,1]
};

struct RejectedRow {
    std::size_t line_number = 0;
    std::string firm_id;
    std::string reason;
};

// Maps registry concepts to the input file's column names. Defaults match the
// documented registry layout.
struct ColumnSchema {
    std::string firm_id = "firm_id";
    std::string url = "url";
    std::string nace = "nace";
    std::string employees = "employees";
    std::string founding_year = "founding_year";
    std::string nuts3 = "nuts3";
    std::string municipality = "municipality";
    std::string macro_region = "macro_region";
    std::string urban_pole = "urban_pole";
};

struct LoadResult {
    std::vector<FirmRecord> firms;          // input order preserved
    std::vector<RejectedRow> rejects;
    std::vector<std::string> notes;         // normalizations applied, one per event
};

// Reads a delimiter-separated registry with a header row. Malformed rows land
// in `rejects` with a reason; a URL without a scheme is accepted with "http://"
// prefixed and a note recorded. Missing required columns raise ConfigError.
LoadResult load_firms(const std::string& path, const ColumnSchema& schema = {},
                      char delimiter = ',');

LoadResult load_firms_text(const std::string& text, const ColumnSchema& schema = {},
                           char delimiter = ',');

std::vector<std::string> serialize_header(const ColumnSchema& schema);
std::vector<std::string> serialize_firm(const FirmRecord& firm);

struct JoinReport {
    std::size_t matched = 0;
    std::size_t unmatched = 0;
};

// Coverage table: municipality_code -> share in [0,1]. Values outside [0,1]
// raise DataError naming the row. Firms without a match keep wideband_share
// absent. Only wideband_share is altered.
JoinReport join_wideband(std::vector<FirmRecord>& firms,
                         const std::map<std::string, double>& coverage);

// Reads the wide-band file (columns: municipality, share).
std::map<std::string, double> load_wideband(const std::string& path, char delimiter = ',');

}  // namespace codai::registry
