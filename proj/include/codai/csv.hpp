#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace codai::csv {

// One parsed row, addressable by header name or position.
class Row {
public:
    Row(const std::vector<std::string>* header, std::vector<std::string> cells, std::size_t line_no);

    const std::string& at(const std::string& column) const;
    std::optional<std::string> get(const std::string& column) const;
    const std::vector<std::string>& cells() const { return cells_; }
    std::size_t line_number() const { return line_no_; }

private:
    const std::vector<std::string>* header_;
    std::vector<std::string> cells_;
    std::size_t line_no_;
};

class Table {
public:
    Table() = default;
    Table(std::vector<std::string> header, char delimiter);

    const std::vector<std::string>& header() const { return header_; }
    bool has_column(const std::string& name) const;
    const std::vector<Row>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }

    void add_row(std::vector<std::string> cells, std::size_t line_no);

private:
    std::vector<std::string> header_;
    std::vector<Row> rows_;
    char delimiter_ = ',';
};

// Parses a delimiter-separated file with a mandatory header row. Cells may be
// quoted with '"'; embedded quotes are doubled. Throws IoError if unreadable.
Table read_file(const std::string& path, char delimiter = ',');
Table read_string(const std::string& text, char delimiter = ',');

// Serialization helpers. Quote only when the cell needs it so output stays diffable.
std::string escape_cell(const std::string& cell, char delimiter);
std::string join_row(const std::vector<std::string>& cells, char delimiter);

class Writer {
public:
    Writer(std::string path, std::vector<std::string> header, char delimiter = ',');
    ~Writer();
    Writer(const Writer&) = delete;
    Writer& operator=(const Writer&) = delete;

    void write_row(const std::vector<std::string>& cells);
    void close();

private:
    std::string path_;
    std::string buffer_;
    std::size_t columns_;
    char delimiter_;
    bool closed_ = false;
};

// Fixed-format numeric cell helpers; all output goes through these so files are
// byte-stable across runs and platforms.
std::string format_double(double v, int decimals = 6);
std::string format_int(long long v);

}  // namespace codai::csv
