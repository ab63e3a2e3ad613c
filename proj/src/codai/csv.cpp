#include "codai/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "codai/errors.hpp"

namespace codai::csv {

namespace {

std::vector<std::string> split_record(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell.push_back(c);
            }
        } else if (c == '"' && cell.empty()) {
            quoted = true;
        } else if (c == delimiter) {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell.push_back(c);
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

Row::Row(const std::vector<std::string>* header, std::vector<std::string> cells, std::size_t line_no)
    : header_(header), cells_(std::move(cells)), line_no_(line_no) {}

const std::string& Row::at(const std::string& column) const {
    auto it = std::find(header_->begin(), header_->end(), column);
    if (it == header_->end()) {
        throw ConfigError("missing required column: " + column);
    }
    auto idx = static_cast<std::size_t>(it - header_->begin());
    if (idx >= cells_.size()) {
        static const std::string empty;
        return empty;
    }
    return cells_[idx];
}

std::optional<std::string> Row::get(const std::string& column) const {
    auto it = std::find(header_->begin(), header_->end(), column);
    if (it == header_->end()) return std::nullopt;
    auto idx = static_cast<std::size_t>(it - header_->begin());
    if (idx >= cells_.size()) return std::nullopt;
    return cells_[idx];
}

Table::Table(std::vector<std::string> header, char delimiter)
    : header_(std::move(header)), delimiter_(delimiter) {}

bool Table::has_column(const std::string& name) const {
    return std::find(header_.begin(), header_.end(), name) != header_.end();
}

void Table::add_row(std::vector<std::string> cells, std::size_t line_no) {
    rows_.emplace_back(&header_, std::move(cells), line_no);
}

Table read_string(const std::string& text, char delimiter) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("empty input: no header row");
    }
    Table table(split_record(strip_cr(line), delimiter), delimiter);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        table.add_row(split_record(line, delimiter), line_no);
    }
    return table;
}

Table read_file(const std::string& path, char delimiter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_string(buf.str(), delimiter);
}

std::string escape_cell(const std::string& cell, char delimiter) {
    bool needs_quotes = cell.find(delimiter) != std::string::npos ||
                        cell.find('"') != std::string::npos ||
                        cell.find('\n') != std::string::npos;
    if (!needs_quotes) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string join_row(const std::vector<std::string>& cells, char delimiter) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out.push_back(delimiter);
        out += escape_cell(cells[i], delimiter);
    }
    return out;
}

Writer::Writer(std::string path, std::vector<std::string> header, char delimiter)
    : path_(std::move(path)), columns_(header.size()), delimiter_(delimiter) {
    buffer_ = join_row(header, delimiter_);
    buffer_.push_back('\n');
}

void Writer::write_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) {
        throw DataError("row width " + std::to_string(cells.size()) + " does not match header width " +
                        std::to_string(columns_) + " in " + path_);
    }
    buffer_ += join_row(cells, delimiter_);
    buffer_.push_back('\n');
}

void Writer::close() {
    if (closed_) return;
    closed_ = true;
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write file: " + path_);
    }
    out.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    if (!out) {
        throw IoError("short write: " + path_);
    }
}

Writer::~Writer() {
    try {
        close();
    } catch (...) {
        // destructor must not throw; callers wanting the error call close()
    }
}

std::string format_double(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    // normalize "-0.000000" to "0.000000"
    std::string s(buf);
    bool all_zero = s[0] == '-';
    for (std::size_t i = 1; all_zero && i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '.') all_zero = false;
    }
    if (all_zero) s.erase(0, 1);
    return s;
}

std::string format_int(long long v) {
    return std::to_string(v);
}

}  // namespace codai::csv
