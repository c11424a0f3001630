#include "barytree/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "barytree/errors.hpp"

namespace barytree {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvWriter::set_meta(const std::string& key, const std::string& value) {
    meta_[key] = value;
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size())
        throw InternalConsistencyError("CsvWriter: cell count does not match header");
    lines_.push_back({false, {}, cells});
}

void CsvWriter::add_comment(const std::string& text) {
    lines_.push_back({true, text, {}});
}

void CsvWriter::write(std::ostream& os) const {
    for (const auto& [k, v] : meta_) os << "# " << k << ": " << v << "\n";
    for (std::size_t i = 0; i < columns_.size(); i++)
        os << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
    for (const Line& l : lines_) {
        if (l.comment) {
            os << "# " << l.text << "\n";
            continue;
        }
        for (std::size_t i = 0; i < l.cells.size(); i++)
            os << l.cells[i] << (i + 1 < l.cells.size() ? "," : "\n");
    }
}

std::string CsvWriter::to_string() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

} // namespace barytree
