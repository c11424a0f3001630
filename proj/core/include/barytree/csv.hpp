#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace barytree {

// Canonical number formatting shared by every CLI artifact; outputs must be
// byte-identical across runs for a fixed config and seed.
std::string format_double(double v);

// CSV with '#'-prefixed metadata lines, then a header row, then records.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> columns);

    void set_meta(const std::string& key, const std::string& value);
    void add_row(const std::vector<std::string>& cells);
    void add_comment(const std::string& text);

    void write(std::ostream& os) const;
    std::string to_string() const;

  private:
    std::vector<std::string> columns_;
    std::map<std::string, std::string> meta_;
    struct Line {
        bool comment;
        std::string text;
        std::vector<std::string> cells;
    };
    std::vector<Line> lines_;
};

} // namespace barytree
