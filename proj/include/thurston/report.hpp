#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace thurston {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form of a double; used everywhere a number is
/// written so that identical runs produce identical bytes.
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// CSV writer with a "# key=value" provenance header.
class CsvWriter {
public:
    CsvWriter(const std::string& schema, const std::vector<std::pair<std::string, std::string>>& params,
              const std::vector<std::string>& columns) {
        lines_.push_back("# schema=" + schema);
        for (const auto& [k, v] : params) lines_.push_back("# " + k + "=" + v);
        std::string head;
        for (size_t i = 0; i < columns.size(); ++i) {
            if (i) head += ',';
            head += columns[i];
        }
        lines_.push_back(head);
        width_ = columns.size();
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != width_) throw std::logic_error("CsvWriter: column count mismatch");
        std::string line;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            line += cells[i];
        }
        lines_.push_back(line);
    }

    std::string text() const {
        std::string out;
        for (const std::string& l : lines_) { out += l; out += '\n'; }
        return out;
    }

    void save(const std::string& path) const {
        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        file << text();
    }

private:
    std::vector<std::string> lines_;
    size_t width_ = 0;
};

} // namespace thurston
