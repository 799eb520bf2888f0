#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gt/errors.hpp"

namespace gt {

// Line-oriented reader shared by all text formats. Strips '#' comments and
// surrounding whitespace, skips blank lines, tracks position for messages.
class LineReader {
  public:
    LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++lineno_;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.resize(hash);
            size_t b = raw.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            size_t e = raw.find_last_not_of(" \t\r");
            out = raw.substr(b, e - b + 1);
            return true;
        }
        return false;
    }

    std::string where() const { return source_ + ":" + std::to_string(lineno_); }

  private:
    std::istream& in_;
    std::string source_;
    int lineno_ = 0;
};

inline std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline int parse_int(std::string_view tok, const std::string& where) {
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw parse_error(where + ": expected an integer, got '" + std::string(tok) + "'");
    return v;
}

inline long long parse_ll(std::string_view tok, const std::string& where) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw parse_error(where + ": expected an integer, got '" + std::string(tok) + "'");
    return v;
}

inline std::string read_file_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw parse_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace gt
