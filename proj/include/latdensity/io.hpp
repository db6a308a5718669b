#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "latdensity/errors.hpp"
#include "latdensity/matrix.hpp"

namespace latd {

// Matrix text format: first line "rows cols", then one line per row of
// space-separated integers.
inline IntMatrix parse_matrix_stream(std::istream& in, const std::string& origin) {
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            bool blank = true;
            for (const char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
            if (!blank) return true;
        }
        return false;
    };
    if (!next_line()) throw parse_error(origin + ": missing header line \"rows cols\"", lineno);
    int rows = 0, cols = 0;
    {
        std::istringstream hs(line);
        if (!(hs >> rows >> cols) || rows < 0 || cols < 0)
            throw parse_error(origin + ": malformed header, expected \"rows cols\"", lineno);
        std::string extra;
        if (hs >> extra) throw parse_error(origin + ": trailing tokens after header", lineno);
    }
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!next_line()) throw parse_error(origin + ": expected " + std::to_string(rows) + " rows", lineno);
        std::istringstream rs(line);
        for (int j = 0; j < cols; ++j) {
            std::string tok;
            if (!(rs >> tok))
                throw parse_error(origin + ": row " + std::to_string(i + 1) + " has fewer than " +
                                      std::to_string(cols) + " entries",
                                  lineno, j + 1);
            try {
                m(i, j) = Int(tok);
            } catch (const std::exception&) {
                throw parse_error(origin + ": invalid integer '" + tok + "'", lineno, j + 1);
            }
        }
        std::string extra;
        if (rs >> extra) throw parse_error(origin + ": row " + std::to_string(i + 1) + " has extra entries", lineno);
    }
    return m;
}

inline IntMatrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open file");
    return parse_matrix_stream(in, path);
}

// Inline form: rows separated by ';', entries by whitespace, e.g. "2 3; 1 0".
inline IntMatrix parse_matrix_inline(const std::string& text) {
    std::vector<std::vector<Int>> rows;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t stop = text.find(';', start);
        const std::string chunk = text.substr(start, stop == std::string::npos ? std::string::npos : stop - start);
        std::istringstream rs(chunk);
        std::vector<Int> row;
        std::string tok;
        while (rs >> tok) {
            try {
                row.emplace_back(tok);
            } catch (const std::exception&) {
                throw parse_error("inline matrix: invalid integer '" + tok + "'", 1,
                                  static_cast<int>(rows.size()) + 1);
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
        if (stop == std::string::npos) break;
        start = stop + 1;
    }
    if (rows.empty()) throw parse_error("inline matrix: no entries");
    const std::size_t cols = rows.front().size();
    for (const auto& row : rows)
        if (row.size() != cols) throw parse_error("inline matrix: ragged rows");
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
}

inline std::string format_matrix(const IntMatrix& m) {
    std::ostringstream os;
    os << m.rows() << ' ' << m.cols() << '\n' << m.str();
    return os.str();
}

// Radii grid "start..stop..step" (inclusive) or a single integer.
inline std::vector<std::int64_t> parse_radii(const std::string& text) {
    const auto first = text.find("..");
    if (first == std::string::npos) {
        try {
            const std::int64_t r = std::stoll(text);
            if (r < 0) throw parse_error("radii: negative radius");
            return {r};
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception&) {
            throw parse_error("radii: expected INT or START..STOP..STEP, got '" + text + "'");
        }
    }
    const auto second = text.find("..", first + 2);
    if (second == std::string::npos)
        throw parse_error("radii: expected START..STOP..STEP, got '" + text + "'");
    try {
        const std::int64_t start = std::stoll(text.substr(0, first));
        const std::int64_t stop = std::stoll(text.substr(first + 2, second - first - 2));
        const std::int64_t step = std::stoll(text.substr(second + 2));
        if (step <= 0 || stop < start || start < 0)
            throw parse_error("radii: need 0 <= START <= STOP and STEP > 0");
        std::vector<std::int64_t> out;
        for (std::int64_t r = start; r <= stop; r += step) out.push_back(r);
        return out;
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("radii: expected START..STOP..STEP, got '" + text + "'");
    }
}

} // namespace latd
