#ifndef LATCOUNT_INSTANCE_HPP
#define LATCOUNT_INSTANCE_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "latcount/errors.hpp"
#include "latcount/matrix.hpp"
#include "latcount/numeric.hpp"

namespace latcount {

struct Instance {
    IntMatrix a;
    std::string name;
};

namespace detail {

inline std::pair<int, int> offset_to_line_col(const std::string& text, std::size_t offset) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// Entries are JSON integers; strings are accepted as well so that values
// beyond 64 bits stay exact.
inline Int json_to_int(const nlohmann::json& v) {
    if (v.is_number_integer()) return Int(v.get<long long>());
    if (v.is_number_unsigned()) return Int(v.get<unsigned long long>());
    if (v.is_string()) {
        try {
            return Int(v.get<std::string>());
        } catch (const std::runtime_error&) {
            throw ParseError("malformed integer string '" + v.get<std::string>() + "'");
        }
    }
    throw ParseError("matrix entries must be integers (number or decimal string)");
}

} // namespace detail

inline Instance parse_instance_text(const std::string& text, const std::string& origin = "<input>") {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = detail::offset_to_line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                         ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("A") || !doc["A"].is_array() || doc["A"].empty())
        throw ParseError(origin + ": expected an object with a non-empty \"A\" array of rows");

    const auto& rows = doc["A"];
    std::size_t m = rows.size();
    if (!rows[0].is_array() || rows[0].empty())
        throw ParseError(origin + ": rows of \"A\" must be non-empty arrays");
    std::size_t n = rows[0].size();

    IntMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            throw ParseError(origin + ": row " + std::to_string(i + 1) +
                             " has a different length");
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) = detail::json_to_int(rows[i][j]);
    }
    if (n < m || rank(a) < m)
        throw RankError(origin + ": matrix does not have maximal row rank");

    Instance inst;
    inst.a = std::move(a);
    if (doc.contains("name") && doc["name"].is_string()) inst.name = doc["name"].get<std::string>();
    return inst;
}

inline Instance parse_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open instance file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str(), path);
}

} // namespace latcount

#endif
