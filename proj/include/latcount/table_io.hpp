#ifndef LATCOUNT_TABLE_IO_HPP
#define LATCOUNT_TABLE_IO_HPP

#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "latcount/errors.hpp"
#include "latcount/instance.hpp"
#include "latcount/primal.hpp"

namespace latcount {

namespace detail {

// Exponents and matrix entries are written as JSON integers while they fit
// in 64 bits and as decimal strings beyond that, so the round trip is
// always exact.
inline nlohmann::json int_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return v.convert_to<long long>();
    return v.str();
}

inline nlohmann::json vec_to_json(const IntVec& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Int& x : v) arr.push_back(int_to_json(x));
    return arr;
}

inline IntVec json_to_vec(const nlohmann::json& arr) {
    IntVec v;
    for (const auto& x : arr) v.push_back(json_to_int(x));
    return v;
}

inline nlohmann::json laurent_to_json(const LaurentSum& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : s.terms()) {
        nlohmann::json t;
        t["coef"] = format_rat(c);
        t["exp"] = vec_to_json(e);
        arr.push_back(t);
    }
    return arr;
}

inline LaurentSum json_to_laurent(const nlohmann::json& arr, std::size_t nvars) {
    LaurentSum s(nvars);
    for (const auto& t : arr) s.add_term(json_to_vec(t.at("exp")), parse_rat(t.at("coef")));
    return s;
}

inline nlohmann::json factors_to_json(const std::vector<GeometricFactor>& fs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const GeometricFactor& f : fs) {
        nlohmann::json j;
        j["exp"] = vec_to_json(f.exponent);
        j["mult"] = f.mult;
        arr.push_back(j);
    }
    return arr;
}

inline std::vector<GeometricFactor> json_to_factors(const nlohmann::json& arr) {
    std::vector<GeometricFactor> fs;
    for (const auto& j : arr)
        fs.push_back(GeometricFactor{json_to_vec(j.at("exp")), j.at("mult").get<unsigned>()});
    return fs;
}

} // namespace detail

inline std::string write_chamber_table(const ChamberTable& table) {
    nlohmann::json doc;
    doc["format"] = "latcount-chamber-table";
    doc["version"] = 1;
    doc["variant"] = variant_name(table.variant);
    nlohmann::json amat = nlohmann::json::array();
    for (std::size_t i = 0; i < table.a.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < table.a.cols(); ++j)
            row.push_back(detail::int_to_json(table.a.at(i, j)));
        amat.push_back(row);
    }
    doc["A"] = amat;
    doc["y"] = detail::vec_to_json(table.y_chamber);
    nlohmann::json bases = nlohmann::json::array();
    for (const ChamberTableBasis& tb : table.bases) {
        nlohmann::json jb;
        jb["sigma"] = tb.basis.sigma;
        jb["mu"] = tb.basis.mu.str();
        nlohmann::json entries = nlohmann::json::array();
        for (const ChamberTableEntry& e : tb.entries) {
            nlohmann::json je;
            je["xi"] = detail::vec_to_json(e.xi);
            je["r1"] = detail::laurent_to_json(e.r1);
            entries.push_back(je);
        }
        jb["entries"] = entries;
        jb["r2"] = detail::factors_to_json(tb.r2);
        bases.push_back(jb);
    }
    doc["bases"] = bases;
    return doc.dump(2) + "\n";
}

inline ChamberTable read_chamber_table(const std::string& text, const std::string& origin = "<table>") {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = detail::offset_to_line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                         ": " + e.what());
    }
    try {
        if (doc.at("format") != "latcount-chamber-table" || doc.at("version") != 1)
            throw ParseError(origin + ": not a version-1 chamber table document");

        ChamberTable table;
        std::string variant = doc.at("variant");
        if (variant == "full")
            table.variant = Variant::Full;
        else if (variant == "starred")
            table.variant = Variant::Starred;
        else
            throw ParseError(origin + ": unknown variant '" + variant + "'");

        const auto& amat = doc.at("A");
        std::size_t m = amat.size();
        std::size_t n = amat.at(0).size();
        table.a = IntMatrix(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                table.a.at(i, j) = detail::json_to_int(amat.at(i).at(j));
        table.y_chamber = detail::json_to_vec(doc.at("y"));

        for (const auto& jb : doc.at("bases")) {
            ChamberTableBasis tb;
            std::vector<int> sigma = jb.at("sigma").get<std::vector<int>>();
            IntMatrix sub = table.a.select_columns(sigma);
            Int det = determinant(sub);
            if (det == 0) throw ParseError(origin + ": stored sigma is not a basis");
            tb.basis.sigma = sigma;
            for (int k = 1; k <= static_cast<int>(n); ++k)
                if (std::find(sigma.begin(), sigma.end(), k) == sigma.end())
                    tb.basis.complement.push_back(k);
            tb.basis.a_sigma = sub;
            tb.basis.det = det;
            tb.basis.mu = det < 0 ? Int(-det) : det;
            tb.basis.adj = adjugate(sub);
            tb.basis.inv = inverse_rational(sub);
            if (Int(jb.at("mu").get<std::string>()) != tb.basis.mu)
                throw ParseError(origin + ": stored mu disagrees with the stored matrix");
            tb.group = quotient_group(tb.basis);
            for (const auto& je : jb.at("entries")) {
                ChamberTableEntry e;
                e.xi = detail::json_to_vec(je.at("xi"));
                e.r1 = detail::json_to_laurent(je.at("r1"), n);
                tb.entries.push_back(std::move(e));
            }
            if (Int(tb.entries.size()) != tb.basis.mu)
                throw ParseError(origin + ": entry count differs from mu");
            tb.r2 = detail::json_to_factors(jb.at("r2"));
            table.bases.push_back(std::move(tb));
        }
        return table;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

inline void save_chamber_table(const ChamberTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write table file '" + path + "'");
    out << write_chamber_table(table);
}

inline ChamberTable load_chamber_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open table file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_chamber_table(buf.str(), path);
}

} // namespace latcount

#endif
