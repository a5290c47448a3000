#pragma once

#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dualcurv/bodies.hpp"
#include "dualcurv/polytope_v.hpp"

namespace dualcurv {

using ParsedBody = std::variant<SymmetricBody, GeneralPolytopeV>;

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end()) throw ParseError(std::string("missing field `") + field + "`");
    return *it;
}

inline double number_field(const nlohmann::json& j, const char* field) {
    const nlohmann::json& v = require_field(j, field);
    if (!v.is_number()) throw ParseError(std::string("field `") + field + "` must be a number");
    return v.get<double>();
}

inline int int_field(const nlohmann::json& j, const char* field) {
    const nlohmann::json& v = require_field(j, field);
    if (!v.is_number_integer()) {
        throw ParseError(std::string("field `") + field + "` must be an integer");
    }
    return v.get<int>();
}

inline std::vector<Vec> vector_rows(const nlohmann::json& j, const char* field) {
    const nlohmann::json& rows = require_field(j, field);
    if (!rows.is_array() || rows.empty()) {
        throw ParseError(std::string("field `") + field + "` must be a non-empty array of rows");
    }
    std::vector<Vec> out;
    out.reserve(rows.size());
    size_t width = 0;
    for (const auto& row : rows) {
        if (!row.is_array() || row.empty()) {
            throw ParseError(std::string("field `") + field + "`: each row must be a non-empty array");
        }
        if (width == 0) width = row.size();
        if (row.size() != width) {
            throw ParseError(std::string("field `") + field + "`: rows have inconsistent lengths");
        }
        if (width > static_cast<size_t>(kMaxDim)) {
            throw ParseError(std::string("field `") + field + "`: dimension exceeds " +
                             std::to_string(kMaxDim));
        }
        Vec v(static_cast<int>(width));
        for (size_t i = 0; i < width; ++i) {
            if (!row[i].is_number()) {
                throw ParseError(std::string("field `") + field + "`: entries must be numbers");
            }
            v[static_cast<int>(i)] = row[i].get<double>();
        }
        out.push_back(v);
    }
    return out;
}

inline void cross_check_dim(const nlohmann::json& j, int inferred) {
    for (const char* key : {"dim", "n"}) {
        if (j.contains(key)) {
            if (!j[key].is_number_integer()) {
                throw ParseError(std::string("field `") + key + "` must be an integer");
            }
            if (j[key].get<int>() != inferred) {
                throw ParseError(std::string("field `") + key + "` disagrees with inferred dimension " +
                                 std::to_string(inferred));
            }
        }
    }
}

}  // namespace detail

// Body specification document: an object with a `type` discriminator
// (`ball`, `ellipsoid`, `polytope_h`, `cylinder`, `polytope_v`) and the
// representation's fields. Dimensions are inferred from the data and
// cross-checked against any explicit `dim`/`n` key.
inline ParsedBody parse_body_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("body specification must be a JSON object");
    const nlohmann::json& type = detail::require_field(j, "type");
    if (!type.is_string()) throw ParseError("field `type` must be a string");
    const std::string kind = type.get<std::string>();
    try {
        if (kind == "ball") {
            double radius = detail::number_field(j, "radius");
            int dim = detail::int_field(j, "dim");
            return SymmetricBody::ball(radius, dim);
        }
        if (kind == "ellipsoid") {
            std::vector<Vec> rows = detail::vector_rows(j, "matrix");
            const int n = static_cast<int>(rows.size());
            if (rows.front().size() != n) throw ParseError("field `matrix` must be square");
            Mat quad(n, n);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) quad.at(r, c) = rows[static_cast<size_t>(r)][c];
            }
            detail::cross_check_dim(j, n);
            return SymmetricBody::ellipsoid(quad);
        }
        if (kind == "polytope_h") {
            std::vector<Vec> normals = detail::vector_rows(j, "normals");
            const nlohmann::json& off = detail::require_field(j, "offsets");
            if (!off.is_array() || off.size() != normals.size()) {
                throw ParseError("field `offsets` must list one value per normal row");
            }
            std::vector<double> offsets;
            offsets.reserve(off.size());
            for (const auto& v : off) {
                if (!v.is_number()) throw ParseError("field `offsets`: entries must be numbers");
                offsets.push_back(v.get<double>());
            }
            detail::cross_check_dim(j, normals.front().size());
            return SymmetricBody::polytope_h(normals, offsets);
        }
        if (kind == "cylinder") {
            double r = detail::number_field(j, "r");
            int k = detail::int_field(j, "k");
            int n = detail::int_field(j, "n");
            SymmetricBody body = SymmetricBody::cylinder(r, k, n);
            if (j.contains("scale")) body = body.scaled(detail::number_field(j, "scale"));
            return body;
        }
        if (kind == "polytope_v") {
            std::vector<Vec> vertices = detail::vector_rows(j, "vertices");
            detail::cross_check_dim(j, vertices.front().size());
            return make_polytope_v(std::move(vertices));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("invalid `") + kind + "` body: " + e.what());
    }
    throw ParseError("field `type`: unknown body type `" + kind + "`");
}

inline ParsedBody parse_body_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open body file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed JSON in " + path + ": " + e.what());
    }
    return parse_body_json(j);
}

inline nlohmann::ordered_json body_to_json(const SymmetricBody& body) {
    nlohmann::ordered_json j;
    std::visit(
        [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Ball>) {
                j["type"] = "ball";
                j["dim"] = b.dim;
                j["radius"] = b.radius;
            } else if constexpr (std::is_same_v<T, EllipsoidBody>) {
                j["type"] = "ellipsoid";
                auto rows = nlohmann::ordered_json::array();
                for (int r = 0; r < b.dim; ++r) {
                    auto row = nlohmann::ordered_json::array();
                    for (int c = 0; c < b.dim; ++c) row.push_back(b.quad.at(r, c));
                    rows.push_back(row);
                }
                j["matrix"] = rows;
            } else if constexpr (std::is_same_v<T, PolytopeHBody>) {
                j["type"] = "polytope_h";
                auto rows = nlohmann::ordered_json::array();
                auto offs = nlohmann::ordered_json::array();
                for (size_t i = 0; i < b.normals.size(); ++i) {
                    auto row = nlohmann::ordered_json::array();
                    for (int c = 0; c < b.dim; ++c) row.push_back(b.normals[i][c]);
                    rows.push_back(row);
                    offs.push_back(b.offsets[i]);
                }
                j["normals"] = rows;
                j["offsets"] = offs;
            } else {
                j["type"] = "cylinder";
                j["n"] = b.dim;
                j["k"] = b.k;
                j["r"] = b.r;
                // A dilated cylinder has a non-unit cross section, which the
                // radius field alone cannot express.
                if (b.scale != 1.0) j["scale"] = b.scale;
            }
        },
        body.variant());
    return j;
}

inline nlohmann::ordered_json body_to_json(const GeneralPolytopeV& body) {
    nlohmann::ordered_json j;
    j["type"] = "polytope_v";
    auto rows = nlohmann::ordered_json::array();
    for (const Vec& v : body.vertices) {
        auto row = nlohmann::ordered_json::array();
        for (int c = 0; c < body.dim; ++c) row.push_back(v[c]);
        rows.push_back(row);
    }
    j["vertices"] = rows;
    return j;
}

}  // namespace dualcurv
