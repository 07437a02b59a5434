#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "inellipse/min_ecc.hpp"
#include "inellipse/verify.hpp"

namespace inellipse {

using ordered_json = nlohmann::ordered_json;

struct QuadDocument {
    Quadrilateral quad;
    std::optional<std::string> label;
};

// Throws InputError on schema violations or invalid geometry.
QuadDocument parse_quad_document(const std::string& text);

ordered_json quad_json(const Quadrilateral& q);
ordered_json classification_json(const QuadClassification& c);
ordered_json ellipse_json(const InscribedEllipseReport& rep);
ordered_json min_ecc_json(const MinEccResult& res);
ordered_json check_report_json(const CheckReport& cr);

// Proportional integer coefficients when each is within 1e-9 of a rational
// with denominator <= 1e6 (e.g. the normalized golden conic -> 33,-148,...).
std::optional<std::array<long long, 6>> integer_form(const Conic& c);

// Serializer emitting every number with 17 significant digits; key order is
// preserved (schema-stable, byte-deterministic).
std::string dump_json17(const ordered_json& j, int indent = 2);

}  // namespace inellipse
