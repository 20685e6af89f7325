#include "wellspec/errors.hpp"
#include "wellspec/model.hpp"

#include <json.hpp>

#include <string>

namespace wellspec {

namespace {

using nlohmann::json;

struct ScaleField {
    const char* name;
    std::optional<double> PhysicalScales::*member;
};

constexpr ScaleField optional_fields[] = {
    {"omega1", &PhysicalScales::omega1},
    {"omega2", &PhysicalScales::omega2},
    {"alpha1", &PhysicalScales::alpha1},
    {"alpha2", &PhysicalScales::alpha2},
    {"delta_strength", &PhysicalScales::delta_strength},
    {"delta_position", &PhysicalScales::delta_position},
};

FamilyTag tag_field(const json& obj, const char* field, FamilyTag fallback) {
    if (!obj.contains(field)) {
        return fallback;
    }
    const auto& v = obj.at(field);
    if (!v.is_string()) {
        throw ParameterError(std::string("family: field '") + field + "' must be a string");
    }
    const auto tag = parse_tag(v.get<std::string>());
    if (!tag) {
        throw ParameterError(std::string("family: field '") + field + "' has unknown value '" +
                             v.get<std::string>() + "'");
    }
    return *tag;
}

double number_field(const json& obj, const std::string& field) {
    const auto& v = obj.at(field);
    if (!v.is_number()) {
        throw ParameterError("family: field 'scales." + field + "' must be a number");
    }
    return v.get<double>();
}

} // namespace

std::string to_json(const PotentialFamily& family) {
    json scales = json::object();
    scales["hbar"] = family.scales.hbar;
    scales["mass"] = family.scales.mass;
    for (const auto& f : optional_fields) {
        if (const auto& v = family.scales.*f.member; v) {
            scales[f.name] = *v;
        }
    }
    json out = json::object();
    out["tag"] = std::string(tag_name(family.tag));
    if (family.tag == FamilyTag::delta_decorated) {
        out["base"] = std::string(tag_name(family.base));
    }
    out["scales"] = scales;
    return out.dump();
}

PotentialFamily family_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParameterError(std::string("family: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParameterError("family: expected a JSON object");
    }
    if (!doc.contains("tag")) {
        throw ParameterError("family: missing field 'tag'");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "tag" && key != "base" && key != "scales") {
            throw ParameterError("family: unknown field '" + key + "'");
        }
    }
    const FamilyTag tag = tag_field(doc, "tag", FamilyTag::ho);
    const FamilyTag base = tag_field(doc, "base", FamilyTag::ho);
    PotentialFamily family = default_family(tag, base);
    if (doc.contains("scales")) {
        const auto& scales = doc.at("scales");
        if (!scales.is_object()) {
            throw ParameterError("family: field 'scales' must be an object");
        }
        for (const auto& [key, value] : scales.items()) {
            (void)value;
            if (key == "hbar") {
                family.scales.hbar = number_field(scales, key);
                continue;
            }
            if (key == "mass") {
                family.scales.mass = number_field(scales, key);
                continue;
            }
            bool known = false;
            for (const auto& f : optional_fields) {
                if (key == f.name) {
                    family.scales.*f.member = number_field(scales, key);
                    known = true;
                }
            }
            if (!known) {
                throw ParameterError("family: unknown field 'scales." + key + "'");
            }
        }
    }
    family.validate();
    return family;
}

} // namespace wellspec
