#include "zdense/schema.hpp"

#include "zdense/errors.hpp"
#include "zdense/embedded_schemas.hpp"

#include <regex>

namespace zdense {

namespace {

bool type_matches(const std::string& type, const json& v) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "boolean") return v.is_boolean();
    if (type == "integer") return v.is_number_integer();
    if (type == "number") return v.is_number();
    if (type == "null") return v.is_null();
    return false;
}

void check(const json& schema, const json& v, const std::string& path,
           std::vector<std::string>& out) {
    auto at = [&](const std::string& msg) { out.push_back((path.empty() ? "/" : path) + ": " + msg); };

    if (auto it = schema.find("type"); it != schema.end()) {
        bool ok = false;
        if (it->is_string()) {
            ok = type_matches(it->get<std::string>(), v);
        } else {
            for (const auto& t : *it) ok = ok || type_matches(t.get<std::string>(), v);
        }
        if (!ok) {
            at("expected type " + it->dump());
            return;
        }
    }
    if (auto it = schema.find("enum"); it != schema.end()) {
        bool found = false;
        for (const auto& e : *it) found = found || e == v;
        if (!found) at("value " + v.dump() + " not in " + it->dump());
    }
    if (auto it = schema.find("const"); it != schema.end() && *it != v) {
        at("expected " + it->dump());
    }
    if (v.is_number()) {
        if (auto it = schema.find("minimum"); it != schema.end() && v.get<double>() < it->get<double>())
            at("below minimum " + it->dump());
        if (auto it = schema.find("maximum"); it != schema.end() && v.get<double>() > it->get<double>())
            at("above maximum " + it->dump());
    }
    if (v.is_string()) {
        if (auto it = schema.find("pattern"); it != schema.end()) {
            if (!std::regex_search(v.get<std::string>(), std::regex(it->get<std::string>())))
                at("does not match pattern " + it->dump());
        }
    }
    if (v.is_object()) {
        const json empty = json::object();
        const json& props = schema.contains("properties") ? schema["properties"] : empty;
        if (auto it = schema.find("required"); it != schema.end()) {
            for (const auto& key : *it)
                if (!v.contains(key.get<std::string>())) at("missing required property " + key.dump());
        }
        for (const auto& [key, value] : v.items()) {
            if (props.contains(key)) {
                check(props[key], value, path + "/" + key, out);
            } else if (auto ap = schema.find("additionalProperties"); ap != schema.end()) {
                if (ap->is_boolean()) {
                    if (!ap->get<bool>()) at("unexpected property \"" + key + "\"");
                } else {
                    check(*ap, value, path + "/" + key, out);
                }
            }
        }
    }
    if (v.is_array()) {
        if (auto it = schema.find("minItems"); it != schema.end() && v.size() < it->get<std::size_t>())
            at("fewer than " + it->dump() + " items");
        if (auto it = schema.find("maxItems"); it != schema.end() && v.size() > it->get<std::size_t>())
            at("more than " + it->dump() + " items");
        std::size_t first = 0;
        if (auto it = schema.find("prefixItems"); it != schema.end()) {
            for (; first < it->size() && first < v.size(); ++first)
                check((*it)[first], v[first], path + "/" + std::to_string(first), out);
        }
        if (auto it = schema.find("items"); it != schema.end()) {
            for (std::size_t i = first; i < v.size(); ++i)
                check(*it, v[i], path + "/" + std::to_string(i), out);
        }
    }
}

}  // namespace

std::vector<std::string> schema_violations(const json& schema, const json& doc) {
    std::vector<std::string> out;
    check(schema, doc, "", out);
    return out;
}

void validate_against_schema(const json& schema, const json& doc, const std::string& what) {
    auto errors = schema_violations(schema, doc);
    if (errors.empty()) return;
    std::string msg = what + " fails schema validation:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw SchemaError(msg);
}

const json& group_spec_schema() {
    static const json schema = json::parse(embedded::group_spec_schema);
    return schema;
}

const json& generator_set_schema() {
    static const json schema = json::parse(embedded::generator_set_schema);
    return schema;
}

}  // namespace zdense
