#pragma once

// Small structural JSON-Schema checker covering the subset used by the
// shipped schemas: type, enum, properties, required, items, minItems,
// maxItems, additionalProperties, oneOf, $ref into #/definitions.

#include <string>

#include <nlohmann/json.hpp>

namespace npspec_test {

using nlohmann::json;

class SchemaChecker {
public:
    explicit SchemaChecker(json schema) : root_(std::move(schema)) {}

    bool validate(const json& value, std::string* why = nullptr) const {
        std::string reason;
        const bool ok = check(root_, value, "$", reason);
        if (!ok && why) *why = reason;
        return ok;
    }

private:
    json root_;

    const json& resolve(const json& node) const {
        if (node.contains("$ref")) {
            const std::string ref = node.at("$ref").get<std::string>();
            const std::string prefix = "#/definitions/";
            if (ref.rfind(prefix, 0) == 0)
                return root_.at("definitions").at(ref.substr(prefix.size()));
        }
        return node;
    }

    static bool type_matches(const std::string& t, const json& v) {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "number") return v.is_number();
        if (t == "integer") return v.is_number_integer();
        if (t == "boolean") return v.is_boolean();
        if (t == "null") return v.is_null();
        return false;
    }

    bool check(const json& schema_in, const json& v, const std::string& path,
               std::string& reason) const {
        const json& schema = resolve(schema_in);

        if (schema.contains("oneOf")) {
            for (const auto& alt : schema.at("oneOf")) {
                std::string sub;
                if (check(alt, v, path, sub)) return true;
            }
            reason = path + ": no oneOf alternative matched";
            return false;
        }
        if (schema.contains("enum")) {
            for (const auto& e : schema.at("enum"))
                if (e == v) return true;
            reason = path + ": value not in enum";
            return false;
        }
        if (schema.contains("type")) {
            if (!type_matches(schema.at("type").get<std::string>(), v)) {
                reason = path + ": expected type " +
                         schema.at("type").get<std::string>();
                return false;
            }
        }
        if (v.is_object()) {
            if (schema.contains("required"))
                for (const auto& key : schema.at("required"))
                    if (!v.contains(key.get<std::string>())) {
                        reason = path + ": missing required key " +
                                 key.get<std::string>();
                        return false;
                    }
            const json props = schema.value("properties", json::object());
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (props.contains(it.key())) {
                    if (!check(props.at(it.key()), it.value(),
                               path + "." + it.key(), reason))
                        return false;
                } else if (schema.contains("additionalProperties") &&
                           schema.at("additionalProperties").is_object()) {
                    if (!check(schema.at("additionalProperties"), it.value(),
                               path + "." + it.key(), reason))
                        return false;
                }
            }
        }
        if (v.is_array()) {
            if (schema.contains("minItems") &&
                v.size() < schema.at("minItems").get<std::size_t>()) {
                reason = path + ": too few items";
                return false;
            }
            if (schema.contains("maxItems") &&
                v.size() > schema.at("maxItems").get<std::size_t>()) {
                reason = path + ": too many items";
                return false;
            }
            if (schema.contains("items")) {
                for (std::size_t i = 0; i < v.size(); ++i)
                    if (!check(schema.at("items"), v[i],
                               path + "[" + std::to_string(i) + "]", reason))
                        return false;
            }
        }
        return true;
    }
};

} // namespace npspec_test
