#include <cstdio>
#include <string>

#include "json.hpp"
#include "twofold/errors.hpp"
#include "twofold/integrator.hpp"

namespace twofold {

namespace {

Polynomial3 parse_polynomial(const nlohmann::json& table, const std::string& where) {
    Polynomial3 poly;
    if (!table.is_object()) {
        throw SpecParseError(where + ": expected an object of \"i,j,k\" keys");
    }
    for (const auto& [key, value] : table.items()) {
        Polynomial3::Term term;
        int fields = std::sscanf(key.c_str(), "%d,%d,%d", &term.px, &term.py, &term.pz);
        if (fields != 3) {
            throw SpecParseError(where + ": bad exponent key \"" + key + "\"");
        }
        if (!value.is_number()) {
            throw SpecParseError(where + ": coefficient of \"" + key + "\" must be a number");
        }
        term.coef = value.get<double>();
        poly.terms.push_back(term);
    }
    return poly;
}

FieldPerturbation parse_perturbation(const nlohmann::json& obj, const std::string& where) {
    FieldPerturbation pert;
    if (!obj.is_object()) throw SpecParseError(where + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (key == "f1") {
            pert.f1 = parse_polynomial(value, where + ".f1");
        } else if (key == "f2") {
            pert.f2 = parse_polynomial(value, where + ".f2");
        } else if (key == "f3") {
            pert.f3 = parse_polynomial(value, where + ".f3");
        } else {
            throw SpecParseError(where + ": unknown key \"" + key + "\"");
        }
    }
    return pert;
}

double require_number(const nlohmann::json& root, const char* key) {
    if (!root.contains(key) || !root[key].is_number()) {
        throw SpecParseError(std::string("field spec: missing numeric key \"") + key + "\"");
    }
    return root[key].get<double>();
}

}  // namespace

FieldSpec parse_field_spec(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SpecParseError(std::string("field spec: ") + e.what());
    }
    if (!root.is_object()) throw SpecParseError("field spec: expected a JSON object");

    FieldSpec spec;
    spec.base.c_x = require_number(root, "c_x");
    spec.base.c_y = require_number(root, "c_y");
    spec.base.c_xy = require_number(root, "c_xy");
    spec.base.c_yx = require_number(root, "c_yx");
    if (root.contains("perturb_x")) {
        spec.perturb_x = parse_perturbation(root["perturb_x"], "perturb_x");
    }
    if (root.contains("perturb_y")) {
        spec.perturb_y = parse_perturbation(root["perturb_y"], "perturb_y");
    }
    validate_spec(spec);
    return spec;
}

}  // namespace twofold
