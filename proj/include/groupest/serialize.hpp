#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "groupest/bayes.hpp"
#include "groupest/cost.hpp"
#include "groupest/cyclic.hpp"
#include "groupest/protocols.hpp"
#include "groupest/su2.hpp"

namespace groupest {

// JSON label keys: twice_j for SU(2), the residue k for Z_M.
inline int label_json_value(Su2::Label l) { return l.twice_j; }
inline int label_json_value(Cyclic::Label l) { return l.k; }
inline Su2::Label label_from_json_value(const Su2&, int v) { return Su2::Label{v}; }
inline Cyclic::Label label_from_json_value(const Cyclic&, int v) { return Cyclic::Label{v}; }

/// CostSpec wire format: {"constant": real, "coeffs": {"<twice_j or k>": real}}.
template <class Label>
nlohmann::json cost_spec_to_json(const CostSpec<Label>& spec) {
    nlohmann::json coeffs = nlohmann::json::object();
    for (const auto& [l, a] : spec.coeffs) coeffs[std::to_string(label_json_value(l))] = a;
    return nlohmann::json{{"constant", spec.constant}, {"coeffs", coeffs}};
}

template <group_model G>
CostSpec<typename G::Label> cost_spec_from_json(const G& g, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("constant") || !j["constant"].is_number())
        throw std::invalid_argument("cost spec JSON: expected {\"constant\": real, ...}");
    CostSpec<typename G::Label> spec;
    spec.constant = j["constant"].get<double>();
    if (j.contains("coeffs")) {
        if (!j["coeffs"].is_object())
            throw std::invalid_argument("cost spec JSON: \"coeffs\" must be an object");
        for (const auto& [key, value] : j["coeffs"].items()) {
            if (!value.is_number())
                throw std::invalid_argument("cost spec JSON: coefficient at \"" + key +
                                            "\" is not a number");
            int raw = 0;
            try {
                std::size_t pos = 0;
                raw = std::stoi(key, &pos);
                if (pos != key.size()) throw std::invalid_argument(key);
            } catch (const std::exception&) {
                throw std::invalid_argument("cost spec JSON: bad label key \"" + key + "\"");
            }
            spec.coeffs[label_from_json_value(g, raw)] = value.template get<double>();
        }
    }
    return spec;
}

template <class Label>
nlohmann::json estimation_result_to_json(const EstimationResult<Label>& r) {
    nlohmann::json labels = nlohmann::json::array();
    nlohmann::json values = nlohmann::json::array();
    for (std::size_t i = 0; i < r.coefficients.set.size(); ++i) {
        labels.push_back(label_json_value(r.coefficients.set.labels[i]));
        values.push_back(r.coefficients.values[static_cast<Eigen::Index>(i)]);
    }
    nlohmann::json out{{"labels", labels},
                       {"coefficients", values},
                       {"min_cost", r.min_cost},
                       {"matrix_cost", r.matrix_cost},
                       {"quadrature_cost", r.quadrature_cost},
                       {"diagnostics", r.diagnostics}};
    out["fidelity"] = r.fidelity ? nlohmann::json(*r.fidelity) : nlohmann::json(nullptr);
    return out;
}

template <class Label>
nlohmann::json protocol_report_to_json(const ProtocolReport<Label>& p) {
    return nlohmann::json{{"N", p.n},
                          {"result", estimation_result_to_json(p.result)},
                          {"asymptote", p.asymptote},
                          {"ratio", p.ratio}};
}

}  // namespace groupest
