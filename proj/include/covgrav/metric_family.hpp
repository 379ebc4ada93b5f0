#pragma once

// Families of Lorentz metrics given by closed-form component expressions over
// the 4 base coordinates and named real parameters, loaded from JSON:
//   {"name": ..., "coordinates": [4 strings],
//    "components": {"g00": "expr", ..., "g33": "expr"},   // ordered keys only
//    "parameters": {...},
//    "em_field": {"F01": "expr", ...}}                     // optional
// Vector fields use the same schema with components f0..f3. Evaluation always
// goes through Taylor jets; order-0 jets provide plain values.

#include <array>
#include <map>
#include <optional>
#include <string>

#include "covgrav/expr.hpp"
#include "covgrav/jet_data.hpp"

namespace covgrav {

struct MetricFamily {
    std::string name;
    std::array<std::string, 4> coord_names;
    std::array<ExprPtr, kNumPairs> components;  // indexed by pair_index
    std::map<std::string, double> parameters;
    // optional electromagnetic block: expressions for F_{mu nu}, mu < nu
    std::map<std::string, ExprPtr> em_components;  // keys "F01".."F23"

    bool has_em_field() const { return !em_components.empty(); }
};

struct VectorFieldFamily {
    std::string name;
    std::array<std::string, 4> coord_names;  // may be empty; inherits the metric's
    std::array<ExprPtr, 4> components;
    std::map<std::string, double> parameters;
};

MetricFamily load_metric_family(const std::string& path);
MetricFamily parse_metric_family(const std::string& json_text);
VectorFieldFamily load_vector_field(const std::string& path);
VectorFieldFamily parse_vector_field(const std::string& json_text);

// Evaluates one component expression as a Taylor jet about `point`.
TaylorJet evaluate_component(const ExprNode& expr, const std::array<std::string, 4>& coord_names,
                             const std::map<std::string, double>& parameters,
                             const std::array<double, 4>& point, int order);

// Prolongs the family to a metric 3-jet (or checks at order 4) at `point`;
// validates invertibility and the (-+++) signature.
MetricJet prolong_family(const MetricFamily& fam, const std::array<double, 4>& point, int order = 3);

// Same data with each entry an order-`jet_order` Taylor jet in x, for
// divergence-style checks that differentiate downstream quantities in the
// base coordinates.
JetDataT<TaylorJet> prolong_family_jets(const MetricFamily& fam, const std::array<double, 4>& point,
                                        int jet_order);

// antisymmetric F_{mu nu} values at a point (zero when no block is present)
std::array<std::array<double, 4>, 4> em_field_at(const MetricFamily& fam, const std::array<double, 4>& point);

void check_signature(const std::array<double, kNumPairs>& g);

}  // namespace covgrav
