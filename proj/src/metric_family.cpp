#include "covgrav/metric_family.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "covgrav/curvature.hpp"

namespace covgrav {

using nlohmann::json;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& err) {
        throw std::runtime_error("malformed JSON in '" + path + "': " + err.what());
    }
    return j;
}

std::array<std::string, 4> read_coordinates(const json& j) {
    if (!j.contains("coordinates")) throw std::runtime_error("missing \"coordinates\" array");
    auto arr = j.at("coordinates");
    if (!arr.is_array() || arr.size() != 4) throw std::runtime_error("\"coordinates\" must list exactly 4 names");
    std::array<std::string, 4> names;
    for (int i = 0; i < 4; ++i) names[i] = arr.at(i).get<std::string>();
    return names;
}

std::map<std::string, double> read_parameters(const json& j) {
    std::map<std::string, double> params;
    if (j.contains("parameters"))
        for (auto& [k, v] : j.at("parameters").items()) params[k] = v.get<double>();
    return params;
}

void validate_identifiers(const ExprNode& e, const std::array<std::string, 4>& coords,
                          const std::map<std::string, double>& params, const std::string& where) {
    std::set<std::string> ids;
    collect_identifiers(e, ids);
    for (const auto& id : ids) {
        bool known = params.count(id) > 0;
        for (const auto& c : coords) known = known || c == id;
        if (!known)
            throw std::runtime_error("identifier '" + id + "' in " + where +
                                     " resolves to neither a coordinate nor a parameter");
    }
}

}  // namespace

MetricFamily parse_metric_family(const std::string& json_text) {
    json j = json::parse(json_text);
    MetricFamily fam;
    fam.name = j.value("name", "unnamed");
    fam.coord_names = read_coordinates(j);
    fam.parameters = read_parameters(j);

    if (!j.contains("components")) throw std::runtime_error("missing \"components\" object");
    const auto& comp = j.at("components");
    std::array<bool, kNumPairs> seen{};
    for (auto& [key, val] : comp.items()) {
        if (key.size() != 3 || key[0] != 'g' || !std::isdigit((unsigned char)key[1]) ||
            !std::isdigit((unsigned char)key[2]))
            throw std::runtime_error("component key '" + key + "' is not of the form g<a><b>");
        int a = key[1] - '0', b = key[2] - '0';
        if (a > 3 || b > 3) throw std::runtime_error("component key '" + key + "' has an index above 3");
        if (a > b)
            throw std::runtime_error("component key '" + key + "' is unordered; use g" + std::to_string(b) +
                                     std::to_string(a));
        const int idx = pair_index(a, b);
        if (seen[idx]) throw std::runtime_error("duplicate component key '" + key + "'");
        seen[idx] = true;
        try {
            fam.components[idx] = parse_expression(val.get<std::string>());
        } catch (const ParseError& err) {
            throw std::runtime_error("component " + key + ": " + err.what());
        }
        validate_identifiers(*fam.components[idx], fam.coord_names, fam.parameters, "component " + key);
    }
    for (int i = 0; i < kNumPairs; ++i)
        if (!seen[i])
            throw std::runtime_error("missing component g" + std::to_string(kPairList[i][0]) +
                                     std::to_string(kPairList[i][1]) + " (implicit zeros are not accepted)");

    if (j.contains("em_field")) {
        for (auto& [key, val] : j.at("em_field").items()) {
            if (key.size() != 3 || key[0] != 'F' || !std::isdigit((unsigned char)key[1]) ||
                !std::isdigit((unsigned char)key[2]))
                throw std::runtime_error("em_field key '" + key + "' is not of the form F<a><b>");
            int a = key[1] - '0', b = key[2] - '0';
            if (a > 3 || b > 3 || a >= b)
                throw std::runtime_error("em_field key '" + key + "' must have strictly increasing indices");
            fam.em_components[key] = parse_expression(val.get<std::string>());
            validate_identifiers(*fam.em_components[key], fam.coord_names, fam.parameters, "em_field " + key);
        }
    }
    return fam;
}

MetricFamily load_metric_family(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_metric_family(buf.str());
    } catch (const std::exception& err) {
        throw std::runtime_error(path + ": " + err.what());
    }
}

VectorFieldFamily parse_vector_field(const std::string& json_text) {
    json j = json::parse(json_text);
    VectorFieldFamily vf;
    vf.name = j.value("name", "unnamed");
    if (j.contains("coordinates")) vf.coord_names = read_coordinates(j);
    vf.parameters = read_parameters(j);
    if (!j.contains("components")) throw std::runtime_error("missing \"components\" object");
    const auto& comp = j.at("components");
    std::array<bool, 4> seen{};
    for (auto& [key, val] : comp.items()) {
        if (key.size() != 2 || key[0] != 'f' || key[1] < '0' || key[1] > '3')
            throw std::runtime_error("vector component key '" + key + "' is not of the form f<mu>");
        int mu = key[1] - '0';
        seen[mu] = true;
        vf.components[mu] = parse_expression(val.get<std::string>());
    }
    for (int mu = 0; mu < 4; ++mu)
        if (!seen[mu]) throw std::runtime_error("missing vector component f" + std::to_string(mu));
    return vf;
}

VectorFieldFamily load_vector_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_vector_field(buf.str());
    } catch (const std::exception& err) {
        throw std::runtime_error(path + ": " + err.what());
    }
}

TaylorJet evaluate_component(const ExprNode& expr, const std::array<std::string, 4>& coord_names,
                             const std::map<std::string, double>& parameters,
                             const std::array<double, 4>& point, int order) {
    EvalContext<TaylorJet> ctx;
    ctx.coord_names = coord_names;
    ctx.parameters = &parameters;
    for (int i = 0; i < 4; ++i) ctx.coords[i] = TaylorJet::variable(i, point[i], order);
    TaylorJet jet = eval_expression(expr, ctx);
    for (int k = 0; k < jet.size(); ++k)
        if (!std::isfinite(jet.coeff(k)))
            throw EvalError("expression leaves its analytic domain at the requested point");
    return jet;
}

void check_signature(const std::array<double, kNumPairs>& g) {
    // eigenvalue count of the symmetric 4x4 via its characteristic polynomial
    // is overkill; a cyclic Jacobi sweep converges in a handful of rotations.
    double m[4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) m[a][b] = g[pair_index(a, b)];
    for (int sweep = 0; sweep < 32; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += m[p][q] * m[p][q];
        if (off < 1e-24) break;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) {
                if (std::abs(m[p][q]) < 1e-18) continue;
                const double theta = 0.5 * std::atan2(2.0 * m[p][q], m[q][q] - m[p][p]);
                const double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < 4; ++k) {
                    const double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
    }
    int neg = 0, pos = 0;
    for (int k = 0; k < 4; ++k) {
        if (m[k][k] < 0.0) ++neg;
        if (m[k][k] > 0.0) ++pos;
    }
    if (neg != 1 || pos != 3)
        throw SignatureError("metric signature is not (-+++): " + std::to_string(neg) + " negative, " +
                             std::to_string(pos) + " positive eigenvalues");
}

MetricJet prolong_family(const MetricFamily& fam, const std::array<double, 4>& point, int order) {
    if (order != 3 && order != 4) throw std::invalid_argument("prolongation order must be 3 or 4");
    MetricJet jet;
    jet.order = 3;
    jet.x = point;
    for (int ab = 0; ab < kNumPairs; ++ab) {
        TaylorJet t = evaluate_component(*fam.components[ab], fam.coord_names, fam.parameters, point, order);
        jet.g[ab] = t.value();
        for (int mu = 0; mu < 4; ++mu) {
            std::array<int, 4> e{};
            e[mu] = 1;
            jet.dg[ab][mu] = t.partial(e);
        }
        for (int mn = 0; mn < kNumPairs; ++mn) {
            std::array<int, 4> e{};
            e[kPairList[mn][0]] += 1;
            e[kPairList[mn][1]] += 1;
            jet.d2g[ab][mn] = t.partial(e);
        }
        for (int tr = 0; tr < kNumTriples; ++tr) {
            std::array<int, 4> e{};
            e[kTripleList[tr][0]] += 1;
            e[kTripleList[tr][1]] += 1;
            e[kTripleList[tr][2]] += 1;
            jet.d3g[ab][tr] = t.partial(e);
        }
    }
    check_signature(jet.g);
    metric_algebra(jet.g);  // rejects singular metrics
    return jet;
}

JetDataT<TaylorJet> prolong_family_jets(const MetricFamily& fam, const std::array<double, 4>& point,
                                        int jet_order) {
    const int eval_order = jet_order + 2;  // enough slack for second derivatives of the section
    if (eval_order > kMaxJetOrder)
        throw std::invalid_argument("requested jet order exceeds the supported truncation order");
    JetDataT<TaylorJet> jet;
    jet.order = 2;
    for (int mu = 0; mu < 4; ++mu) jet.x[mu] = TaylorJet::variable(mu, point[mu], jet_order);
    for (int ab = 0; ab < kNumPairs; ++ab) {
        TaylorJet t = evaluate_component(*fam.components[ab], fam.coord_names, fam.parameters, point, eval_order);
        jet.g[ab] = t.truncated(jet_order);
        for (int mu = 0; mu < 4; ++mu) jet.dg[ab][mu] = t.derivative(mu).truncated(jet_order);
        for (int mn = 0; mn < kNumPairs; ++mn)
            jet.d2g[ab][mn] = t.derivative(kPairList[mn][0]).derivative(kPairList[mn][1]).truncated(jet_order);
        for (int tr = 0; tr < kNumTriples; ++tr) jet.d3g[ab][tr] = TaylorJet::constant(0.0, jet_order);
    }
    check_signature([&] {
        std::array<double, kNumPairs> g{};
        for (int ab = 0; ab < kNumPairs; ++ab) g[ab] = jet.g[ab].value();
        return g;
    }());
    return jet;
}

std::array<std::array<double, 4>, 4> em_field_at(const MetricFamily& fam, const std::array<double, 4>& point) {
    std::array<std::array<double, 4>, 4> F{};
    for (const auto& [key, expr] : fam.em_components) {
        int a = key[1] - '0', b = key[2] - '0';
        double v = evaluate_component(*expr, fam.coord_names, fam.parameters, point, 0).value();
        F[a][b] = v;
        F[b][a] = -v;
    }
    return F;
}

}  // namespace covgrav
