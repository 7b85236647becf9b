#include "opspace/serialization.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace opspace {

namespace {

SpaceKind kind_from_name(const std::string& name) {
    if (name == "column") return SpaceKind::column;
    if (name == "row") return SpaceKind::row;
    if (name == "hnk") return SpaceKind::hnk;
    if (name == "phi") return SpaceKind::phi;
    if (name == "intersection") return SpaceKind::intersection;
    if (name == "custom") return SpaceKind::custom;
    throw std::invalid_argument("unknown space kind: " + name);
}

int require_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
        throw std::invalid_argument(std::string("missing integer field: ") + key);
    }
    return j[key].get<int>();
}

} // namespace

std::string double_to_string(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc()) throw std::runtime_error("double formatting failed");
    return std::string(buf, res.ptr);
}

json matrix_to_json(const ComplexMatrix& m) {
    json data = json::array();
    for (const cplx& z : m.data()) {
        data.push_back(json::array({z.real(), z.imag()}));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("matrix: expected an object");
    const int rows = require_int(j, "rows");
    const int cols = require_int(j, "cols");
    if (rows < 1 || cols < 1) throw std::invalid_argument("matrix: non-positive shape");
    if (!j.contains("data") || !j["data"].is_array()) {
        throw std::invalid_argument("matrix: missing data array");
    }
    const json& data = j["data"];
    if (data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw std::invalid_argument("matrix: data length does not match rows*cols");
    }
    ComplexMatrix m(rows, cols);
    for (std::size_t t = 0; t < data.size(); ++t) {
        const json& entry = data[t];
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number()) {
            throw std::invalid_argument("matrix: entry " + std::to_string(t) +
                                        " is not a [re, im] pair");
        }
        m.data()[t] = cplx(entry[0].get<double>(), entry[1].get<double>());
    }
    ensure_finite(m, "matrix from json");
    return m;
}

json element_to_json(const Element& e) {
    json out = json::array();
    for (const auto& b : e.blocks) out.push_back(matrix_to_json(b));
    return out;
}

Element element_from_json(const json& j) {
    if (j.is_object()) return Element(matrix_from_json(j));
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("element: expected a matrix object or non-empty array");
    }
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(j.size());
    for (const json& item : j) blocks.push_back(matrix_from_json(item));
    return Element(std::move(blocks));
}

json basis_to_json(const OperatorBasis& basis) {
    json components = json::array();
    for (const auto& c : basis.components) {
        components.push_back(json{{"rows", c.rows}, {"cols", c.cols}});
    }
    json elements = json::array();
    for (const auto& e : basis.basis) elements.push_back(element_to_json(e));
    return json{{"schema", schema_tag},
                {"type", "basis"},
                {"name", basis.name},
                {"kind", space_kind_name(basis.kind)},
                {"n", basis.n},
                {"k", basis.k},
                {"components", std::move(components)},
                {"basis", std::move(elements)}};
}

OperatorBasis basis_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("basis: expected an object");
    if (j.contains("schema") && j["schema"] != schema_tag) {
        throw std::invalid_argument("basis: unsupported schema");
    }
    OperatorBasis basis;
    if (j.contains("name")) basis.name = j["name"].get<std::string>();
    if (j.contains("kind")) basis.kind = kind_from_name(j["kind"].get<std::string>());
    basis.n = require_int(j, "n");
    basis.k = j.contains("k") ? require_int(j, "k") : 0;
    if (!j.contains("basis") || !j["basis"].is_array() || j["basis"].empty()) {
        throw std::invalid_argument("basis: missing element array");
    }
    for (const json& item : j["basis"]) basis.basis.push_back(element_from_json(item));

    const std::size_t comps = basis.basis.front().components();
    for (const auto& e : basis.basis) {
        if (e.components() != comps) {
            throw std::invalid_argument("basis: elements have mixed component counts");
        }
        for (std::size_t c = 0; c < comps; ++c) {
            if (e.blocks[c].rows() != basis.basis.front().blocks[c].rows() ||
                e.blocks[c].cols() != basis.basis.front().blocks[c].cols()) {
                throw std::invalid_argument("basis: elements have mixed component shapes");
            }
        }
    }
    for (std::size_t c = 0; c < comps; ++c) {
        basis.components.push_back(ComponentShape{basis.basis.front().blocks[c].rows(),
                                                  basis.basis.front().blocks[c].cols()});
    }
    if (j.contains("components")) {
        const json& shapes = j["components"];
        if (!shapes.is_array() || shapes.size() != comps) {
            throw std::invalid_argument("basis: component list does not match elements");
        }
        for (std::size_t c = 0; c < comps; ++c) {
            if (require_int(shapes[c], "rows") != basis.components[c].rows ||
                require_int(shapes[c], "cols") != basis.components[c].cols) {
                throw std::invalid_argument("basis: declared shapes do not match elements");
            }
        }
    }
    return basis;
}

std::vector<Element> family_from_json(const json& j) {
    if (j.is_object() && j.contains("basis")) {
        return basis_from_json(j).basis;
    }
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("family: expected a basis object or non-empty array");
    }
    std::vector<Element> family;
    family.reserve(j.size());
    for (const json& item : j) family.push_back(element_from_json(item));
    return family;
}

json invariants_to_json(const FamilyInvariants& inv) {
    return json{{"n", inv.n}, {"i_r", inv.i_r}, {"i_l", inv.i_l}};
}

json tro_report_to_json(const TroReport& report) {
    return json{{"zero_products", report.zero_products},
                {"scalar_products", report.scalar_products},
                {"mixed_products", report.mixed_products},
                {"verdict", tro_verdict_name(report.verdict)}};
}

json classification_to_json(const ClassificationReport& report) {
    return json{{"schema", schema_tag},
                {"type", "classification"},
                {"n", report.n},
                {"invariants", invariants_to_json(report.invariants)},
                {"components", report.components},
                {"verdict", report.verdict},
                {"degenerate", report.degenerate}};
}

json estimate_to_json(const CbEstimate& est) {
    json out{{"forward_lower", est.forward_lower},
             {"inverse_lower", est.inverse_lower},
             {"product_lower", est.product_lower}};
    if (est.closed_form) {
        out["closed_form"] = *est.closed_form;
    } else {
        out["closed_form"] = nullptr;
    }
    out["witnesses"] = est.witness_description;
    return out;
}

json distance_table_to_json(const DistanceTable& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json r{{"space_a", row.space_a}, {"space_b", row.space_b}};
        r.update(estimate_to_json(row.estimate));
        r["divergent"] = row.divergent;
        rows.push_back(std::move(r));
    }
    return json{
        {"schema", schema_tag}, {"type", "distance_table"}, {"n", table.n}, {"rows", rows}};
}

namespace {

std::string estimate_row(const std::string& pair, int n, const CbEstimate& est) {
    std::string out = pair + "," + std::to_string(n) + "," +
                      double_to_string(est.forward_lower) + "," +
                      double_to_string(est.inverse_lower) + "," +
                      double_to_string(est.product_lower) + ",";
    if (est.closed_form) out += double_to_string(*est.closed_form);
    return out;
}

} // namespace

std::string estimate_to_csv(const std::string& pair, int n, const CbEstimate& est) {
    return "pair,n,forward_lower,inverse_lower,product_lower,closed_form\n" +
           estimate_row(pair, n, est) + "\n";
}

std::string distance_table_to_csv(const DistanceTable& table) {
    std::string out = "pair,n,forward_lower,inverse_lower,product_lower,closed_form,divergent\n";
    for (const auto& row : table.rows) {
        out += estimate_row(row.space_a + ":" + row.space_b, table.n, row.estimate);
        out += row.divergent ? ",true\n" : ",false\n";
    }
    return out;
}

} // namespace opspace
