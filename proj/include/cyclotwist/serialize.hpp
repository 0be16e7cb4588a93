#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cyclotwist/cohomology.hpp"
#include "cyclotwist/conic.hpp"
#include "cyclotwist/series.hpp"

namespace cyclotwist {

using nlohmann::json;

// Coefficients serialize as arrays of "p/q" strings in lowest terms, q > 0;
// the ambient conductor travels in the surrounding object.

inline json elem_to_json(const CycloElem& a) {
    json arr = json::array();
    for (const auto& q : a.coeffs()) arr.push_back(rat_to_string(q));
    return arr;
}

inline CycloElem elem_from_json(const json& j, const CycloField& f) {
    if (!j.is_array() || j.size() != f.degree())
        throw SchemaError("element: expected an array of " + std::to_string(f.degree()) + " rationals");
    std::vector<Rat> c;
    for (const auto& s : j) {
        if (!s.is_string()) throw SchemaError("element: coefficients are strings");
        c.push_back(rat_from_string(s.get<std::string>()));
    }
    return CycloElem(f, std::move(c));
}

inline json standalone_elem_to_json(const CycloElem& a) {
    return json{{"conductor", a.field().conductor()}, {"coeffs", elem_to_json(a)}};
}

inline json subfield_to_json(const SubfieldSpec& K) {
    return json{{"conductor", K.parent.conductor()},
                {"subgroup_generators", K.generators}};
}

inline SubfieldSpec subfield_from_json(const json& j) {
    if (!j.contains("conductor") || !j.contains("subgroup_generators"))
        throw SchemaError("subfield: needs conductor and subgroup_generators");
    CycloField f = CycloField::get(j.at("conductor").get<unsigned long>());
    std::vector<unsigned long> gens = j.at("subgroup_generators").get<std::vector<unsigned long>>();
    return subfield(f, std::move(gens));
}

inline json ratfunc_to_json(const RatFunc& pi) {
    json num = json::array(), den = json::array();
    for (const auto& c : pi.num().coeffs()) num.push_back(elem_to_json(c));
    for (const auto& c : pi.den().coeffs()) den.push_back(elem_to_json(c));
    return json{{"conductor", pi.field().conductor()}, {"num", num}, {"den", den}};
}

inline RatFunc ratfunc_from_json(const json& j) {
    if (!j.contains("conductor") || !j.contains("num") || !j.contains("den"))
        throw SchemaError("ratfunc: needs conductor, num, den");
    CycloField f = CycloField::get(j.at("conductor").get<unsigned long>());
    auto read_poly = [&](const json& arr) {
        std::vector<CycloElem> c;
        for (const auto& e : arr) c.push_back(elem_from_json(e, f));
        return Poly(f, std::move(c));
    };
    return RatFunc(read_poly(j.at("num")), read_poly(j.at("den")));
}

inline json series_to_json(const LaurentSeries& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back(elem_to_json(c));
    return json{{"conductor", s.field().conductor()},
                {"width", s.width()},
                {"valuation", s.valuation()},
                {"precision", s.precision()},
                {"coeffs", coeffs}};
}

inline LaurentSeries series_from_json(const json& j) {
    for (const char* k : {"conductor", "width", "valuation", "precision", "coeffs"})
        if (!j.contains(k)) throw SchemaError(std::string("series: missing field ") + k);
    CycloField f = CycloField::get(j.at("conductor").get<unsigned long>());
    std::vector<CycloElem> c;
    for (const auto& e : j.at("coeffs")) c.push_back(elem_from_json(e, f));
    return LaurentSeries(f, j.at("width").get<long>(), j.at("valuation").get<long>(),
                         j.at("precision").get<long>(), std::move(c));
}

inline json mobius_to_json(const Mobius& g) {
    Mobius c = g.canonical();
    return json{{"conductor", c.field().conductor()},
                {"entries", json::array({elem_to_json(c.a()), elem_to_json(c.b()),
                                         elem_to_json(c.c()), elem_to_json(c.d())})}};
}

inline Mobius mobius_from_json(const json& j) {
    if (!j.contains("conductor") || !j.contains("entries") || j.at("entries").size() != 4)
        throw SchemaError("mobius: needs conductor and 4 entries");
    CycloField f = CycloField::get(j.at("conductor").get<unsigned long>());
    const json& e = j.at("entries");
    return Mobius(elem_from_json(e[0], f), elem_from_json(e[1], f), elem_from_json(e[2], f),
                  elem_from_json(e[3], f));
}

inline json cocycle_to_json(const Cocycle& z) {
    json values = json::object();
    for (const auto& [d, g] : z.values) {
        Mobius c = g.canonical();
        values[std::to_string(d)] = json::array({elem_to_json(c.a()), elem_to_json(c.b()),
                                                 elem_to_json(c.c()), elem_to_json(c.d())});
    }
    return json{{"conductor", z.group.field.conductor()},
                {"fixed_subgroup", z.group.fixed.generators},
                {"values", values}};
}

inline json conic_to_json(const ConicForm& C) {
    json gram = json::array();
    for (std::size_t i = 0; i < 3; ++i) {
        json row = json::array();
        for (std::size_t j2 = 0; j2 < 3; ++j2) row.push_back(elem_to_json(C.gram.at(i, j2)));
        gram.push_back(row);
    }
    return json{{"conductor", C.gram.field().conductor()},
                {"gram", gram},
                {"field", subfield_to_json(C.K)}};
}

inline ConicForm conic_from_json(const json& j) {
    if (!j.contains("conductor") || !j.contains("gram") || !j.contains("field"))
        throw SchemaError("conic: needs conductor, gram, field");
    CycloField f = CycloField::get(j.at("conductor").get<unsigned long>());
    SqMat g(f, 3);
    const json& rows = j.at("gram");
    if (rows.size() != 3) throw SchemaError("conic: gram must be 3x3");
    for (std::size_t i = 0; i < 3; ++i) {
        if (rows[i].size() != 3) throw SchemaError("conic: gram must be 3x3");
        for (std::size_t c = 0; c < 3; ++c) g.at(i, c) = elem_from_json(rows[i][c], f);
    }
    SubfieldSpec K = subfield_from_json(j.at("field"));
    ConicForm C{std::move(g), K.parent == f ? K : lift_subfield(K, f)};
    return C;
}

} // namespace cyclotwist
