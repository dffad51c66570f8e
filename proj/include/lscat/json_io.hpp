#pragma once

// JSON encodings. Keys are emitted in schema order (ordered_json) so equal
// values serialize to identical bytes. Integers with |v| >= 2^53 are written
// as decimal strings; readers accept either form.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lscat/abelian_group.hpp"
#include "lscat/cohomology.hpp"
#include "lscat/error.hpp"
#include "lscat/homomorphism.hpp"
#include "lscat/invariants.hpp"
#include "lscat/linalg.hpp"
#include "lscat/matrix.hpp"

namespace lscat::json {

using Json = nlohmann::ordered_json;

inline Json encode(const Integer& v) {
    static const Integer bound = Integer(1) << 53;
    if (abs(v) >= bound)
        return v.get_str();
    return static_cast<std::int64_t>(to_int64(v));
}

inline Integer decode_integer(const Json& j, const std::string& where) {
    if (j.is_number_integer())
        return j.is_number_unsigned() ? Integer(std::to_string(j.get<std::uint64_t>()))
                                      : Integer(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        const std::size_t digits_from = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (s.size() > digits_from && s.find_first_not_of("0123456789", digits_from) == std::string::npos)
            return Integer(s);
    }
    throw Error(ErrorCode::Malformed, where + ": expected an integer or decimal string, got " + j.dump());
}

inline std::size_t decode_natural(const Json& j, const std::string& where) {
    const Integer v = decode_integer(j, where);
    if (v < 0 || v > Integer(1 << 30))
        throw Error(ErrorCode::Malformed, where + ": expected a small natural number, got " + v.get_str());
    return static_cast<std::size_t>(to_int64(v));
}

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object())
        throw Error(ErrorCode::Malformed, where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw Error(ErrorCode::Malformed, where + ": missing field \"" + key + "\"");
    return *it;
}

inline Json encode(const IntVector& v) {
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(encode(x));
    return a;
}

inline Json encode(const IntMatrix& m) {
    Json data = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        data.push_back(encode(m.row(i)));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline IntMatrix decode_matrix(const Json& j, const std::string& where = "matrix") {
    const std::size_t rows = decode_natural(field(j, "rows", where), where + ".rows");
    const std::size_t cols = decode_natural(field(j, "cols", where), where + ".cols");
    const Json& data = field(j, "data", where);
    if (!data.is_array() || data.size() != rows)
        throw Error(ErrorCode::Malformed, where + ".data: expected " + std::to_string(rows) + " rows");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = data[i];
        if (!row.is_array() || row.size() != cols)
            throw Error(ErrorCode::Malformed,
                        where + ".data[" + std::to_string(i) + "]: expected " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = decode_integer(row[c], where + ".data[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    }
    return m;
}

inline Json encode(const FgAbelianGroup& g) {
    return Json{{"free_rank", g.free_rank()}, {"torsion", encode(g.torsion())}};
}

inline FgAbelianGroup decode_group(const Json& j, const std::string& where = "group") {
    const std::size_t r = decode_natural(field(j, "free_rank", where), where + ".free_rank");
    const Json& t = field(j, "torsion", where);
    if (!t.is_array())
        throw Error(ErrorCode::Malformed, where + ".torsion: expected an array");
    IntVector torsion;
    for (std::size_t i = 0; i < t.size(); ++i)
        torsion.push_back(decode_integer(t[i], where + ".torsion[" + std::to_string(i) + "]"));
    return FgAbelianGroup(r, std::move(torsion));
}

inline Json encode(const GroupPresentation& p) {
    return Json{{"generators", p.generators}, {"relations", encode(p.relations)}};
}

inline GroupPresentation decode_presentation(const Json& j, const std::string& where = "presentation") {
    return GroupPresentation(decode_natural(field(j, "generators", where), where + ".generators"),
                             decode_matrix(field(j, "relations", where), where + ".relations"));
}

inline Json encode(const Homomorphism& h) {
    return Json{{"domain", encode(h.domain())}, {"codomain", encode(h.codomain())}, {"matrix", encode(h.matrix())}};
}

inline Homomorphism decode_homomorphism(const Json& j, const std::string& where = "homomorphism") {
    return Homomorphism(decode_group(field(j, "domain", where), where + ".domain"),
                        decode_group(field(j, "codomain", where), where + ".codomain"),
                        decode_matrix(field(j, "matrix", where), where + ".matrix"));
}

inline Json encode_snf(const IntMatrix& a, const SnfResult& s) {
    return Json{{"input", encode(a)},  {"P", encode(s.P)}, {"D", encode(s.D)},
                {"Q", encode(s.Q)},    {"factors", encode(s.factors)}};
}

inline Json encode(const Factorization& f) {
    return Json{{"k", f.k}, {"factors", encode(f.psi_factors)}, {"pi", encode(f.pi)}, {"psi", encode(f.psi)},
                {"iota", encode(f.iota)}};
}

inline Json encode(const Splitting& s) {
    return Json{{"m", s.m}, {"basis_change", encode(s.basis_change)}, {"psi1", encode(s.psi1)},
                {"psi2", encode(s.psi2)}};
}

inline Json encode(const Coefficients& c) {
    if (c.is_integral())
        return "Z";
    return c.prime();
}

inline Coefficients decode_coefficients(const Json& j, const std::string& where = "coefficients") {
    if (j.is_string() && j.get_ref<const std::string&>() == "Z")
        return Coefficients::integers();
    const Integer p = decode_integer(j, where);
    if (p < 2 || !fits_int64(p))
        throw Error(ErrorCode::Malformed, where + ": expected \"Z\" or a prime, got " + j.dump());
    return Coefficients::modulo(to_int64(p));
}

inline Json encode(const CohomologyGroup& c) {
    Json j{{"degree", c.degree}, {"coefficients", encode(c.coefficients)}, {"group", encode(c.group)}};
    if (!c.coefficients.is_integral())
        j["dimension"] = c.dimension();
    return j;
}

inline Json encode(const CyclicDecomposition& d) {
    Json a = Json::array();
    for (auto m : d.orders)
        a.push_back(m);
    return a;
}

inline Json encode(const CohomologyWitness& w) {
    Json j{{"dimension", w.dimension},
           {"coefficients", encode(w.coefficients)},
           {"source_cohomology", encode(w.source_cohomology)},
           {"target_cohomology", encode(w.target_cohomology)},
           {"induced_matrix", encode(w.induced_matrix)},
           {"nonzero_entry", Json::array({w.nonzero_entry.row, w.nonzero_entry.col, encode(w.nonzero_entry.value)})},
           {"transfer_steps", w.transfer_steps}};
    if (w.chain_map)
        j["chain_map"] = Json{{"source_factors", encode(w.chain_map->map().source())},
                              {"target_factors", encode(w.chain_map->map().target())},
                              {"squares_commute", w.chain_map->verify()}};
    return j;
}

inline Json encode(const ZeroMapReport& z) {
    return Json{{"dimension", z.dimension},
                {"coefficients", encode(z.coefficients)},
                {"source_cohomology", encode(z.source_cohomology)},
                {"target_cohomology", encode(z.target_cohomology)},
                {"zero_map", true}};
}

inline Json encode(const InducedMapResult& r) {
    return std::visit([](const auto& v) { return encode(v); }, r);
}

inline Json encode(const ChainStep& s) {
    Json j{{"tag", s.tag}, {"claim", s.claim}};
    j["bound"] = s.bound ? Json(*s.bound) : Json(nullptr);
    Json maps = Json::object();
    for (const auto& [name, h] : s.maps)
        maps[name] = encode(h);
    for (const auto& [name, m] : s.matrices)
        maps[name] = encode(m);
    j["data"] = std::move(maps);
    return j;
}

inline Json encode(const InvariantResult& r) {
    Json chain = Json::array();
    for (const auto& s : r.certificate.upper_chain)
        chain.push_back(encode(s));
    return Json{{"value", r.value},
                {"m", r.m},
                {"k", r.k},
                {"epi", r.epi},
                {"via_image", r.via_image},
                {"prime", r.certificate.prime ? Json(*r.certificate.prime) : Json(nullptr)},
                {"upper_chain", std::move(chain)},
                {"lower_witness", encode(r.certificate.lower_witness)}};
}

inline Json encode_error(const Error& e) {
    return Json{{"error", std::string(to_string(e.code()))}, {"detail", e.detail()}};
}

} // namespace lscat::json
