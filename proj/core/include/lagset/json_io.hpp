/**
 * JSON encoding of plants, sets, and step reports. Scalars are written as
 * strings ("-3/2" for the exact backend, shortest round-trip decimals for
 * the float backend) so traces survive a round trip losslessly.
 */
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lagset/oracle.hpp"
#include "lagset/plant.hpp"
#include "lagset/polytope.hpp"
#include "lagset/recursion.hpp"
#include "lagset/scalar.hpp"

namespace lagset {

using Json = nlohmann::ordered_json;

template <class S>
Json vec_json(const Vec<S>& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(scalar_str<S>(v(i)));
    return a;
}

template <class S>
Vec<S> vec_from_json(const Json& a) {
    Vec<S> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_scalar<S>(a[i].get<std::string>());
    return v;
}

inline std::string bits_str(const BitRow& b) {
    std::string s(b.size(), '0');
    for (std::size_t j = b.find_first(); j != BitRow::npos; j = b.find_next(j)) s[j] = '1';
    return s;
}

inline BitRow bits_from_str(const std::string& s) {
    BitRow b(s.size());
    for (std::size_t j = 0; j < s.size(); ++j)
        if (s[j] == '1') b.set(j);
    return b;
}

template <class S>
Json polytope_json(const Polytope<S>& P) {
    Json j;
    j["vertices"] = Json::array();
    for (int c = 0; c < P.n_vertices(); ++c) j["vertices"].push_back(vec_json<S>(P.V.col(c)));
    j["facets"] = Json::array();
    for (int r = 0; r < P.n_facets(); ++r) {
        Json f;
        f["normal"] = vec_json<S>(P.F.row(r).transpose());
        f["offset"] = scalar_str<S>(P.h(r));
        j["facets"].push_back(std::move(f));
    }
    j["incidence"] = Json::array();
    for (const auto& row : P.I) j["incidence"].push_back(bits_str(row));
    return j;
}

template <class S>
Polytope<S> polytope_from_json(const Json& j) {
    Polytope<S> P;
    const auto& vs = j.at("vertices");
    const auto& fs = j.at("facets");
    const int m = vs.empty() ? 0 : static_cast<int>(vs[0].size());
    P.V = Mat<S>(m, vs.size());
    for (std::size_t c = 0; c < vs.size(); ++c) P.V.col(static_cast<Eigen::Index>(c)) = vec_from_json<S>(vs[c]);
    P.F = Mat<S>(fs.size(), m);
    P.h = Vec<S>(fs.size());
    for (std::size_t r = 0; r < fs.size(); ++r) {
        P.F.row(static_cast<Eigen::Index>(r)) = vec_from_json<S>(fs[r].at("normal")).transpose();
        P.h(static_cast<Eigen::Index>(r)) = parse_scalar<S>(fs[r].at("offset").get<std::string>());
    }
    for (const auto& row : j.at("incidence")) P.I.push_back(bits_from_str(row.get<std::string>()));
    return P;
}

template <class S>
Json hrep_json(const HRep<S>& H) {
    Json j;
    j["dim"] = H.dim;
    j["empty"] = H.empty;
    j["rows"] = Json::array();
    for (int r = 0; r < H.n_rows(); ++r) {
        Json row;
        row["a"] = vec_json<S>(H.A.row(r).transpose());
        row["b"] = scalar_str<S>(H.b(r));
        j["rows"].push_back(std::move(row));
    }
    return j;
}

template <class S>
Json plant_json(const PlantModel<S>& p) {
    Json j;
    j["n"] = vec_json<S>(p.n);
    j["d"] = vec_json<S>(p.d);
    return j;
}

template <class S>
PlantModel<S> plant_from_json(const Json& j) {
    Vec<S> n = vec_from_json<S>(j.at("n")), d = vec_from_json<S>(j.at("d"));
    std::vector<S> nv(n.data(), n.data() + n.size()), dv(d.data(), d.data() + d.size());
    return parse_plant<S>(nv, dv);
}

inline Json report_json(const StepReport& r) {
    Json j;
    j["n_f_before"] = r.n_f_before;
    j["n_v_before"] = r.n_v_before;
    j["n_ridges"] = r.n_ridges;
    j["n_f_after"] = r.n_f_after;
    j["n_v_after"] = r.n_v_after;
    j["pruned_zero_rows"] = r.pruned_zero_rows;
    j["pruned_zero_cols"] = r.pruned_zero_cols;
    j["merged_columns"] = r.merged_columns;
    j["updown_counts_preserved"] = r.updown_counts_preserved;
    j["propagate_seconds"] = r.propagate_seconds;
    j["cut_seconds"] = r.cut_seconds;
    return j;
}

}  // namespace lagset
