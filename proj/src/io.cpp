#include "infrared/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>

namespace ir {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw InputError(path + ": " + what);
}

const Json& member(const Json& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object())
        fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        fail(path, "missing field \"" + key + "\"");
    return *it;
}

Rational rational_at(const Json& j, const std::string& path)
{
    if (j.is_number_integer())
        return Rational(j.get<long>());
    if (!j.is_string())
        fail(path, "expected a rational string such as \"3/4\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument&) {
        fail(path, "malformed rational \"" + j.get<std::string>() + "\"");
    }
}

VecQ vector_at(const Json& j, const std::string& path, std::size_t d)
{
    if (!j.is_array())
        fail(path, "expected an array");
    if (j.size() != d)
        fail(path, "expected " + std::to_string(d) + " coordinates, got " + std::to_string(j.size()));
    VecQ v;
    for (std::size_t k = 0; k < j.size(); ++k)
        v.push_back(rational_at(j[k], path + "[" + std::to_string(k) + "]"));
    return v;
}

int label_index(const PointConfig& c, const Json& j, const std::string& path)
{
    if (!j.is_string())
        fail(path, "expected a point label");
    auto i = c.index_of(j.get<std::string>());
    if (!i)
        fail(path, "unknown label \"" + j.get<std::string>() + "\"");
    return static_cast<int>(*i);
}

CoefficientSystem coefficients_at(const PointConfig& c, const Json& j, const std::string& path)
{
    if (c.dim() != 2)
        fail(path, "coefficient systems on edges need dimension 2");
    const Json& edges = member(j, "edges", path);
    if (!edges.is_array())
        fail(path + ".edges", "expected an array");
    CoefficientSystem cs;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const std::string at = path + ".edges[" + std::to_string(k) + "]";
        const Json& e = edges[k];
        int from = label_index(c, member(e, "from", at), at + ".from");
        int to = label_index(c, member(e, "to", at), at + ".to");
        if (from == to)
            fail(at, "an edge needs two distinct endpoints");
        const Mask wall = bit(from) | bit(to);
        if (cs.walls().count(wall))
            fail(at, "edge listed twice");
        const Json& dims = member(e, "graded_dims", at);
        if (!dims.is_object())
            fail(at + ".graded_dims", "expected an object {degree: dim}");
        std::vector<std::pair<int, long>> graded;
        for (const auto& [key, value] : dims.items()) {
            int deg = 0;
            try {
                std::size_t used = 0;
                deg = std::stoi(key, &used);
                if (used != key.size())
                    throw std::invalid_argument(key);
            } catch (const std::exception&) {
                fail(at + ".graded_dims", "degree \"" + key + "\" is not an integer");
            }
            if (!value.is_number_integer() || value.get<long>() < 0)
                fail(at + ".graded_dims." + key, "expected a nonnegative integer");
            graded.push_back({deg, value.get<long>()});
        }
        std::sort(graded.begin(), graded.end());
        WallSpace space;
        for (const auto& [deg, n] : graded)
            for (long i = 0; i < n; ++i)
                space.degrees.push_back(deg);
        const std::size_t n = space.degrees.size();
        if (n == 0)
            fail(at + ".graded_dims", "the space must be nonzero");
        space.pairing = MatrixQ::identity(n);
        if (e.contains("pairing")) {
            const Json& p = e["pairing"];
            if (!p.is_array() || p.size() != n)
                fail(at + ".pairing", "expected a " + std::to_string(n) + " x " + std::to_string(n) + " matrix");
            std::vector<VecQ> rows;
            for (std::size_t r = 0; r < n; ++r)
                rows.push_back(vector_at(p[r], at + ".pairing[" + std::to_string(r) + "]", n));
            space.pairing = MatrixQ::from_dense(rows, n);
        }
        // Given along from -> to; the canonical orientation runs in index order.
        if (from > to) {
            for (auto& deg : space.degrees)
                deg = -deg;
            space.pairing = space.pairing.transpose();
        }
        try {
            cs.set(wall, std::move(space));
        } catch (const std::invalid_argument& err) {
            fail(at, err.what());
        }
    }
    return cs;
}

} // namespace

InputDocument parse_input(std::string_view text)
{
    Json j;
    try {
        j = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    const Json& dim = member(j, "dimension", "$");
    if (!dim.is_number_integer() || dim.get<long>() < 1 || dim.get<long>() > 8)
        fail("$.dimension", "expected an integer between 1 and 8");
    const std::size_t d = dim.get<std::size_t>();
    const Json& pts = member(j, "points", "$");
    if (!pts.is_array())
        fail("$.points", "expected an array");
    std::vector<Point> points;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const std::string at = "$.points[" + std::to_string(k) + "]";
        const Json& label = member(pts[k], "label", at);
        if (!label.is_string() || label.get<std::string>().empty())
            fail(at + ".label", "expected a nonempty string");
        for (std::size_t q = 0; q < k; ++q)
            if (pts[q]["label"] == label)
                fail(at + ".label", "duplicate label \"" + label.get<std::string>() + "\"");
        points.push_back({label.get<std::string>(), vector_at(member(pts[k], "coords", at), at + ".coords", d)});
    }
    std::optional<VecQ> inf;
    if (j.contains("infinity") && !j["infinity"].is_null())
        inf = vector_at(member(j["infinity"], "direction", "$.infinity"), "$.infinity.direction", d);
    InputDocument doc;
    try {
        doc.config = PointConfig(d, std::move(points), inf);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("$: ") + e.what());
    }
    if (j.contains("coefficients") && !j["coefficients"].is_null())
        doc.coefficients = coefficients_at(doc.config, j["coefficients"], "$.coefficients");
    return doc;
}

Json rational_json(const Rational& q) { return to_string(q); }

Json rationals_json(const VecQ& v)
{
    Json out = Json::array();
    for (const auto& q : v)
        out.push_back(to_string(q));
    return out;
}

Json labels_json(const PointConfig& c, Mask m)
{
    Json out = Json::array();
    for (int i : bits(m))
        out.push_back(c.label(static_cast<std::size_t>(i)));
    return out;
}

Json cells_json(const PointConfig& c, const std::vector<Mask>& cells)
{
    Json out = Json::array();
    for (Mask m : cells)
        out.push_back(labels_json(c, m));
    return out;
}

Json subdivision_json(const PointConfig& c, const Subdivision& s)
{
    Json out;
    out["parent"] = labels_json(c, s.parent);
    out["cells"] = cells_json(c, s.cells);
    if (s.certificate) {
        Json lift = Json::object();
        for (int i : bits(s.parent))
            lift[c.label(static_cast<std::size_t>(i))] = to_string((*s.certificate)[static_cast<std::size_t>(i)]);
        out["certificate"] = lift;
    }
    return out;
}

Subdivision parse_subdivision(const PointConfig& c, const Json& j)
{
    auto mask_at = [&](const Json& labels, const std::string& path) {
        if (!labels.is_array())
            fail(path, "expected a list of labels");
        Mask m = 0;
        for (std::size_t k = 0; k < labels.size(); ++k)
            m |= bit(label_index(c, labels[k], path + "[" + std::to_string(k) + "]"));
        return m;
    };
    Subdivision s;
    s.parent = mask_at(member(j, "parent", "$"), "$.parent");
    const Json& cells = member(j, "cells", "$");
    if (!cells.is_array())
        fail("$.cells", "expected an array");
    for (std::size_t k = 0; k < cells.size(); ++k)
        s.cells.push_back(mask_at(cells[k], "$.cells[" + std::to_string(k) + "]"));
    if (j.contains("certificate")) {
        VecQ lift(c.extended_size(), Rational(0));
        for (const auto& [label, value] : j["certificate"].items())
            lift[static_cast<std::size_t>(label_index(c, Json(label), "$.certificate"))] =
                rational_at(value, "$.certificate." + label);
        s.certificate = lift;
    }
    s.canonicalize();
    return s;
}

Json config_json(const PointConfig& c, const CoefficientSystem* cs)
{
    Json out;
    out["dimension"] = c.dim();
    Json pts = Json::array();
    for (const auto& p : c.points()) {
        Json q;
        q["label"] = p.label;
        q["coords"] = rationals_json(p.coords);
        pts.push_back(q);
    }
    out["points"] = pts;
    if (c.has_infinity())
        out["infinity"] = Json{{"direction", rationals_json(c.infinity_direction())}};
    if (cs && !cs->trivial()) {
        Json edges = Json::array();
        std::vector<Mask> walls;
        for (const auto& [w, space] : cs->walls())
            walls.push_back(w);
        std::sort(walls.begin(), walls.end(), mask_less);
        for (Mask w : walls) {
            const auto& space = cs->walls().at(w);
            auto ends = bits(w);
            Json e;
            e["from"] = c.label(static_cast<std::size_t>(ends[0]));
            e["to"] = c.label(static_cast<std::size_t>(ends[1]));
            std::map<int, int> dims;
            for (int deg : space.degrees)
                ++dims[deg];
            Json gd = Json::object();
            for (const auto& [deg, n] : dims)
                gd[std::to_string(deg)] = n;
            e["graded_dims"] = gd;
            Json rows = Json::array();
            for (const auto& row : space.pairing.to_dense())
                rows.push_back(rationals_json(row));
            e["pairing"] = rows;
            edges.push_back(e);
        }
        out["coefficients"] = Json{{"edges", edges}};
    }
    return out;
}

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

} // namespace ir
