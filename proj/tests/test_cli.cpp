#include "doctest.h"
#include "oracles/fixtures.hpp"

#include "infrared/cli.hpp"
#include "infrared/io.hpp"
#include "infrared/secondary.hpp"

using namespace ir;

namespace {

std::string points_doc(const PointConfig& c)
{
    return config_json(c).dump();
}

const char* kSquareWithCoefficients = R"({
  "dimension": 2,
  "points": [
    {"label": "a", "coords": ["0", "0"]}, {"label": "b", "coords": ["1", "0"]},
    {"label": "c", "coords": ["1", "1"]}, {"label": "d", "coords": ["0", "1"]}
  ],
  "coefficients": {"edges": [
    {"from": "a", "to": "c", "graded_dims": {"0": 1, "1": 1}, "pairing": [["2", "0"], ["0", "-1/3"]]},
    {"from": "d", "to": "b", "graded_dims": {"-1": 1}}
  ]}
})";

JobSpec job(const std::string& command)
{
    JobSpec s;
    s.command = command;
    return s;
}

Json result_of(const RunResult& r)
{
    REQUIRE_MESSAGE(r.status == 0, r.error);
    return Json::parse(r.output)["result"];
}

} // namespace

TEST_CASE("sha256 of known strings")
{
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("configurations round-trip")
{
    auto c = random_config(2, 6, 4, 24, VecQ{Rational(1, 3), 2});
    auto doc = parse_input(points_doc(c));
    CHECK(doc.config.points().size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(doc.config.label(i) == c.label(i));
        CHECK(doc.config.coords(i) == c.coords(i));
    }
    CHECK(doc.config.infinity_direction() == c.infinity_direction());
    CHECK(config_json(doc.config).dump() == points_doc(c));

    auto cd = parse_input(kSquareWithCoefficients);
    REQUIRE(cd.coefficients);
    const auto& cs = *cd.coefficients;
    CHECK(cs.dim(0b0101) == 2);
    CHECK(cs.pairing(0b0101, 1, 1) == Rational(-1, 3));
    // given along d -> b, stored along b -> d: the degree flips
    CHECK(cs.degrees(0b1010, 1) == std::vector<int>{1});
    auto again = parse_input(config_json(cd.config, &cs).dump());
    REQUIRE(again.coefficients);
    CHECK(config_json(again.config, &*again.coefficients) == config_json(cd.config, &cs));
}

TEST_CASE("subdivisions round-trip with certificates")
{
    auto c = fixture::pentagon();
    for (const auto& t : enumerate_regular_triangulations(c, c.all())) {
        auto back = parse_subdivision(c, subdivision_json(c, t));
        CHECK(back == t);
        REQUIRE(back.certificate);
        for (int i : bits(t.parent))
            CHECK((*back.certificate)[static_cast<std::size_t>(i)] == (*t.certificate)[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("input errors name the field")
{
    auto message = [](const std::string& text) {
        try {
            parse_input(text);
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string("accepted");
    };
    CHECK(message(R"({"dimension": 2, "points": [{"label": "a", "coords": ["1", "2/0"]}]})") ==
          "$.points[0].coords[1]: malformed rational \"2/0\"");
    CHECK(message(R"({"dimension": 2, "points": [{"label": "a", "coords": ["1"]}]})") ==
          "$.points[0].coords: expected 2 coordinates, got 1");
    CHECK(message(R"({"dimension": 2, "points": [{"label": "a", "coords": ["1", "2"]},
                      {"label": "a", "coords": ["0", "1"]}]})") == "$.points[1].label: duplicate label \"a\"");
    CHECK(message(R"({"points": []})") == "$: missing field \"dimension\"");
    CHECK(message(R"({"dimension": 2, "points": [], "infinity": {"direction": ["0"]}})") ==
          "$.infinity.direction: expected 2 coordinates, got 1");
    CHECK(message("{\n\"dimension\": 2,\n\"points\": [,]}").find("line 3") != std::string::npos);
    std::string bad_edge = kSquareWithCoefficients;
    bad_edge.replace(bad_edge.find("\"to\": \"c\""), 9, "\"to\": \"z\"");
    CHECK(message(bad_edge) == "$.coefficients.edges[0].to: unknown label \"z\"");
}

TEST_CASE("exit codes")
{
    const std::string square = points_doc(fixture::square());
    CHECK(run(job("check"), square).status == 0);
    const std::string line = R"({"dimension": 2, "points": [{"label": "a", "coords": ["0", "0"]},
        {"label": "b", "coords": ["1", "1"]}, {"label": "c", "coords": ["2", "2"]}]})";
    auto r = run(job("check"), line);
    CHECK(r.status == 1);
    CHECK_FALSE(Json::parse(r.output)["result"]["general_position"].get<bool>());
    auto l = run(job("linfty"), line);
    CHECK(l.status == 1);
    CHECK(l.error.find("{a,b,c}") != std::string::npos);
    CHECK(run(job("nothing"), square).status == 1);
    CHECK(run(job("check"), "{").status == 1);

    auto dot = job("mc");
    dot.format = "dot";
    CHECK(run(dot, square).status == 1);
    auto small = job("secondary");
    small.max_size = 3;
    CHECK(run(small, square).status == 1);
    CHECK(run(job("universality"), kSquareWithCoefficients).status == 1);
    CHECK(run(job("web-export"), points_doc(fixture::interval(4))).status == 1);
}

TEST_CASE("reports carry provenance")
{
    const std::string text = points_doc(fixture::pentagon());
    auto s = job("triangulations");
    s.seed = 17;
    auto r = run(s, text);
    REQUIRE(r.status == 0);
    auto j = Json::parse(r.output);
    CHECK(j["version"] == kToolVersion);
    CHECK(j["input_sha256"] == sha256_hex(text));
    CHECK(j["seed"] == 17);
    CHECK(j["infinity"].is_null());
    CHECK(j["result"]["count"] == 5);
    CHECK(j["result"]["flip_edges"].size() == 5);

    auto u = Json::parse(run(job("universality"), points_doc(fixture::make(2, {{"a", {0, 0}}, {"b", {2, 1}}, {"c", {1, 3}}}))).output);
    // no direction given: the default one is used and reported
    CHECK(u["infinity"] == Json::array({"0", "1"}));
    CHECK(u["result"].contains("g_dims"));
    CHECK(u["result"].contains("hochschild_betti"));
    CHECK(u["result"].contains("quasi_iso"));
    CHECK(u["result"].contains("psi_higher_components"));
    CHECK(u["result"]["g_dims"]["1"] == 1);
    CHECK(u["result"]["hochschild_betti"]["1"] == 1);

    s.format = "dot";
    auto d = run(s, text);
    REQUIRE(d.status == 0);
    CHECK(d.output.rfind("// infrared ", 0) == 0);
    CHECK(d.output.find("graph flips {") != std::string::npos);
}

TEST_CASE("command results")
{
    CHECK(result_of(run(job("triangulations"), points_doc(fixture::hexagon())))["count"] == 14);
    auto sec = result_of(run(job("secondary"), points_doc(fixture::pentagon())));
    CHECK(sec["dim"] == 2);
    CHECK(sec["f_vector"] == Json::array({5, 5, 1}));

    auto lin = job("linfty");
    lin.geometric_only = true;
    auto t = result_of(run(lin, points_doc(fixture::square())));
    CHECK(t["entries"].size() == 2);
    CHECK(t["nilpotency"]["r0"] == 2);
    auto tc = result_of(run(lin, kSquareWithCoefficients));
    CHECK(tc["entries"][0]["coefficient"].is_array());

    auto mc = job("mc");
    mc.oracle = true;
    auto m = result_of(run(mc, points_doc(fixture::square())));
    CHECK(m["equations"].size() == 1);
    CHECK(m["samples"]["count"] == 100);
    CHECK(m["area_is_cocycle"] == true);

    auto r = result_of(run(job("relative-r"), points_doc(fixture::interval(4))));
    CHECK(r["algebra"]["basis"].size() == 6);
    CHECK(r["algebra"]["products"].size() == 4);

    auto psi = job("relative-psi");
    psi.oracle = true;
    auto p = result_of(run(psi, points_doc(fixture::make(2, {{"a", {0, 0}}, {"b", {3, 0}}, {"c", {0, 3}}, {"p", {1, 1}}},
                                                         VecQ{1, 7}))));
    CHECK(p["psi_higher_components"]["2"] == 1);

    auto w = result_of(run(job("web-export"), points_doc(fixture::pentagon())));
    CHECK(w["count"] == 11);
    CHECK(w["regular_subdivisions"] == 11);
}

TEST_CASE("output does not depend on the number of jobs")
{
    const std::string text = points_doc(random_config(2, 6, 21));
    const std::string inf = points_doc(random_config(2, 5, 22, 24, fixture::up()));
    for (const auto& cmd : command_names()) {
        auto a = job(cmd), b = job(cmd);
        b.jobs = 4;
        const std::string& in = (cmd == "relative-psi" || cmd == "universality" || cmd == "relative-r") ? inf : text;
        auto ra = run(a, in), rb = run(b, in);
        CHECK_MESSAGE(ra.status == 0, cmd << ": " << ra.error);
        CHECK_MESSAGE(ra.output == rb.output, cmd);
    }
}
