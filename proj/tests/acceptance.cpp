// One line per acceptance criterion. Everything is exact, so the only tolerances are the
// runtime budgets below. A criterion may fail only in the documented way checked by
// `expected_failure`; any other failure makes the binary exit nonzero.

#include "oracles/fixtures.hpp"
#include "oracles/oracles.hpp"

#include "infrared/cli.hpp"
#include "infrared/io.hpp"
#include "infrared/mc.hpp"
#include "infrared/relative.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

using namespace ir;

namespace {

constexpr double kBudgetDimensionLaw = 120;  // seconds
constexpr double kBudgetDSquared = 300;
constexpr double kBudgetUniversality = 600; // per configuration
constexpr std::size_t kMinConfigurations = 20;
constexpr std::size_t kMcSamples = 100;
constexpr unsigned kJobs = 4;

struct Outcome {
    bool pass = false;
    std::string detail;
    bool expected_failure = false; // fails exactly as recorded in the notes
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", s);
    return buf;
}

std::vector<PointConfig> suite()
{
    std::vector<PointConfig> out;
    for (std::size_t n = 4; n <= 8; ++n)
        for (std::uint64_t seed = 1; seed <= (n == 8 ? 2u : 3u); ++seed)
            out.push_back(random_config(2, n, 100 * n + seed));
    out.push_back(random_config(2, 6, 999));
    for (std::size_t n = 5; n <= 6; ++n)
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
            out.push_back(random_config(3, n, 100 * n + seed));
    return out;
}

std::string describe(const PointConfig& c)
{
    return "d=" + std::to_string(c.dim()) + ",|A|=" + std::to_string(c.size());
}

struct Shared {
    std::vector<PointConfig> configs = suite();
    std::vector<SecondaryPolytope> secondary;
};

Outcome dimension_law(Shared& s)
{
    auto t0 = Clock::now();
    if (s.configs.size() < kMinConfigurations)
        return {false, "only " + std::to_string(s.configs.size()) + " configurations"};
    for (const auto& c : s.configs) {
        SecondaryOptions so;
        so.jobs = kJobs;
        s.secondary.push_back(build_secondary(c, c.all(), so));
        const int expected = static_cast<int>(c.size()) - static_cast<int>(c.dim()) - 1;
        if (s.secondary.back().dim != expected)
            return {false, describe(c) + ": dim " + std::to_string(s.secondary.back().dim)};
    }
    const double el = seconds_since(t0);
    return {el <= kBudgetDimensionLaw,
            std::to_string(s.configs.size()) + " configurations, dim = |A|-d-1 in " + fmt(el)};
}

Outcome circuit_interval(Shared&)
{
    std::vector<PointConfig> circuits{fixture::square(), fixture::triangle_with_point(), fixture::interval(3)};
    for (std::size_t d = 1; d <= 3; ++d)
        for (std::uint64_t seed = 1; seed <= 4; ++seed)
            circuits.push_back(random_config(d, d + 2, 40 + seed));
    for (const auto& c : circuits) {
        auto sp = build_secondary(c, c.all());
        if (sp.dim != 1 || sp.triangulations.size() != 2 || sp.faces_of_dim(0).size() != 2)
            return {false, describe(c) + " is not a segment"};
    }
    return {true, std::to_string(circuits.size()) + " circuits, each a segment with 2 vertices"};
}

Outcome triangulation_counts(Shared& s)
{
    auto gon = [](int n) {
        // points on a parabola are in convex position
        std::vector<std::pair<std::string, std::vector<long>>> pts;
        for (int i = 0; i < n; ++i)
            pts.push_back({std::string(1, char('a' + i)), {i, i * i}});
        return fixture::make(2, pts);
    };
    const std::pair<int, std::size_t> expected[] = {{4, 2}, {5, 5}, {6, 14}};
    std::string counts;
    std::vector<PointConfig> against{fixture::pentagon(), fixture::hexagon()};
    for (const auto& [n, count] : expected) {
        auto c = gon(n);
        auto ts = enumerate_regular_triangulations(c, c.all());
        if (ts.size() != count)
            return {false, std::to_string(n) + "-gon: " + std::to_string(ts.size())};
        counts += (counts.empty() ? "" : "/") + std::to_string(ts.size());
        against.push_back(c);
    }
    for (std::size_t k = 0; k < 6; ++k)
        against.push_back(s.configs[k]);
    for (const auto& c : against) {
        std::set<std::vector<Mask>> bfs, brute;
        for (const auto& t : enumerate_regular_triangulations(c, c.all()))
            bfs.insert(t.cells);
        for (auto t : oracle::all_triangulations(c, c.all())) {
            std::sort(t.begin(), t.end(), mask_less);
            if (oracle::regular_global(c, c.all(), t))
                brute.insert(t);
        }
        if (bfs != brute)
            return {false, describe(c) + ": flip search and brute force differ"};
    }
    return {true, "convex 4/5/6-gons give " + counts + "; flip search equals brute force on " +
                      std::to_string(against.size()) + " configurations"};
}

Outcome factorization(Shared& s)
{
    std::size_t faces = 0;
    for (std::size_t k = 0; k < s.configs.size(); ++k) {
        const auto& c = s.configs[k];
        SecondaryOptions so;
        so.jobs = kJobs;
        SecondaryCache cache(c, so);
        const auto& sp = s.secondary.at(k);
        for (std::size_t f = 0; f < sp.faces.size(); ++f, ++faces) {
            auto rep = verify_factorization(c, sp, f, cache);
            if (!rep.ok)
                return {false, describe(c) + " face " + std::to_string(f) + ": " + rep.message};
        }
    }
    return {true, std::to_string(faces) + " faces factor as products"};
}

struct TableSet {
    StructureTables marked, geometric;
};

Outcome d_squared(Shared& s, std::vector<TableSet>& keep)
{
    auto t0 = Clock::now();
    std::size_t checks = 0;
    for (std::size_t k = 0; k < s.configs.size(); ++k) {
        const auto& c = s.configs[k];
        TableSet ts;
        auto cs = random_coefficients(c, 7 + k, 2);
        for (Variant v : {Variant::marked, Variant::geometric}) {
            for (bool twisted : {false, true}) {
                TableOptions o;
                o.variant = v;
                o.jobs = kJobs;
                if (twisted)
                    o.coefficients = &cs;
                auto t = build_structure_tables(c, o);
                auto rep = verify_d_squared(c, t, kJobs);
                ++checks;
                if (!rep.ok)
                    return {false, describe(c) + ": " + rep.offending_generator + " " + rep.offending_monomial};
                if (!twisted)
                    (v == Variant::marked ? ts.marked : ts.geometric) = std::move(t);
            }
        }
        keep.push_back(std::move(ts));
    }
    const double el = seconds_since(t0);
    return {el <= kBudgetDSquared, std::to_string(checks) + " table sets (both variants, trivial and random " +
                                        "coefficients) in " + fmt(el)};
}

Outcome example_supports(Shared&)
{
    auto support = [](const StructureTables& t) {
        std::set<std::pair<std::vector<Mask>, Mask>> out;
        for (const auto& e : t.entries)
            out.insert({e.inputs, e.output});
        return out;
    };
    TableOptions geo;
    TableOptions marked;
    marked.variant = Variant::marked;

    auto sq = fixture::square();
    auto ts = build_structure_tables(sq, geo);
    const std::set<std::pair<std::vector<Mask>, Mask>> sq_expected{{{0b0111, 0b1101}, 0b1111},
                                                                   {{0b1011, 0b1110}, 0b1111}};
    if (support(ts) != sq_expected)
        return {false, "square bracket support differs"};
    std::map<int, int> dims;
    for (Mask g : ts.generators)
        ++dims[ts.degree(g)];
    if (dims != std::map<int, int>{{1, 4}, {2, 1}})
        return {false, "square dimensions differ"};

    auto tp = fixture::triangle_with_point();
    const Mask a = 0b1111;
    const Mask abp = 0b1011, acp = 0b1101, bcp = 0b1110, abc = 0b0111;
    if (support(build_structure_tables(tp, geo)) != std::set<std::pair<std::vector<Mask>, Mask>>{{{abp, acp, bcp}, a}})
        return {false, "triangle with point: geometric support differs"};
    auto tm = build_structure_tables(tp, marked);
    if (!support(tm).count({{abc}, a}))
        return {false, "triangle with point: no differential from the big triangle"};
    if (!marked_column_cohomology(tp, tm, abc).exact)
        return {false, "big triangle column is not exact"};
    return {true, "square {abc,acd}->A, {abd,bcd}->A, dims (4,1); triangle+point lambda_3 and d(e_abc) = +-e_A; "
                  "column exact"};
}

Outcome mc_equivalence(Shared& s, const std::vector<TableSet>& tables)
{
    std::size_t samples = 0, mc = 0;
    for (std::size_t k = 0; k < s.configs.size(); ++k) {
        const auto& c = s.configs[k];
        auto lat = cocycle_lattice(c);
        for (std::size_t i = 0; i < kMcSamples; ++i) {
            auto g = random_mc_element(c, lat, 1000 * k + i, i % 2 == 1);
            auto r = is_mc(c, tables[k].marked, g);
            if (!r.agree())
                return {false, describe(c) + ": verdicts disagree on sample " + std::to_string(i)};
            if (i % 2 == 0 && !r.direct)
                return {false, describe(c) + ": lattice element is not MC"};
            ++samples;
            mc += r.direct ? 1 : 0;
        }
        if (c.dim() == 2 && !is_additive_cocycle(c, area_cocycle(c)))
            return {false, describe(c) + ": area is not a cocycle"};
    }
    return {true, std::to_string(samples) + " elements (" + std::to_string(mc) + " MC), direct = binomial; " +
                      "area is a cocycle on every planar configuration"};
}

Outcome one_dimensional(Shared&)
{
    for (int r = 3; r <= 5; ++r) {
        auto R = build_R_1d(fixture::interval(r));
        if (!R.differential_squares_to_zero || R.higher_operations != 0)
            return {false, "r=" + std::to_string(r) + ": differential"};
        // e_ij e_jk = +-e_ik for i < j < k, nothing else
        std::map<std::pair<int, int>, std::size_t> e;
        for (std::size_t k = 0; k < R.dim(); ++k)
            e[{R.basis[k].left, R.basis[k].right}] = k;
        if (e.size() != static_cast<std::size_t>(r * (r - 1) / 2))
            return {false, "r=" + std::to_string(r) + ": basis"};
        std::size_t products = 0;
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                for (int l = j + 1; l < r; ++l) {
                    auto it = R.product.find({e.at({i, j}), e.at({j, l})});
                    if (it == R.product.end() || it->second.first != e.at({i, l}) || std::abs(it->second.second) != 1)
                        return {false, "r=" + std::to_string(r) + ": product"};
                    ++products;
                }
        if (R.product.size() != products || !R.associative())
            return {false, "r=" + std::to_string(r) + ": extra products"};
    }
    return {true, "r = 3, 4, 5 give exactly e_ij e_jk = +-e_ik"};
}

std::vector<PointConfig> with_infinity_up_to_six()
{
    std::vector<PointConfig> out{
        fixture::make(2, {{"a", {0, 0}}, {"b", {2, 1}}, {"c", {1, 3}}}, fixture::up()),
        fixture::make(2, {{"a", {0, 0}}, {"b", {2, -1}}, {"c", {4, 0}}}, fixture::up()),
        fixture::make(2, {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {1, 1}}, {"d", {0, 1}}}, VecQ{1, 7}),
        fixture::make(2, {{"a", {0, 0}}, {"b", {3, 0}}, {"c", {0, 3}}, {"p", {1, 1}}}, VecQ{1, 7})};
    for (std::size_t n = 3; n <= 6; ++n)
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
            out.push_back(random_config(2, n, 500 + 10 * n + seed, 24, seed == 3 ? VecQ{2, 5} : fixture::up()));
    return out;
}

Outcome r_infinity(Shared&)
{
    auto cs = with_infinity_up_to_six();
    std::size_t elements = 0;
    for (const auto& c : cs) {
        auto ic = attach_infinity(c, kJobs);
        auto md = mixed_differential(ic, kJobs);
        if (!verify_mixed_d_squared(ic, md, kJobs).ok)
            return {false, describe(c) + ": D^2 != 0"};
        auto R = build_R_infty(ic, md);
        std::string witness;
        if (!R.associative(&witness))
            return {false, describe(c) + ": not associative at " + witness};
        if (R.higher_operations != 0)
            return {false, describe(c) + ": " + std::to_string(R.higher_operations) + " higher operations"};
        if (!R.strictly_upper_triangular())
            return {false, describe(c) + ": not upper triangular"};
        elements += R.dim();
    }
    return {true, std::to_string(cs.size()) + " configurations, " + std::to_string(elements) +
                      " basis elements; associative, no operations of arity >= 3"};
}

std::vector<std::pair<std::string, PointConfig>> universality_cases()
{
    return {{"3 points", fixture::make(2, {{"a", {0, 0}}, {"b", {2, 1}}, {"c", {1, 3}}}, fixture::up())},
            {"4 convex", fixture::make(2, {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {1, 1}}, {"d", {0, 1}}}, VecQ{1, 7})},
            {"triangle+point",
             fixture::make(2, {{"a", {0, 0}}, {"b", {3, 0}}, {"c", {0, 3}}, {"p", {1, 1}}}, VecQ{1, 7})},
            {"random 5", random_config(2, 5, 3, 24, fixture::up())}};
}

std::string betti_string(const std::map<int, std::size_t>& m)
{
    std::string s;
    for (const auto& [k, v] : m)
        if (v)
            s += (s.empty() ? "" : ",") + std::to_string(k) + ":" + std::to_string(v);
    return "{" + s + "}";
}

std::vector<UniversalityReport> universality_reports;

Outcome universality(Shared&)
{
    bool pass = true, shape = true;
    std::string detail;
    for (const auto& [name, c] : universality_cases()) {
        auto t0 = Clock::now();
        auto r = verify_universality(c, kJobs);
        const double el = seconds_since(t0);
        universality_reports.push_back(r);
        bool match = true;
        std::set<int> degrees;
        for (const auto& [k, v] : r.g_dims)
            degrees.insert(k);
        for (const auto& [k, v] : r.hochschild_betti)
            degrees.insert(k);
        for (int k : degrees) {
            auto g = r.g_dims.count(k) ? r.g_dims.at(k) : 0;
            auto h = r.hochschild_betti.count(k) ? r.hochschild_betti.at(k) : 0;
            match = match && g == h;
        }
        const bool ok = r.directed && r.chain_map && r.degree_preserving && r.quasi_iso && match && el <= kBudgetUniversality;
        pass = pass && ok;
        // the recorded failure: every degree but 0 is matched, and H^0 is spanned by the
        // edge rescalings, one per pair of points
        const std::size_t pairs = c.size() * (c.size() - 1) / 2;
        shape = shape && r.directed && r.chain_map && r.degree_preserving && r.iso_away_from_zero &&
                r.degree0_is_rescalings && r.hochschild_betti.count(0) && r.hochschild_betti.at(0) == pairs &&
                el <= kBudgetUniversality;
        detail += (detail.empty() ? "" : "; ") + name + " g" + betti_string(r.g_dims) + " H" +
                  betti_string(r.hochschild_betti) + " " + fmt(el);
    }
    Outcome o{pass, detail};
    if (!pass && shape) {
        o.expected_failure = true;
        o.detail += " -- Psi_1 is directed, a chain map and an isomorphism in every degree except 0, where "
                    "H^0 is spanned by the edge rescalings (|A| choose 2 classes) and the source is zero";
    }
    return o;
}

Outcome filtration(Shared&)
{
    if (universality_reports.size() != universality_cases().size())
        return {false, "universality reports missing"};
    for (std::size_t k = 0; k < universality_reports.size(); ++k) {
        const auto& r = universality_reports[k];
        // directed_hochschild throws if delta leaves the strict chains, so reaching here covers closure
        if (!r.filtration)
            return {false, universality_cases()[k].first + ": delta lowers handle length"};
        if (!r.gr0_image)
            return {false, universality_cases()[k].first + ": gr0 image differs from the convex closed paths"};
    }
    return {true, "delta keeps strict chains and handle length on all four configurations; handle-free image "
                  "summands are exactly the convex closed paths"};
}

Outcome determinism(Shared& s)
{
    auto t0 = Clock::now();
    std::size_t compared = 0;
    for (const auto& c : s.configs) {
        const std::string text = config_json(c).dump();
        for (const std::string cmd : {"triangulations", "secondary", "linfty", "mc"}) {
            JobSpec a;
            a.command = cmd;
            a.seed = 5;
            JobSpec b = a;
            b.jobs = kJobs;
            auto ra = run(a, text), rb = run(b, text);
            if (ra.status != 0)
                return {false, describe(c) + " " + cmd + ": " + ra.error};
            if (ra.output != rb.output)
                return {false, describe(c) + " " + cmd + ": outputs differ"};
            ++compared;
        }
    }
    return {true, std::to_string(compared) + " report pairs (jobs 1 vs " + std::to_string(kJobs) +
                      ") byte-identical in " + fmt(seconds_since(t0))};
}

} // namespace

int main()
{
    Shared shared;
    std::vector<TableSet> tables;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"dimension law", [&] { return dimension_law(shared); }},
        {"circuit interval", [&] { return circuit_interval(shared); }},
        {"triangulation counts", [&] { return triangulation_counts(shared); }},
        {"factorization", [&] { return factorization(shared); }},
        {"d^2 = 0", [&] { return d_squared(shared, tables); }},
        {"example supports", [&] { return example_supports(shared); }},
        {"MC equivalence", [&] { return mc_equivalence(shared, tables); }},
        {"1D algebra", [&] { return one_dimensional(shared); }},
        {"R_inf structure", [&] { return r_infinity(shared); }},
        {"universality", [&] { return universality(shared); }},
        {"filtration diagnostics", [&] { return filtration(shared); }},
        {"determinism", [&] { return determinism(shared); }},
    };
    int unexpected = 0, passed = 0, documented = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const char* tag = o.pass ? "PASS" : (o.expected_failure ? "FAIL (documented)" : "FAIL");
        std::printf("[%s] %zu %s: %s\n", tag, k + 1, criteria[k].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
        if (o.pass)
            ++passed;
        else if (o.expected_failure)
            ++documented;
        else
            ++unexpected;
    }
    std::printf("%d passed, %d documented failures, %d unexpected failures\n", passed, documented, unexpected);
    return unexpected == 0 ? 0 : 1;
}
