#pragma once

#include "infrared/geometry.hpp"

#include <string>
#include <vector>

namespace fixture {

using ir::PointConfig;

inline PointConfig make(std::size_t d, const std::vector<std::pair<std::string, std::vector<long>>>& pts,
                        std::optional<ir::VecQ> inf = std::nullopt)
{
    std::vector<ir::Point> out;
    for (const auto& [l, xs] : pts) {
        ir::VecQ v;
        for (long x : xs)
            v.emplace_back(x);
        out.push_back({l, v});
    }
    return PointConfig(d, out, inf);
}

// Labels follow the counter-clockwise order from (0,0).
inline PointConfig square() { return make(2, {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {1, 1}}, {"d", {0, 1}}}); }

inline PointConfig triangle_with_point()
{
    return make(2, {{"a", {0, 0}}, {"b", {3, 0}}, {"c", {0, 3}}, {"p", {1, 1}}});
}

inline PointConfig triangle() { return make(2, {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {0, 1}}}); }

inline PointConfig pentagon()
{
    return make(2, {{"a", {0, 0}}, {"b", {2, 0}}, {"c", {3, 2}}, {"d", {1, 3}}, {"e", {-1, 2}}});
}

inline PointConfig hexagon()
{
    return make(2, {{"a", {0, 0}}, {"b", {2, 0}}, {"c", {4, 1}}, {"d", {3, 3}}, {"e", {1, 4}}, {"f", {-1, 2}}});
}

inline PointConfig interval(int n)
{
    std::vector<std::pair<std::string, std::vector<long>>> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back({std::string(1, char('a' + i)), {long(i * i + i)}});
    return make(1, pts);
}

inline ir::VecQ up() { return {0, 1}; }

} // namespace fixture
