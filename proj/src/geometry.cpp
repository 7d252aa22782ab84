#include "sarmip/geometry.hpp"

#include <algorithm>
#include <cstdint>

namespace sarmip {

namespace {

bool integral_on_grid(std::span<const Point> pts, double quantum) {
    if (quantum <= 0.0)
        return false;
    for (const Point& p : pts) {
        double sx = p.x / quantum;
        double sy = p.y / quantum;
        if (std::abs(sx - std::llround(sx)) > 1e-9 || std::abs(sy - std::llround(sy)) > 1e-9)
            return false;
        if (std::abs(sx) > 1e15 || std::abs(sy) > 1e15)
            return false;
    }
    return true;
}

struct IPoint {
    std::int64_t x, y;
};

// Exact sign of the cross product (b-a) x (c-a).
int cross_sign(const IPoint& a, const IPoint& b, const IPoint& c) {
    __int128 v = static_cast<__int128>(b.x - a.x) * (c.y - a.y) -
                 static_cast<__int128>(b.y - a.y) * (c.x - a.x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

double cross(const Point& a, const Point& b, const Point& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

template <typename P, typename Turn>
std::vector<P> monotone_chain(std::vector<P> pts, Turn right_or_straight) {
    std::sort(pts.begin(), pts.end(), [](const P& a, const P& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const P& a, const P& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3)
        return pts;

    std::vector<P> hull;
    hull.reserve(2 * pts.size());
    for (const P& p : pts) { // lower
        while (hull.size() >= 2 && right_or_straight(hull[hull.size() - 2], hull.back(), p))
            hull.pop_back();
        hull.push_back(p);
    }
    std::size_t lower = hull.size() + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) { // upper
        while (hull.size() >= lower && right_or_straight(hull[hull.size() - 2], hull.back(), *it))
            hull.pop_back();
        hull.push_back(*it);
    }
    hull.pop_back();
    return hull;
}

template <typename P> double shoelace(const std::vector<P>& poly) {
    if (poly.size() < 3)
        return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const P& a = poly[i];
        const P& b = poly[(i + 1) % poly.size()];
        twice += static_cast<double>(a.x) * static_cast<double>(b.y) -
                 static_cast<double>(b.x) * static_cast<double>(a.y);
    }
    return std::abs(twice) / 2.0;
}

} // namespace

std::vector<Point> convex_hull(std::span<const Point> points, double quantum) {
    if (integral_on_grid(points, quantum)) {
        std::vector<IPoint> ipts;
        ipts.reserve(points.size());
        for (const Point& p : points)
            ipts.push_back({std::llround(p.x / quantum), std::llround(p.y / quantum)});
        auto ihull = monotone_chain(std::move(ipts), [](const IPoint& a, const IPoint& b,
                                                        const IPoint& c) {
            return cross_sign(a, b, c) <= 0;
        });
        std::vector<Point> hull;
        hull.reserve(ihull.size());
        for (const IPoint& p : ihull)
            hull.push_back({p.x * quantum, p.y * quantum});
        return hull;
    }
    std::vector<Point> pts(points.begin(), points.end());
    return monotone_chain(std::move(pts), [](const Point& a, const Point& b, const Point& c) {
        return cross(a, b, c) <= 0.0;
    });
}

double hull_area(std::span<const Point> points, double quantum) {
    if (integral_on_grid(points, quantum)) {
        std::vector<IPoint> ipts;
        ipts.reserve(points.size());
        for (const Point& p : points)
            ipts.push_back({std::llround(p.x / quantum), std::llround(p.y / quantum)});
        auto ihull = monotone_chain(std::move(ipts), [](const IPoint& a, const IPoint& b,
                                                        const IPoint& c) {
            return cross_sign(a, b, c) <= 0;
        });
        return shoelace(ihull) * quantum * quantum;
    }
    return shoelace(convex_hull(points));
}

} // namespace sarmip
