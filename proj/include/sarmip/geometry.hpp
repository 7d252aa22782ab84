#pragma once
#include <cmath>
#include <span>
#include <vector>

namespace sarmip {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Convex hull via monotone chain. When `quantum` > 0 and every coordinate is
// an exact multiple of it (cell centers are multiples of cell_size/2),
// orientation tests run on scaled integers and are exact; otherwise plain
// double cross products are used.
std::vector<Point> convex_hull(std::span<const Point> points, double quantum = 0.0);

// Area of the convex hull of `points`. Fewer than 3 distinct non-collinear
// points give 0.
double hull_area(std::span<const Point> points, double quantum = 0.0);

} // namespace sarmip
