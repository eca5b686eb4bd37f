#include "ec/example_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace ec {

namespace {

constexpr double kPi = 3.14159265358979323846;

// exact-duplicate removal; structural coincidences (shared corners, tangency
// points) land on the same quantized key, genuine points never collide
struct PointBag {
    std::vector<std::vector<double>> points;
    std::unordered_map<std::uint64_t, std::uint32_t> seen;

    static std::uint64_t key(double x, double y) {
        auto q = [](double v) {
            return static_cast<std::uint64_t>(
                static_cast<std::int64_t>(std::llround(v * 8589934592.0))); // 2^33
        };
        return q(x) * 0x9e3779b97f4a7c15ull ^ q(y);
    }
    std::uint32_t add(double x, double y) {
        std::uint64_t k = key(x, y);
        auto it = seen.find(k);
        if (it != seen.end()) return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(points.size());
        points.push_back({x, y});
        seen.emplace(k, id);
        return id;
    }
};

std::size_t circle_steps(double diameter, double h) {
    double per = kPi * diameter;
    auto n = static_cast<std::size_t>(std::ceil(per / h - 1e-9));
    return std::max<std::size_t>(n, 3);
}

// circle tangent to the x-axis at the origin; side = +1 above, -1 below
void add_tangent_circle(PointBag& bag, double diameter, double h, int side) {
    double r = diameter / 2.0;
    std::size_t n = circle_steps(diameter, h);
    for (std::size_t j = 0; j < n; ++j) {
        double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
        bag.add(r * std::sin(phi), side * (r - r * std::cos(phi)));
    }
}

void add_disc_interior(PointBag& bag, double cx, double cy, double radius, double h) {
    auto lo = static_cast<std::int64_t>(std::floor(-radius / h)) - 1;
    auto hi = static_cast<std::int64_t>(std::ceil(radius / h)) + 1;
    for (std::int64_t i = lo; i <= hi; ++i)
        for (std::int64_t j = lo; j <= hi; ++j) {
            double x = static_cast<double>(i) * h;
            double y = static_cast<double>(j) * h;
            if (x * x + y * y < radius * radius)
                bag.add(cx + x, cy + y);
        }
}

struct Tri {
    double ax, ay, bx, by, cx, cy;
};

void subdivide_gasket(std::vector<Tri>& tris, std::uint32_t levels) {
    for (std::uint32_t l = 0; l < levels; ++l) {
        std::vector<Tri> next;
        next.reserve(tris.size() * 3);
        for (const Tri& t : tris) {
            double mabx = (t.ax + t.bx) / 2, maby = (t.ay + t.by) / 2;
            double macx = (t.ax + t.cx) / 2, macy = (t.ay + t.cy) / 2;
            double mbcx = (t.bx + t.cx) / 2, mbcy = (t.by + t.cy) / 2;
            next.push_back({t.ax, t.ay, mabx, maby, macx, macy});
            next.push_back({mabx, maby, t.bx, t.by, mbcx, mbcy});
            next.push_back({macx, macy, mbcx, mbcy, t.cx, t.cy});
        }
        tris = std::move(next);
    }
}

void add_filled_triangle(PointBag& bag, const Tri& t, double h) {
    double side = std::hypot(t.bx - t.ax, t.by - t.ay);
    auto m = static_cast<std::size_t>(std::ceil(side / h - 1e-9));
    m = std::max<std::size_t>(m, 1);
    for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t j = 0; i + j <= m; ++j) {
            double u = static_cast<double>(i) / static_cast<double>(m);
            double v = static_cast<double>(j) / static_cast<double>(m);
            bag.add(t.ax + u * (t.bx - t.ax) + v * (t.cx - t.ax),
                    t.ay + u * (t.by - t.ay) + v * (t.cy - t.ay));
        }
}

struct Sq {
    double x, y, side;
};

void subdivide_carpet(std::vector<Sq>& sqs, std::uint32_t levels) {
    for (std::uint32_t l = 0; l < levels; ++l) {
        std::vector<Sq> next;
        next.reserve(sqs.size() * 8);
        for (const Sq& s : sqs) {
            double t = s.side / 3.0;
            for (int dx = 0; dx < 3; ++dx)
                for (int dy = 0; dy < 3; ++dy) {
                    if (dx == 1 && dy == 1) continue;
                    next.push_back({s.x + dx * t, s.y + dy * t, t});
                }
        }
        sqs = std::move(next);
    }
}

void add_filled_square(PointBag& bag, const Sq& s, double h) {
    auto m = static_cast<std::size_t>(std::ceil(s.side / h - 1e-9));
    m = std::max<std::size_t>(m, 1);
    for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t j = 0; j <= m; ++j)
            bag.add(s.x + s.side * static_cast<double>(i) / static_cast<double>(m),
                    s.y + s.side * static_cast<double>(j) / static_cast<double>(m));
}

void add_segment(PointBag& bag, double x0, double y0, double x1, double y1, double h) {
    double len = std::hypot(x1 - x0, y1 - y0);
    auto m = static_cast<std::size_t>(std::ceil(len / h - 1e-9));
    m = std::max<std::size_t>(m, 1);
    for (std::size_t i = 0; i <= m; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(m);
        bag.add(x0 + t * (x1 - x0), y0 + t * (y1 - y0));
    }
}

void require_density(double h, double feature, const std::string& family) {
    if (h > feature / 4.0 + 1e-12)
        throw ValidationError("density " + std::to_string(h) + " too coarse for " + family +
                              ": smallest feature is " + std::to_string(feature) +
                              " (need density <= feature/4)");
}

} // namespace

Family family_from_string(const std::string& name) {
    if (name == "circle") return Family::Circle;
    if (name == "wedge") return Family::WedgeOfCircles;
    if (name == "hawaiian" || name == "earring") return Family::HawaiianStage;
    if (name == "gasket") return Family::GasketLevel;
    if (name == "carpet") return Family::CarpetLevel;
    if (name == "sine") return Family::SineCurve;
    if (name == "square") return Family::UnitSquareCorners;
    throw ValidationError("unknown family: " + name);
}

std::string family_to_string(Family f) {
    switch (f) {
    case Family::Circle: return "circle";
    case Family::WedgeOfCircles: return "wedge";
    case Family::HawaiianStage: return "hawaiian";
    case Family::GasketLevel: return "gasket";
    case Family::CarpetLevel: return "carpet";
    case Family::SineCurve: return "sine";
    case Family::UnitSquareCorners: return "square";
    }
    return "?";
}

std::size_t expected_rank(Family family, std::uint32_t n) {
    switch (family) {
    case Family::HawaiianStage: return n;
    case Family::GasketLevel: {
        std::size_t q = 0, p = 1;
        for (std::uint32_t k = 0; k < n; ++k, p *= 3)
            q += p;
        return q;
    }
    case Family::CarpetLevel: {
        std::size_t q = 0, p = 1;
        for (std::uint32_t k = 0; k < n; ++k, p *= 8)
            q += p;
        return q;
    }
    default:
        throw ValidationError("expected_rank is defined for the hawaiian, gasket and carpet "
                              "families only");
    }
}

double stage_scale(Family family, std::uint32_t n) {
    switch (family) {
    case Family::HawaiianStage:
    case Family::GasketLevel: return std::ldexp(1.0, -static_cast<int>(n) - 1); // 1/2^{n+1}
    case Family::CarpetLevel: return 0.5 * std::pow(3.0, -static_cast<double>(n));
    default: throw ValidationError("stage_scale is defined for the fractal families only");
    }
}

FiniteMetricSpace sample(const SamplerSpec& spec) {
    const double h = spec.density;
    if (!(h > 0.0)) throw ValidationError("density must be positive");
    PointBag bag;
    switch (spec.family) {
    case Family::Circle: {
        require_density(h, 1.0, "circle");
        bag.add(0.0, 0.0);
        add_tangent_circle(bag, 1.0, h, +1);
        break;
    }
    case Family::WedgeOfCircles: {
        if (spec.level < 1 || spec.level > 6)
            throw ValidationError("wedge supports 1..6 circles");
        double smallest = std::ldexp(1.0, -static_cast<int>(spec.level) + 1);
        require_density(h, smallest, "wedge");
        bag.add(0.0, 0.0);
        for (std::uint32_t j = 0; j < spec.level; ++j)
            add_tangent_circle(bag, std::ldexp(1.0, -static_cast<int>(j)), h,
                               j % 2 == 0 ? +1 : -1);
        break;
    }
    case Family::HawaiianStage: {
        if (spec.level < 1 || spec.level > 4)
            throw ValidationError("hawaiian supports stages 1..4");
        double disc_diam = std::ldexp(1.0, -static_cast<int>(spec.level));
        require_density(h, disc_diam, "hawaiian");
        bag.add(0.0, 0.0);
        for (std::uint32_t j = 0; j < spec.level; ++j)
            add_tangent_circle(bag, std::ldexp(1.0, -static_cast<int>(j)), h, +1);
        // deepest component is the filled disc of the construction
        add_tangent_circle(bag, disc_diam, h, +1);
        add_disc_interior(bag, 0.0, disc_diam / 2.0, disc_diam / 2.0, h);
        break;
    }
    case Family::GasketLevel: {
        if (spec.level < 1 || spec.level > 3)
            throw ValidationError("gasket supports levels 1..3");
        double side = std::ldexp(1.0, -static_cast<int>(spec.level));
        require_density(h, side, "gasket");
        std::vector<Tri> tris{{0.0, 0.0, 1.0, 0.0, 0.5, std::sqrt(3.0) / 2.0}};
        subdivide_gasket(tris, spec.level);
        for (const Tri& t : tris)
            add_filled_triangle(bag, t, h);
        break;
    }
    case Family::CarpetLevel: {
        if (spec.level < 1 || spec.level > 2)
            throw ValidationError("carpet supports levels 1..2");
        double a0 = 1.0 / std::sqrt(2.0); // square of diameter 1
        double side = a0 * std::pow(3.0, -static_cast<double>(spec.level));
        require_density(h, side, "carpet");
        std::vector<Sq> sqs{{0.0, 0.0, a0}};
        subdivide_carpet(sqs, spec.level);
        for (const Sq& s : sqs)
            add_filled_square(bag, s, h);
        break;
    }
    case Family::SineCurve: {
        if (spec.level < 1 || spec.level > 3)
            throw ValidationError("sine supports 1..3 oscillations");
        const std::uint32_t m = spec.level;
        double x_min = 2.0 / ((4.0 * m + 1.0) * kPi);
        double x_next = 2.0 / ((4.0 * m + 5.0) * kPi);
        require_density(h, x_min - x_next, "sine");
        bag.add(0.0, 0.0); // basepoint on the limit segment
        add_segment(bag, 0.0, -1.0, 0.0, 1.0, h);
        // the oscillating arc, stepped so consecutive samples stay within h
        double x_max = 2.0 / kPi;
        double x = x_max;
        double px = x, py = std::sin(1.0 / x);
        bag.add(px, py);
        while (x > x_min) {
            double slope = std::cos(1.0 / x) / (x * x);
            double dx = h / std::sqrt(1.0 + slope * slope);
            dx = std::max(dx, x_min * 1e-4);
            x = std::max(x - dx, x_min);
            double y = std::sin(1.0 / x);
            if (std::hypot(x - px, y - py) > h) {
                // conservative halving when the local estimate overshoots
                x = (px + x) / 2.0;
                y = std::sin(1.0 / x);
            }
            bag.add(x, y);
            px = x;
            py = y;
        }
        // closing path: end of the arc around to the bottom of the segment
        add_segment(bag, x_max, std::sin(1.0 / x_max), x_max, -2.0, h);
        add_segment(bag, x_max, -2.0, 0.0, -2.0, h);
        add_segment(bag, 0.0, -2.0, 0.0, -1.0, h);
        break;
    }
    case Family::UnitSquareCorners: {
        bag.add(0.0, 0.0);
        bag.add(1.0, 0.0);
        bag.add(1.0, 1.0);
        bag.add(0.0, 1.0);
        break;
    }
    }
    return FiniteMetricSpace::from_coordinates(std::move(bag.points), 0);
}

} // namespace ec
